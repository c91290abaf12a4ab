//! Symbolic trace of a program: which boundary weights, braiding eigenvalues and fusion
//! entries multiply together in each summand, with channel and multiplicity labels as
//! variables.
//!
//! Caps and contractions identify variables. A cap also sets the middle key of the fuse
//! that produced the capped side key to a diagonal `(s; r, r)`, since the singlet row of
//! a fusion matrix vanishes off the diagonal.

use std::collections::BTreeMap;
use std::fmt;

use crate::blocks::Basis;
use crate::fusiondata::Frame;

use super::program::{Instruction, TangleProgram};
use super::Result;

/// The singlet channel.
pub const SINGLET: usize = 0;
/// Multiplicity index `0`.
pub const ZERO: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymKey {
    pub channel: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Factor {
    Omega {
        channel: usize,
        indices: Vec<usize>,
    },
    Lambda {
        position: usize,
        parallel: bool,
        channel: usize,
        slot: usize,
        power: i32,
    },
    /// `a^{side}_{middle}[frame]`, conjugated if `conj`.
    Fusion {
        frame: Frame,
        conj: bool,
        side: SymKey,
        middle: SymKey,
    },
}

impl Factor {
    fn vars(&self) -> Vec<usize> {
        match self {
            Factor::Omega { channel, indices } => std::iter::once(*channel).chain(indices.iter().copied()).collect(),
            Factor::Lambda { channel, slot, .. } => vec![*channel, *slot],
            Factor::Fusion { side, middle, .. } => vec![side.channel, side.left, side.right, middle.channel, middle.left, middle.right],
        }
    }

    fn map(&self, f: &impl Fn(usize) -> usize) -> Factor {
        let k = |k: &SymKey| SymKey { channel: f(k.channel), left: f(k.left), right: f(k.right) };
        match self {
            Factor::Omega { channel, indices } => Factor::Omega { channel: f(*channel), indices: indices.iter().map(|&i| f(i)).collect() },
            Factor::Lambda { position, parallel, channel, slot, power } => {
                Factor::Lambda { position: *position, parallel: *parallel, channel: f(*channel), slot: f(*slot), power: *power }
            }
            Factor::Fusion { frame, conj, side, middle } => {
                Factor::Fusion { frame: frame.clone(), conj: *conj, side: k(side), middle: k(middle) }
            }
        }
    }

    /// Same factor with every variable replaced by a placeholder.
    fn shape(&self) -> Factor {
        self.map(&|_| 0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermStructure {
    pub factors: Vec<Factor>,
    /// Number of variables, including [`SINGLET`] and [`ZERO`].
    pub vars: usize,
}

struct Uf(Vec<usize>);

impl Uf {
    fn fresh(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    /// Unites keeping the smaller root, so constants stay representatives.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
    }

    fn union_key(&mut self, a: SymKey, b: SymKey) {
        self.union(a.channel, b.channel);
        self.union(a.left, b.left);
        self.union(a.right, b.right);
    }
}

struct Leg {
    key: SymKey,
    basis: Basis,
    frame: Frame,
    last_fuse_middle: Option<SymKey>,
}

/// Traces `program` symbolically. Variables are renumbered densely after identification.
pub fn term_structure(program: &TangleProgram) -> Result<TermStructure> {
    program.check()?;
    let mut uf = Uf(vec![SINGLET, ZERO]);
    let mut factors = Vec::new();
    let mut legs: Vec<Leg> = Vec::new();
    for ins in &program.instructions {
        match ins {
            Instruction::Boundary { n, frame } => {
                let c = uf.fresh();
                let r: Vec<usize> = (0..*n).map(|_| uf.fresh()).collect();
                factors.push(Factor::Omega { channel: c, indices: r.clone() });
                for i in 0..*n {
                    legs.push(Leg {
                        key: SymKey { channel: c, left: r[i], right: r[(i + 1) % n] },
                        basis: Basis::Side,
                        frame: frame.clone(),
                        last_fuse_middle: None,
                    });
                }
            }
            Instruction::Braid { leg, position, sign, power } => {
                let l = &mut legs[leg - 1];
                let slot = if *position == 3 { l.key.left } else { l.key.right };
                factors.push(Factor::Lambda { position: *position, parallel: *sign > 0, channel: l.key.channel, slot, power: *power });
                if power % 2 != 0 {
                    l.frame = l.frame.swapped(*position);
                }
            }
            Instruction::Fuse { leg, frame, conj } => {
                let new = SymKey { channel: uf.fresh(), left: uf.fresh(), right: uf.fresh() };
                let l = &mut legs[leg - 1];
                if let Some(f) = frame {
                    l.frame = f.clone();
                }
                let (f, old) = (l.frame.clone(), l.key);
                match l.basis {
                    Basis::Side => {
                        factors.push(Factor::Fusion { frame: f, conj: *conj, side: old, middle: new });
                        l.basis = Basis::Middle;
                        l.last_fuse_middle = None;
                    }
                    Basis::Middle => {
                        factors.push(Factor::Fusion { frame: f, conj: !conj, side: new, middle: old });
                        l.basis = Basis::Side;
                        l.last_fuse_middle = Some(old);
                    }
                }
                l.key = new;
            }
            Instruction::Flip { leg } => {
                let k = &mut legs[leg - 1].key;
                std::mem::swap(&mut k.left, &mut k.right);
                legs[leg - 1].last_fuse_middle = None;
            }
            Instruction::Cap { leg } => {
                let l = &legs[leg - 1];
                uf.union_key(l.key, SymKey { channel: SINGLET, left: ZERO, right: ZERO });
                if let Some(m) = l.last_fuse_middle {
                    uf.union(m.left, m.right);
                }
            }
            Instruction::Contract { a, b } => {
                let (ka, kb) = (legs[a - 1].key, legs[b - 1].key);
                uf.union_key(ka, kb);
            }
        }
    }
    let mut dense: BTreeMap<usize, usize> = BTreeMap::from([(SINGLET, SINGLET), (ZERO, ZERO)]);
    for x in 0..uf.0.len() {
        let r = uf.find(x);
        let next = dense.len();
        dense.entry(r).or_insert(next);
    }
    let roots: Vec<usize> = (0..uf.0.len()).map(|x| dense[&uf.find(x)]).collect();
    let factors = factors.iter().map(|f| f.map(&|v| roots[v])).collect();
    Ok(TermStructure { factors, vars: dense.len() })
}

impl TermStructure {
    /// Equal up to a bijective renaming of the variables that fixes the constants, with
    /// factors compared as a multiset.
    pub fn equivalent(&self, other: &TermStructure) -> bool {
        if self.factors.len() != other.factors.len() || self.vars != other.vars {
            return false;
        }
        let mut fwd = vec![None; self.vars];
        let mut bwd = vec![None; other.vars];
        for c in [SINGLET, ZERO] {
            fwd[c] = Some(c);
            bwd[c] = Some(c);
        }
        let mut used = vec![false; other.factors.len()];
        self.assign(other, 0, &mut used, &mut fwd, &mut bwd)
    }

    fn assign(&self, other: &TermStructure, i: usize, used: &mut [bool], fwd: &mut [Option<usize>], bwd: &mut [Option<usize>]) -> bool {
        let Some(f) = self.factors.get(i) else { return true };
        let shape = f.shape();
        let vs = f.vars();
        for j in 0..other.factors.len() {
            if used[j] || other.factors[j].shape() != shape {
                continue;
            }
            let ws = other.factors[j].vars();
            let mut added = Vec::new();
            let mut ok = true;
            for (&v, &w) in vs.iter().zip(&ws) {
                match (fwd[v], bwd[w]) {
                    (Some(x), _) if x != w => ok = false,
                    (_, Some(y)) if y != v => ok = false,
                    (None, None) => {
                        fwd[v] = Some(w);
                        bwd[w] = Some(v);
                        added.push((v, w));
                    }
                    _ => {}
                }
                if !ok {
                    break;
                }
            }
            if ok {
                used[j] = true;
                if self.assign(other, i + 1, used, fwd, bwd) {
                    return true;
                }
                used[j] = false;
            }
            for (v, w) in added {
                fwd[v] = None;
                bwd[w] = None;
            }
        }
        false
    }
}

struct Var(usize);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            SINGLET | ZERO => write!(f, "0"),
            v => write!(f, "x{v}"),
        }
    }
}

impl fmt::Display for SymKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{},{}", Var(self.channel), Var(self.left), Var(self.right))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Omega { channel, indices } => {
                write!(f, "Omega({}", Var(*channel))?;
                for i in indices {
                    write!(f, ",{}", Var(*i))?;
                }
                write!(f, ")")
            }
            Factor::Lambda { position, parallel, channel, slot, power } => {
                write!(f, "lambda{}[b{position}]_{{{} {}}}^{power}", if *parallel { "+" } else { "-" }, Var(*channel), Var(*slot))
            }
            Factor::Fusion { frame, conj, side, middle } => {
                write!(f, "a^{{{side}}}_{{{middle}}}{frame}{}", if *conj { "*" } else { "" })
            }
        }
    }
}

impl fmt::Display for TermStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
