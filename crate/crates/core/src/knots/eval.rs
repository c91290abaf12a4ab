use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::blocks::{self, boundary_terms, Basis, BlockState, BoundaryTerm};
use crate::fusiondata::{BasisKey, FusionDataset};
use crate::laurent::Surd;
use crate::reptheory::{BraidingEigenvalues, CasimirEigenvalues};

use super::program::{Instruction, TangleProgram};
use super::{InvariantResult, KnotsError, Result};

#[derive(Clone, Default)]
pub struct EvalOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Braiding eigenvalues; `None` uses the Casimir eigenvalues of the dataset's table.
    pub eigenvalues: Option<Arc<dyn BraidingEigenvalues>>,
}

impl fmt::Debug for EvalOptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EvalOptions")
            .field("threads", &self.threads)
            .field("eigenvalues", &self.eigenvalues.as_ref().map(|_| "custom"))
            .finish()
    }
}

#[derive(Clone, Copy, Debug)]
enum Closing {
    Cap,
    Pair(usize),
}

fn leg_error(leg: usize, e: impl fmt::Display) -> KnotsError {
    KnotsError::Leg { leg: leg + 1, message: e.to_string() }
}

fn flipped(s: &BlockState) -> BlockState {
    let mut out = BlockState::new(s.frame.clone(), s.basis);
    for (k, v) in &s.coeffs {
        out.set(k.flipped(), v.clone());
    }
    out
}

fn run_leg(start: BlockState, ops: &[&Instruction], ds: &FusionDataset, eig: &dyn BraidingEigenvalues) -> blocks::Result<BlockState> {
    let mut s = start;
    for op in ops {
        s = match op {
            Instruction::Braid { position, sign, power, .. } => blocks::braid(&s, *position, *sign, *power, eig)?,
            Instruction::Fuse { frame, conj, .. } => {
                if let Some(f) = frame {
                    s = s.relabeled(f.clone());
                }
                blocks::change_basis_conjugated(&s, ds, *conj)?
            }
            Instruction::Flip { .. } => flipped(&s),
            _ => s,
        };
    }
    Ok(s)
}

/// The closed scalar of the program: the sum over every boundary's channels and
/// multiplicity indices of the boundary weights times the cap and pairing values of
/// the transported legs. The `dim_q R` prefactor is not included.
pub fn evaluate_raw(program: &TangleProgram, ds: &FusionDataset, opts: &EvalOptions) -> Result<Surd> {
    match opts.threads {
        None => evaluate_inner(program, ds, opts),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| KnotsError::Threads(e.to_string()))?
            .install(|| evaluate_inner(program, ds, opts)),
    }
}

/// [`evaluate_raw`] lowered to a Laurent polynomial and packaged with its `dim_q R` prefactor.
pub fn evaluate(program: &TangleProgram, knot: &str, ds: &FusionDataset, opts: &EvalOptions) -> Result<InvariantResult> {
    let raw = evaluate_raw(program, ds, opts)?;
    let p = raw.lower_poly().map_err(KnotsError::NotLowerable)?;
    Ok(InvariantResult::new(knot, program.color.clone(), p))
}

fn evaluate_inner(program: &TangleProgram, ds: &FusionDataset, opts: &EvalOptions) -> Result<Surd> {
    program.check()?;
    if &program.color != ds.color() {
        return Err(KnotsError::ColorMismatch { program: program.color.to_string(), dataset: ds.color().to_string() });
    }
    let default_eig;
    let eig: &dyn BraidingEigenvalues = match &opts.eigenvalues {
        Some(e) => e.as_ref(),
        None => {
            default_eig = CasimirEigenvalues::new(ds.table().clone());
            &default_eig
        }
    };
    let legs = program.legs();
    let bounds = program.boundaries();
    let terms: Vec<Vec<BoundaryTerm>> = bounds.iter().map(|(n, f)| boundary_terms(*n, f, ds.table())).collect::<blocks::Result<_>>()?;

    let mut ops: Vec<Vec<&Instruction>> = vec![Vec::new(); legs.len()];
    let mut closing = vec![Closing::Cap; legs.len()];
    for ins in &program.instructions {
        match ins {
            Instruction::Braid { leg, .. } | Instruction::Fuse { leg, .. } | Instruction::Flip { leg } => ops[leg - 1].push(ins),
            Instruction::Cap { leg } => closing[leg - 1] = Closing::Cap,
            Instruction::Contract { a, b } => {
                closing[a - 1] = Closing::Pair(b - 1);
                closing[b - 1] = Closing::Pair(a - 1);
            }
            Instruction::Boundary { .. } => {}
        }
    }

    // Every (leg, starting key) pair, transported through that leg's instructions.
    let mut starts: Vec<(usize, BasisKey)> = Vec::new();
    for (l, info) in legs.iter().enumerate() {
        let keys: BTreeSet<BasisKey> = terms[info.boundary].iter().map(|t| t.legs()[info.slot].clone()).collect();
        starts.extend(keys.into_iter().map(|k| (l, k)));
    }
    let finals: Vec<BlockState> = starts
        .par_iter()
        .map(|(l, k)| {
            let frame = bounds[legs[*l].boundary].1.clone();
            run_leg(BlockState::basis_vector(frame, Basis::Side, k.clone()), &ops[*l], ds, eig).map_err(|e| leg_error(*l, e))
        })
        .collect::<Result<_>>()?;
    let mut state: Vec<BTreeMap<BasisKey, BlockState>> = vec![BTreeMap::new(); legs.len()];
    for ((l, k), s) in starts.into_iter().zip(finals) {
        state[l].insert(k, s);
    }

    let mut caps: Vec<BTreeMap<BasisKey, Surd>> = vec![BTreeMap::new(); legs.len()];
    let mut pairs: BTreeMap<(usize, BasisKey, BasisKey), Surd> = BTreeMap::new();
    for l in 0..legs.len() {
        match closing[l] {
            Closing::Cap => {
                for (k, s) in &state[l] {
                    if s.basis != Basis::Side {
                        return Err(leg_error(l, "CAP needs the side basis"));
                    }
                    caps[l].insert(k.clone(), s.coeff(&BasisKey::singlet()));
                }
            }
            Closing::Pair(m) if l < m => {
                for (ka, sa) in &state[l] {
                    for (kb, sb) in &state[m] {
                        if sa.frame != sb.frame {
                            return Err(leg_error(
                                l,
                                format!("CONTRACT b{} b{}: frames {} and {} differ", l + 1, m + 1, sa.frame, sb.frame),
                            ));
                        }
                        let mut acc = Surd::zero();
                        for (k, v) in &sa.coeffs {
                            if let Some(w) = sb.coeffs.get(k) {
                                acc = acc.add(&v.mul(w));
                            }
                        }
                        pairs.insert((l, ka.clone(), kb.clone()), acc);
                    }
                }
            }
            Closing::Pair(_) => {}
        }
    }

    // Each closing factor is applied once both of its boundaries are chosen.
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); bounds.len()];
    for l in 0..legs.len() {
        match closing[l] {
            Closing::Cap => ready[legs[l].boundary].push(l),
            Closing::Pair(m) if l < m => ready[legs[l].boundary.max(legs[m].boundary)].push(l),
            Closing::Pair(_) => {}
        }
    }
    // Legs chosen before boundary d whose partner is chosen at or after it.
    let interface: Vec<Vec<usize>> = (0..bounds.len())
        .map(|d| {
            (0..legs.len()).filter(|&l| matches!(closing[l], Closing::Pair(m) if legs[l].boundary < d && legs[m].boundary >= d)).collect()
        })
        .collect();
    let ctx = Sum { legs: &legs, closing: &closing, terms: &terms, ready: &ready, interface: &interface, caps: &caps, pairs: &pairs };
    let partial: Vec<Surd> = terms[0]
        .par_iter()
        .map(|t| {
            let mut chosen = vec![t];
            let local = ctx.local(&chosen);
            if local.is_zero() {
                return local;
            }
            local.mul(&ctx.rest(&mut chosen, &mut BTreeMap::new()))
        })
        .collect();
    Ok(partial.iter().fold(Surd::zero(), |acc, x| acc.add(x)))
}

struct Sum<'a> {
    legs: &'a [super::program::LegInfo],
    closing: &'a [Closing],
    terms: &'a [Vec<BoundaryTerm>],
    ready: &'a [Vec<usize>],
    interface: &'a [Vec<usize>],
    caps: &'a [BTreeMap<BasisKey, Surd>],
    pairs: &'a BTreeMap<(usize, BasisKey, BasisKey), Surd>,
}

type Memo = BTreeMap<(usize, Vec<BasisKey>), Surd>;

impl<'a> Sum<'a> {
    fn key(&self, chosen: &[&BoundaryTerm], l: usize) -> BasisKey {
        let info = &self.legs[l];
        chosen[info.boundary].legs()[info.slot].clone()
    }

    /// Weight of the last chosen term times every closing factor it completes.
    fn local(&self, chosen: &[&BoundaryTerm]) -> Surd {
        let d = chosen.len() - 1;
        let mut acc = chosen[d].weight.clone();
        for &l in &self.ready[d] {
            let v = match self.closing[l] {
                Closing::Cap => self.caps[l].get(&self.key(chosen, l)),
                Closing::Pair(m) => self.pairs.get(&(l, self.key(chosen, l), self.key(chosen, m))),
            };
            match v {
                Some(v) if !v.is_zero() => acc = acc.mul(v),
                _ => return Surd::zero(),
            }
        }
        acc
    }

    /// Sum over the remaining boundaries, which only sees the chosen terms through the
    /// keys of legs paired across; memoized on those keys.
    fn rest(&self, chosen: &mut Vec<&'a BoundaryTerm>, memo: &mut Memo) -> Surd {
        let d = chosen.len();
        if d == self.terms.len() {
            return Surd::one();
        }
        let key = (d, self.interface[d].iter().map(|&l| self.key(chosen, l)).collect());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = Surd::zero();
        for t in &self.terms[d] {
            chosen.push(t);
            let local = self.local(chosen);
            if !local.is_zero() {
                total = total.add(&local.mul(&self.rest(chosen, memo)));
            }
            chosen.pop();
        }
        memo.insert(key, total.clone());
        total
    }
}
