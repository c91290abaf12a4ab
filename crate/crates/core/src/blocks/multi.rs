use std::collections::BTreeMap;

use crate::fusiondata::{BasisKey, Frame};
use crate::laurent::Surd;
use crate::reptheory::{quantum_dimension_factored, Channel, ChannelTable, RepLabel};

use super::{BlockState, BlocksError, Result};

/// `sum_{t, r_1..r_n} w(t, r) (x)_i |phi^(1)_{t; r_i, r_{i+1}}>_i` with cyclic `r_{n+1} = r_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiBoundaryState {
    pub frame: Frame,
    pub entries: BTreeMap<Vec<BasisKey>, Surd>,
}

/// One summand of an `n`-boundary state: its channel, index ring and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub channel: RepLabel,
    pub indices: Vec<u8>,
    pub weight: Surd,
}

impl BoundaryTerm {
    pub fn legs(&self) -> Vec<BasisKey> {
        let n = self.indices.len();
        (0..n).map(|i| BasisKey::new(self.channel.clone(), self.indices[i], self.indices[(i + 1) % n])).collect()
    }
}

/// `1 / sqrt(dim_q t)^(n - 2)`.
fn dim_weight(t: &RepLabel, n: usize) -> Result<Surd> {
    if n == 2 {
        return Ok(Surd::one());
    }
    let root = Surd::sqrt(&quantum_dimension_factored(t))?;
    Ok(root.pow(-(n as i32 - 2))?)
}

/// Terms of `|n-bdry>` for a frame whose first pair is `(R, Rbar)`, with weights
/// `prod_i {R Rbar t r_i} / sqrt(dim_q t)^(n-2)`.
pub fn boundary_terms(n: usize, frame: &Frame, table: &ChannelTable) -> Result<Vec<BoundaryTerm>> {
    if n < 2 {
        return Err(BlocksError::BadBoundaryCount(n));
    }
    let (r1, r2) = (frame.label(1), frame.label(2));
    let side = frame.side_basis(table)?;
    let mut out = Vec::new();
    for t in table.labels(r1, r2)? {
        let m = table.multiplicity(r1, r2, &t);
        if !side.iter().any(|k| k.channel == t) {
            continue;
        }
        let w = dim_weight(&t, n)?;
        let phases: Vec<i64> =
            (0..m).map(|r| table.phase(r1, r2, &Channel::new(t.clone(), r)).map(i64::from)).collect::<std::result::Result<_, _>>()?;
        let total = (m as usize).pow(n as u32);
        for code in 0..total {
            let mut rest = code;
            let indices: Vec<u8> = (0..n)
                .map(|_| {
                    let r = (rest % m as usize) as u8;
                    rest /= m as usize;
                    r
                })
                .collect();
            let term = BoundaryTerm { channel: t.clone(), indices, weight: Surd::zero() };
            if !term.legs().iter().all(|k| side.contains(k)) {
                continue;
            }
            let sign: i64 = term.indices.iter().map(|&r| phases[r as usize]).product();
            out.push(BoundaryTerm { weight: w.mul(&Surd::integer(sign)), ..term });
        }
    }
    Ok(out)
}

/// `|n-bdry>` as a sparse tensor over `n` legs.
pub fn boundary_state(n: usize, frame: &Frame, table: &ChannelTable) -> Result<MultiBoundaryState> {
    let mut entries = BTreeMap::new();
    for term in boundary_terms(n, frame, table)? {
        entries.insert(term.legs(), term.weight);
    }
    Ok(MultiBoundaryState { frame: frame.clone(), entries })
}

impl MultiBoundaryState {
    pub fn legs(&self) -> usize {
        self.entries.keys().next().map_or(0, Vec::len)
    }

    /// Pairs leg `leg` (0-based) with `bra`, summing over that leg's keys.
    pub fn contract(&self, leg: usize, bra: &BlockState) -> Result<MultiBoundaryState> {
        if bra.frame != self.frame {
            return Err(BlocksError::FrameMismatch(bra.frame.to_string(), self.frame.to_string()));
        }
        let mut entries: BTreeMap<Vec<BasisKey>, Surd> = BTreeMap::new();
        for (keys, w) in &self.entries {
            let Some(b) = bra.coeffs.get(&keys[leg]) else { continue };
            let mut rest = keys.clone();
            rest.remove(leg);
            let e = entries.entry(rest).or_default();
            *e = e.add(&w.mul(b));
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(MultiBoundaryState { frame: self.frame.clone(), entries })
    }

    /// The weighted cap `sum_{t,r} {R Rbar t r} sqrt(dim_q t) <phi_{t; r, r}|` used to close one leg.
    pub fn closing_bra(frame: &Frame, table: &ChannelTable) -> Result<BlockState> {
        let (r1, r2) = (frame.label(1), frame.label(2));
        let mut bra = BlockState::new(frame.clone(), super::Basis::Side);
        for k in frame.side_basis(table)? {
            if k.left != k.right {
                continue;
            }
            let ph = table.phase(r1, r2, &Channel::new(k.channel.clone(), k.left))?;
            let root = Surd::sqrt(&quantum_dimension_factored(&k.channel))?;
            bra.set(k, root.mul(&Surd::integer(ph.into())));
        }
        Ok(bra)
    }
}
