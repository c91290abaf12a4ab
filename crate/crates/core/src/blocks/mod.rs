//! Four-point and multi-boundary conformal-block states, braiding, fusion-basis changes
//! and the three mutation operators.

mod multi;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use thiserror::Error;

use crate::fusiondata::{BasisKey, Frame, FusionDataset, FusionError};
use crate::laurent::{LaurentError, Surd};
use crate::reptheory::{BraidingEigenvalues, Channel, ChannelTable, ReptheoryError};

pub use multi::{boundary_state, boundary_terms, BoundaryTerm, MultiBoundaryState};

#[derive(Debug, Error)]
pub enum BlocksError {
    #[error("{op} needs the {need} basis, state is in the {have} basis")]
    WrongBasis { op: &'static str, need: Basis, have: Basis },
    #[error("frames differ: {0} vs {1}")]
    FrameMismatch(String, String),
    #[error("a multi-boundary state needs at least two boundaries, got {0}")]
    BadBoundaryCount(usize),
    #[error("braid position {0} is not 1, 2 or 3")]
    BadPosition(usize),
    #[error("strand orientation at position {position} of {frame} does not match the requested sign")]
    Orientation { position: usize, frame: String },
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Rep(#[from] ReptheoryError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

pub type Result<T> = std::result::Result<T, BlocksError>;

/// `Side`: `|phi^(1)_{t}>`, channel of `(R1, R2)`. `Middle`: `|phi^(2)_{s}>`, channel of `(R2, R3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Side,
    Middle,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Side => write!(f, "side"),
            Basis::Middle => write!(f, "middle"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockState {
    pub frame: Frame,
    pub basis: Basis,
    pub coeffs: BTreeMap<BasisKey, Surd>,
}

impl BlockState {
    pub fn new(frame: Frame, basis: Basis) -> Self {
        BlockState { frame, basis, coeffs: BTreeMap::new() }
    }

    pub fn basis_vector(frame: Frame, basis: Basis, key: BasisKey) -> Self {
        let mut s = BlockState::new(frame, basis);
        s.coeffs.insert(key, Surd::one());
        s
    }

    pub fn coeff(&self, k: &BasisKey) -> Surd {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, k: BasisKey, v: Surd) {
        if v.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    pub fn add(&self, rhs: &BlockState) -> Result<BlockState> {
        same_space(self, rhs)?;
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            let s = out.coeff(k).add(v);
            out.set(k.clone(), s);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Surd) -> BlockState {
        let mut out = BlockState::new(self.frame.clone(), self.basis);
        for (k, v) in &self.coeffs {
            out.set(k.clone(), v.mul(c));
        }
        out
    }

    /// Same coefficients, reinterpreted in another frame with matching bases.
    pub fn relabeled(&self, frame: Frame) -> BlockState {
        BlockState { frame, basis: self.basis, coeffs: self.coeffs.clone() }
    }

    /// Diagnostic listing, one coefficient per line.
    pub fn dump(&self) -> String {
        let mut out = format!("frame {} basis {}\n", self.frame, self.basis);
        for (k, v) in &self.coeffs {
            writeln!(out, "  {k} = {}", v.to_expr()).unwrap();
        }
        out
    }
}

fn same_space(a: &BlockState, b: &BlockState) -> Result<()> {
    if a.frame != b.frame || a.basis != b.basis {
        return Err(BlocksError::FrameMismatch(format!("{} ({})", a.frame, a.basis), format!("{} ({})", b.frame, b.basis)));
    }
    Ok(())
}

/// Applies `b_position^power` with eigenvalue family `sign` (`+1` like-oriented strands,
/// `-1` opposite). `b1` and `b3` act on the side basis, `b2` on the middle basis; each
/// sees the multiplicity index of its own vertex (`right` for `b1`, `b2`; `left` for `b3`).
/// Odd powers exchange the two frame labels; even powers return the strands in place.
pub fn braid(state: &BlockState, position: usize, sign: i8, power: i32, eig: &dyn BraidingEigenvalues) -> Result<BlockState> {
    let need = match position {
        1 | 3 => Basis::Side,
        2 => Basis::Middle,
        p => return Err(BlocksError::BadPosition(p)),
    };
    if state.basis != need {
        return Err(BlocksError::WrongBasis { op: "braid", need, have: state.basis });
    }
    let ri = state.frame.label(position).clone();
    let rj = state.frame.label(position + 1).clone();
    let parallel = ri == rj;
    if parallel != (sign > 0) {
        return Err(BlocksError::Orientation { position, frame: state.frame.to_string() });
    }
    let frame = if power % 2 == 0 { state.frame.clone() } else { state.frame.swapped(position) };
    let mut out = BlockState::new(frame, state.basis);
    for (k, v) in &state.coeffs {
        let ch = match position {
            3 => Channel::new(k.channel.conj(), k.left),
            _ => Channel::new(k.channel.clone(), k.right),
        };
        let e = eig.eigenvalue(&ri, &rj, &ch, parallel)?.pow(power);
        out.set(k.clone(), v.mul(&Surd::from(e.to_poly())));
    }
    Ok(out)
}

/// Rewrites the state in the other basis with the fusion matrix of its frame: forward
/// with `a`, backward with `a^*`.
pub fn change_basis(state: &BlockState, ds: &FusionDataset) -> Result<BlockState> {
    change_basis_conjugated(state, ds, false)
}

/// [`change_basis`] with every matrix entry conjugated when `conjugate` is set.
pub fn change_basis_conjugated(state: &BlockState, ds: &FusionDataset, conjugate: bool) -> Result<BlockState> {
    let (rows, cols, m) = ds.matrix(&state.frame)?;
    let (from, to, target) = match state.basis {
        Basis::Side => (&rows, &cols, Basis::Middle),
        Basis::Middle => (&cols, &rows, Basis::Side),
    };
    let input: Vec<(usize, &Surd)> = state
        .coeffs
        .iter()
        .map(|(k, v)| {
            from.iter().position(|x| x == k).map(|i| (i, v)).ok_or_else(|| FusionError::Inadmissible(format!("{k} in {}", state.frame)))
        })
        .collect::<std::result::Result<_, _>>()?;
    let values: Vec<Surd> = (0..to.len())
        .into_par_iter()
        .map(|j| {
            let mut acc = Surd::zero();
            for &(i, v) in &input {
                let entry = match state.basis {
                    Basis::Side => &m[i][j],
                    Basis::Middle => &m[j][i],
                };
                let a = if conjugate != (state.basis == Basis::Middle) { entry.conj() } else { entry.clone() };
                if !a.is_zero() {
                    acc = acc.add(&v.mul(&a));
                }
            }
            acc
        })
        .collect();
    let mut out = BlockState::new(state.frame.clone(), target);
    for (k, v) in to.iter().zip(values) {
        out.set(k.clone(), v);
    }
    Ok(out)
}

/// `<bra|ket>` in a shared frame and basis.
pub fn cap(bra: &BlockState, ket: &BlockState) -> Result<Surd> {
    same_space(bra, ket)?;
    let mut acc = Surd::zero();
    for (k, v) in &ket.coeffs {
        if let Some(b) = bra.coeffs.get(k) {
            acc = acc.add(&b.mul(v));
        }
    }
    Ok(acc)
}

fn side_phases(table: &ChannelTable, frame: &Frame, k: &BasisKey) -> Result<i64> {
    let (r1, r2) = (frame.label(1), frame.label(2));
    let p = |x: u8| table.phase(r1, r2, &Channel::new(k.channel.clone(), x));
    Ok(p(k.left)? as i64 * p(k.right)? as i64)
}

fn need_side(state: &BlockState, op: &'static str) -> Result<()> {
    if state.basis != Basis::Side {
        return Err(BlocksError::WrongBasis { op, need: Basis::Side, have: state.basis });
    }
    Ok(())
}

/// Rotation about the horizontal axis: `f_{t;r1 r2} -> {t r1}{t r2} f_{t;r1 r2}`.
pub fn mutate_x(state: &BlockState, table: &ChannelTable) -> Result<BlockState> {
    need_side(state, "mutate_x")?;
    let mut out = BlockState::new(state.frame.clone(), Basis::Side);
    for (k, v) in &state.coeffs {
        out.set(k.clone(), v.mul(&Surd::integer(side_phases(table, &state.frame, k)?)));
    }
    Ok(out)
}

/// `b1 b3^-1`, relabeled back to the starting frame.
pub fn mutate_x_braided(state: &BlockState, eig: &dyn BraidingEigenvalues) -> Result<BlockState> {
    let s1 = orientation(&state.frame, 1);
    let s = braid(state, 1, s1, 1, eig)?;
    let s3 = orientation(&s.frame, 3);
    let s = braid(&s, 3, s3, -1, eig)?;
    Ok(s.relabeled(state.frame.clone()))
}

fn orientation(frame: &Frame, position: usize) -> i8 {
    if frame.label(position) == frame.label(position + 1) {
        1
    } else {
        -1
    }
}

/// Rotation about the vertical axis: `f_{t;r1 r2} -> {t r1}{t r2} f_{t;r2 r1}`.
pub fn mutate_y(state: &BlockState, table: &ChannelTable) -> Result<BlockState> {
    need_side(state, "mutate_y")?;
    let mut out = BlockState::new(state.frame.clone(), Basis::Side);
    for (k, v) in &state.coeffs {
        let ph = side_phases(table, &state.frame, k)?;
        out.set(k.flipped(), v.mul(&Surd::integer(ph)));
    }
    Ok(out)
}

/// `b1^-1 b2 b1^-1`, with `b2` taken in the middle basis of the intermediate frame.
fn exchange(state: &BlockState, ds: &FusionDataset, eig: &dyn BraidingEigenvalues) -> Result<BlockState> {
    let s = braid(state, 1, orientation(&state.frame, 1), -1, eig)?;
    let s = change_basis(&s, ds)?;
    let s = braid(&s, 2, orientation(&s.frame, 2), 1, eig)?;
    let s = change_basis(&s, ds)?;
    braid(&s, 1, orientation(&s.frame, 1), -1, eig)
}

/// The braid word `(b1^-1 b2 b1^-1) (b1 b3^-1) (b1^-1 b2 b1^-1)` applied literally.
pub fn mutate_y_braided(state: &BlockState, ds: &FusionDataset, eig: &dyn BraidingEigenvalues) -> Result<BlockState> {
    need_side(state, "mutate_y")?;
    let s = exchange(state, ds, eig)?;
    let s = mutate_x_braided(&s.relabeled(state.frame.clone()), eig)?;
    let s = exchange(&s, ds, eig)?;
    Ok(s.relabeled(state.frame.clone()))
}

/// Rotation about the axis normal to the plane, `M_x M_y`.
pub fn mutate_z(state: &BlockState, table: &ChannelTable) -> Result<BlockState> {
    mutate_x(&mutate_y(state, table)?, table)
}

/// `<G|F> - <G|F~>` for `F~ = mutate_y(F)`, written through the multiplicity channels:
/// `sum_c (f_{c;01} + f_{c;10}) (g_{c;01} + g_{c;10})` over channels of multiplicity two
/// with phases `(+, -)`. The remaining channels cancel identically.
pub fn tangle_difference(f: &BlockState, g: &BlockState, table: &ChannelTable) -> Result<Surd> {
    need_side(f, "tangle_difference")?;
    same_space(f, g)?;
    let (r1, r2) = (f.frame.label(1), f.frame.label(2));
    let mut acc = Surd::zero();
    for label in table.labels(r1, r2)? {
        if table.multiplicity(r1, r2, &label) != 2 {
            continue;
        }
        let p0 = table.phase(r1, r2, &Channel::new(label.clone(), 0))?;
        let p1 = table.phase(r1, r2, &Channel::new(label.clone(), 1))?;
        if p0 == p1 {
            continue;
        }
        let k01 = BasisKey::new(label.clone(), 0, 1);
        let k10 = BasisKey::new(label.clone(), 1, 0);
        let fs = f.coeff(&k01).add(&f.coeff(&k10));
        let gs = g.coeff(&k01).add(&g.coeff(&k10));
        acc = acc.add(&fs.mul(&gs));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
