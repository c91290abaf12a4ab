use rayon::prelude::*;

use crate::laurent::Surd;
use crate::reptheory::{BraidingEigenvalues, Channel, RepLabel};

use super::{BasisKey, Frame, FusionDataset, FusionError, FusionKey, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitarityViolation {
    pub column: BasisKey,
    pub other: BasisKey,
    /// `sum_t a^t_column (a^t_other)^*`, which should be the Kronecker delta.
    pub value: Surd,
}

#[derive(Clone, Debug)]
pub struct FrameUnitarity {
    pub frame: Frame,
    pub rows: usize,
    pub columns: usize,
    pub violations: Vec<UnitarityViolation>,
}

impl FrameUnitarity {
    pub fn passed(&self) -> bool {
        self.rows == self.columns && self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct UnitarityReport {
    pub frames: Vec<FrameUnitarity>,
}

impl UnitarityReport {
    pub fn passed(&self) -> bool {
        self.frames.iter().all(FrameUnitarity::passed)
    }
}

/// Column orthonormality `sum_{t,r3,r4} a^{t}_{s} a^{t}_{s'}^* = delta_{s s'}` in every frame.
pub fn validate_unitarity(ds: &FusionDataset) -> Result<UnitarityReport> {
    let mut frames = Vec::new();
    for frame in ds.frames() {
        let (rows, cols, m) = ds.matrix(frame)?;
        let pairs: Vec<(usize, usize)> = (0..cols.len()).flat_map(|i| (i..cols.len()).map(move |j| (i, j))).collect();
        let mut violations: Vec<UnitarityViolation> = pairs
            .par_iter()
            .filter_map(|&(i, j)| {
                let mut s = Surd::zero();
                for row in &m {
                    s = s.add(&row[i].mul(&row[j].conj()));
                }
                let expect = if i == j { Surd::one() } else { Surd::zero() };
                (s != expect).then(|| UnitarityViolation { column: cols[i].clone(), other: cols[j].clone(), value: s })
            })
            .collect();
        let mirrored: Vec<UnitarityViolation> = violations
            .iter()
            .filter(|v| v.column != v.other)
            .map(|v| UnitarityViolation { column: v.other.clone(), other: v.column.clone(), value: v.value.conj() })
            .collect();
        violations.extend(mirrored);
        violations.sort_by(|a, b| (&a.column, &a.other).cmp(&(&b.column, &b.other)));
        frames.push(FrameUnitarity { frame: frame.clone(), rows: rows.len(), columns: cols.len(), violations });
    }
    Ok(UnitarityReport { frames })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackcouplingViolation {
    /// `(s; r6 r5)` of the alternating frame.
    pub side: BasisKey,
    /// `(t; r1 r2)` of the alternating frame.
    pub middle: BasisKey,
    pub lhs: Surd,
    pub rhs: Surd,
}

#[derive(Clone, Debug)]
pub struct BackcouplingReport {
    pub checked: usize,
    pub violations: Vec<BackcouplingViolation>,
}

impl BackcouplingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn eig(e: &dyn BraidingEigenvalues, ri: &RepLabel, rj: &RepLabel, label: &RepLabel, r: u8, parallel: bool, power: i32) -> Result<Surd> {
    let v = e.eigenvalue(ri, rj, &Channel::new(label.clone(), r), parallel)?;
    Ok(Surd::from(v.pow(power).to_poly()))
}

/// Racah backcoupling between `(R, Rbar, R, Rbar)` and `(Rbar, R, R, Rbar)` for `R` the
/// dataset color:
///
/// `{R Rbar t r1}{R Rbar t r2} a^{s;r6 r5}_{t;r1 r2}[R Rbar; R Rbar]
///  = sum_{u,r3,r4} (l^-_{s;r6})^-1 a^{s;r5 r6}_{u;r3 r4}[Rbar R; R Rbar] l^+_{u;r4}
///    a^{t;r1 r2}_{u;r3 r4}[Rbar R; R Rbar] (l^-_{t;r2})^-1`.
pub fn validate_backcoupling(ds: &FusionDataset, eigen: &dyn BraidingEigenvalues) -> Result<BackcouplingReport> {
    let r = ds.color().clone();
    let rb = r.conj();
    let alt = Frame::alternating(&r);
    let nested = Frame::nested(&r);
    for f in [&alt, &nested] {
        if !ds.has_frame(f) {
            return Err(FusionError::MissingFrame(f.to_string()));
        }
    }
    let table = ds.table();
    let lookup = |frame: &Frame, side: &BasisKey, middle: &BasisKey| -> Result<Surd> {
        ds.lookup(&FusionKey { frame: frame.clone(), side: side.clone(), middle: middle.clone() }, false)
    };
    let sides = alt.side_basis(table)?;
    let middles = alt.middle_basis(table)?;
    let us = nested.middle_basis(table)?;
    let jobs: Vec<(&BasisKey, &BasisKey)> = sides.iter().flat_map(|s| middles.iter().map(move |t| (s, t))).collect();
    let results: Vec<Result<Option<BackcouplingViolation>>> = jobs
        .par_iter()
        .map(|&(s, t)| {
            let ph = |x: u8| -> Result<i64> { Ok(table.phase(&r, &rb, &Channel::new(t.channel.clone(), x))? as i64) };
            let lhs = lookup(&alt, s, t)?.mul(&Surd::integer(ph(t.left)? * ph(t.right)?));
            let pre = eig(eigen, &r, &rb, &s.channel, s.left, false, -1)?.mul(&eig(eigen, &r, &rb, &t.channel, t.right, false, -1)?);
            let mut rhs = Surd::zero();
            for u in &us {
                let x = lookup(&nested, &s.flipped(), u)?.conj();
                if x.is_zero() {
                    continue;
                }
                let y = lookup(&nested, t, u)?;
                if y.is_zero() {
                    continue;
                }
                let l = eig(eigen, &r, &r, &u.channel, u.right, true, 1)?;
                rhs = rhs.add(&x.mul(&y).mul(&l));
            }
            rhs = rhs.mul(&pre);
            Ok((lhs != rhs).then(|| BackcouplingViolation { side: s.clone(), middle: t.clone(), lhs, rhs }))
        })
        .collect();
    let mut violations = Vec::new();
    for r in results {
        if let Some(v) = r? {
            violations.push(v);
        }
    }
    Ok(BackcouplingReport { checked: jobs.len(), violations })
}
