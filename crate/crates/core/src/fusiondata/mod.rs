//! Multiplicity-resolved fusion matrices: keys, storage, the line-based data format and
//! the unitarity and backcoupling validators.

mod format;
pub mod synthetic;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::laurent::Surd;
use crate::reptheory::{ChannelTable, RepLabel, ReptheoryError};

pub use format::{format_dataset, load, parse_dataset, LoadOptions};
pub use validate::{
    validate_backcoupling, validate_unitarity, BackcouplingReport, BackcouplingViolation, FrameUnitarity, UnitarityReport,
    UnitarityViolation,
};

#[derive(Debug, Error)]
pub enum FusionError {
    #[error("line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("line {line}: inadmissible key {key}")]
    InadmissibleKey { line: usize, key: String },
    #[error("line {line}: duplicate key {key}")]
    DuplicateKey { line: usize, key: String },
    #[error("unsupported format version {0}")]
    UnsupportedVersion(String),
    #[error("dataset has no entries for frame {0}")]
    MissingFrame(String),
    #[error("inadmissible key {0}")]
    Inadmissible(String),
    #[error(transparent)]
    Rep(#[from] ReptheoryError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub type Result<T> = std::result::Result<T, FusionError>;

/// Ordered outer labels `(R1, R2, R3, R4)` of a four-point block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame(pub [RepLabel; 4]);

impl Frame {
    pub fn new(r1: RepLabel, r2: RepLabel, r3: RepLabel, r4: RepLabel) -> Self {
        Frame([r1, r2, r3, r4])
    }

    /// `(R, Rbar, R, Rbar)`.
    pub fn alternating(r: &RepLabel) -> Self {
        Frame::new(r.clone(), r.conj(), r.clone(), r.conj())
    }

    /// `(Rbar, R, R, Rbar)`.
    pub fn nested(r: &RepLabel) -> Self {
        Frame::new(r.conj(), r.clone(), r.clone(), r.conj())
    }

    pub fn label(&self, i: usize) -> &RepLabel {
        &self.0[i - 1]
    }

    pub fn conj(&self) -> Frame {
        Frame(self.0.clone().map(|l| l.conj()))
    }

    /// Frame after exchanging positions `i` and `i + 1` (1-based).
    pub fn swapped(&self, i: usize) -> Frame {
        let mut f = self.0.clone();
        f.swap(i - 1, i);
        Frame(f)
    }

    /// `|phi^(1)_{t;r3 r4}>`: `t` in `R1 (x) R2` and in `R3bar (x) R4bar`.
    ///
    /// `left` indexes the vertex shared with `(R3, R4)` and `right` the one with
    /// `(R1, R2)`, which is the slot `b1` sees.
    pub fn side_basis(&self, table: &ChannelTable) -> Result<Vec<BasisKey>> {
        let [r1, r2, r3, r4] = &self.0;
        basis(table, (r1, r2), (&r3.conj(), &r4.conj()))
    }

    /// `|phi^(2)_{s;r1 r2}>`: `s` in `R2 (x) R3` and in `R4bar (x) R1bar`.
    pub fn middle_basis(&self, table: &ChannelTable) -> Result<Vec<BasisKey>> {
        let [r1, r2, r3, r4] = &self.0;
        basis(table, (r2, r3), (&r4.conj(), &r1.conj()))
    }
}

/// Multiplicity slots: `right` belongs to `first`, `left` to `second`.
fn basis(table: &ChannelTable, first: (&RepLabel, &RepLabel), second: (&RepLabel, &RepLabel)) -> Result<Vec<BasisKey>> {
    let mut out = Vec::new();
    for t in table.labels(first.0, first.1)? {
        let m1 = table.multiplicity(first.0, first.1, &t);
        let m2 = table.multiplicity(second.0, second.1, &t);
        for left in 0..m2 {
            for right in 0..m1 {
                out.push(BasisKey { channel: t.clone(), left, right });
            }
        }
    }
    Ok(out)
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "{a} {b} {c} {d}")
    }
}

/// Channel with its two multiplicity indices, `channel#left,right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey {
    pub channel: RepLabel,
    pub left: u8,
    pub right: u8,
}

impl BasisKey {
    pub fn new(channel: RepLabel, left: u8, right: u8) -> Self {
        BasisKey { channel, left, right }
    }

    pub fn singlet() -> Self {
        BasisKey::new(RepLabel::singlet(), 0, 0)
    }

    pub fn flipped(&self) -> Self {
        BasisKey { channel: self.channel.clone(), left: self.right, right: self.left }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{},{}", self.channel, self.left, self.right)
    }
}

/// `a^{t; r3 r4}_{s; r1 r2}[frame]`: `side` is `(t; r3 r4)`, `middle` is `(s; r1 r2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionKey {
    pub frame: Frame,
    pub side: BasisKey,
    pub middle: BasisKey,
}

impl fmt::Display for FusionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} -> {}", self.frame, self.side, self.middle)
    }
}

/// Row keys, column keys and entries of one frame.
pub type FrameMatrix = (Vec<BasisKey>, Vec<BasisKey>, Vec<Vec<Surd>>);

/// Sparse fusion matrices. Admissible keys that are not stored are zero.
#[derive(Clone, Debug)]
pub struct FusionDataset {
    table: ChannelTable,
    color: RepLabel,
    entries: BTreeMap<FusionKey, Surd>,
    frames: BTreeSet<Frame>,
}

impl FusionDataset {
    pub fn new(table: ChannelTable, color: RepLabel) -> Self {
        FusionDataset { table, color, entries: BTreeMap::new(), frames: BTreeSet::new() }
    }

    pub fn table(&self) -> &ChannelTable {
        &self.table
    }

    pub fn color(&self) -> &RepLabel {
        &self.color
    }

    pub fn frames(&self) -> impl Iterator<Item = &Frame> {
        self.frames.iter()
    }

    pub fn has_frame(&self, f: &Frame) -> bool {
        self.frames.contains(f)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&FusionKey, &Surd)> {
        self.entries.iter()
    }

    pub fn is_admissible(&self, key: &FusionKey) -> Result<bool> {
        Ok(key.frame.side_basis(&self.table)?.contains(&key.side) && key.frame.middle_basis(&self.table)?.contains(&key.middle))
    }

    /// Marks a frame as present even if all of its entries are zero.
    pub fn declare_frame(&mut self, f: Frame) {
        self.frames.insert(f);
    }

    /// Stores a value. Returns `false` if the key was already present.
    pub fn insert(&mut self, key: FusionKey, value: Surd) -> Result<bool> {
        if !self.is_admissible(&key)? {
            return Err(FusionError::Inadmissible(key.to_string()));
        }
        self.frames.insert(key.frame.clone());
        if self.entries.contains_key(&key) {
            return Ok(false);
        }
        self.entries.insert(key, value);
        Ok(true)
    }

    pub fn get(&self, key: &FusionKey) -> Option<&Surd> {
        self.entries.get(key)
    }

    pub fn set(&mut self, key: FusionKey, value: Surd) {
        self.frames.insert(key.frame.clone());
        self.entries.insert(key, value);
    }

    /// Entry value, complex-conjugated if requested. The conjugate is the matrix element
    /// of the inverse transformation between the same two basis states.
    pub fn lookup(&self, key: &FusionKey, conjugated: bool) -> Result<Surd> {
        if !self.has_frame(&key.frame) {
            return Err(FusionError::MissingFrame(key.frame.to_string()));
        }
        if !self.is_admissible(key)? {
            return Err(FusionError::Inadmissible(key.to_string()));
        }
        let v = self.entries.get(key).cloned().unwrap_or_default();
        Ok(if conjugated { v.conj() } else { v })
    }

    /// Matrix of a frame: rows follow the side basis, columns the middle basis.
    pub fn matrix(&self, frame: &Frame) -> Result<FrameMatrix> {
        if !self.has_frame(frame) {
            return Err(FusionError::MissingFrame(frame.to_string()));
        }
        let rows = frame.side_basis(&self.table)?;
        let cols = frame.middle_basis(&self.table)?;
        let m = rows
            .iter()
            .map(|t| {
                cols.iter()
                    .map(|s| {
                        let k = FusionKey { frame: frame.clone(), side: t.clone(), middle: s.clone() };
                        self.entries.get(&k).cloned().unwrap_or_default()
                    })
                    .collect()
            })
            .collect();
        Ok((rows, cols, m))
    }

    pub(crate) fn entries_mut(&mut self) -> &mut BTreeMap<FusionKey, Surd> {
        &mut self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_bases_for_the_builtin_color() {
        let t = ChannelTable::builtin();
        let r: RepLabel = "(21;0)".parse().unwrap();
        for f in [Frame::alternating(&r), Frame::nested(&r)] {
            assert_eq!(f.side_basis(&t).unwrap().len(), 10, "{f}");
            assert_eq!(f.middle_basis(&t).unwrap().len(), 10, "{f}");
        }
        let nested = Frame::nested(&r).middle_basis(&t).unwrap();
        assert!(nested.iter().all(|k| k.channel.nu.is_empty()));
    }
}
