//! Composite `U(N)` representation labels, quantum dimensions, tensor channels,
//! 3j phases and braiding eigenvalues.

mod casimir;
mod channels;
mod label;
mod partition;
mod qdim;

pub use casimir::{braiding_eigenvalue, twist, BraidingEigenvalues, CasimirEigenvalues, Eigenvalue, Framing, PhaseEigenvalues};
pub use channels::{ChannelEntry, ChannelTable};
pub use label::{Channel, RepLabel};
pub use partition::Partition;
pub use qdim::{classical_dimension, q_number, quantum_dimension, quantum_dimension_factored, shifted_q_number};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReptheoryError {
    #[error("cannot parse '{input}': {message}")]
    Parse { input: String, message: String },
    #[error("label {label} needs more than {n} rows")]
    LabelTooWide { label: String, n: usize },
    #[error("no decomposition known for {0} (x) {1}")]
    UnknownProduct(String, String),
    #[error("channel {channel} does not occur in {left} (x) {right}")]
    NotInProduct { channel: String, left: String, right: String },
}

/// Irreducible channels of `ri (x) rj` from the builtin `[2,1]` table.
pub fn tensor_channels(ri: &RepLabel, rj: &RepLabel) -> Result<Vec<Channel>, ReptheoryError> {
    Ok(ChannelTable::builtin().channels(ri, rj)?.iter().map(|e| e.channel.clone()).collect())
}

/// 3j phase from the builtin `[2,1]` table.
pub fn three_j_phase(ri: &RepLabel, rj: &RepLabel, ch: &Channel) -> Result<i8, ReptheoryError> {
    ChannelTable::builtin().phase(ri, rj, ch)
}

pub fn composite_to_partition(label: &RepLabel, n: usize) -> Result<Partition, ReptheoryError> {
    label.to_partition(n)
}
