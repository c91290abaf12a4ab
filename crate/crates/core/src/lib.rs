//! Exact evaluation of colored HOMFLY-PT invariants of knots from multiplicity-resolved
//! fusion matrices, following the multi-boundary conformal-block construction.

pub mod blocks;
pub mod fusiondata;
pub mod knots;
pub mod laurent;
pub mod reptheory;
