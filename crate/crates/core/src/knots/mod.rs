//! Quasi-plat programs for colored HOMFLY-PT invariants: the built-in Kinoshita-Terasaka,
//! Conway and unknot programs, their evaluation against a fusion dataset, sl(N)
//! specializations and the mutant difference.

mod eval;
pub mod golden;
mod program;
mod structure;

use std::fmt;

use thiserror::Error;

use crate::blocks::BlocksError;
use crate::fusiondata::{FusionDataset, FusionError};
use crate::laurent::{LaurentError, LaurentPoly, Scalar};
use crate::reptheory::{quantum_dimension, RepLabel, ReptheoryError};

pub use eval::{evaluate, evaluate_raw, EvalOptions};
pub use program::{builtin_program, Instruction, TangleProgram};
pub use structure::{term_structure, Factor, SymKey, TermStructure};

#[derive(Debug, Error)]
pub enum KnotsError {
    #[error("line {line}: {message}")]
    IllFormed { line: usize, message: String },
    #[error("unknown built-in program '{0}'")]
    UnknownName(String),
    #[error("program color {program} does not match dataset color {dataset}")]
    ColorMismatch { program: String, dataset: String },
    #[error("leg b{leg}: {message}")]
    Leg { leg: usize, message: String },
    #[error("the invariant does not lower to a Laurent polynomial: {0}")]
    NotLowerable(LaurentError),
    #[error("thread pool: {0}")]
    Threads(String),
    #[error(transparent)]
    Blocks(#[from] BlocksError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Rep(#[from] ReptheoryError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

pub type Result<T> = std::result::Result<T, KnotsError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Unknot normalized to `1`; the unnormalized invariant carries the `dim_q R` prefactor.
    UnknotIsDimension,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknot = dim_q R")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub knot: String,
    pub color: RepLabel,
    /// `P_R(K; a, q)`, with `P(unknot) = 1`.
    pub polynomial: LaurentPoly,
    /// `W_R(K) = dim_q R * P_R(K)`. Not a Laurent polynomial in general.
    pub unnormalized: Scalar,
    pub normalization: Normalization,
}

impl InvariantResult {
    pub(crate) fn new(knot: &str, color: RepLabel, polynomial: LaurentPoly) -> Self {
        let unnormalized = quantum_dimension(&color).mul_poly(&polynomial);
        InvariantResult { knot: knot.to_string(), color, polynomial, unnormalized, normalization: Normalization::UnknotIsDimension }
    }
}

/// `P(a = q^N)`, with a note when the color has at least `N` rows and the value is a
/// formal reduction rather than an sl(N) invariant of that color.
pub fn specialize(r: &InvariantResult, n: i32) -> (LaurentPoly, Option<String>) {
    let warning =
        (n <= r.color.min_rank() as i32).then(|| format!("{} is not an sl({n}) color; the value is a formal substitution", r.color));
    (r.polynomial.substitute_a(n), warning)
}

/// `P(K_KT) - P(K_C)` on the given dataset.
pub fn mutant_difference(ds: &FusionDataset, opts: &EvalOptions) -> Result<LaurentPoly> {
    let kt = evaluate(&builtin_program("kt")?, "kt", ds, opts)?;
    let c = evaluate(&builtin_program("conway")?, "conway", ds, opts)?;
    Ok(&kt.polynomial - &c.polynomial)
}

/// A normalization change `P -> c * m * sigma(P)` with `sigma` one of the four variable
/// inversions and `c * m` a rational monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calibration {
    pub invert_a: bool,
    pub invert_q: bool,
    pub factor: LaurentPoly,
}

impl Calibration {
    pub fn identity() -> Self {
        Calibration { invert_a: false, invert_q: false, factor: LaurentPoly::one() }
    }

    fn inverted(p: &LaurentPoly, invert_a: bool, invert_q: bool) -> LaurentPoly {
        match (invert_a, invert_q) {
            (false, false) => p.clone(),
            (false, true) => p.invert_q(),
            (true, true) => p.invert_all(),
            (true, false) => p.invert_all().invert_q(),
        }
    }

    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        &self.factor * &Self::inverted(p, self.invert_a, self.invert_q)
    }

    /// Finds a calibration taking `computed` to `reference`, trying the identity first.
    pub fn fit(computed: &LaurentPoly, reference: &LaurentPoly) -> Option<Calibration> {
        let (rm, rc) = reference.leading()?;
        for (invert_a, invert_q) in [(false, false), (false, true), (true, false), (true, true)] {
            let p = Self::inverted(computed, invert_a, invert_q);
            let Some((pm, pc)) = p.leading() else { continue };
            let factor = LaurentPoly::monomial(rm / pm, rc / pc);
            if &factor * &p == *reference {
                return Some(Calibration { invert_a, invert_q, factor });
            }
        }
        None
    }

    pub fn is_identity(&self) -> bool {
        !self.invert_a && !self.invert_q && self.factor.is_one()
    }
}

impl fmt::Display for Calibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.invert_a {
            parts.push("a -> 1/a".to_string());
        }
        if self.invert_q {
            parts.push("q -> 1/q".to_string());
        }
        if !self.factor.is_one() {
            parts.push(format!("times {}", self.factor));
        }
        if parts.is_empty() {
            write!(f, "identity")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}
