//! Crate-wide error type.
//!
//! Expected failure modes get their own variants so callers (and the CLI) can
//! map them to exit codes and messages without string matching.

use thiserror::Error;

/// Any failure the engine can report.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A scalar with positive valuation was used where a unit of `O` is
    /// required.
    #[error("not a unit of O: valuation of {value} at p={p} is positive")]
    NotAUnit { value: String, p: u64 },

    /// A linear system has no solution over `O` (either inconsistent over the
    /// fraction field or solvable only with denominators divisible by `p`).
    #[error("linear system has no solution over O")]
    NoSolution,

    /// `p` is not prime, or a configuration invariant is violated.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A module or lattice failed a structural invariant (actions do not
    /// square to zero, do not commute, wrong shape, ...).
    #[error("structural invariant violated: {0}")]
    Invariant(String),

    /// Classification over `kappa = F_p` hit an eigenvalue living in a proper
    /// extension field; the offending irreducible factor is reported as
    /// coefficients of a monic polynomial in ascending degree.
    #[error("pencil eigenvalue is irreducible over F_{p}: monic factor with coefficients {factor:?}")]
    IrreducibleOverPrimeField { p: u64, factor: Vec<u64> },

    /// A Heller-type construction was asked for a projective input.
    #[error("input is projective: {0}")]
    ProjectiveInput(String),

    /// No endomorphism satisfying the almost-split selection conditions was
    /// found in the search space.
    #[error("no suitable non-factoring endomorphism found for {0}")]
    NoPhiFound(String),

    /// The constructed sequence failed one of its post-hoc certificates.
    #[error("almost split sequence verification failed: {0}")]
    NotAlmostSplit(String),

    /// Indecomposable splitting gave up: an idempotent refused to lift to an
    /// exact direct-sum decomposition within the precision budget.
    #[error("splitting failed at precision {precision}: {detail}")]
    SplitFailed { precision: u32, detail: String },

    /// Isomorphism sampling exhausted its budget with matching invariants but
    /// no certified witness, at a prime too small to conclude non-isomorphism.
    #[error(
        "isomorphism test inconclusive after {samples} samples: invariants match but p={p} is below the recommended bound {bound}"
    )]
    Inconclusive { samples: u32, p: u64, bound: u64 },

    /// Label or file input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}
