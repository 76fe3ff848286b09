//! # eofkit
//!
//! Entanglement of formation (EoF) for finite-dimensional bipartite quantum
//! states, computed by minimizing the average reduced-state von Neumann
//! entropy over finite pure-state decompositions.
//!
//! The crate is organized in layers:
//!
//! - [`qstate`] — density matrices, pure states, partial trace / transpose,
//!   Schmidt coefficients, entropy. All other modules build on these.
//! - [`ensembles`] — finite convex decompositions `{(p_i, ψ_i)}` of a state,
//!   their barycenters, and the isometry parameterization that generates
//!   every decomposition of a fixed state from its spectral one.
//! - [`eof`] — the estimator itself: seeded multistart local minimization of
//!   average entanglement over isometries, plus the spectral upper bound,
//!   the CNT subalgebra entropy, and convexity/subadditivity probes.
//! - [`separability`] — the PPT criterion, seeded state samplers, and the
//!   tiles UPB bound-entangled state with its product-overlap search.
//! - [`oracle`] — independent 2×2 ground truth (closed-form concurrence and
//!   a structurally different brute-force search) used to validate `eof`.
//!
//! Entropies are in nats throughout. All randomized operations take an
//! explicit seed and are deterministic for a fixed seed, including under
//! internal parallelism.

pub mod ensembles;
pub mod eof;
pub mod oracle;
pub mod qstate;
pub mod separability;
pub mod tol;

mod linalg;

pub use ensembles::{Ensemble, Isometry};
pub use eof::{EofConfig, EofResult};
pub use qstate::{BipartiteDims, DensityMatrix, PureState, Subsystem};
pub use separability::SeparabilityVerdict;

use thiserror::Error;

/// Crate-wide error type. Display strings start with the invariant name so
/// that diagnostics stay greppable end to end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("NotHermitian: max entrywise |M - M\u{2020}| = {0:.3e} exceeds tolerance")]
    NotHermitian(f64),
    #[error("NotPositive: minimum eigenvalue {0:.6e} below -{1:.0e}")]
    NotPositive(f64, f64),
    #[error("TraceNotOne: trace = {0:.12}, expected 1 within {1:.0e}")]
    TraceNotOne(f64, f64),
    #[error("NotAState: eigenvalue {0:.6e} below the -{1:.0e} clamp")]
    NotAState(f64, f64),
    #[error("NotNormalized: vector norm {0:.12} differs from 1 by more than {1:.0e}")]
    NotNormalized(f64, f64),
    #[error("BadShape: {0}")]
    BadShape(String),
    #[error("BadEnsemble: {0}")]
    BadEnsemble(String),
    #[error("RankMismatch: isometry has {columns} columns but the state has rank {rank}")]
    RankMismatch { columns: usize, rank: usize },
    #[error("ConfigError: {0}")]
    ConfigError(String),
    #[error("ParamOutOfRange: {0}")]
    ParamOutOfRange(String),
    #[error("NotAProjector: {0}")]
    NotAProjector(String),
}

pub type Result<T> = std::result::Result<T, Error>;
