//! Numerical tolerances used across the crate.
//!
//! Double precision leaves plenty of headroom at the dimensions this crate
//! targets (total dimension ≤ ~32), so the tolerances split into three bands:
//! ingestion checks at 1e-9, spectral thresholds at 1e-10, and identities
//! that are exact up to rounding at 1e-12.

/// Hermiticity check on ingestion: max entrywise |M − M†|.
pub const HERMITICITY: f64 = 1e-9;

/// Positive semidefiniteness on ingestion: minimum eigenvalue ≥ −PSD.
pub const PSD: f64 = 1e-9;

/// Trace-one check on ingestion.
pub const TRACE: f64 = 1e-9;

/// Unit-norm check for pure-state amplitudes.
pub const PURE_NORM: f64 = 1e-12;

/// Eigenvalues in [−EIGEN_CLAMP, 0) are clamped to 0 before entropies;
/// anything below −EIGEN_CLAMP is rejected as not a state.
pub const EIGEN_CLAMP: f64 = 1e-10;

/// Spectral rank threshold: eigenvalues ≤ RANK are treated as zero.
pub const RANK: f64 = 1e-10;

/// Column-orthonormality check for isometries: max |U†U − I| entry.
pub const ISOMETRY: f64 = 1e-10;

/// Ensemble weights must sum to 1 within this.
pub const WEIGHT_SUM: f64 = 1e-10;

/// Ensemble members with weight ≤ WEIGHT_DROP are dropped.
pub const WEIGHT_DROP: f64 = 1e-12;

/// Identities that hold exactly in algebra (partial-transpose invariance of
/// the reduced state, trace preservation, mixing linearity).
pub const EXACT: f64 = 1e-12;
