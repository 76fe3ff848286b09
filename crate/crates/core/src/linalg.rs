//! Internal dense complex linear algebra kernels.
//!
//! Everything spectral goes through [`hermitian_eigen`], which symmetrizes
//! its input first, so the rest of the crate never has to reason about
//! near-Hermitian noise.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::tol;
use crate::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// (M + M†)/2.
pub(crate) fn symmetrize(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()).scale(0.5)
}

pub(crate) fn max_abs_asymmetry(m: &DMatrix<Complex64>) -> f64 {
    let adj = m.adjoint();
    (m - adj).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
pub(crate) struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

/// Symmetrizes, then diagonalizes. The single spectral primitive of the crate.
pub(crate) fn hermitian_eigen(m: &DMatrix<Complex64>) -> HermitianEigen {
    let se = symmetrize(m).symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].total_cmp(&se.eigenvalues[a]));
    let values: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    HermitianEigen { values, vectors }
}

/// Eigenvalues only, sorted descending.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut vals: Vec<f64> = symmetrize(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// −Σ λ ln λ with 0·ln 0 := 0. Eigenvalues in [−EIGEN_CLAMP, 0) are clamped
/// to zero; anything below that is rejected.
pub(crate) fn entropy_from_eigenvalues<I: IntoIterator<Item = f64>>(vals: I) -> Result<f64> {
    let mut s = 0.0;
    for v in vals {
        if v < -tol::EIGEN_CLAMP {
            return Err(Error::NotAState(v, tol::EIGEN_CLAMP));
        }
        if v > 0.0 {
            s -= v * v.ln();
        }
    }
    Ok(s.max(0.0))
}

/// Modified Gram-Schmidt with a reorthogonalization pass. Columns must be
/// linearly independent to working precision.
pub(crate) fn orthonormalize_columns(m: &mut DMatrix<Complex64>) -> Result<()> {
    let (rows, cols) = m.shape();
    if cols > rows {
        return Err(Error::BadShape(format!(
            "cannot orthonormalize {cols} columns in dimension {rows}"
        )));
    }
    for j in 0..cols {
        // twice is enough
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex64 = m.column(k).dotc(&m.column(j));
                let sub = m.column(k) * proj;
                let mut col = m.column_mut(j);
                col -= sub;
            }
        }
        let norm = m.column(j).norm();
        if norm < 1e-13 {
            return Err(Error::BadShape(format!(
                "column {j} became numerically dependent during orthonormalization"
            )));
        }
        m.column_mut(j).unscale_mut(norm);
    }
    Ok(())
}

/// Deterministic rng for a seed.
pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// splitmix64 step, used to derive independent per-index seeds from a master
/// seed so that nested restart prefixes see identical streams.
pub(crate) fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub(crate) fn complex_gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

/// Gaussian unit vector (Haar-distributed direction).
pub(crate) fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> DVector<Complex64> {
    loop {
        let mut v = DVector::from_fn(dim, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        });
        let norm = v.norm();
        if norm > 1e-12 {
            v.unscale_mut(norm);
            return v;
        }
    }
}
