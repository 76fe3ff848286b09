//! Independent 2×2 ground truth for validating the estimator.
//!
//! Two routes that share no search code with [`crate::eof`]:
//!
//! - [`wootters_eof`] — the closed-form concurrence expression for two
//!   qubits, converted to nats;
//! - [`brute_force_eof`] — a direct search over random cardinality-4
//!   decompositions with coordinate-wise derivative-free polishing.
//!
//! The two must agree with each other before either is trusted against the
//! estimator; the Werner family interpolates the crate's two headline
//! states (singlet at p = 1, maximally mixed at p = 0) and is the standard
//! sweep for that comparison.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::ensembles::{average_entanglement, hjw_ensemble, random_isometry, Isometry};
use crate::linalg::{self, ZERO};
use crate::qstate::{BipartiteDims, DensityMatrix, PureState};
use crate::{Error, Result};

/// p·|Ψ−⟩⟨Ψ−| + (1−p)·1/4 on 2×2.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParamOutOfRange(format!(
            "Werner parameter must lie in [0, 1], got {p}"
        )));
    }
    let singlet = PureState::singlet().projector();
    let mixed = DensityMatrix::maximally_mixed(BipartiteDims { d1: 2, d2: 2 });
    DensityMatrix::mix(&singlet, &mixed, p)
}

/// Binary entropy −x ln x − (1−x) ln(1−x) in nats.
fn binary_entropy_nats(x: f64) -> f64 {
    let mut h = 0.0;
    if x > 0.0 {
        h -= x * x.ln();
    }
    if x < 1.0 {
        h -= (1.0 - x) * (1.0 - x).ln();
    }
    h.max(0.0)
}

fn spin_flip() -> DMatrix<Complex64> {
    // σy⊗σy in the computational basis: antidiag(−1, 1, 1, −1)
    let mut f = DMatrix::from_element(4, 4, ZERO);
    f[(0, 3)] = Complex64::new(-1.0, 0.0);
    f[(1, 2)] = Complex64::new(1.0, 0.0);
    f[(2, 1)] = Complex64::new(1.0, 0.0);
    f[(3, 0)] = Complex64::new(-1.0, 0.0);
    f
}

fn hermitian_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = linalg::hermitian_eigen(m);
    let n = m.nrows();
    let mut out = DMatrix::from_element(n, n, ZERO);
    for (k, &lam) in eig.values.iter().enumerate() {
        if lam <= 0.0 {
            continue;
        }
        let s = Complex64::new(lam.sqrt(), 0.0);
        let v = eig.vectors.column(k);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += s * v[i] * v[j].conj();
            }
        }
    }
    out
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    let dims = rho.dims();
    if (dims.d1, dims.d2) != (2, 2) {
        return Err(Error::DimensionMismatch(format!(
            "closed-form two-qubit route needs dims 2x2, got {dims}"
        )));
    }
    Ok(())
}

/// Closed-form two-qubit EoF via the concurrence.
///
/// C = max(0, λ1−λ2−λ3−λ4) where λ_i are the decreasing square roots of the
/// eigenvalues of ρ·(σy⊗σy)ρ*(σy⊗σy), computed here through the Hermitian
/// similarity √ρ·ρ̃·√ρ; the returned value is h((1+√(1−C²))/2) in nats.
pub fn wootters_eof(rho: &DensityMatrix) -> Result<f64> {
    Ok(binary_entropy_nats(
        (1.0 + (1.0 - concurrence(rho)?.powi(2)).max(0.0).sqrt()) / 2.0,
    ))
}

/// The concurrence of a two-qubit state.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let f = spin_flip();
    let conj = rho.entries().map(|z| z.conj());
    let tilde = &f * conj * &f;
    let sqrt_rho = hermitian_sqrt(rho.entries());
    let core = &sqrt_rho * tilde * &sqrt_rho;
    let lambdas: Vec<f64> = linalg::hermitian_eigenvalues(&core)
        .iter()
        .map(|&t| t.max(0.0).sqrt())
        .collect();
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Direct-search upper bound on two-qubit EoF: the minimum average
/// entanglement over `budget` random cardinality-4 decompositions, with the
/// best candidates refined by coordinate-wise derivative-free polishing
/// (bump one real or imaginary entry, re-orthonormalize, keep on
/// improvement). Converges to the true EoF from above as the budget grows;
/// shares no optimizer code with the estimator.
pub fn brute_force_eof(rho: &DensityMatrix, budget: usize, seed: u64) -> Result<f64> {
    require_two_qubits(rho)?;
    if budget == 0 {
        return Err(Error::ParamOutOfRange("budget must be at least 1".into()));
    }
    let rank = rho.rank();
    let evaluate = |u: &Isometry| -> f64 {
        average_entanglement(&hjw_ensemble(rho, u).expect("matching rank by construction"))
    };

    let mut sampled: Vec<(usize, f64, Isometry)> = (0..budget)
        .into_par_iter()
        .map(|t| {
            let u = random_isometry(4, rank, linalg::derive_seed(seed, t as u64))
                .expect("4 ≥ rank for two-qubit states");
            let v = evaluate(&u);
            (t, v, u)
        })
        .collect();
    sampled.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));

    let candidates = sampled.len().min(3);
    let mut best = sampled[0].1;
    for (_, start_value, start) in sampled.into_iter().take(candidates) {
        let polished = polish(start, start_value, &evaluate, rank);
        if polished < best {
            best = polished;
        }
    }
    Ok(best)
}

/// Cyclic coordinate descent over the real and imaginary parts of the
/// isometry entries with step halving. Pure function evaluations only.
fn polish<F: Fn(&Isometry) -> f64>(
    start: Isometry,
    start_value: f64,
    evaluate: &F,
    rank: usize,
) -> f64 {
    let mut u = start.entries().clone();
    let mut value = start_value;
    let mut step = 0.25;
    let mut sweeps = 0;
    while step > 1e-5 && sweeps < 60 {
        sweeps += 1;
        let mut improved = false;
        for i in 0..4 {
            for j in 0..rank {
                for part in 0..2 {
                    for sign in [1.0, -1.0] {
                        let delta = if part == 0 {
                            Complex64::new(sign * step, 0.0)
                        } else {
                            Complex64::new(0.0, sign * step)
                        };
                        let mut cand = u.clone();
                        cand[(i, j)] += delta;
                        if linalg::orthonormalize_columns(&mut cand).is_err() {
                            continue;
                        }
                        let iso = match Isometry::new(cand) {
                            Ok(iso) => iso,
                            Err(_) => continue,
                        };
                        let v = evaluate(&iso);
                        if v < value - 1e-12 {
                            value = v;
                            u = iso.entries().clone();
                            improved = true;
                        }
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    value
}
