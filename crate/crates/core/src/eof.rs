//! The EoF estimator.
//!
//! EoF of a state ρ is the infimum of the average reduced-state entropy over
//! finite pure-state decompositions of ρ. In finite dimension the infimum is
//! attained by a decomposition of bounded cardinality, so the estimator
//! searches the space of cardinality-m decompositions directly: that space
//! is exactly the set of m×r column-orthonormal matrices applied to the
//! spectral decomposition (see [`crate::ensembles::hjw_ensemble`]), so local
//! moves only have to preserve column orthonormality and no feasibility
//! penalty is needed.
//!
//! The local method is projected gradient descent with a backtracking line
//! search and re-orthonormalization after each step; the objective is
//! monotone nonincreasing per iteration and every run is deterministic for a
//! fixed seed. Restarts are independent (the first always starts from the
//! spectral decomposition, which also pins the estimate at or under the
//! orthogonal-decomposition value), and the reported value is the minimum
//! over restarts — an upper bound on the true EoF, exact for pure states.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::ensembles::{
    average_entanglement, grouped_product_ensemble, hjw_ensemble, member_entanglement,
    mix_ensembles, spectral_ensemble, Ensemble, Isometry, Spectral,
};
use crate::linalg::{self, ZERO};
use crate::qstate::{
    partial_trace, permute_to_grouped, tensor_product, von_neumann_entropy, DensityMatrix,
    PureState, Subsystem,
};
use crate::{Error, Result};

/// Knobs for [`eof_estimate`]. `cardinality` defaults to rank², the standard
/// sufficiency bound for optimal finite-dimensional decompositions; it may
/// be raised up to the simplicial support bound (2·d1·d2)² + 1.
#[derive(Debug, Clone)]
pub struct EofConfig {
    /// Decomposition size m; `None` means rank².
    pub cardinality: Option<usize>,
    /// Independent local minimizations (the first is the spectral start).
    pub restarts: usize,
    /// Iteration cap per restart.
    pub max_iterations: usize,
    /// Stop a restart when the per-iteration improvement falls below this.
    pub objective_tolerance: f64,
    /// Master seed; restart i starts from a seed derived from (seed, i).
    pub seed: u64,
}

impl Default for EofConfig {
    fn default() -> Self {
        Self {
            cardinality: None,
            restarts: 32,
            max_iterations: 2000,
            objective_tolerance: 1e-8,
            seed: 0,
        }
    }
}

impl EofConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Support-size ceiling for decompositions on an n-dimensional space.
    pub fn max_cardinality(total_dim: usize) -> usize {
        (2 * total_dim) * (2 * total_dim) + 1
    }

    fn resolve(&self, rank: usize, total_dim: usize) -> Result<usize> {
        if self.restarts == 0 {
            return Err(Error::ConfigError("restarts must be at least 1".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::ConfigError(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.objective_tolerance > 0.0) {
            return Err(Error::ConfigError(
                "objective_tolerance must be positive".into(),
            ));
        }
        let m = self.cardinality.unwrap_or(rank * rank);
        if m < rank {
            return Err(Error::ConfigError(format!(
                "cardinality {m} is below the state rank {rank}"
            )));
        }
        let cap = Self::max_cardinality(total_dim);
        if m > cap {
            return Err(Error::ConfigError(format!(
                "cardinality {m} exceeds the support bound {cap}"
            )));
        }
        Ok(m)
    }
}

/// Outcome of an estimate: best value found, the decomposition witnessing
/// it, the value reached by each restart, and whether the winning restart
/// stopped on tolerance rather than the iteration cap.
#[derive(Debug, Clone)]
pub struct EofResult {
    pub value: f64,
    pub witness: Ensemble,
    pub per_restart_values: Vec<f64>,
    pub converged: bool,
}

/// Average entanglement of the decomposition generated by an arbitrary m×r
/// coefficient matrix against the spectral basis of a fixed state.
///
/// On column-orthonormal input this is exactly the ensemble objective the
/// estimator minimizes; it extends smoothly to arbitrary matrices, which is
/// what makes unconstrained finite-difference checks of the gradient
/// meaningful.
pub struct DecompositionObjective {
    d1: usize,
    d2: usize,
    basis: DMatrix<Complex64>,
}

impl DecompositionObjective {
    pub fn new(rho: &DensityMatrix) -> Self {
        let spectral = Spectral::of(rho);
        Self {
            d1: rho.dims().d1,
            d2: rho.dims().d2,
            basis: spectral.scaled_basis(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    fn member_matrix(&self, w: nalgebra::DVectorView<Complex64>) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.d1, self.d2, |i1, i2| w[i1 * self.d2 + i2])
    }

    /// Σ_i S̃(A_i A_i†) with S̃(M) = −Tr M ln M + (Tr M) ln Tr M, summed over
    /// the unnormalized members A_i selected by the coefficient rows.
    pub fn value(&self, coeffs: &DMatrix<Complex64>) -> f64 {
        let unnormalized = &self.basis * coeffs.transpose();
        let mut total = 0.0;
        for i in 0..unnormalized.ncols() {
            let a = self.member_matrix(unnormalized.column(i));
            let reduced = &a * a.adjoint();
            let mut p = 0.0;
            let mut s = 0.0;
            for mu in linalg::hermitian_eigenvalues(&reduced) {
                if mu > 0.0 {
                    p += mu;
                    s -= mu * mu.ln();
                }
            }
            if p > 1e-30 {
                total += s + p * p.ln();
            }
        }
        total
    }

    /// Value plus the Euclidean gradient with respect to the matrix entries
    /// (∂/∂Re + i·∂/∂Im convention).
    pub fn value_and_gradient(&self, coeffs: &DMatrix<Complex64>) -> (f64, DMatrix<Complex64>) {
        let m = coeffs.nrows();
        let n = self.basis.nrows();
        let unnormalized = &self.basis * coeffs.transpose();
        let mut total = 0.0;
        // columns hold vec(G_i A_i) with G_i = ln(Tr M_i) − ln M_i
        let mut scaled = DMatrix::from_element(n, m, ZERO);
        for i in 0..m {
            let a = self.member_matrix(unnormalized.column(i));
            let reduced = &a * a.adjoint();
            let eig = linalg::hermitian_eigen(&reduced);
            let p: f64 = eig.values.iter().filter(|&&mu| mu > 0.0).sum();
            if p <= 1e-30 {
                continue;
            }
            let mut s = 0.0;
            let mut ga = DMatrix::from_element(self.d1, self.d2, ZERO);
            for (k, &mu) in eig.values.iter().enumerate() {
                if mu <= 0.0 {
                    continue;
                }
                s -= mu * mu.ln();
                // directions with negligible weight contribute O(√μ ln μ)
                if mu <= p * 1e-16 {
                    continue;
                }
                let coeff = Complex64::new(p.ln() - mu.ln(), 0.0);
                let v = eig.vectors.column(k);
                let overlap = v.adjoint() * &a; // 1×d2
                for i2 in 0..self.d2 {
                    let w = coeff * overlap[(0, i2)];
                    for i1 in 0..self.d1 {
                        ga[(i1, i2)] += v[i1] * w;
                    }
                }
            }
            total += s + p * p.ln();
            for i1 in 0..self.d1 {
                for i2 in 0..self.d2 {
                    scaled[(i1 * self.d2 + i2, i)] = ga[(i1, i2)];
                }
            }
        }
        let gradient = (self.basis.adjoint() * scaled).transpose().scale(2.0);
        (total, gradient)
    }
}

struct RestartOutcome {
    value: f64,
    coeffs: DMatrix<Complex64>,
    converged: bool,
}

/// Projected gradient descent on the column-orthonormal manifold, monotone
/// nonincreasing in the objective.
fn minimize_from(
    obj: &DecompositionObjective,
    start: DMatrix<Complex64>,
    max_iterations: usize,
    objective_tolerance: f64,
) -> RestartOutcome {
    let mut u = start;
    let (mut f, mut grad) = obj.value_and_gradient(&u);
    let mut step = 0.5;
    let mut converged = false;
    for _ in 0..max_iterations {
        // tangent-space projection: Γ − U·herm(U†Γ)
        let utg = u.adjoint() * &grad;
        let herm = (&utg + utg.adjoint()).scale(0.5);
        let rgrad = &grad - &u * herm;
        let g2 = rgrad.norm_squared();
        if g2.sqrt() < 1e-11 {
            converged = true;
            break;
        }
        let mut t = step;
        let mut accepted = false;
        for _ in 0..50 {
            let mut cand = &u - rgrad.scale(t);
            if linalg::orthonormalize_columns(&mut cand).is_ok() {
                let fc = obj.value(&cand);
                if fc <= f - 1e-4 * t * g2 {
                    let improvement = f - fc;
                    u = cand;
                    f = fc;
                    accepted = true;
                    step = (t * 2.0).min(4.0);
                    if improvement < objective_tolerance {
                        converged = true;
                    }
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            // no admissible descent step at floating-point resolution
            converged = true;
            break;
        }
        if converged {
            break;
        }
        let refreshed = obj.value_and_gradient(&u);
        f = refreshed.0;
        grad = refreshed.1;
    }
    RestartOutcome {
        value: f,
        coeffs: u,
        converged,
    }
}

fn spectral_start(m: usize, r: usize) -> DMatrix<Complex64> {
    let mut u = DMatrix::from_element(m, r, ZERO);
    for j in 0..r {
        u[(j, j)] = linalg::ONE;
    }
    u
}

fn random_start(m: usize, r: usize, seed: u64) -> DMatrix<Complex64> {
    let mut rng = linalg::rng_for(seed);
    let mut g = linalg::complex_gaussian(&mut rng, m, r);
    linalg::orthonormalize_columns(&mut g).expect("Gaussian columns are independent");
    g
}

/// Best value over `cfg.restarts` independent local minimizations, each
/// seeded deterministically from (cfg.seed, restart index). The result is an
/// upper bound on the true EoF; rank-one inputs bypass the search entirely
/// since their decomposition is unique.
pub fn eof_estimate(rho: &DensityMatrix, cfg: &EofConfig) -> Result<EofResult> {
    eof_estimate_with_starts(rho, cfg, &[])
}

/// [`eof_estimate`] with extra warm candidates. Each warm ensemble is kept
/// as a candidate verbatim, so the reported value never exceeds the average
/// entanglement of any warm start; warm entries are appended after the
/// regular restarts in `per_restart_values`.
pub fn eof_estimate_with_starts(
    rho: &DensityMatrix,
    cfg: &EofConfig,
    warm: &[Ensemble],
) -> Result<EofResult> {
    let spectral = Spectral::of(rho);
    let rank = spectral.rank();
    let n = rho.total_dim();
    let m = cfg.resolve(rank, n)?;

    if rank <= 1 {
        let member = PureState::normalized(spectral.vectors.column(0).into_owned(), rho.dims())?;
        let value = member_entanglement(&member);
        return Ok(EofResult {
            value,
            witness: Ensemble::single(member),
            per_restart_values: vec![value],
            converged: true,
        });
    }
    let obj = DecompositionObjective {
        d1: rho.dims().d1,
        d2: rho.dims().d2,
        basis: spectral.scaled_basis(),
    };

    for e in warm {
        if e.dims() != rho.dims() {
            return Err(Error::DimensionMismatch(format!(
                "warm-start ensemble lives on {}, state on {}",
                e.dims(),
                rho.dims()
            )));
        }
    }
    let mut starts: Vec<DMatrix<Complex64>> = Vec::with_capacity(cfg.restarts);
    starts.push(spectral_start(m, rank));
    for i in 1..cfg.restarts {
        starts.push(random_start(m, rank, linalg::derive_seed(cfg.seed, i as u64)));
    }

    let outcomes: Vec<RestartOutcome> = starts
        .into_par_iter()
        .map(|s| minimize_from(&obj, s, cfg.max_iterations, cfg.objective_tolerance))
        .collect();

    // raw objective values for the optimized restarts, exact ensemble
    // averages for the warm candidates
    let mut per_restart_values: Vec<f64> = outcomes.iter().map(|o| o.value).collect();
    per_restart_values.extend(warm.iter().map(average_entanglement));

    // settle on the minimum entry. For an optimized restart the reported
    // value is re-derived from its witness ensemble (dropping dead members
    // shifts it by at most floating-point dust, in either direction), so
    // entries are overwritten with their witness averages until the minimum
    // is witness-backed. Each entry is finalized at most once.
    let mut finalized = vec![false; per_restart_values.len()];
    for k in outcomes.len()..per_restart_values.len() {
        finalized[k] = true;
    }
    let mut witnesses: Vec<Option<Ensemble>> = vec![None; outcomes.len()];
    let chosen = loop {
        let mut idx = 0;
        for (i, v) in per_restart_values.iter().enumerate() {
            if *v < per_restart_values[idx] {
                idx = i;
            }
        }
        if finalized[idx] {
            break idx;
        }
        let u = Isometry::new(outcomes[idx].coeffs.clone())?;
        let w = hjw_ensemble(rho, &u)?;
        per_restart_values[idx] = average_entanglement(&w);
        witnesses[idx] = Some(w);
        finalized[idx] = true;
    };

    let value = per_restart_values[chosen];
    let (witness, converged) = if chosen < outcomes.len() {
        let w = witnesses[chosen]
            .take()
            .expect("finalized optimized entries carry their witness");
        (w, outcomes[chosen].converged)
    } else {
        (warm[chosen - outcomes.len()].clone(), true)
    };

    Ok(EofResult {
        value,
        witness,
        per_restart_values,
        converged,
    })
}

/// Average entanglement of the spectral (orthogonal) decomposition: the
/// infimum over orthogonal decompositions never beats the infimum over all
/// of them, so this always sits at or above [`eof_estimate`].
pub fn spectral_upper_bound(rho: &DensityMatrix) -> f64 {
    average_entanglement(&spectral_ensemble(rho))
}

/// The subalgebra entropy S(rρ) − E(ρ): entropy of the reduced state minus
/// the entanglement of formation. Zero for pure states, S(rρ) for separable
/// ones.
pub fn cnt_entropy(rho: &DensityMatrix, cfg: &EofConfig) -> Result<f64> {
    let reduced_entropy = von_neumann_entropy(&partial_trace(rho, Subsystem::First))?;
    let estimate = eof_estimate(rho, cfg)?;
    Ok(reduced_entropy - estimate.value)
}

/// λ·E(ρ1) + (1−λ)·E(ρ2) − E(λρ1 + (1−λ)ρ2). The mixture estimate warm-
/// starts from the mixed witnesses of the two endpoint estimates, so the
/// reported gap cannot drop below zero by more than floating-point dust.
pub fn convexity_gap(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    lambda: f64,
    cfg: &EofConfig,
) -> Result<f64> {
    if rho1.dims() != rho2.dims() {
        return Err(Error::DimensionMismatch(format!(
            "convexity gap needs equal dims, got {} and {}",
            rho1.dims(),
            rho2.dims()
        )));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::ParamOutOfRange(format!(
            "mixing weight must lie in [0, 1], got {lambda}"
        )));
    }
    let left = eof_estimate(rho1, cfg)?;
    let right = eof_estimate(rho2, cfg)?;
    let mixture = DensityMatrix::mix(rho1, rho2, lambda)?;
    let warm = mix_ensembles(&left.witness, &right.witness, lambda)?;
    let mixed = eof_estimate_with_starts(&mixture, cfg, &[warm])?;
    Ok(lambda * left.value + (1.0 - lambda) * right.value - mixed.value)
}

/// Outcome of the doubled-state comparison E(ω⊗ω) vs 2·E(ω).
#[derive(Debug, Clone, Copy)]
pub struct SubadditivityCheck {
    /// Estimate for the single copy.
    pub single: f64,
    /// Estimate for the grouped two-copy state.
    pub doubled: f64,
}

impl SubadditivityCheck {
    /// doubled − 2·single; at most numerical slack above zero is expected,
    /// and for pure states the two sides agree since reduced entropies add.
    pub fn excess(&self) -> f64 {
        self.doubled - 2.0 * self.single
    }
}

/// Estimate E(ρ) and E(ρ⊗ρ) on the grouped (H1⊗H1 | H2⊗H2) bipartition. The
/// two-copy estimate warm-starts from the product of the single-copy witness
/// with itself, whose average is exactly twice the single-copy value. The
/// doubled estimate resolves its own default cardinality (rank of ρ⊗ρ,
/// squared) regardless of `cfg.cardinality`.
pub fn subadditivity_check(rho: &DensityMatrix, cfg: &EofConfig) -> Result<SubadditivityCheck> {
    let single = eof_estimate(rho, cfg)?;
    let dims = rho.dims();
    let grouped = permute_to_grouped(
        &tensor_product(rho, rho),
        [dims.d1, dims.d2, dims.d1, dims.d2],
    )?;
    let warm = grouped_product_ensemble(&single.witness, &single.witness)?;
    let mut doubled_cfg = cfg.clone();
    doubled_cfg.cardinality = None;
    let doubled = eof_estimate_with_starts(&grouped, &doubled_cfg, &[warm])?;
    Ok(SubadditivityCheck {
        single: single.value,
        doubled: doubled.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{barycenter, random_isometry};
    use crate::qstate::BipartiteDims;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::LN_2;

    fn werner(p: f64) -> DensityMatrix {
        let singlet = PureState::singlet().projector();
        let mixed = DensityMatrix::maximally_mixed(BipartiteDims { d1: 2, d2: 2 });
        DensityMatrix::mix(&singlet, &mixed, p).unwrap()
    }

    fn random_state(seed: u64, dims: BipartiteDims, rank: usize) -> DensityMatrix {
        let mut rng = crate::linalg::rng_for(seed);
        let g = crate::linalg::complex_gaussian(&mut rng, dims.total(), rank);
        let m = &g * g.adjoint();
        let tr = m.trace().re;
        DensityMatrix::new(m.unscale(tr), dims).unwrap()
    }

    fn quick_cfg(seed: u64) -> EofConfig {
        EofConfig {
            restarts: 8,
            ..EofConfig::with_seed(seed)
        }
    }

    #[test]
    fn singlet_estimate_is_ln2_exactly() {
        let rho = PureState::singlet().projector();
        let res = eof_estimate(&rho, &EofConfig::default()).unwrap();
        assert_abs_diff_eq!(res.value, LN_2, epsilon = 1e-12);
        assert!(res.converged);
        assert_eq!(res.witness.len(), 1);
    }

    #[test]
    fn maximally_entangled_estimates_hit_ln_d() {
        for d in 2..=4 {
            let rho = PureState::maximally_entangled(d).unwrap().projector();
            let res = eof_estimate(&rho, &EofConfig::default()).unwrap();
            assert_abs_diff_eq!(res.value, (d as f64).ln(), epsilon = 1e-10);
        }
    }

    #[test]
    fn cardinality_below_rank_is_a_config_error() {
        let rho = werner(0.8);
        let cfg = EofConfig {
            cardinality: Some(2),
            ..EofConfig::default()
        };
        match eof_estimate(&rho, &cfg) {
            Err(Error::ConfigError(_)) => {}
            other => panic!("expected ConfigError, got {other:?}"),
        }
    }

    #[test]
    fn witness_invariants_hold() {
        let rho = random_state(3, BipartiteDims { d1: 2, d2: 2 }, 3);
        let cfg = quick_cfg(5);
        let res = eof_estimate(&rho, &cfg).unwrap();
        assert_abs_diff_eq!(
            res.value,
            average_entanglement(&res.witness),
            epsilon = 1e-10
        );
        let min_restart = res
            .per_restart_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        assert_eq!(res.value, min_restart);
        assert!(barycenter(&res.witness).unwrap().max_entry_distance(&rho) < 1e-8);
        assert!(res.witness.len() <= 9);
        assert!(res.value >= 0.0);
        assert!(res.value <= 2f64.ln() + 1e-9);
    }

    #[test]
    fn estimate_never_exceeds_spectral_bound() {
        for seed in 0..5 {
            let rho = random_state(100 + seed, BipartiteDims { d1: 2, d2: 3 }, 4);
            let res = eof_estimate(&rho, &quick_cfg(seed)).unwrap();
            assert!(res.value <= spectral_upper_bound(&rho) + 1e-8);
        }
    }

    #[test]
    fn restart_monotonicity_under_nested_seeds() {
        let rho = random_state(7, BipartiteDims { d1: 2, d2: 2 }, 4);
        let few = eof_estimate(
            &rho,
            &EofConfig {
                restarts: 3,
                ..EofConfig::with_seed(11)
            },
        )
        .unwrap();
        let many = eof_estimate(
            &rho,
            &EofConfig {
                restarts: 9,
                ..EofConfig::with_seed(11)
            },
        )
        .unwrap();
        assert!(many.value <= few.value + 1e-12);
        // shared restart prefix sees identical seeds; entries differ only by
        // the witness-average rederivation of whichever entry won its run
        for (a, b) in few
            .per_restart_values
            .iter()
            .zip(many.per_restart_values.iter())
        {
            assert!((a - b).abs() <= 1e-12, "prefix entries drifted: {a} vs {b}");
        }
    }

    #[test]
    fn determinism_across_calls() {
        let rho = random_state(13, BipartiteDims { d1: 2, d2: 2 }, 4);
        let a = eof_estimate(&rho, &quick_cfg(21)).unwrap();
        let b = eof_estimate(&rho, &quick_cfg(21)).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.per_restart_values, b.per_restart_values);
    }

    #[test]
    fn warm_start_is_an_exact_upper_bound() {
        let rho = werner(0.8);
        let warm = spectral_ensemble(&rho);
        let res = eof_estimate_with_starts(&rho, &quick_cfg(2), &[warm.clone()]).unwrap();
        assert!(res.value <= average_entanglement(&warm) + 1e-12);
    }

    #[test]
    fn spectral_bound_examples() {
        // the degenerate eigenspace basis is solver-chosen; the bound sits
        // between the contribution of the nondegenerate singlet eigenvector
        // and the global ceiling
        let sb = spectral_upper_bound(&werner(0.8));
        assert!(sb >= 0.85 * LN_2 - 1e-10 && sb <= LN_2 + 1e-10, "bound {sb}");
        // a pure state's spectral bound is its reduced entropy
        let psi = PureState::singlet().projector();
        assert_abs_diff_eq!(spectral_upper_bound(&psi), LN_2, epsilon = 1e-12);
        // separable diagonal mixture of products has a product eigenbasis
        let dims = BipartiteDims { d1: 2, d2: 2 };
        let mut entries = DMatrix::from_element(4, 4, ZERO);
        entries[(0, 0)] = Complex64::new(0.5, 0.0);
        entries[(3, 3)] = Complex64::new(0.5, 0.0);
        let diag = DensityMatrix::new(entries, dims).unwrap();
        assert_abs_diff_eq!(spectral_upper_bound(&diag), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn cnt_entropy_of_pure_states_vanishes() {
        let cfg = EofConfig::default();
        let singlet = PureState::singlet().projector();
        assert_abs_diff_eq!(cnt_entropy(&singlet, &cfg).unwrap(), 0.0, epsilon = 1e-9);
        let a = nalgebra::DVector::from_vec(vec![crate::linalg::ONE, ZERO]);
        let product = PureState::product(&a, &a).unwrap().projector();
        assert_abs_diff_eq!(cnt_entropy(&product, &cfg).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn convexity_gap_edge_cases() {
        let cfg = quick_cfg(31);
        let rho1 = werner(0.8);
        let rho2 = random_state(41, BipartiteDims { d1: 2, d2: 2 }, 2);
        let gap_same = convexity_gap(&rho1, &rho1, 0.37, &cfg).unwrap();
        assert!(gap_same.abs() < 1e-8, "gap for identical states: {gap_same}");
        let gap_lambda_one = convexity_gap(&rho1, &rho2, 1.0, &cfg).unwrap();
        assert!(gap_lambda_one.abs() < 1e-10, "gap at λ=1: {gap_lambda_one}");
    }

    #[test]
    fn analytic_gradient_matches_central_differences() {
        let rho = random_state(97, BipartiteDims { d1: 2, d2: 3 }, 4);
        let obj = DecompositionObjective::new(&rho);
        let r = obj.rank();
        let m = r + 2;
        let h = 1e-6;
        for point in 0..20 {
            let u = random_isometry(m, r, 1000 + point)
                .unwrap()
                .entries()
                .clone();
            let (_, grad) = obj.value_and_gradient(&u);
            for i in 0..m {
                for j in 0..r {
                    for part in 0..2 {
                        let delta = if part == 0 {
                            Complex64::new(h, 0.0)
                        } else {
                            Complex64::new(0.0, h)
                        };
                        let mut plus = u.clone();
                        plus[(i, j)] += delta;
                        let mut minus = u.clone();
                        minus[(i, j)] -= delta;
                        let fd = (obj.value(&plus) - obj.value(&minus)) / (2.0 * h);
                        let analytic = if part == 0 {
                            grad[(i, j)].re
                        } else {
                            grad[(i, j)].im
                        };
                        let scale = fd.abs().max(analytic.abs()).max(1e-4);
                        assert!(
                            (fd - analytic).abs() <= 1e-4 * scale,
                            "point {point} entry ({i},{j}) part {part}: fd={fd}, analytic={analytic}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn objective_matches_ensemble_average_on_isometries() {
        let rho = random_state(51, BipartiteDims { d1: 2, d2: 2 }, 3);
        let obj = DecompositionObjective::new(&rho);
        let u = random_isometry(6, obj.rank(), 8).unwrap();
        let via_obj = obj.value(u.entries());
        let via_ensemble = average_entanglement(&hjw_ensemble(&rho, &u).unwrap());
        assert_abs_diff_eq!(via_obj, via_ensemble, epsilon = 1e-10);
    }
}
