//! Finite pure-state decompositions of a density matrix.
//!
//! An [`Ensemble`] is a finite convex decomposition `{(p_i, ψ_i)}` whose
//! barycenter Σ p_i |ψ_i⟩⟨ψ_i| reproduces a state. Every decomposition of a
//! fixed ρ with m members arises from an m×r column-orthonormal matrix U
//! applied to the spectral decomposition, via
//! √p_i ψ_i = Σ_j U_ij √λ_j e_j — this is what [`hjw_ensemble`] computes and
//! what the optimizer in [`crate::eof`] searches over.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::linalg::{self, ZERO};
use crate::qstate::{
    permute_pure_to_grouped, BipartiteDims, DensityMatrix, PureState,
};
use crate::tol;
use crate::{Error, Result};

/// Finite convex decomposition into pure states.
///
/// Invariants: weights are positive (members at or below
/// [`tol::WEIGHT_DROP`] are dropped on construction), sum to 1 within
/// [`tol::WEIGHT_SUM`], and all members share one bipartition.
#[derive(Debug, Clone)]
pub struct Ensemble {
    dims: BipartiteDims,
    weights: Vec<f64>,
    members: Vec<PureState>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, members: Vec<PureState>) -> Result<Self> {
        if weights.len() != members.len() {
            return Err(Error::BadShape(format!(
                "{} weights for {} members",
                weights.len(),
                members.len()
            )));
        }
        if members.is_empty() {
            return Err(Error::BadEnsemble("ensemble has no members".into()));
        }
        let dims = members[0].dims();
        let mut kept_weights = Vec::with_capacity(weights.len());
        let mut kept_members = Vec::with_capacity(members.len());
        for (w, psi) in weights.into_iter().zip(members) {
            if psi.dims() != dims {
                return Err(Error::DimensionMismatch(format!(
                    "ensemble mixes members on {} and {}",
                    dims,
                    psi.dims()
                )));
            }
            if w < 0.0 {
                return Err(Error::BadEnsemble(format!("negative weight {w}")));
            }
            if w > tol::WEIGHT_DROP {
                kept_weights.push(w);
                kept_members.push(psi);
            }
        }
        if kept_members.is_empty() {
            return Err(Error::BadEnsemble(
                "all members have (near-)zero weight".into(),
            ));
        }
        let sum: f64 = kept_weights.iter().sum();
        if (sum - 1.0).abs() > tol::WEIGHT_SUM {
            return Err(Error::BadEnsemble(format!(
                "weights sum to {sum}, expected 1 within {:e}",
                tol::WEIGHT_SUM
            )));
        }
        Ok(Self {
            dims,
            weights: kept_weights,
            members: kept_members,
        })
    }

    /// The trivial decomposition {(1, ψ)}.
    pub fn single(psi: PureState) -> Self {
        Self {
            dims: psi.dims(),
            weights: vec![1.0],
            members: vec![psi],
        }
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn members(&self) -> &[PureState] {
        &self.members
    }
}

/// Complex matrix with orthonormal columns (m ≥ r), the coordinate on the
/// space of cardinality-m decompositions.
#[derive(Debug, Clone)]
pub struct Isometry {
    entries: DMatrix<Complex64>,
}

impl Isometry {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let (m, r) = entries.shape();
        if r == 0 || m < r {
            return Err(Error::BadShape(format!(
                "isometry must be m×r with m ≥ r ≥ 1, got {m}×{r}"
            )));
        }
        let gram = entries.adjoint() * &entries;
        let mut worst = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - Complex64::new(expected, 0.0)).norm());
            }
        }
        if worst > tol::ISOMETRY {
            return Err(Error::BadShape(format!(
                "columns are not orthonormal: max |U\u{2020}U - I| = {worst:.3e}"
            )));
        }
        Ok(Self { entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }
}

/// Spectral decomposition of a state restricted to its numerical range:
/// eigenvalues above [`tol::RANK`] (descending) and their eigenvectors.
pub(crate) struct Spectral {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl Spectral {
    pub(crate) fn of(rho: &DensityMatrix) -> Self {
        let eig = linalg::hermitian_eigen(rho.entries());
        let r = eig.values.iter().filter(|&&v| v > tol::RANK).count();
        let n = rho.total_dim();
        let mut vectors = DMatrix::from_element(n, r, ZERO);
        for j in 0..r {
            vectors.set_column(j, &eig.vectors.column(j));
        }
        Spectral {
            values: eig.values[..r].to_vec(),
            vectors,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.values.len()
    }

    /// Columns √λ_j e_j; any decomposition member is a row-combination of
    /// these.
    pub(crate) fn scaled_basis(&self) -> DMatrix<Complex64> {
        let mut b = self.vectors.clone();
        for (j, lam) in self.values.iter().enumerate() {
            let s = Complex64::new(lam.sqrt(), 0.0);
            for i in 0..b.nrows() {
                b[(i, j)] *= s;
            }
        }
        b
    }
}

/// Σ p_i |ψ_i⟩⟨ψ_i|, validated as a density matrix. A validation failure
/// signals a corrupted ensemble and is propagated.
pub fn barycenter(e: &Ensemble) -> Result<DensityMatrix> {
    let n = e.dims.total();
    let mut acc = DMatrix::from_element(n, n, ZERO);
    for (w, psi) in e.weights.iter().zip(&e.members) {
        let amp = psi.amplitudes();
        for i in 0..n {
            for j in 0..n {
                acc[(i, j)] += Complex64::new(*w, 0.0) * amp[i] * amp[j].conj();
            }
        }
    }
    DensityMatrix::new(acc, e.dims)
}

/// The decomposition given by the eigendecomposition of ρ — the orthogonal
/// (subcentral) decomposition. Inside degenerate eigenspaces the basis is
/// whatever the eigensolver returns; only weights and orthonormality are
/// promised there.
pub fn spectral_ensemble(rho: &DensityMatrix) -> Ensemble {
    let spectral = Spectral::of(rho);
    let members: Vec<PureState> = (0..spectral.rank())
        .map(|j| {
            PureState::normalized(spectral.vectors.column(j).into_owned(), rho.dims())
                .expect("eigenvector columns are unit vectors")
        })
        .collect();
    Ensemble::new(spectral.values.clone(), members)
        .expect("spectral weights of a valid state form a distribution")
}

/// The cardinality-m decomposition selected by an m×r isometry:
/// √p_i ψ_i = Σ_j U_ij √λ_j e_j. Members with induced weight at or below
/// [`tol::WEIGHT_DROP`] are dropped.
pub fn hjw_ensemble(rho: &DensityMatrix, u: &Isometry) -> Result<Ensemble> {
    let spectral = Spectral::of(rho);
    if u.cols() != spectral.rank() {
        return Err(Error::RankMismatch {
            columns: u.cols(),
            rank: spectral.rank(),
        });
    }
    let unnormalized = spectral.scaled_basis() * u.entries().transpose();
    let mut weights = Vec::with_capacity(u.rows());
    let mut members = Vec::with_capacity(u.rows());
    for i in 0..u.rows() {
        let col = unnormalized.column(i).into_owned();
        let p = col.norm_squared();
        if p > tol::WEIGHT_DROP {
            weights.push(p);
            members.push(PureState::normalized(col, rho.dims())?);
        }
    }
    Ensemble::new(weights, members)
}

/// Entropy of the reduced state of one normalized member.
pub(crate) fn member_entanglement(psi: &PureState) -> f64 {
    let a = psi.amplitude_matrix();
    let reduced = &a * a.adjoint();
    linalg::entropy_from_eigenvalues(linalg::hermitian_eigenvalues(&reduced))
        .expect("reduced state of a unit vector is positive semidefinite")
}

/// Σ p_i S(r |ψ_i⟩⟨ψ_i|): the average entanglement of the decomposition.
/// Every decomposition of ρ upper-bounds the EoF of ρ.
pub fn average_entanglement(e: &Ensemble) -> f64 {
    e.weights
        .iter()
        .zip(&e.members)
        .map(|(w, psi)| w * member_entanglement(psi))
        .sum()
}

/// Concatenate two ensembles with weights scaled by λ and 1−λ. Average
/// entanglement is affine under this operation.
pub fn mix_ensembles(e1: &Ensemble, e2: &Ensemble, lambda: f64) -> Result<Ensemble> {
    if e1.dims != e2.dims {
        return Err(Error::DimensionMismatch(format!(
            "cannot mix ensembles on {} and {}",
            e1.dims, e2.dims
        )));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::ParamOutOfRange(format!(
            "mixing weight must lie in [0, 1], got {lambda}"
        )));
    }
    let mut weights: Vec<f64> = e1.weights.iter().map(|w| lambda * w).collect();
    weights.extend(e2.weights.iter().map(|w| (1.0 - lambda) * w));
    let mut members = e1.members.clone();
    members.extend(e2.members.iter().cloned());
    Ensemble::new(weights, members)
}

/// Decomposition of the grouped product state: members are the regrouped
/// ψ_i ⊗ φ_j with weights p_i q_j. Its barycenter is the grouped ρ1 ⊗ ρ2,
/// and its average entanglement is the sum of the two inputs' averages.
pub fn grouped_product_ensemble(e1: &Ensemble, e2: &Ensemble) -> Result<Ensemble> {
    let f = [e1.dims.d1, e1.dims.d2, e2.dims.d1, e2.dims.d2];
    let mut weights = Vec::with_capacity(e1.len() * e2.len());
    let mut members = Vec::with_capacity(e1.len() * e2.len());
    for (p, psi) in e1.weights.iter().zip(&e1.members) {
        for (q, phi) in e2.weights.iter().zip(&e2.members) {
            weights.push(p * q);
            members.push(permute_pure_to_grouped(&psi.tensor(phi), f)?);
        }
    }
    Ensemble::new(weights, members)
}

/// Column-orthonormal factor of a standard complex Gaussian m×r matrix,
/// with column phases fixed so that the diagonal entries are real positive.
/// Deterministic per seed.
pub fn random_isometry(m: usize, r: usize, seed: u64) -> Result<Isometry> {
    if r == 0 || m < r {
        return Err(Error::BadShape(format!(
            "isometry shape must satisfy m ≥ r ≥ 1, got {m}×{r}"
        )));
    }
    let mut rng = linalg::rng_for(seed);
    let mut g = linalg::complex_gaussian(&mut rng, m, r);
    linalg::orthonormalize_columns(&mut g)?;
    fix_diagonal_phases(&mut g);
    Isometry::new(g)
}

/// Multiply each column by a unit phase so the diagonal entry is real ≥ 0.
pub(crate) fn fix_diagonal_phases(u: &mut DMatrix<Complex64>) {
    for j in 0..u.ncols() {
        let d = u[(j, j)];
        let mag = d.norm();
        if mag > 1e-12 {
            let phase = d.conj() / mag;
            for i in 0..u.nrows() {
                u[(i, j)] *= phase;
            }
        }
    }
}

/// Recover an isometry that reproduces `e` through [`hjw_ensemble`]:
/// U_ij = ⟨e_j, √p_i ψ_i⟩ / √λ_j, re-orthonormalized to absorb numerical
/// drift. Requires at least rank(ρ) members.
pub fn ensemble_isometry(rho: &DensityMatrix, e: &Ensemble) -> Result<Isometry> {
    let spectral = Spectral::of(rho);
    let r = spectral.rank();
    let m = e.len();
    if m < r {
        return Err(Error::BadShape(format!(
            "ensemble has {m} members, fewer than the state rank {r}"
        )));
    }
    let mut u = DMatrix::from_element(m, r, ZERO);
    for (i, (w, psi)) in e.weights.iter().zip(&e.members).enumerate() {
        let scale = w.sqrt();
        for j in 0..r {
            let overlap = spectral.vectors.column(j).dotc(psi.amplitudes());
            u[(i, j)] = overlap * Complex64::new(scale / spectral.values[j].sqrt(), 0.0);
        }
    }
    linalg::orthonormalize_columns(&mut u)?;
    Isometry::new(u)
}
