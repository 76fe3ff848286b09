//! Bipartite quantum states: density matrices, pure states, and the maps
//! between them.
//!
//! Basis convention: the product basis vector |i1⟩⊗|i2⟩ sits at flat index
//! `i1 * d2 + i2` (row-major in the second factor). Every operation in the
//! crate assumes this ordering.
//!
//! All types are immutable after construction and every operation is a pure
//! function, so values can be shared freely across threads.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::linalg::{self, ZERO};
use crate::tol;
use crate::{Error, Result};

/// Dimensions (d1, d2) of the two tensor factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteDims {
    pub d1: usize,
    pub d2: usize,
}

impl BipartiteDims {
    pub fn new(d1: usize, d2: usize) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::BadShape(format!(
                "subsystem dimensions must be positive, got ({d1}, {d2})"
            )));
        }
        Ok(Self { d1, d2 })
    }

    /// Total Hilbert-space dimension d1·d2.
    pub fn total(&self) -> usize {
        self.d1 * self.d2
    }

    /// Flat index of |i1⟩⊗|i2⟩.
    pub fn index(&self, i1: usize, i2: usize) -> usize {
        i1 * self.d2 + i2
    }
}

impl std::fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.d1, self.d2)
    }
}

/// Which tensor factor a reduction keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Trace-one positive semidefinite matrix with an attached bipartition.
///
/// Construction validates all three state invariants; the stored entries are
/// the symmetrized ((M+M†)/2) input, so downstream spectral code sees an
/// exactly Hermitian matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dims: BipartiteDims,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validate `entries` as a density matrix on `dims`.
    ///
    /// Checks, in order: shape, Hermiticity of the raw input (tolerance
    /// [`tol::HERMITICITY`]), trace one, and positive semidefiniteness of
    /// the symmetrized matrix.
    pub fn new(entries: DMatrix<Complex64>, dims: BipartiteDims) -> Result<Self> {
        let n = dims.total();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but dims {} require {}x{}",
                entries.nrows(),
                entries.ncols(),
                dims,
                n,
                n
            )));
        }
        let asym = linalg::max_abs_asymmetry(&entries);
        if asym > tol::HERMITICITY {
            return Err(Error::NotHermitian(asym));
        }
        let entries = linalg::symmetrize(&entries);
        let trace = entries.trace().re;
        if (trace - 1.0).abs() > tol::TRACE {
            return Err(Error::TraceNotOne(trace, tol::TRACE));
        }
        let min_eig = linalg::hermitian_eigenvalues(&entries)
            .last()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -tol::PSD {
            return Err(Error::NotPositive(min_eig, tol::PSD));
        }
        Ok(Self { dims, entries })
    }

    /// The maximally mixed state 1/(d1·d2).
    pub fn maximally_mixed(dims: BipartiteDims) -> Self {
        let n = dims.total();
        let entries = DMatrix::from_diagonal_element(n, n, Complex64::new(1.0 / n as f64, 0.0));
        Self { dims, entries }
    }

    /// Convex combination λ·a + (1−λ)·b.
    pub fn mix(a: &DensityMatrix, b: &DensityMatrix, lambda: f64) -> Result<DensityMatrix> {
        if a.dims != b.dims {
            return Err(Error::DimensionMismatch(format!(
                "cannot mix states on {} and {}",
                a.dims, b.dims
            )));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::ParamOutOfRange(format!(
                "mixing weight must lie in [0, 1], got {lambda}"
            )));
        }
        let entries = a.entries.scale(lambda) + b.entries.scale(1.0 - lambda);
        DensityMatrix::new(entries, a.dims)
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    /// Eigenvalues, sorted descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.entries)
    }

    /// Number of eigenvalues above the spectral rank threshold.
    pub fn rank(&self) -> usize {
        self.eigenvalues().iter().filter(|&&v| v > tol::RANK).count()
    }

    /// Largest entrywise |a − b|.
    pub fn max_entry_distance(&self, other: &DensityMatrix) -> f64 {
        (&self.entries - &other.entries)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Unit vector on the bipartite space.
#[derive(Debug, Clone)]
pub struct PureState {
    dims: BipartiteDims,
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Wrap amplitudes, requiring unit norm within [`tol::PURE_NORM`].
    pub fn new(amplitudes: DVector<Complex64>, dims: BipartiteDims) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} entries but dims {} require {}",
                amplitudes.len(),
                dims,
                dims.total()
            )));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > tol::PURE_NORM {
            return Err(Error::NotNormalized(norm, tol::PURE_NORM));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Normalize, then wrap. Rejects the zero vector.
    pub fn normalized(mut amplitudes: DVector<Complex64>, dims: BipartiteDims) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm < 1e-12 {
            return Err(Error::BadShape(
                "cannot normalize a (near-)zero vector".into(),
            ));
        }
        amplitudes.unscale_mut(norm);
        Self::new(amplitudes, dims)
    }

    /// The singlet (|01⟩ − |10⟩)/√2 on 2×2.
    pub fn singlet() -> Self {
        let dims = BipartiteDims { d1: 2, d2: 2 };
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = DVector::from_element(4, ZERO);
        amplitudes[dims.index(0, 1)] = Complex64::new(s, 0.0);
        amplitudes[dims.index(1, 0)] = Complex64::new(-s, 0.0);
        Self { dims, amplitudes }
    }

    /// The maximally entangled state Σ_i |ii⟩/√d on d×d.
    pub fn maximally_entangled(d: usize) -> Result<Self> {
        let dims = BipartiteDims::new(d, d)?;
        let amp = 1.0 / (d as f64).sqrt();
        let mut amplitudes = DVector::from_element(dims.total(), ZERO);
        for i in 0..d {
            amplitudes[dims.index(i, i)] = Complex64::new(amp, 0.0);
        }
        Ok(Self { dims, amplitudes })
    }

    /// Product vector a⊗b with dims (|a|, |b|).
    pub fn product(a: &DVector<Complex64>, b: &DVector<Complex64>) -> Result<Self> {
        let dims = BipartiteDims::new(a.len(), b.len())?;
        let amplitudes = DVector::from_fn(dims.total(), |k, _| {
            let i1 = k / b.len();
            let i2 = k % b.len();
            a[i1] * b[i2]
        });
        Self::normalized(amplitudes, dims)
    }

    /// Tensor product of two bipartite pure states. The result keeps the raw
    /// four-factor ordering (self.1, self.2, other.1, other.2) and carries
    /// the coarse bipartition (self.total, other.total); regroup with
    /// [`permute_pure_to_grouped`] when the (1,3)(2,4) cut is wanted.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let dims = BipartiteDims {
            d1: self.dims.total(),
            d2: other.dims.total(),
        };
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        PureState { dims, amplitudes }
    }

    /// The rank-one projector |ψ⟩⟨ψ| as a validated density matrix.
    pub fn projector(&self) -> DensityMatrix {
        let n = self.dims.total();
        let entries = DMatrix::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        DensityMatrix {
            dims: self.dims,
            entries: linalg::symmetrize(&entries),
        }
    }

    /// Amplitudes reshaped to the d1×d2 coefficient matrix A with
    /// A[i1, i2] = ψ[i1·d2 + i2].
    pub fn amplitude_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dims.d1, self.dims.d2, |i1, i2| {
            self.amplitudes[self.dims.index(i1, i2)]
        })
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &PureState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }
}

/// Kronecker product of two states. The raw output orders the four factors
/// as (a.1, a.2, b.1, b.2) and is annotated with the coarse bipartition
/// (a.total, b.total); the (a1·b1 | a2·b2) grouping is obtained afterwards
/// via [`permute_to_grouped`].
pub fn tensor_product(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    let dims = BipartiteDims {
        d1: a.dims.total(),
        d2: b.dims.total(),
    };
    DensityMatrix {
        dims,
        entries: a.entries.kronecker(&b.entries),
    }
}

/// Partial trace. `keep = First` realizes the restriction of a bipartite
/// state to its first factor; the reduced object carries a trivial second
/// factor, i.e. dims (d1, 1) or (1, d2).
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> DensityMatrix {
    let BipartiteDims { d1, d2 } = rho.dims;
    let (kept, reduced_dims) = match keep {
        Subsystem::First => (d1, BipartiteDims { d1, d2: 1 }),
        Subsystem::Second => (d2, BipartiteDims { d1: 1, d2 }),
    };
    let traced = match keep {
        Subsystem::First => d2,
        Subsystem::Second => d1,
    };
    let mut out = DMatrix::from_element(kept, kept, ZERO);
    for i in 0..kept {
        for j in 0..kept {
            let mut acc = ZERO;
            for k in 0..traced {
                let (row, col) = match keep {
                    Subsystem::First => (i * d2 + k, j * d2 + k),
                    Subsystem::Second => (k * d2 + i, k * d2 + j),
                };
                acc += rho.entries[(row, col)];
            }
            out[(i, j)] = acc;
        }
    }
    DensityMatrix::new(out, reduced_dims)
        .expect("partial trace of a valid state is a valid state")
}

/// Transpose on the second factor. The result is Hermitian with the same
/// trace but need not be positive, so it is returned as a plain matrix.
pub fn partial_transpose(rho: &DensityMatrix) -> DMatrix<Complex64> {
    let BipartiteDims { d1, d2 } = rho.dims;
    let n = rho.total_dim();
    let mut out = DMatrix::from_element(n, n, ZERO);
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for j1 in 0..d1 {
                for j2 in 0..d2 {
                    out[(i1 * d2 + i2, j1 * d2 + j2)] = rho.entries[(i1 * d2 + j2, j1 * d2 + i2)];
                }
            }
        }
    }
    out
}

fn grouped_permutation(factors: [usize; 4]) -> Vec<usize> {
    let [f1, f2, f3, f4] = factors;
    let total = f1 * f2 * f3 * f4;
    let mut sigma = vec![0usize; total];
    for a in 0..f1 {
        for b in 0..f2 {
            for c in 0..f3 {
                for d in 0..f4 {
                    let src = ((a * f2 + b) * f3 + c) * f4 + d;
                    let dst = ((a * f3 + c) * f2 + b) * f4 + d;
                    sigma[src] = dst;
                }
            }
        }
    }
    sigma
}

/// Reorder a state on four tensor factors (f1, f2, f3, f4) to the grouped
/// bipartition (f1·f3 | f2·f4). This is the unitary index permutation that
/// turns the raw ω⊗ω ordering into a bipartite state across
/// (H1⊗H1 | H2⊗H2); the spectrum is untouched.
pub fn permute_to_grouped(rho: &DensityMatrix, factors: [usize; 4]) -> Result<DensityMatrix> {
    let [f1, f2, f3, f4] = factors;
    let total = f1 * f2 * f3 * f4;
    if total != rho.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "factors {factors:?} multiply to {total}, state dimension is {}",
            rho.total_dim()
        )));
    }
    let sigma = grouped_permutation(factors);
    let mut out = DMatrix::from_element(total, total, ZERO);
    for x in 0..total {
        for y in 0..total {
            out[(sigma[x], sigma[y])] = rho.entries[(x, y)];
        }
    }
    Ok(DensityMatrix {
        dims: BipartiteDims {
            d1: f1 * f3,
            d2: f2 * f4,
        },
        entries: out,
    })
}

/// Same regrouping for pure-state amplitudes.
pub fn permute_pure_to_grouped(psi: &PureState, factors: [usize; 4]) -> Result<PureState> {
    let [f1, f2, f3, f4] = factors;
    let total = f1 * f2 * f3 * f4;
    if total != psi.dims.total() {
        return Err(Error::DimensionMismatch(format!(
            "factors {factors:?} multiply to {total}, vector length is {}",
            psi.dims.total()
        )));
    }
    let sigma = grouped_permutation(factors);
    let mut out = DVector::from_element(total, ZERO);
    for x in 0..total {
        out[sigma[x]] = psi.amplitudes[x];
    }
    Ok(PureState {
        dims: BipartiteDims {
            d1: f1 * f3,
            d2: f2 * f4,
        },
        amplitudes: out,
    })
}

/// Schmidt coefficients: singular values of the d1×d2 amplitude matrix,
/// nonincreasing. Their squares sum to 1; a leading coefficient of 1
/// certifies a product vector.
pub fn schmidt_coefficients(psi: &PureState) -> Vec<f64> {
    let mut vals: Vec<f64> = psi
        .amplitude_matrix()
        .singular_values()
        .iter()
        .copied()
        .collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Trace distance (1/2)·Σ singular values of (a − b).
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dims != b.dims {
        return Err(Error::DimensionMismatch(format!(
            "trace distance needs equal dims, got {} and {}",
            a.dims, b.dims
        )));
    }
    let diff = &a.entries - &b.entries;
    Ok(0.5 * diff.singular_values().iter().sum::<f64>())
}

/// Von Neumann entropy −Tr ρ ln ρ in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    linalg::entropy_from_eigenvalues(rho.eigenvalues())
}
