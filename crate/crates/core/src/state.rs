//! Pure and mixed states over a [`PartyLayout`], and partial traces.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::layout::PartyLayout;
use crate::linalg::{self, CMatrix, CVector};
use crate::scalar::{to_f64, Real};

/// Normalized amplitude vector of a pure composite state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    amplitudes: CVector<T>,
    layout: PartyLayout,
}

impl<T: Real> StateVector<T> {
    /// Wraps `amplitudes`, rejecting wrong lengths and norms off by more than
    /// the state tolerance.
    pub fn new(layout: PartyLayout, amplitudes: CVector<T>) -> Result<Self> {
        check_len(&layout, amplitudes.len())?;
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - T::one()).abs() > T::state_tol() {
            return Err(Error::NotNormalized {
                norm_sq: to_f64(norm_sq),
            });
        }
        Ok(Self { amplitudes, layout })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(layout: PartyLayout, amplitudes: CVector<T>) -> Result<Self> {
        check_len(&layout, amplitudes.len())?;
        let norm = amplitudes.norm();
        if norm <= T::zero() {
            return Err(Error::NotNormalized { norm_sq: 0.0 });
        }
        let amplitudes = amplitudes.unscale(norm);
        Ok(Self { amplitudes, layout })
    }

    pub fn from_slice(layout: PartyLayout, amplitudes: &[Complex<T>]) -> Result<Self> {
        Self::new(layout, CVector::from_column_slice(amplitudes))
    }

    /// Computational basis state `|l_1, …, l_K⟩`.
    pub fn basis(layout: PartyLayout, digits: &[usize]) -> Result<Self> {
        if digits.len() != layout.parties() {
            return Err(Error::DimensionMismatch {
                expected: layout.parties(),
                found: digits.len(),
            });
        }
        for (p, &l) in digits.iter().enumerate() {
            if l >= layout.dim(p) {
                return Err(Error::DimensionMismatch {
                    expected: layout.dim(p),
                    found: l + 1,
                });
            }
        }
        let mut amps = CVector::zeros(layout.total_dim());
        amps[layout.index(digits)] = Complex::new(T::one(), T::zero());
        Ok(Self {
            amplitudes: amps,
            layout,
        })
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &StateVector<T>) -> StateVector<T> {
        let mut dims = self.layout.dims().to_vec();
        dims.extend_from_slice(other.layout.dims());
        let layout = PartyLayout::new(dims).expect("concatenated layouts stay valid");
        StateVector {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
            layout,
        }
    }

    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amplitudes
    }

    pub fn layout(&self) -> &PartyLayout {
        &self.layout
    }

    /// `⟨ψ|X|ψ⟩` for a Hermitian operator on the composite space.
    pub fn expectation(&self, op: &CMatrix<T>) -> Result<T> {
        check_len(&self.layout, op.nrows())?;
        linalg::require_square(op)?;
        Ok(linalg::expectation(&self.amplitudes, op))
    }

    /// `|ψ⟩⟨ψ|`
    pub fn to_density(&self) -> DensityMatrix<T> {
        DensityMatrix {
            entries: linalg::outer(&self.amplitudes),
            layout: self.layout.clone(),
        }
    }

    /// Amplitudes reshaped into a (`rows` × remaining parties) matrix `M`,
    /// so that the reduced state on `rows` is `M M†`.
    pub fn amplitude_matrix(&self, rows: &[usize]) -> Result<CMatrix<T>> {
        let split = Split::new(&self.layout, rows)?;
        Ok(split.reshape(&self.amplitudes))
    }

    /// Reduced density matrix on `keep` (party indices, sorted and unique).
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        let split = Split::new(&self.layout, keep)?;
        let m = split.reshape(&self.amplitudes);
        Ok(DensityMatrix {
            entries: &m * m.adjoint(),
            layout: split.kept_layout,
        })
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix over a layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    entries: CMatrix<T>,
    layout: PartyLayout,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity within the state
    /// tolerance.
    pub fn new(layout: PartyLayout, entries: CMatrix<T>) -> Result<Self> {
        let n = linalg::require_square(&entries)?;
        check_len(&layout, n)?;
        let tol = T::state_tol();
        linalg::require_hermitian(&entries, tol)?;
        let tr = linalg::trace(&entries).re;
        if (tr - T::one()).abs() > tol {
            return Err(Error::BadTrace { trace: to_f64(tr) });
        }
        let (vals, _) = linalg::eigh(&entries);
        if let Some(&min) = vals.last() {
            if min < -tol {
                return Err(Error::NotPsd {
                    min_eigenvalue: to_f64(min),
                });
            }
        }
        Ok(Self { entries, layout })
    }

    /// `I / d`
    pub fn maximally_mixed(layout: PartyLayout) -> Self {
        let d = layout.total_dim();
        let w = T::one() / nalgebra::convert::<f64, T>(d as f64);
        Self {
            entries: linalg::identity::<T>(d).map(|z| z * w),
            layout,
        }
    }

    /// Convex combination `Σ w_i |ψ_i⟩⟨ψ_i|`; weights must be nonnegative
    /// and sum to one.
    pub fn mixture(terms: &[(T, &StateVector<T>)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidSpec("empty mixture".into()))?;
        let layout = first.1.layout().clone();
        let d = layout.total_dim();
        let mut acc = CMatrix::zeros(d, d);
        for (w, psi) in terms {
            if psi.layout() != &layout {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: psi.layout().total_dim(),
                });
            }
            if *w < T::zero() {
                return Err(Error::InvalidSpec("negative mixture weight".into()));
            }
            acc += linalg::outer(psi.amplitudes()).map(|z| z * *w);
        }
        Self::new(layout, acc)
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn layout(&self) -> &PartyLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// `Tr ρ²`
    pub fn purity(&self) -> T {
        // Tr(ρ²) = Σ_ij |ρ_ij|² for Hermitian ρ.
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
    }

    /// `Re Tr(ρ X)`
    pub fn expectation(&self, op: &CMatrix<T>) -> Result<T> {
        if op.nrows() != self.dim() || op.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: op.nrows(),
            });
        }
        Ok(trace_of_product(&self.entries, op))
    }

    /// Reduced density matrix on `keep`.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        let split = Split::new(&self.layout, keep)?;
        let d = self.dim();
        let mut out = CMatrix::zeros(split.keep_dim, split.keep_dim);
        for i in 0..d {
            for j in 0..d {
                if split.rest_idx[i] == split.rest_idx[j] {
                    out[(split.keep_idx[i], split.keep_idx[j])] += self.entries[(i, j)];
                }
            }
        }
        Ok(DensityMatrix {
            entries: out,
            layout: split.kept_layout,
        })
    }
}

/// `Re Tr(a b)` without forming the product.
pub(crate) fn trace_of_product<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    let n = a.nrows();
    let mut acc = T::zero();
    for i in 0..n {
        for k in 0..n {
            acc += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    acc
}

/// Either a pure or a mixed state.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState<T: Real> {
    Pure(StateVector<T>),
    Mixed(DensityMatrix<T>),
}

impl<T: Real> QuantumState<T> {
    pub fn layout(&self) -> &PartyLayout {
        match self {
            QuantumState::Pure(s) => s.layout(),
            QuantumState::Mixed(r) => r.layout(),
        }
    }

    /// Density matrix, promoting pure states to `|ψ⟩⟨ψ|`.
    pub fn to_density(&self) -> DensityMatrix<T> {
        match self {
            QuantumState::Pure(s) => s.to_density(),
            QuantumState::Mixed(r) => r.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<&StateVector<T>> {
        match self {
            QuantumState::Pure(s) => Some(s),
            QuantumState::Mixed(_) => None,
        }
    }
}

impl<T: Real> From<StateVector<T>> for QuantumState<T> {
    fn from(s: StateVector<T>) -> Self {
        QuantumState::Pure(s)
    }
}

impl<T: Real> From<DensityMatrix<T>> for QuantumState<T> {
    fn from(r: DensityMatrix<T>) -> Self {
        QuantumState::Mixed(r)
    }
}

/// Single-party reduced density matrix of `state` on party `keep`.
pub fn partial_trace<T: Real>(state: &QuantumState<T>, keep: usize) -> Result<DensityMatrix<T>> {
    match state {
        QuantumState::Pure(s) => s.reduce(&[keep]),
        QuantumState::Mixed(r) => r.reduce(&[keep]),
    }
}

fn check_len(layout: &PartyLayout, len: usize) -> Result<()> {
    if len != layout.total_dim() {
        return Err(Error::DimensionMismatch {
            expected: layout.total_dim(),
            found: len,
        });
    }
    Ok(())
}

/// Per-composite-index coordinates in the (kept, traced) factorization.
struct Split {
    keep_idx: Vec<usize>,
    rest_idx: Vec<usize>,
    keep_dim: usize,
    rest_dim: usize,
    kept_layout: PartyLayout,
}

impl Split {
    fn reshape<T: Real>(&self, amplitudes: &CVector<T>) -> CMatrix<T> {
        let mut m = CMatrix::zeros(self.keep_dim, self.rest_dim);
        for (i, amp) in amplitudes.iter().enumerate() {
            m[(self.keep_idx[i], self.rest_idx[i])] = *amp;
        }
        m
    }

    fn new(layout: &PartyLayout, keep: &[usize]) -> Result<Self> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::InvalidCut("nothing to keep".into()));
        }
        let kept_layout = layout.sub_layout(&keep)?;
        let rest: Vec<usize> = (0..layout.parties())
            .filter(|p| !keep.contains(p))
            .collect();
        let keep_dim = kept_layout.total_dim();
        let rest_dim = layout.group_dim(&rest);
        let mut keep_idx = Vec::with_capacity(layout.total_dim());
        let mut rest_idx = Vec::with_capacity(layout.total_dim());
        for i in 0..layout.total_dim() {
            let digits = layout.digits(i);
            let k = keep
                .iter()
                .fold(0, |acc, &p| acc * layout.dim(p) + digits[p]);
            let r = rest
                .iter()
                .fold(0, |acc, &p| acc * layout.dim(p) + digits[p]);
            keep_idx.push(k);
            rest_idx.push(r);
        }
        Ok(Self {
            keep_idx,
            rest_idx,
            keep_dim,
            rest_dim,
            kept_layout,
        })
    }
}
