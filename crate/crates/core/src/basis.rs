//! Local observable bases: generalized Gell-Mann matrices normalized to
//! `Tr(X_i X_j) = 2 δ_ij`, which makes the qubit basis exactly `σ_x, σ_y, σ_z`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::layout::PartyLayout;
use crate::linalg::{self, CMatrix};
use crate::scalar::{lit, Real};

/// Identifies basic observable `index` acting on `party`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObservableId {
    pub party: usize,
    pub index: usize,
}

impl ObservableId {
    pub fn new(party: usize, index: usize) -> Self {
        Self { party, index }
    }

    /// RNG stream number reserved for this observable.
    pub fn stream(&self) -> u64 {
        ((self.party as u64) << 32) | self.index as u64
    }
}

/// The `n² − 1` traceless Hermitian basis matrices of one party.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableBasis<T: Real> {
    party_dim: usize,
    matrices: Vec<CMatrix<T>>,
}

impl<T: Real> ObservableBasis<T> {
    pub fn party_dim(&self) -> usize {
        self.party_dim
    }

    pub fn matrices(&self) -> &[CMatrix<T>] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Scalar `c` with `Σ_i X_i² = c·I`, namely `2(n² − 1)/n`.
    pub fn casimir(&self) -> T {
        let n = self.party_dim as f64;
        lit(2.0 * (n * n - 1.0) / n)
    }

    /// Replaces the basis by `X'_i = Σ_j R_ij X_j`. Orthogonal `R` keeps it a
    /// valid basis; no check is made here.
    pub fn recombine(&self, r: &nalgebra::DMatrix<T>) -> Result<Self> {
        let m = self.matrices.len();
        if r.nrows() != m || r.ncols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: r.nrows(),
            });
        }
        let n = self.party_dim;
        let matrices = (0..m)
            .map(|i| {
                self.matrices
                    .iter()
                    .enumerate()
                    .fold(CMatrix::zeros(n, n), |acc, (j, x)| {
                        acc + x.map(|z| z * r[(i, j)])
                    })
            })
            .collect();
        Ok(Self {
            party_dim: n,
            matrices,
        })
    }

    /// Builds a basis from explicit matrices (e.g. a rotated Gell-Mann set).
    pub fn from_matrices(party_dim: usize, matrices: Vec<CMatrix<T>>) -> Result<Self> {
        if party_dim < 2 {
            return Err(Error::InvalidLocalDim(party_dim));
        }
        let expected = party_dim * party_dim - 1;
        if matrices.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: matrices.len(),
            });
        }
        for m in &matrices {
            if m.nrows() != party_dim || m.ncols() != party_dim {
                return Err(Error::DimensionMismatch {
                    expected: party_dim,
                    found: m.nrows(),
                });
            }
            linalg::require_hermitian(m, T::state_tol())?;
        }
        Ok(Self {
            party_dim,
            matrices,
        })
    }
}

/// Generalized Gell-Mann basis for local dimension `n`.
///
/// Order: symmetric `E_jk + E_kj` (j < k, row-major), antisymmetric
/// `−i E_jk + i E_kj` in the same order, then diagonal
/// `√(2/(l(l+1))) (Σ_{j<l} E_jj − l E_ll)` for `l = 1..n−1`.
pub fn observable_basis<T: Real>(n: usize) -> Result<ObservableBasis<T>> {
    if n < 2 {
        return Err(Error::InvalidLocalDim(n));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let mut matrices = Vec::with_capacity(n * n - 1);

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .collect();
    for &(j, k) in &pairs {
        let mut m = CMatrix::from_element(n, n, zero);
        m[(j, k)] = one;
        m[(k, j)] = one;
        matrices.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = CMatrix::from_element(n, n, zero);
        m[(j, k)] = -i;
        m[(k, j)] = i;
        matrices.push(m);
    }
    for l in 1..n {
        let lf = l as f64;
        let scale: T = lit((2.0 / (lf * (lf + 1.0))).sqrt());
        let mut m = CMatrix::from_element(n, n, zero);
        for jj in 0..l {
            m[(jj, jj)] = Complex::new(scale, T::zero());
        }
        m[(l, l)] = Complex::new(-scale * lit(lf), T::zero());
        matrices.push(m);
    }
    Ok(ObservableBasis {
        party_dim: n,
        matrices,
    })
}

/// `I ⊗ … ⊗ X ⊗ … ⊗ I` with `X` in slot `party`.
pub fn lift_observable<T: Real>(
    x: &CMatrix<T>,
    layout: &PartyLayout,
    party: usize,
) -> Result<CMatrix<T>> {
    layout.check_party(party)?;
    let n = linalg::require_square(x)?;
    if n != layout.dim(party) {
        return Err(Error::DimensionMismatch {
            expected: layout.dim(party),
            found: n,
        });
    }
    let left: usize = layout.dims()[..party].iter().product();
    let right: usize = layout.dims()[party + 1..].iter().product();
    let lifted = linalg::kron(&linalg::identity::<T>(left), x);
    Ok(linalg::kron(&lifted, &linalg::identity::<T>(right)))
}

/// Every party's basis lifted to the composite space, in (party, index) order.
pub fn lifted_basis<T: Real>(layout: &PartyLayout) -> Result<Vec<(ObservableId, CMatrix<T>)>> {
    let mut out = Vec::new();
    for party in 0..layout.parties() {
        let basis = observable_basis::<T>(layout.dim(party))?;
        for (index, x) in basis.matrices().iter().enumerate() {
            out.push((
                ObservableId::new(party, index),
                lift_observable(x, layout, party)?,
            ));
        }
    }
    Ok(out)
}
