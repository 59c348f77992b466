//! Exact concurrence of pure states, by reduced purity and by total variance
//! of the basic local observables.
//!
//! For a pure state the total variance is
//! `V(ψ) = C_Σ − Σ_α ⟨ψ|X_α|ψ⟩²` with `C_Σ = Σ_k 2(n_k² − 1)/n_k`, and the
//! concurrence is `sqrt((V − V_min)/(V_max − V_min))`. On two parties this
//! equals `sqrt(ν (1 − Tr ρ_r²))`, `ν = n/(n − 1)`, through the identity
//! `V = 2n_A + 2n_B − 4 Tr ρ_r²`.

use crate::basis::{lift_observable, observable_basis, ObservableBasis, ObservableId};
use crate::error::{Error, Result};
use crate::layout::{Cut, PartyLayout};
use crate::scalar::{lit, Real};
use crate::state::StateVector;

/// How a concurrence value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Spectral,
    Variance,
    Sampled,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Spectral => "spectral",
            Method::Variance => "variance",
            Method::Sampled => "sampled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceReport<T: Real> {
    pub value: T,
    pub total_variance: T,
    pub v_min: T,
    pub v_max: T,
    pub method: Method,
}

impl<T: Real> ConcurrenceReport<T> {
    /// `|value² (v_max − v_min) + v_min − total_variance|`
    pub fn consistency_gap(&self) -> T {
        (self.value * self.value * (self.v_max - self.v_min) + self.v_min - self.total_variance)
            .abs()
    }
}

/// `Σ_k 2(n_k² − 1)/n_k`, the scalar by which the lifted Casimir operator
/// `Σ_α X_α²` acts.
pub fn casimir_constant<T: Real>(layout: &PartyLayout) -> T {
    let c: f64 = layout
        .dims()
        .iter()
        .map(|&n| {
            let n = n as f64;
            2.0 * (n * n - 1.0) / n
        })
        .sum();
    lit(c)
}

/// `(v_min, v_max)` of the total variance over pure states of `layout`.
///
/// `v_min` is the product-state value `C_Σ − Σ_k 2(1 − 1/n_k)`. `v_max`
/// subtracts from `C_Σ` the smallest local mean-square each party can reach:
/// party `k` can be at most `r_k = min(n_k, D/n_k)`-fold mixed, which costs
/// `2(1/r_k − 1/n_k)`. With equal local dimensions `v_max = C_Σ`.
pub fn variance_bounds<T: Real>(layout: &PartyLayout) -> (T, T) {
    let total = layout.total_dim();
    let cas: f64 = layout
        .dims()
        .iter()
        .map(|&n| {
            let n = n as f64;
            2.0 * (n * n - 1.0) / n
        })
        .sum();
    let product_deficit: f64 = layout
        .dims()
        .iter()
        .map(|&n| 2.0 * (1.0 - 1.0 / n as f64))
        .sum();
    let mixing_deficit: f64 = layout
        .dims()
        .iter()
        .map(|&n| {
            let r = n.min(total / n) as f64;
            2.0 * (1.0 / r - 1.0 / n as f64)
        })
        .sum();
    (lit(cas - product_deficit), lit(cas - mixing_deficit))
}

/// `⟨ψ|X^{(k)}_i|ψ⟩` for every basic observable of every party, evaluated as
/// `Tr(ρ_k X_i)` on the single-party reduced states.
pub fn local_means<T: Real>(psi: &StateVector<T>) -> Result<Vec<(ObservableId, T)>> {
    let layout = psi.layout();
    let mut out = Vec::new();
    for party in 0..layout.parties() {
        let rho = psi.reduce(&[party])?;
        let basis = observable_basis::<T>(layout.dim(party))?;
        for (index, x) in basis.matrices().iter().enumerate() {
            out.push((ObservableId::new(party, index), rho.expectation(x)?));
        }
    }
    Ok(out)
}

/// Total variance `C_Σ − Σ_α ⟨X_α⟩²` over all parties' basic observables.
pub fn total_variance<T: Real>(psi: &StateVector<T>) -> Result<T> {
    let means = local_means(psi)?;
    let sq = means.iter().fold(T::zero(), |acc, (_, m)| acc + *m * *m);
    Ok(casimir_constant::<T>(psi.layout()) - sq)
}

/// Total variance `Σ_α ⟨X_α²⟩ − ⟨X_α⟩²` evaluated term by term on lifted
/// operators, with an explicit basis per party (e.g. a recombined one).
pub fn total_variance_in<T: Real>(psi: &StateVector<T>, bases: &[ObservableBasis<T>]) -> Result<T> {
    let layout = psi.layout();
    if bases.len() != layout.parties() {
        return Err(Error::DimensionMismatch {
            expected: layout.parties(),
            found: bases.len(),
        });
    }
    let mut v = T::zero();
    for (party, basis) in bases.iter().enumerate() {
        for x in basis.matrices() {
            let lifted = lift_observable(x, layout, party)?;
            let mean = psi.expectation(&lifted)?;
            v += psi.expectation(&(&lifted * &lifted))? - mean * mean;
        }
    }
    Ok(v)
}

/// `sqrt(clamp((V − v_min)/(v_max − v_min), 0, 1))`
pub fn concurrence_from_variance<T: Real>(v: T, v_min: T, v_max: T) -> T {
    let span = v_max - v_min;
    if span <= T::zero() {
        return T::zero();
    }
    clamp_unit((v - v_min) / span).sqrt()
}

pub(crate) fn clamp_unit<T: Real>(x: T) -> T {
    if x < T::zero() {
        T::zero()
    } else if x > T::one() {
        T::one()
    } else {
        x
    }
}

/// Concurrence from the total variance of the basic local observables.
/// Works for any number of parties ≥ 2.
pub fn concurrence_variance<T: Real>(psi: &StateVector<T>) -> Result<ConcurrenceReport<T>> {
    psi.layout().require_bipartite_or_more()?;
    let v = total_variance(psi)?;
    let (v_min, v_max) = variance_bounds::<T>(psi.layout());
    Ok(ConcurrenceReport {
        value: concurrence_from_variance(v, v_min, v_max),
        total_variance: v,
        v_min,
        v_max,
        method: Method::Variance,
    })
}

/// `1 − Tr ρ_r²` for the reduced state on `side`.
///
/// With `ρ_r = M M†` (`M` the reshaped amplitudes), Cauchy–Binet gives
/// `(Tr ρ_r)² − Tr ρ_r² = 2 Σ_{a<b, c<d} |M_ac M_bd − M_ad M_bc|²`. Summing
/// squared minors keeps factorized states at exactly zero instead of the
/// `~1e-16` left by `1 − Tr ρ_r²`, which the square root would inflate to
/// `~1e-8`.
pub fn linear_entropy<T: Real>(psi: &StateVector<T>, side: &[usize]) -> Result<T> {
    let m = psi.amplitude_matrix(side)?;
    let (rows, cols) = m.shape();
    let mut e2 = T::zero();
    for a in 0..rows {
        for b in a + 1..rows {
            for c in 0..cols {
                for d in c + 1..cols {
                    e2 += (m[(a, c)] * m[(b, d)] - m[(a, d)] * m[(b, c)]).norm_sqr();
                }
            }
        }
    }
    let norm_sq = m.norm_squared();
    Ok(lit::<T>(2.0) * e2 / (norm_sq * norm_sq))
}

/// Concurrence across `cut` from the purity of the smaller side's reduced
/// state, `sqrt(ν (1 − Tr ρ_r²))` with `ν = n/(n − 1)`, `n = min(d_A, d_B)`.
///
/// The variance fields describe the two-party coarse-graining `[d_A, d_B]`
/// of the cut.
pub fn concurrence_spectral<T: Real>(
    psi: &StateVector<T>,
    cut: &Cut,
) -> Result<ConcurrenceReport<T>> {
    let layout = psi.layout();
    let d_a = layout.group_dim(cut.side_a());
    let d_b = layout.group_dim(cut.side_b());
    let smaller = if d_a <= d_b {
        cut.side_a()
    } else {
        cut.side_b()
    };
    let mixedness = linear_entropy(psi, smaller)?;
    let purity = T::one() - mixedness;
    let n = d_a.min(d_b) as f64;
    let nu: T = lit(n / (n - 1.0));
    let value = clamp_unit(nu * mixedness).sqrt();

    let coarse = PartyLayout::new(vec![d_a, d_b])?;
    let (v_min, v_max) = variance_bounds::<T>(&coarse);
    let total_variance = lit::<T>(2.0 * (d_a + d_b) as f64) - lit::<T>(4.0) * purity;
    Ok(ConcurrenceReport {
        value,
        total_variance,
        v_min,
        v_max,
        method: Method::Spectral,
    })
}
