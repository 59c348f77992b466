//! Finite-shot simulation of projective measurements of the basic local
//! observables, and the concurrence estimator built on the sampled means.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{observable_basis, ObservableId};
use crate::concurrence::{casimir_constant, clamp_unit, variance_bounds};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::scalar::{lit, to_f64, Real};
use crate::state::{trace_of_product, StateVector};

/// Distinct eigenvalues of a Hermitian observable with their spectral
/// projectors, in descending eigenvalue order.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSpectrum<T: Real> {
    pub eigenvalues: Vec<T>,
    pub projectors: Vec<CMatrix<T>>,
}

impl<T: Real> ObservableSpectrum<T> {
    /// `Σ_m λ_m P_m`
    pub fn reconstruct(&self) -> CMatrix<T> {
        let n = self.projectors.first().map_or(0, |p| p.nrows());
        self.eigenvalues
            .iter()
            .zip(&self.projectors)
            .fold(CMatrix::zeros(n, n), |acc, (&l, p)| acc + p.map(|z| z * l))
    }

    /// Born probabilities `Tr(ρ P_m)` for a density matrix `ρ`.
    pub fn probabilities(&self, rho: &CMatrix<T>) -> Vec<f64> {
        self.projectors
            .iter()
            .map(|p| to_f64(trace_of_product(rho, p)))
            .collect()
    }
}

/// Eigen-resolution of `x` with eigenvalues closer than the merge tolerance
/// collapsed into a single outcome.
pub fn spectrum<T: Real>(x: &CMatrix<T>) -> Result<ObservableSpectrum<T>> {
    linalg::require_hermitian(x, T::state_tol())?;
    let n = x.nrows();
    let (vals, vecs) = linalg::eigh(x);
    let mut eigenvalues: Vec<T> = Vec::new();
    let mut projectors: Vec<CMatrix<T>> = Vec::new();
    let mut group_sum = T::zero();
    let mut group_len = 0usize;
    let mut prev = T::zero();
    for (k, &v) in vals.iter().enumerate() {
        let col = vecs.column(k).into_owned();
        if group_len > 0 && (prev - v).abs() <= T::merge_tol() {
            group_sum += v;
            group_len += 1;
            *projectors.last_mut().expect("open group") += linalg::outer(&col);
            *eigenvalues.last_mut().expect("open group") = group_sum / lit(group_len as f64);
        } else {
            group_sum = v;
            group_len = 1;
            eigenvalues.push(v);
            let mut p = CMatrix::zeros(n, n);
            p += linalg::outer(&col);
            projectors.push(p);
        }
        prev = v;
    }
    Ok(ObservableSpectrum {
        eigenvalues,
        projectors,
    })
}

/// Outcome statistics of one observable.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord<T: Real> {
    pub observable_id: ObservableId,
    pub shots: usize,
    pub sample_mean: T,
    /// Unbiased sample variance; zero when `shots == 1`.
    pub sample_variance: T,
}

/// RNG stream owned by one observable of one run.
pub fn observable_rng(seed: u64, id: ObservableId) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id.stream());
    rng
}

/// Draws `shots` outcomes by inverse CDF and summarizes them.
pub fn sample_outcomes<T: Real, R: Rng>(
    id: ObservableId,
    eigenvalues: &[T],
    probabilities: &[f64],
    shots: usize,
    rng: &mut R,
) -> Result<MeasurementRecord<T>> {
    if shots == 0 {
        return Err(Error::InvalidShots {
            shots,
            reason: "at least one shot is required",
        });
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::ProbabilityMismatch { total });
    }
    // Round-off can leave ~1e-17 weight on outcomes orthogonal to the state.
    let cleaned: Vec<f64> = probabilities
        .iter()
        .map(|&p| if p < 1e-15 { 0.0 } else { p })
        .collect();
    let norm: f64 = cleaned.iter().sum();
    let mut cdf = Vec::with_capacity(cleaned.len());
    let mut acc = 0.0;
    for p in &cleaned {
        acc += p / norm;
        cdf.push(acc);
    }
    let last_nonzero = cleaned.iter().rposition(|&p| p > 0.0).unwrap_or(0);

    let mut counts = vec![0usize; eigenvalues.len()];
    for _ in 0..shots {
        let u: f64 = rng.random();
        let m = cdf
            .iter()
            .position(|&c| u < c)
            .unwrap_or(last_nonzero)
            .min(last_nonzero);
        counts[m] += 1;
    }

    let n = lit::<T>(shots as f64);
    let mean = counts
        .iter()
        .zip(eigenvalues)
        .fold(T::zero(), |acc, (&c, &l)| acc + lit::<T>(c as f64) / n * l);
    let variance = if shots > 1 {
        counts
            .iter()
            .zip(eigenvalues)
            .fold(T::zero(), |acc, (&c, &l)| {
                acc + lit::<T>(c as f64) * (l - mean) * (l - mean)
            })
            / lit(shots as f64 - 1.0)
    } else {
        T::zero()
    };
    Ok(MeasurementRecord {
        observable_id: id,
        shots,
        sample_mean: mean,
        sample_variance: variance,
    })
}

/// Measures the composite-space observable `x` on `shots` copies of `psi`.
/// The RNG stream is derived from `(seed, id)`.
pub fn sample_observable<T: Real>(
    psi: &StateVector<T>,
    x: &CMatrix<T>,
    id: ObservableId,
    shots: usize,
    seed: u64,
) -> Result<MeasurementRecord<T>> {
    if x.nrows() != psi.layout().total_dim() {
        return Err(Error::DimensionMismatch {
            expected: psi.layout().total_dim(),
            found: x.nrows(),
        });
    }
    let spec = spectrum(x)?;
    let probs: Vec<f64> = spec
        .projectors
        .iter()
        .map(|p| to_f64(linalg::expectation(psi.amplitudes(), p)))
        .collect();
    sample_outcomes(
        id,
        &spec.eigenvalues,
        &probs,
        shots,
        &mut observable_rng(seed, id),
    )
}

/// Concurrence estimated from simulated measurement of every basic local
/// observable.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledConcurrence<T: Real> {
    pub estimate: T,
    /// First-order propagated standard error; `None` with fewer than two shots.
    pub std_error: Option<T>,
    /// Set when the variance ratio fell outside `[0, 1]` and was clamped.
    pub at_boundary: bool,
    pub total_variance: T,
    pub v_min: T,
    pub v_max: T,
    pub shots_per_observable: usize,
    pub seed: u64,
    pub bias_corrected: bool,
    pub records: Vec<MeasurementRecord<T>>,
}

/// Estimates the concurrence of `psi` from `shots_per_observable` simulated
/// shots of each basic observable.
///
/// The squared means enter `V̂ = C_Σ − Σ_α m̂_α²`; with `bias_correct` each
/// is replaced by `m̂_α² − s_α²/N`, an unbiased estimate of `⟨X_α⟩²`.
pub fn estimate_concurrence<T: Real>(
    psi: &StateVector<T>,
    shots_per_observable: usize,
    seed: u64,
    bias_correct: bool,
) -> Result<SampledConcurrence<T>> {
    let layout = psi.layout();
    layout.require_bipartite_or_more()?;
    if shots_per_observable == 0 {
        return Err(Error::InvalidShots {
            shots: 0,
            reason: "at least one shot is required",
        });
    }
    if bias_correct && shots_per_observable < 2 {
        return Err(Error::InvalidShots {
            shots: shots_per_observable,
            reason: "bias correction needs at least two shots",
        });
    }

    let mut records = Vec::new();
    for party in 0..layout.parties() {
        let rho = psi.reduce(&[party])?;
        let basis = observable_basis::<T>(layout.dim(party))?;
        for (index, x) in basis.matrices().iter().enumerate() {
            let id = ObservableId::new(party, index);
            let spec = spectrum(x)?;
            let probs = spec.probabilities(rho.entries());
            records.push(sample_outcomes(
                id,
                &spec.eigenvalues,
                &probs,
                shots_per_observable,
                &mut observable_rng(seed, id),
            )?);
        }
    }

    let n = lit::<T>(shots_per_observable as f64);
    let four = lit::<T>(4.0);
    let mut sum_sq = T::zero();
    let mut var_v = T::zero();
    for r in &records {
        let m2 = r.sample_mean * r.sample_mean;
        sum_sq += if bias_correct {
            m2 - r.sample_variance / n
        } else {
            m2
        };
        var_v += four * m2 * r.sample_variance / n;
    }
    let v_hat = casimir_constant::<T>(layout) - sum_sq;
    let (v_min, v_max) = variance_bounds::<T>(layout);
    let span = v_max - v_min;
    let ratio = (v_hat - v_min) / span;
    let estimate = clamp_unit(ratio).sqrt();
    let at_boundary = ratio < T::zero() || ratio > T::one();

    let std_error = (shots_per_observable >= 2).then(|| {
        let sigma_ratio = var_v.sqrt() / span;
        if ratio > T::zero() {
            sigma_ratio / (lit::<T>(2.0) * ratio.sqrt())
        } else {
            sigma_ratio.sqrt()
        }
    });

    Ok(SampledConcurrence {
        estimate,
        std_error,
        at_boundary,
        total_variance: v_hat,
        v_min,
        v_max,
        shots_per_observable,
        seed,
        bias_corrected: bias_correct,
        records,
    })
}
