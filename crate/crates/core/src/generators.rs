//! Seeded generators for test states: the named catalog, Haar-random pure
//! states, random product states and random finite-rank mixtures.
//!
//! Catalog:
//!
//! | name | layout | state |
//! |------|--------|-------|
//! | `bell_phi_plus`, `bell_phi_minus` | `[2,2]` | `(|00⟩ ± |11⟩)/√2` |
//! | `bell_psi_plus`, `bell_psi_minus` | `[2,2]` | `(|01⟩ ± |10⟩)/√2` |
//! | `ghz<K>` | `[2; K]` | `(|0…0⟩ + |1…1⟩)/√2` |
//! | `w<K>` | `[2; K]` | equal superposition of single excitations |
//! | `max_entangled<n>` | `[n,n]` | `Σ_i |ii⟩/√n` |

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::layout::PartyLayout;
use crate::linalg::CVector;
use crate::scalar::{lit, Real};
use crate::state::{DensityMatrix, QuantumState, StateVector};

/// What to generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateKind {
    Named(String),
    HaarPure(PartyLayout),
    Product(PartyLayout),
    /// Uniform mixture of `rank` Haar pure states.
    Mixed {
        layout: PartyLayout,
        rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpec {
    pub kind: StateKind,
    pub seed: u64,
}

impl StateSpec {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            kind: StateKind::Named(name.into()),
            seed: 0,
        }
    }

    pub fn haar(layout: PartyLayout, seed: u64) -> Self {
        Self {
            kind: StateKind::HaarPure(layout),
            seed,
        }
    }

    pub fn product(layout: PartyLayout, seed: u64) -> Self {
        Self {
            kind: StateKind::Product(layout),
            seed,
        }
    }

    pub fn mixed(layout: PartyLayout, rank: usize, seed: u64) -> Self {
        Self {
            kind: StateKind::Mixed { layout, rank },
            seed,
        }
    }
}

pub fn make_state<T: Real>(spec: &StateSpec) -> Result<QuantumState<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match &spec.kind {
        StateKind::Named(name) => named_state(name).map(QuantumState::Pure),
        StateKind::HaarPure(layout) => Ok(QuantumState::Pure(haar_with(layout, &mut rng))),
        StateKind::Product(layout) => Ok(QuantumState::Pure(product_with(layout, &mut rng))),
        StateKind::Mixed { layout, rank } => {
            mixed_with(layout, *rank, &mut rng).map(QuantumState::Mixed)
        }
    }
}

/// Haar-random pure state: normalized vector of i.i.d. standard complex
/// Gaussians.
pub fn haar_state<T: Real>(layout: &PartyLayout, seed: u64) -> StateVector<T> {
    haar_with(layout, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Tensor product of independent Haar-random single-party states.
pub fn product_state<T: Real>(layout: &PartyLayout, seed: u64) -> StateVector<T> {
    product_with(layout, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn mixed_state<T: Real>(
    layout: &PartyLayout,
    rank: usize,
    seed: u64,
) -> Result<DensityMatrix<T>> {
    mixed_with(layout, rank, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Looks up a catalog state by name.
pub fn named_state<T: Real>(name: &str) -> Result<StateVector<T>> {
    let unknown = || Error::UnknownState(name.to_string());
    let h: T = lit(std::f64::consts::FRAC_1_SQRT_2);
    let re = |x: T| Complex::new(x, T::zero());
    let zero = re(T::zero());

    let bell = |a: usize, b: usize, sign: T| {
        let mut v = CVector::from_element(4, zero);
        v[a] = re(h);
        v[b] = re(sign * h);
        StateVector::new(PartyLayout::uniform(2, 2)?, v)
    };
    match name {
        "bell_phi_plus" => return bell(0, 3, T::one()),
        "bell_phi_minus" => return bell(0, 3, -T::one()),
        "bell_psi_plus" => return bell(1, 2, T::one()),
        "bell_psi_minus" => return bell(1, 2, -T::one()),
        _ => {}
    }

    let suffix = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)
            .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|s| s.parse().ok())
    };
    if let Some(n) = suffix("max_entangled") {
        if n < 2 {
            return Err(unknown());
        }
        let layout = PartyLayout::uniform(2, n)?;
        let mut v = CVector::from_element(n * n, zero);
        let amp: T = lit(1.0 / (n as f64).sqrt());
        for i in 0..n {
            v[i * n + i] = re(amp);
        }
        return StateVector::new(layout, v);
    }
    if let Some(k) = suffix("ghz") {
        if !(2..=20).contains(&k) {
            return Err(unknown());
        }
        let layout = PartyLayout::uniform(k, 2)?;
        let d = layout.total_dim();
        let mut v = CVector::from_element(d, zero);
        v[0] = re(h);
        v[d - 1] = re(h);
        return StateVector::new(layout, v);
    }
    if let Some(k) = suffix("w") {
        if !(2..=20).contains(&k) {
            return Err(unknown());
        }
        let layout = PartyLayout::uniform(k, 2)?;
        let mut v = CVector::from_element(layout.total_dim(), zero);
        let amp: T = lit(1.0 / (k as f64).sqrt());
        for party in 0..k {
            v[1 << (k - 1 - party)] = re(amp);
        }
        return StateVector::new(layout, v);
    }
    Err(unknown())
}

fn gaussian_vector<T: Real, R: Rng>(dim: usize, rng: &mut R) -> CVector<T> {
    CVector::from_iterator(
        dim,
        (0..dim).map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(lit(re), lit(im))
        }),
    )
}

fn haar_with<T: Real, R: Rng>(layout: &PartyLayout, rng: &mut R) -> StateVector<T> {
    loop {
        let v = gaussian_vector(layout.total_dim(), rng);
        if let Ok(s) = StateVector::normalized(layout.clone(), v) {
            return s;
        }
    }
}

fn product_with<T: Real, R: Rng>(layout: &PartyLayout, rng: &mut R) -> StateVector<T> {
    let factors: Vec<StateVector<T>> = layout
        .dims()
        .iter()
        .map(|&d| haar_with(&PartyLayout::new(vec![d]).expect("local dim >= 2"), rng))
        .collect();
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.tensor(f))
}

fn mixed_with<T: Real, R: Rng>(
    layout: &PartyLayout,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    if rank == 0 || rank > layout.total_dim() {
        return Err(Error::InvalidSpec(format!(
            "rank {rank} outside 1..={}",
            layout.total_dim()
        )));
    }
    let states: Vec<StateVector<T>> = (0..rank).map(|_| haar_with(layout, rng)).collect();
    let w = T::one() / lit(rank as f64);
    let terms: Vec<(T, &StateVector<T>)> = states.iter().map(|s| (w, s)).collect();
    DensityMatrix::mixture(&terms)
}
