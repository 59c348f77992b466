//! Concurrence of multipartite quantum states, computed three ways that check
//! one another:
//!
//! * from the purity of a reduced density matrix ([`concurrence_spectral`]),
//! * from the total variance of the basic local observables
//!   ([`concurrence_variance`]), which needs only the mean values
//!   `⟨ψ|X_α|ψ⟩` of single-party observables,
//! * from simulated finite-shot measurements of those observables
//!   ([`estimate_concurrence`]).
//!
//! Mixed states are handled through the Wigner–Yanase skew information
//! ([`total_skew_information`]), which reduces to the total variance on pure
//! states.
//!
//! All numerical code is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix `f64`, which is what the tolerances quoted in the docs
//! refer to.

pub mod basis;
pub mod concurrence;
pub mod error;
pub mod generators;
pub mod layout;
pub mod linalg;
pub mod measurement;
pub mod scalar;
pub mod skew;
pub mod state;
pub mod statefile;

pub use basis::{lift_observable, lifted_basis, observable_basis, ObservableBasis, ObservableId};
pub use concurrence::{
    casimir_constant, concurrence_from_variance, concurrence_spectral, concurrence_variance,
    linear_entropy, local_means, total_variance, total_variance_in, variance_bounds,
    ConcurrenceReport, Method,
};
pub use error::{Error, Result};
pub use generators::{
    haar_state, make_state, mixed_state, named_state, product_state, StateKind, StateSpec,
};
pub use layout::{Cut, PartyLayout};
pub use measurement::{
    estimate_concurrence, sample_observable, spectrum, MeasurementRecord, ObservableSpectrum,
    SampledConcurrence,
};
pub use scalar::Real;
pub use skew::{commutator_skew, psd_sqrt, skew_information, total_skew_information, SkewReport};
pub use state::{partial_trace, DensityMatrix, QuantumState, StateVector};

pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type DensityMatrix32 = DensityMatrix<f32>;
pub type QuantumState64 = QuantumState<f64>;
pub type QuantumState32 = QuantumState<f32>;
pub type ObservableBasis64 = ObservableBasis<f64>;
pub type ConcurrenceReport64 = ConcurrenceReport<f64>;
pub type SampledConcurrence64 = SampledConcurrence<f64>;
pub type MeasurementRecord64 = MeasurementRecord<f64>;
pub type SkewReport64 = SkewReport<f64>;
