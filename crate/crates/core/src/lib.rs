//! Decoherence of semiconductor double-quantum-dot charge qubits coupled to
//! piezoelectric acoustic phonons.
//!
//! The crate models a single electron delocalized over two quantum dots as a
//! charge qubit, computes the phonon-induced relaxation and pure-dephasing
//! rates from the device geometry and material constants, evolves the
//! corresponding gate channels (NOT gate under relaxation, π-phase gate under
//! pure dephasing), and quantifies the gate error through the maximal
//! deviation norm `D` — the worst case over all initial states of the largest
//! absolute eigenvalue of the difference between noisy and ideal density
//! matrices. Multi-qubit registers of independently coupled qubits are
//! supported up to three qubits, together with numerical checks of the
//! additivity of `D` at low noise.
//!
//! All numerical kernels are generic over the real scalar type through
//! [`Real`]; `f64` is the intended precision for SI-unit physics (`f32`
//! underflows products like ħ²) and is what the concrete aliases below use.
//!
//! Module map:
//! - [`density`]: density-matrix algebra and state-level measures (entropy,
//!   idempotency defect, fidelity, deviation norms).
//! - [`bath`]: piezoelectric electron–phonon coupling, absorption/emission
//!   rates, relaxation rate Γ and the dephasing spectral function B²(t).
//! - [`gates`]: superoperator channels for the NOT and π-phase gates, tensor
//!   products, timescale extraction.
//! - [`measure`]: worst-case measures: maximal deviation norm `D`, its closed
//!   forms, and a diamond-norm lower bound `K`.
//! - [`register`]: multi-qubit product channels and additivity checks.

pub mod bath;
pub mod constants;
pub mod density;
mod error;
pub mod gates;
pub mod linalg;
pub mod measure;
pub mod optim;
pub mod quad;
pub mod register;
pub mod sampling;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` aliases: the precision used by the CLI and the test suites.
pub type Complex64 = num_complex::Complex<f64>;
pub type CMatrix64 = linalg::CMatrix<f64>;
pub type DensityMatrix64 = density::DensityMatrix<f64>;
pub type DeviationMatrix64 = density::DeviationMatrix<f64>;
pub type PureState64 = density::PureState<f64>;
pub type Channel64 = gates::Channel<f64>;
pub type GateSpec64 = gates::GateSpec<f64>;
pub type MaterialSpec64 = bath::MaterialSpec<f64>;
pub type DeviceGeometry64 = bath::DeviceGeometry<f64>;
pub type BathSpec64 = bath::BathSpec<f64>;
pub type QuadratureConfig64 = bath::QuadratureConfig<f64>;
pub type OptimizerConfig64 = measure::OptimizerConfig<f64>;
pub type DecoherenceReport64 = measure::DecoherenceReport<f64>;
pub type RegisterSpec64 = register::RegisterSpec<f64>;
pub type AdditivityReport64 = register::AdditivityReport<f64>;

/// `f32` aliases. Suitable for the dimensionless channel/measure algebra;
/// not for SI-unit bath physics.
pub type Complex32 = num_complex::Complex<f32>;
pub type CMatrix32 = linalg::CMatrix<f32>;
pub type DensityMatrix32 = density::DensityMatrix<f32>;
pub type Channel32 = gates::Channel<f32>;
