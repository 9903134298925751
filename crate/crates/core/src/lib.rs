//! Geometry, classical observables and exact quantization of the
//! generalized oscillator.
//!
//! The phase space is `C^m` minus the ball `r^m <= a^m`, where
//! `r = Σ z^α z̄^α`, carrying the rotationally symmetric Kähler metric
//!
//! ```text
//! g_{αβ̄} = u″ z̄^α z^β + u′ δ_{αβ},   u′ = (r^m − a^m)^{1/m} / r.
//! ```
//!
//! Its determinant is identically one, so the metric is Ricci-flat. The
//! crate is organised bottom-up:
//!
//! - [`geometry`]: the radial profile, the metric with its closed-form
//!   inverse, Ricci curvature by differencing and seeded point sampling.
//! - [`wirtinger`]: numerical `∂/∂z^α` and `∂/∂z̄^α` of scalar fields.
//! - [`symplectic`]: the Kähler form, Hamiltonian vector fields, Poisson
//!   and Lie brackets evaluated pointwise.
//! - [`observables`]: the algebra spanned by `N^{αβ̄} = u′ z^α z̄^β` and
//!   the constants, with exact structure constants.
//! - [`quantize`]: the quantization map on homogeneous holomorphic
//!   polynomials, in exact complex-rational arithmetic.
//!
//! The crate is `no_std` (it needs `alloc`). Floating-point transcendental
//! functions come from `libm`, so numeric results do not depend on the
//! platform's math library.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

mod error;
pub mod geometry;
mod linalg;
mod math;
pub mod observables;
pub mod polynomial;
pub mod quantize;
pub mod rational;
pub mod symplectic;
pub mod wirtinger;

pub use error::Error;
pub use geometry::{
    metric_at, radial_profile, ricci_at, sample_points, MetricData, OscillatorParams, PhasePoint,
    PotentialProfile,
};
pub use num_complex::Complex64;
pub use observables::{AlgebraElement, ObservableDecomposition};
pub use polynomial::{HoloPolynomial, MultiIndex};
pub use quantize::{MonomialBasis, QuantumOperator, Spectrum};
pub use rational::CRational;
pub use symplectic::{ScalarField, TangentVector, VectorField};
pub use wirtinger::Kind;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
