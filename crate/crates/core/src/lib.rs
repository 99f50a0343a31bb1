//! Hermite expansions of Hardy-class functions.
//!
//! The crate evaluates Hermite functions, Bargmann transforms and harmonic
//! oscillator evolutions, and checks the Gaussian-envelope bounds that tie
//! the decay of a function and its Fourier transform to the exponential
//! decay of its Hermite coefficients.
//!
//! The representation layer ([`hermite_basis`], [`gaussian_family`], the
//! transform part of [`bargmann`], and [`oscillator`]) is generic over the
//! scalar type through [`Real`]. The bound evaluators work in `f64` log
//! arithmetic. The aliases below fix the scalar to `f64`.

// `!(x > 0.0)` style guards are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bargmann;
pub mod decay_analysis;
pub mod e2_norms;
pub mod error;
pub mod gaussian_family;
pub mod hermite_basis;
pub mod logscale;
pub mod oscillator;
pub mod quad;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Grid = hermite_basis::GridSpec<f64>;
pub type Sampled = hermite_basis::SampledFunction<f64>;
pub type Expansion = hermite_basis::HermiteExpansion<f64>;
pub type Gaussian = gaussian_family::GeneralizedGaussian<f64>;
pub type Taylor = bargmann::TaylorSeries<f64>;
pub type Envelope = decay_analysis::EnvelopeReport<f64>;
pub type State = oscillator::EvolutionState<f64>;

pub type Grid32 = hermite_basis::GridSpec<f32>;
pub type Sampled32 = hermite_basis::SampledFunction<f32>;
pub type Expansion32 = hermite_basis::HermiteExpansion<f32>;
pub type Gaussian32 = gaussian_family::GeneralizedGaussian<f32>;

pub type Complex64 = num_complex::Complex<f64>;
