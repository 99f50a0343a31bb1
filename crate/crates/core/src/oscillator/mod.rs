//! Harmonic oscillator evolution `ψ_t = e^{itH} ψ_0` with `H = −∂² + x²`.
//!
//! Each `φ_n` is an eigenfunction with eigenvalue `2n + 1`, so the flow is a
//! phase per coefficient. Gaussians stay Gaussian: the Möbius parameter of
//! the width rotates as `z(t) = z e^{4it}`.

mod confinement;

pub use confinement::{
    confinement_check, confinement_constant, conjecture32_probe, default_t_grid, measured_coeff_constant,
    ConfinementConstant, ConfinementParams, ConfinementReport, Conjecture32Report, TimeSample, DEFAULT_T_SAMPLES,
};

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::gaussian_family::{fourier_gaussian, hermite_coeffs_gaussian, GeneralizedGaussian};
use crate::hermite_basis::{fourier_expansion, synthesize, GridSpec, HermiteExpansion, SampledFunction};
use crate::scalar::Real;

/// How a state is represented.
#[derive(Debug, Clone, PartialEq)]
pub enum StateRep<T> {
    Expansion(HermiteExpansion<T>),
    Gaussian(GeneralizedGaussian<T>),
}

/// A solution of the oscillator equation observed at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionState<T> {
    pub t: T,
    pub rep: StateRep<T>,
}

impl<T: Real> EvolutionState<T> {
    pub fn expansion(e: HermiteExpansion<T>) -> Self {
        Self { t: T::zero(), rep: StateRep::Expansion(e) }
    }

    pub fn gaussian(g: GeneralizedGaussian<T>) -> Self {
        Self { t: T::zero(), rep: StateRep::Gaussian(g) }
    }

    /// The same solution observed at absolute time `t`.
    pub fn at(&self, t: T) -> Self {
        let dt = t - self.t;
        let rep = match &self.rep {
            StateRep::Expansion(e) => StateRep::Expansion(evolve_expansion(e, dt)),
            StateRep::Gaussian(g) => StateRep::Gaussian(evolve_gaussian(g, dt)),
        };
        Self { t, rep }
    }

    pub fn sample(&self, grid: &GridSpec<T>) -> SampledFunction<T> {
        match &self.rep {
            StateRep::Expansion(e) => synthesize(e, grid),
            StateRep::Gaussian(g) => g.sample(grid),
        }
    }

    /// Samples of the Fourier transform, computed exactly from the representation.
    pub fn fourier_sample(&self, grid: &GridSpec<T>) -> SampledFunction<T> {
        match &self.rep {
            StateRep::Expansion(e) => synthesize(&fourier_expansion(e), grid),
            StateRep::Gaussian(g) => fourier_gaussian(g).sample(grid),
        }
    }

    pub fn coefficients(&self, kmax: usize) -> HermiteExpansion<T> {
        match &self.rep {
            StateRep::Expansion(e) => {
                let mut c = e.coeffs.clone();
                c.resize(kmax + 1, Complex::new(T::zero(), T::zero()));
                HermiteExpansion::new(c)
            }
            StateRep::Gaussian(g) => hermite_coeffs_gaussian(g, kmax),
        }
    }
}

/// `coeffs[n] ↦ e^{i(2n+1)t} coeffs[n]`.
pub fn evolve_expansion<T: Real>(e: &HermiteExpansion<T>, t: T) -> HermiteExpansion<T> {
    let two = T::lit(2.0);
    HermiteExpansion::new(
        e.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| *c * Complex::from_polar(T::one(), (two * T::from_index(n) + T::one()) * t))
            .collect(),
    )
}

/// Closed-form Gaussian flow.
///
/// `z(t) = z e^{4it}`, `b(t) = (1 − z(t))/(1 + z(t))` and
/// `A(t) = A e^{it} √(1 + b(t))/√(1 + b)` with principal roots. Any branch
/// choice gives the same function, because the principal root is also what
/// fixes the Bargmann prefactor `2^{1/4} A (1+b)^{−1/2}`, which evolves by
/// the phase `e^{it}` alone.
pub fn evolve_gaussian<T: Real>(g: &GeneralizedGaussian<T>, t: T) -> GeneralizedGaussian<T> {
    let one = Complex::new(T::one(), T::zero());
    let z_t = g.mobius() * Complex::from_polar(T::one(), T::lit(4.0) * t);
    let b_t = GeneralizedGaussian::width_from_mobius(z_t);
    let a_t = g.amplitude() * Complex::from_polar(T::one(), t) * (one + b_t).sqrt() / (one + g.width()).sqrt();
    GeneralizedGaussian::new(a_t, b_t).expect("the flow keeps |z| < 1, hence Re b > 0")
}

/// `max |F(ψ_t) − e^{iπ/4} ψ_{t−π/4}|` over coefficients.
pub fn fourier_time_shift_check<T: Real>(e: &HermiteExpansion<T>, t: T) -> T {
    let lhs = fourier_expansion(&evolve_expansion(e, t));
    let rhs = evolve_expansion(e, t - T::FRAC_PI_4()).scaled(Complex::from_polar(T::one(), T::FRAC_PI_4()));
    lhs.max_abs_diff(&rhs)
}

/// `f_n = (1/2π) ∫_0^{2π} ψ_t e^{−int} dt` by the trapezoid rule on `num_samples` points.
///
/// Exact when no phase `e^{i(2k+1−n)t}` with `2k+1 ≠ n` aliases to zero
/// frequency. That needs `num_samples > 2(2·len + 1)` and
/// `num_samples > 2·len + 1 + |n|`; both are enforced.
pub fn time_average_projection<T: Real>(e: &HermiteExpansion<T>, n: i64, num_samples: usize) -> Result<HermiteExpansion<T>> {
    let top = 2 * e.len() + 1;
    if num_samples <= 2 * top {
        return domain(format!("{num_samples} time samples alias an expansion of length {}; need more than {}", e.len(), 2 * top));
    }
    if num_samples as u64 <= top as u64 + n.unsigned_abs() {
        return domain(format!("{num_samples} time samples alias frequency {n}"));
    }
    let m = T::from_index(num_samples);
    let nf = T::lit(n as f64);
    let mut acc = vec![Complex::new(T::zero(), T::zero()); e.len()];
    for j in 0..num_samples {
        let t = T::TAU() * T::from_index(j) / m;
        let weight = Complex::from_polar(T::one(), -nf * t);
        for (a, c) in acc.iter_mut().zip(evolve_expansion(e, t).coeffs) {
            *a = *a + c * weight;
        }
    }
    Ok(HermiteExpansion::new(acc.into_iter().map(|a| a / m).collect()))
}
