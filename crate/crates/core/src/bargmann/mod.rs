//! The Bargmann transform
//!
//! `Uf(w) = e^{−w²/4}/(2^{1/4}√π) ∫ e^{xw} e^{−x²/2} f(x) dx`
//!
//! maps `φ_k` to `w^k/√(2^k k!)`, so Hermite expansions become Taylor series.
//! This module evaluates `U` on sampled functions and carries the growth
//! bounds on `Uf` that turn Gaussian envelopes into coefficient decay.

mod bounds;
mod contour;
mod taylor;

pub use bounds::{
    cauchy_coeff_bound, freq_side_bound, ln_cauchy_coeff_bound, pl_auxiliary, quadrant_bound, sector_bound,
    sector_params, time_side_bound, PlEvaluation, SectorParams,
};
pub use contour::{thm22_coeff_bound, thm22_contour, ContourBound};
pub use taylor::{expansion_to_taylor, taylor_to_expansion, TaylorEval, TaylorSeries, TAYLOR_TAIL_TOLERANCE};

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::hermite_basis::{fourier_sampled, EDGE_TOLERANCE};
use crate::hermite_basis::SampledFunction;
use crate::scalar::Real;

/// Trapezoidal `Uf(w)`.
///
/// Fails if `e^{xw − x²/2} f(x)` has not decayed to `EDGE_TOLERANCE` of its
/// peak at either end of the grid.
pub fn bargmann_numeric<T: Real>(f: &SampledFunction<T>, w: Complex<T>) -> Result<Complex<T>> {
    let grid = f.grid();
    let half = T::lit(0.5);
    let integrand: Vec<Complex<T>> = grid
        .points()
        .zip(f.values())
        .map(|(x, v)| {
            if v.re.is_zero() && v.im.is_zero() {
                return Complex::new(T::zero(), T::zero());
            }
            *v * (w * x - Complex::new(half * x * x, T::zero())).exp()
        })
        .collect();
    let peak = integrand.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    if peak.is_zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    if !peak.is_finite() {
        return domain("Bargmann integrand overflows on the grid");
    }
    let edge = integrand[0].norm().max(integrand[integrand.len() - 1].norm());
    let ratio = edge / peak;
    if ratio > T::lit(EDGE_TOLERANCE) {
        return domain(format!(
            "Bargmann integrand has not decayed at the grid edge (edge/peak = {:e})",
            ratio.to_f64().unwrap_or(f64::NAN)
        ));
    }
    let sum = integrand.iter().fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + *z);
    let norm = T::SQRT_2().sqrt() * T::PI().sqrt();
    Ok(sum * grid.spacing() * (-(w * w) / T::lit(4.0)).exp() / norm)
}

/// `max |U(f̂)(w) − Uf(−iw)|` over `ws`.
pub fn reflection_check<T: Real>(f: &SampledFunction<T>, ws: &[Complex<T>]) -> Result<T> {
    let f_hat = fourier_sampled(f)?;
    let minus_i = Complex::new(T::zero(), -T::one());
    let mut worst = T::zero();
    for &w in ws {
        let d = (bargmann_numeric(&f_hat, w)? - bargmann_numeric(f, minus_i * w)?).norm();
        worst = worst.max(d);
    }
    Ok(worst)
}
