//! Weighted `E²(a)` norms
//!
//! `2‖f‖_a² = ∫ |f(x)|² e^{a x²} dm + ∫ |f̂(ξ)|² e^{a ξ²} dm`
//!
//! together with the closed form of `‖φ_n‖_a²`, its generating function, and
//! the coefficient bounds they lead to.

mod lemma;

pub use lemma::{
    e1_norm_bound_check, lemma41_certificate, ln_thm42_bound, q, thm42_bound, thm42_bound_form, weak_confinement_chain,
    ChainStep, Lemma41Certificate, Thm42Form, WeakConfinementParams, LEMMA41_CHECK_LIMIT,
};

use crate::error::{domain, Result};
use crate::hermite_basis::{fourier_sampled, SampledFunction, EDGE_TOLERANCE};
use crate::logscale::{ln_central_ratio_table, neumaier_sum};
use crate::scalar::Real;

/// `∫ |s|² e^{a x²} dm` by the trapezoid rule.
///
/// The integrand must have decayed to `EDGE_TOLERANCE` of its peak at both
/// ends of the resolved support, i.e. the outermost nonzero samples.
fn weighted_side<T: Real>(s: &SampledFunction<T>, a: T, side: &str) -> Result<T> {
    let grid = s.grid();
    let half = T::lit(0.5);
    let integrand: Vec<T> = grid
        .points()
        .zip(s.values())
        .map(|(x, v)| {
            let m = v.norm();
            if m.is_zero() {
                T::zero()
            } else {
                let w = m * (half * a * x * x).exp();
                w * w
            }
        })
        .collect();
    let first = integrand.iter().position(|v| !v.is_zero());
    let last = integrand.iter().rposition(|v| !v.is_zero());
    let (Some(first), Some(last)) = (first, last) else {
        return Ok(T::zero());
    };
    let peak = integrand.iter().copied().fold(T::zero(), T::max);
    if !peak.is_finite() {
        return domain(format!("{side} weighted integrand overflows"));
    }
    let edge = integrand[first].max(integrand[last]);
    if edge > peak * T::lit(EDGE_TOLERANCE) {
        return domain(format!(
            "{side} weighted integrand is not resolved at the support edge (edge/peak = {:e})",
            (edge / peak).to_f64().unwrap_or(f64::NAN)
        ));
    }
    let sum = integrand.iter().fold(T::zero(), |acc, v| acc + *v);
    Ok(sum * grid.dm_weight())
}

/// `‖f‖_a²` given samples of both `f` and `f̂`.
pub fn e2_norm_sq_pair<T: Real>(f: &SampledFunction<T>, f_hat: &SampledFunction<T>, a: T) -> Result<T> {
    if a < T::zero() {
        return domain("the weight exponent must be non-negative");
    }
    let time = weighted_side(f, a, "time-side")?;
    let freq = weighted_side(f_hat, a, "frequency-side")?;
    Ok(T::lit(0.5) * (time + freq))
}

pub fn e2_norm_pair<T: Real>(f: &SampledFunction<T>, f_hat: &SampledFunction<T>, a: T) -> Result<T> {
    Ok(e2_norm_sq_pair(f, f_hat, a)?.sqrt())
}

/// `‖f‖_a²` with `f̂` computed by the sampled Fourier transform.
///
/// Roundoff in `f̂` is flushed to zero, so the frequency side fails with a
/// domain error when the weighted integrand still carries mass where `|f̂|`
/// falls below roundoff. Use [`e2_norm_sq_pair`] with an exact transform then.
pub fn e2_norm_sq<T: Real>(f: &SampledFunction<T>, a: T) -> Result<T> {
    e2_norm_sq_pair(f, &fourier_sampled(f)?, a)
}

pub fn e2_norm<T: Real>(f: &SampledFunction<T>, a: T) -> Result<T> {
    Ok(e2_norm_sq(f, a)?.sqrt())
}

fn check_unit_interval(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return domain(format!("a must lie in (0, 1), got {a}"));
    }
    Ok((1.0 - a) / (1.0 + a))
}

/// `ln ‖φ_n‖_a²` from `(1−a)^{−1/2} Σ_k Q_k Q_{n−k} μ^{−k}`.
///
/// Terms are formed in log space and summed smallest first with
/// compensation after factoring out the largest.
pub fn ln_phi_norm_closed(n: usize, a: f64) -> Result<f64> {
    let mu = check_unit_interval(a)?;
    let ln_q = ln_central_ratio_table::<f64>(n);
    let ln_mu = mu.ln();
    let mut terms: Vec<f64> = (0..=n).map(|k| ln_q[k] + ln_q[n - k] - k as f64 * ln_mu).collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for t in terms.iter_mut() {
        *t = (*t - max).exp();
    }
    terms.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(-0.5 * (1.0 - a).ln() + max + neumaier_sum(&terms).ln())
}

pub fn phi_norm_closed(n: usize, a: f64) -> Result<f64> {
    Ok(ln_phi_norm_closed(n, a)?.exp())
}

/// `ln` of `(1−a)^{−1/2} Q_n μ^{−n}`, the last term of the closed-form sum.
pub fn ln_phi_norm_lower(n: usize, a: f64) -> Result<f64> {
    let mu = check_unit_interval(a)?;
    Ok(-0.5 * (1.0 - a).ln() + q(n).ln() - n as f64 * mu.ln())
}

pub fn phi_norm_lower(n: usize, a: f64) -> Result<f64> {
    Ok(ln_phi_norm_lower(n, a)?.exp())
}

/// `Σ_k C(2k, k) C(2n−2k, n−k)` in exact integer arithmetic; equals `4^n`.
///
/// This is the closed-form sum at `μ = 1` scaled by `4^n`. It exceeds `u128`
/// beyond `n = 62`.
pub fn central_binomial_convolution(n: u32) -> Option<u128> {
    let binom = |m: u32| -> Option<u128> {
        let mut c: u128 = 1;
        for i in 0..m {
            c = c.checked_mul(u128::from(2 * m - i))? / u128::from(i + 1);
        }
        Some(c)
    };
    let mut central = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        central.push(binom(k)?);
    }
    let mut sum: u128 = 0;
    for k in 0..=n as usize {
        sum = sum.checked_add(central[k].checked_mul(central[n as usize - k])?)?;
    }
    Some(sum)
}

/// Partial sum of `Σ_k ‖φ_k‖_a² w^k` against its closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenFuncCheck {
    pub lhs_partial: f64,
    pub rhs: f64,
}

impl GenFuncCheck {
    pub fn error(&self) -> f64 {
        (self.lhs_partial - self.rhs).abs()
    }
}

/// `Σ_{k ≤ nmax} ‖φ_k‖_a² w^k` vs `(1−a)^{−1/2} (1−w)^{−1/2} (1−w/μ)^{−1/2}`.
pub fn gen_func_check(a: f64, w: f64, nmax: usize) -> Result<GenFuncCheck> {
    let mu = check_unit_interval(a)?;
    if !(w.abs() < mu) {
        return domain(format!("|w| must be below μ = {mu}, got {w}"));
    }
    let rhs = ((1.0 - a) * (1.0 - w) * (1.0 - w / mu)).powf(-0.5);
    let mut terms = Vec::with_capacity(nmax + 1);
    for k in 0..=nmax {
        let t = if w == 0.0 {
            if k == 0 { phi_norm_closed(0, a)? } else { 0.0 }
        } else {
            w.signum().powi(k as i32) * (ln_phi_norm_closed(k, a)? + k as f64 * w.abs().ln()).exp()
        };
        terms.push(t);
    }
    Ok(GenFuncCheck { lhs_partial: neumaier_sum(&terms), rhs })
}
