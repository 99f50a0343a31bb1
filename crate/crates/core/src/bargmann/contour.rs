use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use statrs::function::gamma::ln_gamma;

use super::bounds::sector_params;
use crate::error::{domain, Result};
use crate::logscale::log_sum_exp;
use crate::quad::adaptive_simpson;

const QUAD_TOLERANCE: f64 = 1e-12;

/// The star-shaped contour `γ_n(t) = r_n(t) e^{it}` and the resulting bound
/// on `|c_n|` for unit envelope constant.
///
/// Integrals are stored as logarithms, each computed with its integrand
/// normalized by its maximum so that large `n` neither underflows nor loses
/// the quadrature tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourBound {
    pub n: usize,
    pub mu: f64,
    pub a: f64,
    pub theta0: f64,
    pub ln_i: f64,
    pub ln_j: f64,
    /// `ln` of `(4/π)√(2π/(1+a)) e^{(n+1)/2} (2n+2)^{−n/2} (I_n + J_n)`.
    pub ln_bound: f64,
    /// `ln` of `θ0 (1+μ)/(2√μ) (2μ/(1+μ))^{n/2}`, an upper estimate of `I_n`.
    pub ln_i_upper: f64,
    /// `ln` of `(√π/4) Γ(n/4)/Γ((n+2)/4) μ^{n/4}`, an upper estimate of `J_n`.
    pub ln_j_gamma: f64,
    /// `ln` of `(√(6π)/4) n^{−1/2} μ^{n/4}`.
    ///
    /// This simplification of `ln_j_gamma` holds for `n ≥ 3` only; at `n = 2`
    /// it undercuts the Γ-ratio value.
    pub ln_j_simple: f64,
}

impl ContourBound {
    pub fn bound(&self) -> f64 {
        self.ln_bound.exp()
    }

    pub fn i_n(&self) -> f64 {
        self.ln_i.exp()
    }

    pub fn j_n(&self) -> f64 {
        self.ln_j.exp()
    }

    /// `r_n(t)`, extended by reflection about `π/4` and `π/2`-periodicity.
    pub fn radius(&self, t: f64) -> f64 {
        let mut s = t.rem_euclid(FRAC_PI_2);
        if s > FRAC_PI_4 {
            s = FRAC_PI_2 - s;
        }
        let scale = 2.0 * self.n as f64 + 2.0;
        let denom = if s < self.theta0 {
            self.mu + (1.0 - self.mu) * s.sin().powi(2)
        } else {
            self.mu.sqrt() * (2.0 * s).sin()
        };
        (scale / denom).sqrt()
    }

    /// Both branch formulas evaluated at `θ0`; they agree there.
    pub fn branch_values_at_theta0(&self) -> (f64, f64) {
        let scale = 2.0 * self.n as f64 + 2.0;
        let t = self.theta0;
        (
            (scale / (self.mu + (1.0 - self.mu) * t.sin().powi(2))).sqrt(),
            (scale / (self.mu.sqrt() * (2.0 * t).sin())).sqrt(),
        )
    }
}

/// Integrates `exp(ln_f)` over `[a, b]` given `ln_max ≥ sup ln_f`; returns the log.
fn ln_integral<F: Fn(f64) -> f64>(ln_f: F, a: f64, b: f64, ln_max: f64) -> f64 {
    let v = adaptive_simpson(|t| (ln_f(t) - ln_max).exp(), a, b, QUAD_TOLERANCE);
    ln_max + v.ln()
}

pub fn thm22_contour(n: usize, mu: f64) -> Result<ContourBound> {
    if !(mu > 0.0 && mu < 1.0) {
        return domain(format!("μ must lie in (0, 1), got {mu}"));
    }
    if n < 2 {
        return domain(format!("the contour bound is constructed for n ≥ 2, got {n}"));
    }
    let a = (1.0 - mu) / (1.0 + mu);
    let s = sector_params(a)?;
    let theta0 = s.theta0;
    let nf = n as f64;
    let p = 0.5 * (nf - 2.0);

    // Both integrands increase on their intervals, so the right endpoint is the max.
    let ln_i_f = |t: f64| {
        let s2 = t.sin().powi(2);
        p * (mu + (1.0 - mu) * s2).ln() + 0.5 * (mu * mu + (1.0 - mu * mu) * s2).ln()
    };
    let ln_i = ln_integral(ln_i_f, 0.0, theta0, ln_i_f(theta0));
    let ln_j_f = |t: f64| p * (2.0 * t).sin().ln();
    let ln_j = 0.25 * nf * mu.ln() + ln_integral(ln_j_f, theta0, FRAC_PI_4, 0.0);

    let ln_bound = (4.0 / PI).ln() + 0.5 * (TAU / (1.0 + a)).ln() + 0.5 * (nf + 1.0) - 0.5 * nf * (2.0 * nf + 2.0).ln()
        + log_sum_exp(&[ln_i, ln_j]);

    let ln_i_upper = theta0.ln() + ((1.0 + mu) / (2.0 * mu.sqrt())).ln() + 0.5 * nf * (2.0 * mu / (1.0 + mu)).ln();
    let ln_j_gamma = 0.5 * PI.ln() - 4f64.ln() + ln_gamma(nf / 4.0) - ln_gamma((nf + 2.0) / 4.0) + 0.25 * nf * mu.ln();
    let ln_j_simple = 0.5 * (6.0 * PI).ln() - 4f64.ln() - 0.5 * nf.ln() + 0.25 * nf * mu.ln();

    Ok(ContourBound { n, mu, a, theta0, ln_i, ln_j, ln_bound, ln_i_upper, ln_j_gamma, ln_j_simple })
}

/// Contour bound on `|c_n|` for `f ∈ E(a)` with envelope constant `C`.
pub fn thm22_coeff_bound(n: usize, a: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return domain(format!("a must lie in (0, 1), got {a}"));
    }
    if !(c > 0.0) {
        return domain(format!("envelope constant must be positive, got {c}"));
    }
    let mu = (1.0 - a) / (1.0 + a);
    Ok((c.ln() + thm22_contour(n, mu)?.ln_bound).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_is_continuous_and_symmetric() {
        let cb = thm22_contour(10, 1.0 / 3.0).unwrap();
        let (lo, hi) = cb.branch_values_at_theta0();
        assert!((lo - hi).abs() < 1e-12 * lo);
        for t in [0.1, 0.3, 0.7] {
            assert!((cb.radius(t) - cb.radius(FRAC_PI_2 - t)).abs() < 1e-12);
            assert!((cb.radius(t) - cb.radius(t + 3.0 * FRAC_PI_2)).abs() < 1e-12);
        }
        assert!((cb.radius(cb.theta0 - 1e-9) - cb.radius(cb.theta0 + 1e-9)).abs() < 1e-6);
    }

    #[test]
    fn integrals_respect_upper_estimates() {
        for mu in [0.1, 1.0 / 3.0, 0.8] {
            for n in [2, 3, 5, 10, 50, 200, 2000] {
                let cb = thm22_contour(n, mu).unwrap();
                assert!(cb.ln_i <= cb.ln_i_upper + 1e-12, "I, n = {n}");
                assert!(cb.ln_j <= cb.ln_j_gamma + 1e-12, "J, n = {n}");
                if n >= 3 {
                    assert!(cb.ln_j_gamma <= cb.ln_j_simple + 1e-12, "Γ, n = {n}");
                }
            }
        }
    }

    #[test]
    fn gamma_simplification_fails_below_three() {
        let cb = thm22_contour(2, 0.5).unwrap();
        assert!(cb.ln_j_gamma > cb.ln_j_simple);
    }

    #[test]
    fn i_is_negligible_against_j() {
        let ratio = |n| {
            let cb = thm22_contour(n, 1.0 / 3.0).unwrap();
            (cb.ln_i - cb.ln_j).exp()
        };
        let (r10, r50, r200) = (ratio(10), ratio(50), ratio(200));
        assert!(r200 < 0.1);
        assert!(r10 > r50 && r50 > r200);
    }

    #[test]
    fn j_integral_against_gamma_closed_form_at_full_range() {
        // Over [0, π/4] the J integral equals the Γ-ratio value exactly.
        let n = 7.0;
        let v = adaptive_simpson(|t: f64| (2.0 * t).sin().powf(0.5 * (n - 2.0)), 0.0, FRAC_PI_4, 1e-13);
        let want = (0.5 * PI.ln() - 4f64.ln() + ln_gamma(n / 4.0) - ln_gamma((n + 2.0) / 4.0)).exp();
        assert!((v - want).abs() < 1e-10);
    }

    #[test]
    fn large_n_stays_finite() {
        let cb = thm22_contour(10_000, 1.0 / 3.0).unwrap();
        assert!(cb.ln_bound.is_finite() && cb.ln_bound < -1e4);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(thm22_contour(1, 0.5).is_err());
        assert!(thm22_contour(5, 1.0).is_err());
        assert!(thm22_coeff_bound(5, 0.5, 0.0).is_err());
    }
}
