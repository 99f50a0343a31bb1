//! Decay bounds for Hermite coefficients of functions in `E(a)`, empirical
//! rate extraction, and a numerical Hardy classifier.

mod envelope;
mod fit;

pub use envelope::{envelope_scan, EnvelopeReport};
pub use fit::{decay_fit, fit_log_magnitudes, DecayFit, Parity, NOISE_FLOOR};

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::hermite_basis::{eval_phi, fourier_sampled, inner_product, HermiteExpansion, SampledFunction};
use crate::logscale::ln_factorial;
use crate::scalar::Real;

/// Tolerance for `tanh 2α = a` in [`ineq2_rate`].
pub const ENDPOINT_TOLERANCE: f64 = 1e-12;

/// `a`, the rate `α` with `tanh 2α = a`, and `μ = e^{−4α} = (1−a)/(1+a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateParams {
    pub a: f64,
    pub alpha: f64,
    pub mu: f64,
}

impl RateParams {
    pub fn from_a(a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return domain(format!("a must lie in (0, 1), got {a}"));
        }
        let alpha = a.atanh() / 2.0;
        Ok(Self { a, alpha, mu: (1.0 - a) / (1.0 + a) })
    }

    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return domain(format!("alpha must be positive, got {alpha}"));
        }
        Ok(Self { a: (2.0 * alpha).tanh(), alpha, mu: (-4.0 * alpha).exp() })
    }
}

fn check_unit_interval(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return domain(format!("a must lie in (0, 1), got {a}"));
    }
    Ok(())
}

/// `ln` of `C √(2π k!/(1+a)) (e/k)^{k/2} ((1−a)/(1+a))^{k/4}`.
pub fn ln_thm21_bound(k: usize, a: f64, c: f64) -> Result<f64> {
    if k == 0 {
        return domain("the coefficient bound is stated for k ≥ 1");
    }
    check_unit_interval(a)?;
    if !(c > 0.0) {
        return domain(format!("envelope constant must be positive, got {c}"));
    }
    let kf = k as f64;
    let mu = (1.0 - a) / (1.0 + a);
    Ok(c.ln()
        + 0.5 * (std::f64::consts::TAU.ln() + ln_factorial(k as u64) - (1.0 + a).ln())
        + 0.5 * kf * (1.0 - kf.ln())
        + 0.25 * kf * mu.ln())
}

/// Upper bound on `|⟨f, φ_k⟩|` for `f ∈ E(a)` with envelope constant `C`, `0 < a < 1`.
pub fn thm21_bound(k: usize, a: f64, c: f64) -> Result<f64> {
    Ok(ln_thm21_bound(k, a, c)?.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateVerdict {
    /// `tanh 2α < a`: coefficients are `O(e^{−αk})` by the crude estimate.
    Applies,
    /// `tanh 2α = a`: needs the sector-contour estimate.
    Endpoint,
    /// `tanh 2α > a`: no conclusion.
    Fails,
}

pub fn ineq2_rate(a: f64, alpha: f64) -> RateVerdict {
    let t = (2.0 * alpha).tanh();
    if (t - a).abs() <= ENDPOINT_TOLERANCE {
        RateVerdict::Endpoint
    } else if t < a {
        RateVerdict::Applies
    } else {
        RateVerdict::Fails
    }
}

/// `|coeffs[k]| · k^{1/4} · e^{αk}` for `k ≥ 1`.
pub fn rate_profile(e: &HermiteExpansion<f64>, alpha: f64) -> Vec<(usize, f64)> {
    e.coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| {
            let kf = k as f64;
            let m = c.norm();
            let v = if m == 0.0 { 0.0 } else { (m.ln() + 0.25 * kf.ln() + alpha * kf).exp() };
            (k, v)
        })
        .collect()
}

/// `sup_k |coeffs[k]| k^{1/4} e^{αk}`; boundedness over the computed range is
/// the checkable stand-in for `⟨f, φ_k⟩ = O(k^{−1/4} e^{−αk})`.
pub fn thm22_rate_check(e: &HermiteExpansion<f64>, alpha: f64) -> f64 {
    rate_profile(e, alpha).into_iter().map(|(_, v)| v).fold(0.0, f64::max)
}

/// Result of [`hardy_classify`].
#[derive(Debug, Clone, PartialEq)]
pub struct HardyReport<T> {
    pub a: T,
    pub member: bool,
    pub constant: T,
    pub time: EnvelopeReport<T>,
    pub freq: EnvelopeReport<T>,
    /// `⟨f, φ_0⟩`, reported separately: no bound constrains it.
    pub ground_coeff: Complex<T>,
    /// `‖f − ⟨f,φ_0⟩φ_0‖` when `a ≥ 1`.
    pub residual: Option<T>,
}

/// Scans `f` and its sampled Fourier transform at parameter `a`.
pub fn hardy_classify<T: Real>(f: &SampledFunction<T>, a: T) -> Result<HardyReport<T>> {
    let fhat = fourier_sampled(f)?;
    hardy_classify_pair(f, &fhat, a)
}

/// As [`hardy_classify`], with the Fourier side supplied by the caller.
pub fn hardy_classify_pair<T: Real>(
    f: &SampledFunction<T>,
    fhat: &SampledFunction<T>,
    a: T,
) -> Result<HardyReport<T>> {
    let time = envelope_scan(f, a);
    let freq = envelope_scan(fhat, a);
    let member = !time.divergent && !freq.divergent;
    let ground_coeff = inner_product(f, 0)?;
    let residual = if a >= T::one() {
        let phi0 = SampledFunction::from_fn(*f.grid(), |x| Complex::new(eval_phi(0, &[x])[0], T::zero()));
        Some(f.sub(&phi0.scaled(ground_coeff))?.norm_sq().sqrt())
    } else {
        None
    };
    Ok(HardyReport {
        a,
        member,
        constant: if member { time.constant.max(freq.constant) } else { T::infinity() },
        time,
        freq,
        ground_coeff,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian_family::{e_membership, example_2_3, hermite_coeffs_gaussian, GeneralizedGaussian};
    use crate::hermite_basis::GridSpec;

    #[test]
    fn thm21_spot_value() {
        let v = thm21_bound(1, 0.5, 1.0).unwrap();
        let oracle = (std::f64::consts::TAU / 1.5).sqrt() * 0.5f64.exp() * (1.0f64 / 3.0).powf(0.25);
        assert!((v - oracle).abs() < 1e-13);
        assert!((v - 2.5640).abs() < 1e-4);
        assert!(thm21_bound(0, 0.5, 1.0).is_err());
        assert!(thm21_bound(1, 1.0, 1.0).is_err());
    }

    #[test]
    fn thm21_dominates_family_members() {
        let mut family: Vec<(GeneralizedGaussian<f64>, f64)> = [0.3, 0.5, 0.8]
            .iter()
            .map(|&a| (GeneralizedGaussian::g(a).unwrap(), a))
            .collect();
        for alpha in [0.2, 0.27465, 0.5] {
            family.push((example_2_3(alpha).unwrap(), (2.0f64 * alpha).tanh()));
        }
        for (g, a) in family {
            let m = e_membership(&g, a);
            assert!(m.member);
            let e = hermite_coeffs_gaussian(&g, 60);
            for k in 1..=60 {
                assert!(e.coeffs[k].norm() <= thm21_bound(k, a, m.constant).unwrap(), "a = {a}, k = {k}");
            }
        }
    }

    #[test]
    fn rate_classification() {
        assert_eq!(ineq2_rate(0.5, 0.2), RateVerdict::Applies);
        assert_eq!(ineq2_rate((0.6f64).tanh(), 0.3), RateVerdict::Endpoint);
        assert_eq!(ineq2_rate(0.3, 0.5), RateVerdict::Fails);
    }

    #[test]
    fn rate_params_consistency() {
        for a in [0.01, 0.3, 0.5, 0.9, 0.999] {
            let p = RateParams::from_a(a).unwrap();
            assert!(((-4.0 * p.alpha).exp() - p.mu).abs() < 1e-14);
            let q = RateParams::from_alpha(p.alpha).unwrap();
            assert!((q.a - a).abs() < 1e-14 && (q.mu - p.mu).abs() < 1e-14);
        }
        assert!(RateParams::from_a(1.0).is_err());
    }

    #[test]
    fn endpoint_ratio_for_chirp_is_bounded_both_ways() {
        let alpha = 0.27465;
        let e = hermite_coeffs_gaussian(&example_2_3(alpha).unwrap(), 100);
        let evens: Vec<f64> =
            rate_profile(&e, alpha).into_iter().filter(|(k, _)| k % 2 == 0).map(|(_, v)| v).collect();
        let lo = evens.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = evens.iter().copied().fold(0.0, f64::max);
        assert!(lo > 0.5 && hi < 1.5 && hi / lo < 3.0, "[{lo}, {hi}]");
        assert_eq!(thm22_rate_check(&e, alpha), hi);
    }

    #[test]
    fn strictly_interior_member_ratio_vanishes() {
        let a = (0.5f64).tanh();
        let alpha = a.atanh() / 2.0;
        let e = hermite_coeffs_gaussian(&GeneralizedGaussian::g(a).unwrap(), 200);
        let prof = rate_profile(&e, alpha);
        assert!(prof[199 - 1].1 < 1e-10 * prof[1].1);
        assert_eq!(thm22_rate_check(&HermiteExpansion::zeros(10), alpha), 0.0);
    }

    #[test]
    fn fits_recover_closed_form_rates() {
        let alpha = 0.27465;
        let e = hermite_coeffs_gaussian(&example_2_3(alpha).unwrap(), 100);
        let fit = decay_fit(&e, (10, 100)).unwrap();
        assert_eq!(fit.parity, Parity::Even);
        assert!((fit.alpha_hat - alpha).abs() < 1e-3, "{fit:?}");
        assert!((fit.power_hat - 0.25).abs() < 0.05, "{fit:?}");

        let g = GeneralizedGaussian::g(0.5).unwrap();
        let rate = -0.5 * f64::ln(g.mobius().re);
        let fit = decay_fit(&hermite_coeffs_gaussian(&g, 100), (10, 100)).unwrap();
        assert!((fit.alpha_hat - rate).abs() < 1e-3, "{fit:?} vs {rate}");
    }

    #[test]
    fn classifier_endpoint_cases() {
        let grid = GridSpec::default();
        let g1 = GeneralizedGaussian::g(1.0).unwrap().sample(&grid);
        let r = hardy_classify(&g1, 1.0).unwrap();
        assert!(r.member, "{r:?}");
        assert!(r.residual.unwrap() < 1e-8);

        let phi2 = SampledFunction::from_real_fn(grid, |x| eval_phi(2, &[x])[0]);
        let r = hardy_classify(&phi2, 0.9).unwrap();
        assert!(r.member && r.constant.is_finite(), "{r:?}");
        let r = hardy_classify(&phi2, 1.0).unwrap();
        assert!(!r.member && r.time.divergent);
    }

    #[test]
    fn hermite_functions_are_members_below_one() {
        let grid = GridSpec::default();
        for k in 0..=40 {
            let f = SampledFunction::from_real_fn(grid, |x| eval_phi(k, &[x])[0]);
            let r = hardy_classify(&f, 0.5).unwrap();
            assert!(r.member, "k = {k}: {r:?}");
        }
    }

    #[test]
    fn envelope_constants_shrink_with_a() {
        let grid = GridSpec::default();
        let f = SampledFunction::from_real_fn(grid, |x| eval_phi(5, &[x])[0]);
        let mut prev = f64::INFINITY;
        for a in [0.9, 0.7, 0.5, 0.3, 0.1] {
            let r = envelope_scan(&f, a);
            assert!(!r.divergent && r.constant <= prev);
            prev = r.constant;
        }
    }
}
