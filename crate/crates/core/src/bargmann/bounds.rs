use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex;

use super::taylor::TaylorSeries;
use crate::error::{domain, Result};

/// Sector geometry and envelope data for `f ∈ E(a)` with constant `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorParams {
    pub a: f64,
    /// `(1−a)/(1+a)`.
    pub mu: f64,
    /// `½ arctan(2√μ/(1−μ))`.
    pub theta0: f64,
    /// `π/2 − θ0`.
    pub theta1: f64,
    pub c: f64,
}

impl SectorParams {
    pub fn with_constant(self, c: f64) -> Self {
        Self { c, ..self }
    }

    /// `C √(2π/(1+a))`, the bound on the auxiliary function in the sector.
    pub fn ray_bound(&self) -> f64 {
        self.c * (TAU / (1.0 + self.a)).sqrt()
    }
}

/// Sector parameters for `a ∈ (0, 1)` with unit envelope constant.
pub fn sector_params(a: f64) -> Result<SectorParams> {
    if !(a > 0.0 && a < 1.0) {
        return domain(format!("a must lie in (0, 1), got {a}"));
    }
    let mu = (1.0 - a) / (1.0 + a);
    // atan2 keeps θ0 accurate as μ → 1, where 1 − μ vanishes.
    let theta0 = 0.5 * (2.0 * mu.sqrt()).atan2(1.0 - mu);
    Ok(SectorParams { a, mu, theta0, theta1: FRAC_PI_2 - theta0, c: 1.0 })
}

/// Bound on `|Uf(w)|` from the time-side envelope alone:
/// `K exp((μ + (1−μ) sin²θ) r²/4)`.
pub fn time_side_bound(s: &SectorParams, w: Complex<f64>) -> f64 {
    let (r, th) = w.to_polar();
    s.ray_bound() * ((s.mu + (1.0 - s.mu) * th.sin().powi(2)) * r * r / 4.0).exp()
}

/// Bound on `|Uf(w)|` from the frequency-side envelope alone:
/// `K exp((μ + (1−μ) cos²θ) r²/4)`.
pub fn freq_side_bound(s: &SectorParams, w: Complex<f64>) -> f64 {
    let (r, th) = w.to_polar();
    s.ray_bound() * ((s.mu + (1.0 - s.mu) * th.cos().powi(2)) * r * r / 4.0).exp()
}

/// `K exp(√μ r²/4)`, valid in every direction.
pub fn quadrant_bound(s: &SectorParams, w: Complex<f64>) -> f64 {
    let r = w.norm();
    s.ray_bound() * (s.mu.sqrt() * r * r / 4.0).exp()
}

/// `K exp(√μ sin 2θ r²/4)` for `θ0 ≤ θ ≤ θ1` after reducing `arg w` mod `π/2`.
///
/// Directions outside the sector are a domain error; use [`quadrant_bound`]
/// or the one-sided bounds there.
pub fn sector_bound(s: &SectorParams, w: Complex<f64>) -> Result<f64> {
    let r = w.norm();
    if r == 0.0 {
        return Ok(s.ray_bound());
    }
    let th = w.arg().rem_euclid(FRAC_PI_2);
    let slack = 1e-15;
    if th < s.theta0 - slack || th > s.theta1 + slack {
        return domain(format!(
            "direction {th} (mod π/2) lies outside the sector [{}, {}]",
            s.theta0, s.theta1
        ));
    }
    Ok(s.ray_bound() * (s.mu.sqrt() * (2.0 * th).sin() * r * r / 4.0).exp())
}

/// `F(w) = exp(i√μ w²/4) Uf(w)` from a Taylor series of `Uf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlEvaluation {
    pub value: Complex<f64>,
    /// Estimated omitted tail of the Taylor evaluation, scaled like `F`.
    pub tail: f64,
    pub truncated: bool,
}

pub fn pl_auxiliary(s: &SectorParams, f: &TaylorSeries<f64>, w: Complex<f64>) -> PlEvaluation {
    let ev = f.eval(w);
    let phase = (Complex::new(0.0, s.mu.sqrt() / 4.0) * w * w).exp();
    PlEvaluation { value: phase * ev.value, tail: phase.norm() * ev.tail, truncated: ev.truncated }
}

/// `ln` of `K (e√μ/(2n))^{n/2}`.
pub fn ln_cauchy_coeff_bound(s: &SectorParams, n: usize) -> Result<f64> {
    if n == 0 {
        return domain("the optimized Cauchy estimate is stated for n ≥ 1");
    }
    let nf = n as f64;
    Ok(s.ray_bound().ln() + 0.5 * nf * (1.0 + 0.5 * s.mu.ln() - (2.0 * nf).ln()))
}

/// Bound on `|c_n|` from the Cauchy estimate optimized over the radius.
pub fn cauchy_coeff_bound(s: &SectorParams, n: usize) -> Result<f64> {
    Ok(ln_cauchy_coeff_bound(s, n)?.exp())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_4, PI};

    use super::*;
    use crate::bargmann::{expansion_to_taylor, thm22_coeff_bound};
    use crate::gaussian_family::{
        bargmann_gaussian, e_membership, example_2_3, hermite_coeffs_gaussian, GeneralizedGaussian,
    };
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn member_params(g: &GeneralizedGaussian<f64>, a: f64) -> SectorParams {
        let m = e_membership(g, a);
        assert!(m.member);
        sector_params(a).unwrap().with_constant(m.constant)
    }

    #[test]
    fn sector_geometry() {
        let s = sector_params(0.5).unwrap();
        assert!((s.mu - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.theta0 - PI / 6.0).abs() < 1e-12);
        assert!(sector_params(1.0 - 1e-12).unwrap().theta0 < 1e-5);
        assert!(sector_params(0.0).is_err());
        assert!(sector_params(1.0).is_err());
    }

    #[test]
    fn quadrant_bound_values() {
        let s = sector_params(0.5).unwrap();
        assert!((quadrant_bound(&s, C::new(0.0, 0.0)) - (TAU / 1.5).sqrt()).abs() < 1e-14);
        assert!((quadrant_bound(&s, C::new(0.0, 2.0)) - 3.6457286459156193).abs() < 1e-12);
    }

    #[test]
    fn sector_bound_meets_hypothesis_at_theta0() {
        let s = sector_params(0.5).unwrap();
        let diag = C::from_polar(2.0, FRAC_PI_4);
        assert!((sector_bound(&s, diag).unwrap() - quadrant_bound(&s, diag)).abs() < 1e-12);
        let edge = C::from_polar(3.0, s.theta0);
        assert!((sector_bound(&s, edge).unwrap() - time_side_bound(&s, edge)).abs() < 1e-12 * time_side_bound(&s, edge));
        let edge = C::from_polar(3.0, s.theta1);
        assert!((sector_bound(&s, edge).unwrap() - freq_side_bound(&s, edge)).abs() < 1e-12 * freq_side_bound(&s, edge));
        assert!(sector_bound(&s, C::from_polar(1.0, 0.1)).is_err());
        assert!(sector_bound(&s, C::from_polar(1.0, PI + FRAC_PI_4)).is_ok());
    }

    #[test]
    fn bounds_dominate_gaussian_transforms() {
        let family = [
            (GeneralizedGaussian::g(0.5).unwrap(), 0.5),
            (example_2_3(0.27465).unwrap(), (0.5493f64).tanh()),
            (GeneralizedGaussian::new(C::new(0.7, 0.2), C::new(0.9, 0.3)).unwrap(), 0.6),
        ];
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for (g, a) in family {
            let s = member_params(&g, a);
            let u = bargmann_gaussian(&g);
            for _ in 0..200 {
                let w = C::from_polar(5.0 * next().sqrt(), TAU * next());
                let v = u.eval(w).norm();
                assert!(v <= quadrant_bound(&s, w) * (1.0 + 1e-12));
                assert!(v <= time_side_bound(&s, w) * (1.0 + 1e-12));
                assert!(v <= freq_side_bound(&s, w) * (1.0 + 1e-12));
                if let Ok(b) = sector_bound(&s, w) {
                    assert!(v <= b * (1.0 + 1e-12), "w = {w}");
                }
            }
        }
    }

    #[test]
    fn auxiliary_function_on_rays() {
        let a = 0.5;
        let s = member_params(&GeneralizedGaussian::g(a).unwrap(), a);
        let t = expansion_to_taylor(&hermite_coeffs_gaussian(&GeneralizedGaussian::g(a).unwrap(), 300));
        let f0 = pl_auxiliary(&s, &t, C::new(0.0, 0.0));
        assert!((f0.value - t.coeffs[0].to_complex()).norm() < 1e-15);
        for th in [s.theta0, s.theta1, FRAC_PI_4] {
            for r in [0.5, 1.5, 3.0, 4.5] {
                let f = pl_auxiliary(&s, &t, C::from_polar(r, th));
                assert!(!f.truncated);
                assert!(f.value.norm() <= s.ray_bound());
            }
        }

        // With b = a + i√(1−a²), exp(i√μ w²/4) cancels the Gaussian factor exactly.
        let g = GeneralizedGaussian::new(C::new(1.0, 0.0), C::new(a, (1.0 - a * a).sqrt())).unwrap();
        let s = member_params(&g, a);
        let p = bargmann_gaussian(&g).prefactor.norm();
        let t = expansion_to_taylor(&hermite_coeffs_gaussian(&g, 300));
        for th in [s.theta0, s.theta1] {
            for r in [0.5, 2.0, 4.0] {
                let f = pl_auxiliary(&s, &t, C::from_polar(r, th));
                assert!((f.value.norm() - p).abs() < 1e-6);
            }
        }

        let t = expansion_to_taylor(&crate::hermite_basis::HermiteExpansion::unit(0, 1));
        let s = sector_params(a).unwrap();
        for th in [s.theta0, 0.6, s.theta1] {
            let w = C::from_polar(3.0, th);
            let f = pl_auxiliary(&s, &t, w);
            assert!((f.value.norm() - (-(s.mu.sqrt()) * (2.0 * th).sin() * 9.0 / 4.0).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn cauchy_bound() {
        let s = sector_params(0.5).unwrap();
        assert!((cauchy_coeff_bound(&s, 2).unwrap() - 0.80304).abs() < 1e-4);
        assert!(cauchy_coeff_bound(&s, 0).is_err());

        let g = GeneralizedGaussian::g(0.5).unwrap();
        let s = member_params(&g, 0.5);
        let t = expansion_to_taylor(&hermite_coeffs_gaussian(&g, 60));
        let mut last_gap = f64::NEG_INFINITY;
        for n in (2..=60).step_by(2) {
            let gap = ln_cauchy_coeff_bound(&s, n).unwrap() - t.coeffs[n].ln_abs;
            assert!(gap >= 0.0, "n = {n}");
            assert!(gap > last_gap);
            last_gap = gap;
        }
    }

    #[test]
    fn contour_bound_dominates_and_improves() {
        let alpha = 0.27465f64;
        let a = (2.0 * alpha).tanh();
        let g = example_2_3(alpha).unwrap();
        let s = member_params(&g, a);
        let t = expansion_to_taylor(&hermite_coeffs_gaussian(&g, 100));
        for n in 2..=100 {
            let b = thm22_coeff_bound(n, a, s.c).unwrap();
            assert!(t.coeffs[n].is_zero() || t.coeffs[n].ln_abs <= b.ln(), "n = {n}");
        }
        for n in [40, 100, 400] {
            assert!(thm22_coeff_bound(n, a, 1.0).unwrap().ln() < ln_cauchy_coeff_bound(&s.with_constant(1.0), n).unwrap());
        }
    }

    proptest! {
        #[test]
        fn sector_invariants(a in 1e-6f64..(1.0 - 1e-9)) {
            let s = sector_params(a).unwrap();
            prop_assert!((s.theta0 + s.theta1 - FRAC_PI_2).abs() < 1e-15);
            prop_assert!(s.theta0 > 0.0 && s.theta0 < FRAC_PI_4 && s.theta1 > FRAC_PI_4);
            prop_assert!(s.theta1 - s.theta0 < FRAC_PI_2);
            let lhs = s.mu.sqrt() * (2.0 * s.theta0).sin();
            let rhs = s.mu + (1.0 - s.mu) * s.theta0.sin().powi(2);
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }
    }
}
