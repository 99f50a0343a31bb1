//! End-to-end numerical checks of the library against closed forms.
//!
//! Each check returns a [`Criterion`] with the worst measured deviation and
//! the threshold it was held to. Failures inside a check (domain errors,
//! band-limit violations) become failed criteria with the error as detail.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};

use num_complex::Complex;
use serde::Serialize;

use crate::bargmann::{bargmann_numeric, expansion_to_taylor, reflection_check, thm22_coeff_bound, thm22_contour};
use crate::decay_analysis::{decay_fit, envelope_scan, hardy_classify, thm21_bound};
use crate::e2_norms::{
    central_binomial_convolution, e2_norm_pair, e2_norm_sq_pair, gen_func_check, lemma41_certificate, phi_norm_closed,
    q, thm42_bound,
};
use crate::error::Result;
use crate::gaussian_family::{e_membership, example_2_3, example_3_3, fourier_gaussian, hermite_coeffs_gaussian, hermite_log_coeffs, GeneralizedGaussian};
use crate::hermite_basis::{analyze, eval_phi, fourier_sampled, minus_i_pow, synthesize, GridSpec, HermiteExpansion, SampledFunction};
use crate::logscale::ln_factorial;
use crate::oscillator::{
    confinement_check, confinement_constant, evolve_expansion, evolve_gaussian, fourier_time_shift_check,
    measured_coeff_constant, ConfinementParams, EvolutionState,
};

type C = Complex<f64>;

/// Grid used where weighted integrands decay slowly (`e^{−c x²}` with small `c`).
pub const WIDE_HALF_WIDTH: f64 = 40.0;
pub const WIDE_NUM_POINTS: usize = 8192;

/// Settings shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub grid: GridSpec<f64>,
    /// Highest Hermite index used by the coefficient checks.
    pub kmax: usize,
    /// Number of uniform times on `[0, π/2)`.
    pub t_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { grid: GridSpec::default(), kmax: 60, t_samples: 64 }
    }
}

impl VerifyConfig {
    fn t_grid(&self) -> Vec<f64> {
        (0..self.t_samples).map(|j| FRAC_PI_2 * j as f64 / self.t_samples as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    /// Worst observed value of the quantity held to `threshold`.
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Criterion {
    fn from_result(id: u32, name: &str, threshold: f64, r: Result<(bool, f64, String)>) -> Self {
        match r {
            Ok((pass, measured, detail)) => Self { id, name: name.into(), pass, measured, threshold, detail },
            Err(e) => Self { id, name: name.into(), pass: false, measured: f64::NAN, threshold, detail: format!("error: {e}") },
        }
    }
}

fn phi_sample(k: usize, grid: &GridSpec<f64>) -> Result<SampledFunction<f64>> {
    let xs: Vec<f64> = grid.points().collect();
    SampledFunction::new(*grid, eval_phi(k, &xs).into_iter().map(|v| C::new(v, 0.0)).collect())
}

fn sample_points() -> Vec<C> {
    (0..10).map(|j| C::from_polar(2.0 + 0.1 * j as f64, 0.5 + 0.61 * j as f64)).collect()
}

/// Grid reproduces the orthonormal basis up to `kmax`.
pub fn orthonormality(cfg: &VerifyConfig) -> Criterion {
    let tol = 1e-10;
    let r = (|| {
        let mut worst = 0.0f64;
        for k in 0..=cfg.kmax {
            let e = analyze(&phi_sample(k, &cfg.grid)?, cfg.kmax)?;
            worst = worst.max(e.max_abs_diff(&HermiteExpansion::unit(k, cfg.kmax + 1)));
        }
        Ok((worst < tol, worst, format!("⟨φ_j, φ_k⟩ on the grid, j, k ≤ {}", cfg.kmax)))
    })();
    Criterion::from_result(0, "grid orthonormality", tol, r)
}

pub fn normalization_pins(cfg: &VerifyConfig) -> Criterion {
    let tol = 1e-8;
    let r = (|| {
        let pin = (eval_phi(0, &[0.0])[0] - 2f64.powf(0.25)).abs();
        let mut worst = 0.0f64;
        for k in 0..=20usize {
            let f = phi_sample(k, &cfg.grid)?;
            let ln_norm = 0.5 * (k as f64 * std::f64::consts::LN_2 + ln_factorial(k as u64));
            for w in sample_points() {
                let want = w.powu(k as u32) / ln_norm.exp();
                let got = bargmann_numeric(&f, w)?;
                worst = worst.max((got - want).norm() / want.norm());
            }
        }
        Ok((pin < 1e-12 && worst < tol, worst, format!("|φ_0(0) − 2^(1/4)| = {pin:.3e}; worst relative error of Uφ_k, k ≤ 20")))
    })();
    Criterion::from_result(1, "normalization pins", tol, r)
}

pub fn reflection_identity(cfg: &VerifyConfig) -> Criterion {
    let tol = 1e-8;
    let r = (|| {
        let ws = sample_points();
        let mut worst = 0.0f64;
        for k in 0..=20 {
            worst = worst.max(reflection_check(&phi_sample(k, &cfg.grid)?, &ws)?);
        }
        worst = worst.max(reflection_check(&GeneralizedGaussian::g(0.5)?.sample(&cfg.grid), &ws)?);
        for alpha in [0.2, 0.27465, 0.5] {
            worst = worst.max(reflection_check(&example_2_3(alpha)?.sample(&cfg.grid), &ws)?);
        }
        Ok((worst < tol, worst, "max |U(f̂)(w) − Uf(−iw)| over φ_k (k ≤ 20), g_0.5 and three chirped Gaussians".into()))
    })();
    Criterion::from_result(2, "reflection identity", tol, r)
}

/// Test family for the coefficient bound: `(label, f, a)`.
fn bound_family() -> Result<Vec<(String, GeneralizedGaussian<f64>, f64)>> {
    let mut out = Vec::new();
    for a in [0.3, 0.5, 0.8] {
        out.push((format!("g_{a}"), GeneralizedGaussian::g(a)?, a));
    }
    for alpha in [0.2, 0.27465, 0.5] {
        out.push((format!("chirp α={alpha}"), example_2_3(alpha)?, (2.0f64 * alpha).tanh()));
    }
    Ok(out)
}

pub fn coefficient_bound(cfg: &VerifyConfig) -> Criterion {
    let r = (|| {
        let mut worst = 0.0f64;
        let mut violations = 0;
        for (_, g, a) in bound_family()? {
            let f = g.sample(&cfg.grid);
            let fhat = fourier_sampled(&f)?;
            let (t, s) = (envelope_scan(&f, a), envelope_scan(&fhat, a));
            if t.divergent || s.divergent {
                return Err(crate::Error::Domain(format!("test function not in E({a}) on the grid")));
            }
            let c = t.constant.max(s.constant);
            let e = analyze(&f, cfg.kmax)?;
            for k in 1..=cfg.kmax {
                let ratio = e.coeffs[k].norm() / thm21_bound(k, a, c)?;
                worst = worst.max(ratio);
                if ratio > 1.0 {
                    violations += 1;
                }
            }
        }
        Ok((violations == 0, worst, format!("{violations} violations; worst |⟨f,φ_k⟩|/bound, 1 ≤ k ≤ {}", cfg.kmax)))
    })();
    Criterion::from_result(3, "coefficient bound dominance", 1.0, r)
}

pub fn endpoint_sharpness(_cfg: &VerifyConfig) -> Criterion {
    let r = (|| {
        let alpha = 0.27465f64;
        let e = hermite_coeffs_gaussian(&example_2_3(alpha)?, 100);
        let vals: Vec<f64> = (1..=50)
            .map(|m| e.coeffs[2 * m].norm() * (2.0 * m as f64).powf(0.25) * (2.0 * alpha * m as f64).exp())
            .collect();
        let spread = vals.iter().copied().fold(0.0, f64::max) / vals.iter().copied().fold(f64::INFINITY, f64::min);
        let fit = decay_fit(&e, (10, 100))?;
        let pass = spread < 3.0 && (fit.alpha_hat - alpha).abs() < 1e-3 && (fit.power_hat - 0.25).abs() < 0.05;
        Ok((
            pass,
            spread,
            format!("max/min of |c_2m|(2m)^(1/4)e^(2αm) over 1 ≤ m ≤ 50; fit α̂ = {:.6}, p̂ = {:.4}", fit.alpha_hat, fit.power_hat),
        ))
    })();
    Criterion::from_result(4, "endpoint rate sharpness", 3.0, r)
}

pub fn contour_machinery(_cfg: &VerifyConfig) -> Criterion {
    let r = (|| {
        let mu = 1.0 / 3.0;
        let mut continuity = 0.0f64;
        let mut ratios = Vec::new();
        for n in [10, 50, 200] {
            let cb = thm22_contour(n, mu)?;
            let (lo, hi) = cb.branch_values_at_theta0();
            continuity = continuity.max((lo - hi).abs() / lo);
            ratios.push((cb.ln_i - cb.ln_j).exp());
        }
        let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
        let alpha = 0.27465f64;
        let a = (2.0 * alpha).tanh();
        let g = example_2_3(alpha)?;
        let c = e_membership(&g, a).constant;
        let taylor = expansion_to_taylor(&hermite_coeffs_gaussian(&g, 100));
        let mut worst = f64::NEG_INFINITY;
        for n in 2..=100 {
            if !taylor.coeffs[n].is_zero() {
                worst = worst.max(taylor.coeffs[n].ln_abs - thm22_coeff_bound(n, a, c)?.ln());
            }
        }
        let pass = continuity < 1e-12 && ratios[2] < 0.1 && decreasing && worst <= 0.0;
        Ok((
            pass,
            continuity,
            format!(
                "I/J at n = 10, 50, 200: {:.3e}, {:.3e}, {:.3e}; max ln(|c_n|/bound), 2 ≤ n ≤ 100: {worst:.3}",
                ratios[0], ratios[1], ratios[2]
            ),
        ))
    })();
    Criterion::from_result(5, "contour construction", 1e-12, r)
}

pub fn evolution(cfg: &VerifyConfig) -> Criterion {
    let r = (|| {
        let gaussians = [example_3_3(0.5)?, GeneralizedGaussian::new(C::new(0.4, -0.3), C::new(0.7, 0.6))?];
        let mut agreement = 0.0f64;
        let mut unitarity = 0.0f64;
        let mut sampled_unitarity = 0.0f64;
        let mut half_period = 0.0f64;
        let mut shift = 0.0f64;
        for g in &gaussians {
            let e0 = hermite_coeffs_gaussian(g, cfg.kmax);
            for t in [0.1, FRAC_PI_8, 1.0, 3.0] {
                let spectral = evolve_expansion(&e0, t);
                let closed = analyze(&evolve_gaussian(g, t).sample(&cfg.grid), cfg.kmax)?;
                agreement = agreement.max(spectral.max_abs_diff(&closed));
                unitarity = unitarity.max((spectral.norm_sq() - e0.norm_sq()).abs());
                sampled_unitarity = sampled_unitarity.max((synthesize(&spectral, &cfg.grid).norm_sq() - e0.norm_sq()).abs());
                let back = evolve_expansion(&e0, t + PI).scaled(C::new(-1.0, 0.0));
                half_period = half_period.max(back.max_abs_diff(&spectral));
                shift = shift.max(fourier_time_shift_check(&e0, t));
            }
        }
        let pass = agreement < 1e-8 && unitarity < 1e-10 && sampled_unitarity < 1e-8 && half_period < 1e-13 && shift < 1e-10;
        Ok((
            pass,
            agreement,
            format!(
                "coefficient unitarity {unitarity:.2e}, sampled {sampled_unitarity:.2e}; |ψ_(t+π) + ψ_t| {half_period:.2e}; Fourier/time shift {shift:.2e}"
            ),
        ))
    })();
    Criterion::from_result(6, "oscillator evolution", 1e-8, r)
}

pub fn confinement(cfg: &VerifyConfig) -> Criterion {
    let r = (|| {
        let beta = 0.5f64;
        let r = (-2.0 * beta).exp();
        let psi0 = EvolutionState::gaussian(example_3_3(beta)?);
        let t_grid = cfg.t_grid();
        let rep = confinement_check(&psi0, beta, beta, &t_grid, &cfg.grid)?;
        let target = 3.0 * FRAC_PI_8;
        let dt = {
            let d = (rep.critical_t - target).rem_euclid(FRAC_PI_2);
            d.min(FRAC_PI_2 - d)
        };
        let const_err = (rep.critical_time_constant - (1.0 + r).powf(-0.5)).abs();

        let p = ConfinementParams::midpoint(beta, 0.45)?;
        let k = measured_coeff_constant(&hermite_log_coeffs(&example_3_3(beta)?, 4000), p.gamma_prime);
        let bound = confinement_constant(&p, k)?;
        let below = confinement_check(&psi0, beta, 0.45, &t_grid, &cfg.grid)?;
        let pass = rep.sup_constant.is_finite() && dt < 1e-3 && const_err < 1e-8 && below.sup_constant <= bound.sharp;
        Ok((
            pass,
            const_err,
            format!(
                "γ = β: sup {:.6} at t = {:.6}, tightest envelope at t = {:.6}; γ = 0.45: sup {:.6} ≤ C(γ,γ′) = {:.6}",
                rep.sup_constant, rep.worst_t, rep.critical_t, below.sup_constant, bound.sharp
            ),
        ))
    })();
    Criterion::from_result(7, "confinement", 1e-8, r)
}

pub fn norm_identities(_cfg: &VerifyConfig) -> Criterion {
    let r = (|| {
        let wide = GridSpec::new(WIDE_HALF_WIDTH, WIDE_NUM_POINTS)?;
        let mut worst = 0.0f64;
        for n in 0..=30 {
            let xs: Vec<f64> = wide.points().collect();
            let v = eval_phi(n, &xs);
            let ph = minus_i_pow::<f64>(n);
            let f = SampledFunction::new(wide, v.iter().map(|&p| C::new(p, 0.0)).collect())?;
            let fh = SampledFunction::new(wide, v.iter().map(|&p| ph * p).collect())?;
            for a in [0.2, 0.5, 0.8] {
                let closed = phi_norm_closed(n, a)?;
                worst = worst.max((e2_norm_sq_pair(&f, &fh, a)? - closed).abs() / closed);
            }
        }
        let mut gen = 0.0f64;
        for (a, w) in [(0.5, 0.25), (0.2, 0.5)] {
            gen = gen.max(gen_func_check(a, w, 400)?.error());
        }
        let collapse = (0..=30u32).all(|n| central_binomial_convolution(n) == Some(1u128 << (2 * n)));
        Ok((
            worst < 1e-6 && gen < 1e-8 && collapse,
            worst,
            format!("generating function error {gen:.2e}; exact collapse at μ = 1 for n ≤ 30: {collapse}"),
        ))
    })();
    Criterion::from_result(8, "weighted norm identities", 1e-6, r)
}

pub fn lemma_certificate(_cfg: &VerifyConfig) -> Criterion {
    let r = (|| {
        let cert = lemma41_certificate(1.1)?;
        let wallis = q(10_000) * (PI * 1e4).sqrt();
        Ok((
            cert.valid && (0.99..=1.01).contains(&wallis),
            cert.min_ratio,
            format!("B = {:.6} (m = {}, δ = {:.4}); Q(10⁴)√(π·10⁴) = {wallis:.6}", cert.b_beta, cert.m, cert.delta),
        ))
    })();
    Criterion::from_result(9, "central binomial lower bound", 1.0, r)
}

pub fn bound_from_norms(cfg: &VerifyConfig) -> Criterion {
    let r = (|| {
        let beta = 0.5f64;
        let a = 0.45f64.tanh();
        let wide = GridSpec::new(WIDE_HALF_WIDTH, WIDE_NUM_POINTS)?;
        let g = example_3_3(beta)?;
        let mut c = 0.0f64;
        for t in cfg.t_grid() {
            let gt = evolve_gaussian(&g, t);
            c = c.max(e2_norm_pair(&gt.sample(&wide), &fourier_gaussian(&gt).sample(&wide), a)?);
        }
        let alpha = 1.0;
        let cert = lemma41_certificate(2.0 * alpha)?;
        let e = hermite_coeffs_gaussian(&g, 100);
        let mut worst = 0.0f64;
        for k in 1..=cfg.kmax.min(100) {
            worst = worst.max(e.coeffs[k].norm() / thm42_bound(k, a, c, alpha, &cert)?);
        }
        let fit = decay_fit(&e, (10, 100))?;
        let rate_err = (fit.alpha_hat - beta).abs();
        Ok((
            worst <= 1.0 && rate_err < 1e-3,
            worst,
            format!(
                "C = {c:.6}; fitted rate {:.6} vs rate β = {beta} of μ(tanh β)^(k/2) (|Δ| = {rate_err:.1e}); rate at a = tanh 0.45 is 0.45",
                fit.alpha_hat
            ),
        ))
    })();
    Criterion::from_result(10, "coefficient bound from weighted norms", 1.0, r)
}

pub fn hardy_endpoint(cfg: &VerifyConfig) -> Criterion {
    let tol = 1e-8;
    let r = (|| {
        let g1 = hardy_classify(&GeneralizedGaussian::g(1.0)?.sample(&cfg.grid), 1.0)?;
        let residual = g1.residual.unwrap_or(f64::INFINITY);
        let phi2 = hardy_classify(&phi_sample(2, &cfg.grid)?, 1.0)?;
        let detected = phi2.time.divergent || phi2.freq.divergent;
        let mut shrinking = true;
        for k in 1..=10 {
            let b: Vec<f64> = [0.9, 0.99, 0.999].iter().map(|&a| thm21_bound(k, a, 1.0)).collect::<Result<_>>()?;
            shrinking &= b[1] < b[0] && b[2] < b[1];
        }
        Ok((
            g1.member && residual < tol && detected && shrinking,
            residual,
            format!("g_1 member: {}; φ_2 divergence detected: {detected}; bound shrinks as a → 1: {shrinking}", g1.member),
        ))
    })();
    Criterion::from_result(11, "Hardy endpoint", tol, r)
}

/// Runs every check in order, the grid check first.
pub fn run_all(cfg: &VerifyConfig) -> Vec<Criterion> {
    vec![
        orthonormality(cfg),
        normalization_pins(cfg),
        reflection_identity(cfg),
        coefficient_bound(cfg),
        endpoint_sharpness(cfg),
        contour_machinery(cfg),
        evolution(cfg),
        confinement(cfg),
        norm_identities(cfg),
        lemma_certificate(cfg),
        bound_from_norms(cfg),
        hardy_endpoint(cfg),
    ]
}
