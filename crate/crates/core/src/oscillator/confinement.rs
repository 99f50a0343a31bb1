use super::EvolutionState;
use crate::decay_analysis::{envelope_scan, EnvelopeReport};
use crate::error::{domain, Error, Result};
use crate::hermite_basis::{GridSpec, SampledFunction};
use crate::logscale::LogComplex;
use crate::scalar::Real;

/// Default number of time samples on `[0, π/2)`, one period of the envelope.
pub const DEFAULT_T_SAMPLES: usize = 64;

/// Samples whose magnitude is below this fraction of the peak are ignored
/// when fitting the envelope slope.
const SLOPE_FLOOR: f64 = 1e-200;

/// `0 < γ < γ′ < β`, `r = γ/γ′`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfinementParams {
    pub beta: f64,
    pub gamma: f64,
    pub gamma_prime: f64,
    pub r: f64,
}

impl ConfinementParams {
    pub fn new(beta: f64, gamma: f64, gamma_prime: f64) -> Result<Self> {
        if !(0.0 < gamma && gamma < gamma_prime && gamma_prime < beta && beta.is_finite()) {
            return domain(format!("need 0 < γ < γ′ < β, got γ = {gamma}, γ′ = {gamma_prime}, β = {beta}"));
        }
        Ok(Self { beta, gamma, gamma_prime, r: gamma / gamma_prime })
    }

    /// `γ′` halfway between `γ` and `β`.
    pub fn midpoint(beta: f64, gamma: f64) -> Result<Self> {
        Self::new(beta, gamma, 0.5 * (gamma + beta))
    }
}

/// Envelope constant `C(γ, γ′)` in `|ψ_t(x)| ≤ C(γ, γ′) e^{−(tanh γ/2) x²}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfinementConstant {
    /// `tanh γ`.
    pub a: f64,
    /// `(Σ_n e^{−2γn} φ_n(0)²)^{1/2} = 2^{1/4} (1 − e^{−4γ})^{−1/4}`.
    pub mehler_factor: f64,
    /// `(1 − e^{−2(γ′−γ)})^{−1/2}`, what Cauchy–Schwarz actually gives.
    pub sum_factor: f64,
    /// `(1 − e^{−2(γ′−γ)})^{−1}`, the cruder factor the published argument uses.
    pub sum_factor_loose: f64,
    pub sharp: f64,
    pub loose: f64,
}

/// `C(γ, γ′)` for coefficients bounded by `coeff_bound · e^{−γ′k}`.
pub fn confinement_constant(p: &ConfinementParams, coeff_bound: f64) -> Result<ConfinementConstant> {
    ConfinementParams::new(p.beta, p.gamma, p.gamma_prime)?;
    if !(coeff_bound >= 0.0) {
        return domain(format!("coefficient bound must be non-negative, got {coeff_bound}"));
    }
    let gap = -(-2.0 * (p.gamma_prime - p.gamma)).exp_m1();
    let mehler_factor = 2f64.powf(0.25) * (-(-4.0 * p.gamma).exp_m1()).powf(-0.25);
    let sum_factor = gap.powf(-0.5);
    let sum_factor_loose = 1.0 / gap;
    Ok(ConfinementConstant {
        a: p.gamma.tanh(),
        mehler_factor,
        sum_factor,
        sum_factor_loose,
        sharp: coeff_bound * sum_factor * mehler_factor,
        loose: coeff_bound * sum_factor_loose * mehler_factor,
    })
}

/// `max_k |⟨ψ_0, φ_k⟩| e^{γ′k}` over the given log-polar coefficients.
pub fn measured_coeff_constant(coeffs: &[LogComplex<f64>], gamma_prime: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c.ln_abs + gamma_prime * k as f64)
        .fold(f64::NEG_INFINITY, f64::max)
        .exp()
}

/// Envelope data of `ψ_t` and `ψ̂_t` at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSample<T> {
    pub t: T,
    pub time: EnvelopeReport<T>,
    pub freq: EnvelopeReport<T>,
    /// Least-squares slope of `ln(|ψ_t(x)| e^{a x²/2})` against `x²`.
    ///
    /// For a Gaussian this is `(a − Re b(t))/2`; the largest value marks the
    /// time at which the time-side envelope is tightest.
    pub time_slope: f64,
}

impl<T: Real> TimeSample<T> {
    pub fn constant(&self) -> T {
        self.time.constant.max(self.freq.constant)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfinementReport<T> {
    pub a: T,
    pub samples: Vec<TimeSample<T>>,
    /// Largest `max(C_time, C_freq)` over the grid.
    pub sup_constant: T,
    /// First grid time attaining `sup_constant`.
    pub worst_t: T,
    /// Grid time with the largest `time_slope` (ties to the earliest).
    pub critical_t: T,
    /// Time-side constant at `critical_t`.
    pub critical_time_constant: T,
    /// Whether `ψ_0` itself lies in `E(tanh 2β)` on the grid.
    pub initial_member: bool,
}

/// `64` uniform times on `[0, π/2)`.
pub fn default_t_grid<T: Real>() -> Vec<T> {
    let n = T::from_index(DEFAULT_T_SAMPLES);
    (0..DEFAULT_T_SAMPLES).map(|j| T::FRAC_PI_2() * T::from_index(j) / n).collect()
}

fn envelope_slope<T: Real>(f: &SampledFunction<T>, a: T) -> f64 {
    let a = a.to_f64().unwrap_or(f64::NAN);
    let pts: Vec<(f64, f64)> = f.grid().points().zip(f.values()).map(|(x, v)| (x.to_f64().unwrap_or(0.0), v.norm().to_f64().unwrap_or(0.0))).collect();
    let peak = pts.iter().map(|p| p.1).fold(0.0, f64::max);
    let used: Vec<(f64, f64)> = pts
        .into_iter()
        .filter(|&(_, m)| m > peak * SLOPE_FLOOR && m > 0.0)
        .map(|(x, m)| (x * x, m.ln() + 0.5 * a * x * x))
        .collect();
    if used.len() < 2 {
        return f64::NAN;
    }
    let n = used.len() as f64;
    let (sx, sy) = used.iter().fold((0.0, 0.0), |(sx, sy), &(x, y)| (sx + x, sy + y));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = used.iter().fold((0.0, 0.0), |(sxy, sxx), &(x, y)| (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx)));
    sxy / sxx
}

/// Envelope constants of `ψ_t` and `ψ̂_t` at `a = tanh γ` over `t_grid`.
///
/// Divergence of either envelope at any time is an error carrying that time.
pub fn confinement_check<T: Real>(
    psi0: &EvolutionState<T>,
    beta: T,
    gamma: T,
    t_grid: &[T],
    grid: &GridSpec<T>,
) -> Result<ConfinementReport<T>> {
    if !(beta > T::zero() && gamma > T::zero()) {
        return domain("β and γ must be positive");
    }
    if t_grid.is_empty() {
        return domain("empty time grid");
    }
    let a = gamma.tanh();
    let a0 = (beta + beta).tanh();
    let initial_member =
        !envelope_scan(&psi0.sample(grid), a0).divergent && !envelope_scan(&psi0.fourier_sample(grid), a0).divergent;

    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let state = psi0.at(t);
        let f = state.sample(grid);
        let time = envelope_scan(&f, a);
        let freq = envelope_scan(&state.fourier_sample(grid), a);
        if time.divergent || freq.divergent {
            return Err(Error::Divergent { t: t.to_f64().unwrap_or(f64::NAN) });
        }
        samples.push(TimeSample { t, time, freq, time_slope: envelope_slope(&f, a) });
    }

    let mut worst = 0;
    let mut critical = 0;
    for (j, s) in samples.iter().enumerate() {
        if s.constant() > samples[worst].constant() {
            worst = j;
        }
        if s.time_slope > samples[critical].time_slope {
            critical = j;
        }
    }
    Ok(ConfinementReport {
        a,
        sup_constant: samples[worst].constant(),
        worst_t: samples[worst].t,
        critical_t: samples[critical].t,
        critical_time_constant: samples[critical].time.constant,
        initial_member,
        samples,
    })
}

/// Numerical evidence for confinement at the endpoint `γ = β`.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjecture32Report<T> {
    pub coarse: ConfinementReport<T>,
    pub refined_sup: T,
    /// `|refined_sup − coarse sup|`.
    pub change: T,
    /// `change < 1e−6`; evidence only.
    pub stable: bool,
}

/// Runs [`confinement_check`] at `γ = β` on `t_grid` and on the grid with
/// midpoints inserted, and compares the two sups.
pub fn conjecture32_probe<T: Real>(
    psi0: &EvolutionState<T>,
    beta: T,
    t_grid: &[T],
    grid: &GridSpec<T>,
) -> Result<Conjecture32Report<T>> {
    let coarse = confinement_check(psi0, beta, beta, t_grid, grid)?;
    let mut sorted = t_grid.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let half = T::lit(0.5);
    let mut refined = Vec::with_capacity(2 * sorted.len());
    for (j, &t) in sorted.iter().enumerate() {
        refined.push(t);
        let next = if j + 1 < sorted.len() {
            sorted[j + 1]
        } else if sorted.len() > 1 {
            t + (sorted[1] - sorted[0])
        } else {
            continue;
        };
        refined.push(half * (t + next));
    }
    let fine = confinement_check(psi0, beta, beta, &refined, grid)?;
    let change = (fine.sup_constant - coarse.sup_constant).abs();
    Ok(Conjecture32Report { stable: change < T::lit(1e-6), refined_sup: fine.sup_constant, change, coarse })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_8};

    use super::*;
    use crate::gaussian_family::{example_3_3, hermite_coeffs_gaussian, hermite_log_coeffs, GeneralizedGaussian};
    use crate::hermite_basis::HermiteExpansion;

    #[test]
    fn constant_factors() {
        let p = ConfinementParams::new(1.0, 0.5, 0.75).unwrap();
        let c = confinement_constant(&p, 1.0).unwrap();
        assert!((c.sum_factor_loose - 2.5414940825367984).abs() < 1e-12);
        assert!((c.sum_factor - c.sum_factor_loose.sqrt()).abs() < 1e-14);
        let far = ConfinementParams::new(40.0, 0.5, 30.0).unwrap();
        assert!((confinement_constant(&far, 1.0).unwrap().sum_factor_loose - 1.0).abs() < 1e-12);
        assert!(ConfinementParams::new(0.5, 0.5, 0.5).is_err());
        assert!(ConfinementParams::new(0.5, 0.4, 0.6).is_err());
    }

    #[test]
    fn ground_state_is_stationary() {
        let grid = GridSpec::default();
        let psi = EvolutionState::gaussian(GeneralizedGaussian::g(1.0).unwrap());
        let rep = confinement_check(&psi, 0.5, 0.5, &default_t_grid(), &grid).unwrap();
        for s in &rep.samples {
            assert!((s.constant() - 1.0).abs() < 1e-14);
        }
        let probe = conjecture32_probe(&psi, 0.5, &default_t_grid(), &grid).unwrap();
        assert!(probe.stable && (probe.refined_sup - 1.0).abs() < 1e-14);
    }

    #[test]
    fn example_state_endpoint_behaviour() {
        let beta = 0.5f64;
        let r = (-2.0 * beta).exp();
        let grid = GridSpec::default();
        let psi = EvolutionState::gaussian(example_3_3(beta).unwrap());
        let rep = confinement_check(&psi, beta, beta, &default_t_grid(), &grid).unwrap();
        assert!(rep.initial_member);
        assert!((rep.critical_t - 3.0 * FRAC_PI_8).abs() < 1e-3);
        assert!((rep.critical_time_constant - (1.0 + r).powf(-0.5)).abs() < 1e-8);
        assert!((rep.sup_constant - (1.0 - r).powf(-0.5)).abs() < 1e-8);
        // The time side peaks at π/8 and the frequency side at 3π/8 with equal values.
        assert!([FRAC_PI_8, 3.0 * FRAC_PI_8].iter().any(|t| (rep.worst_t - t).abs() < 1e-12));

        let probe = conjecture32_probe(&psi, beta, &default_t_grid(), &grid).unwrap();
        assert!(probe.stable);

        // Below the endpoint the theorem's constant dominates.
        let p = ConfinementParams::midpoint(beta, 0.45).unwrap();
        let k = measured_coeff_constant(&hermite_log_coeffs(&example_3_3(beta).unwrap(), 4000), p.gamma_prime);
        let bound = confinement_constant(&p, k).unwrap();
        let rep = confinement_check(&psi, beta, 0.45, &default_t_grid(), &grid).unwrap();
        assert!(rep.sup_constant <= bound.sharp && bound.sharp <= bound.loose);
    }

    #[test]
    fn truncated_expansion_stays_confined() {
        let beta = 0.5f64;
        let grid = GridSpec::default();
        let e = hermite_coeffs_gaussian(&GeneralizedGaussian::g((2.0 * beta).tanh()).unwrap(), 40);
        let psi = EvolutionState::expansion(e);
        let t_grid: Vec<f64> = (0..16).map(|j| FRAC_PI_2 * j as f64 / 16.0).collect();
        let rep = confinement_check(&psi, beta, 0.9 * beta, &t_grid, &grid).unwrap();
        assert!(rep.sup_constant.is_finite() && rep.sup_constant < 10.0);
    }

    #[test]
    fn divergence_is_reported_with_time() {
        let grid = GridSpec::default();
        let psi = EvolutionState::expansion(HermiteExpansion::<f64>::unit(2, 3));
        match confinement_check(&psi, 0.5, 5.0, &[0.25], &grid) {
            Err(Error::Divergent { t }) => assert_eq!(t, 0.25),
            other => panic!("{other:?}"),
        }
    }
}
