//! Subcommand bodies. Each returns the table to emit.

use std::f64::consts::LN_10;

use hardy_core::bargmann::{bargmann_numeric, quadrant_bound, sector_bound, sector_params, thm22_contour};
use hardy_core::decay_analysis::{decay_fit, envelope_scan, ln_thm21_bound};
use hardy_core::e2_norms::{e2_norm_pair, ln_phi_norm_closed, phi_norm_closed, phi_norm_lower};
use hardy_core::gaussian_family::e_membership;
use hardy_core::logscale::ln_factorial;
use hardy_core::oscillator::{confinement_check, conjecture32_probe, StateRep};
use hardy_core::verify::{run_all, Criterion};
use hardy_core::{Complex64, Error, State};
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::input::InputSpec;
use crate::output::{Cell, Table};

pub const COEFF_COLUMNS: [&str; 8] = [
    "k",
    "log10_abs_coeff",
    "log10_thm21_bound",
    "log10_thm22_bound",
    "ratio_thm21",
    "ratio_thm22",
    "sharpness",
    "abs_coeff",
];

/// Envelope parameter: `--a` if given, otherwise the input's natural one.
fn envelope_a(input: &InputSpec, a: Option<f64>) -> Result<f64, CliError> {
    let a = a.unwrap_or_else(|| input.default_a());
    if !(a > 0.0 && a < 1.0) {
        return Err(CliError::Parse(format!("--a must lie in (0, 1), got {a}")));
    }
    Ok(a)
}

/// Membership constant in `E(a)`: closed form for Gaussians, grid scan otherwise.
fn membership_constant(state: &State, a: f64, cfg: &RunConfig) -> Result<f64, CliError> {
    let (member, constant) = match &state.rep {
        StateRep::Gaussian(g) => {
            let m = e_membership(g, a);
            (m.member, m.constant)
        }
        StateRep::Expansion(_) => {
            let t = envelope_scan(&state.sample(&cfg.grid), a);
            let f = envelope_scan(&state.fourier_sample(&cfg.grid), a);
            (!t.divergent && !f.divergent, t.constant.max(f.constant))
        }
    };
    if !member {
        return Err(Error::Domain(format!("input is not in E({a})")).into());
    }
    Ok(constant)
}

pub fn coeffs(input: &InputSpec, a: Option<f64>, cfg: &RunConfig) -> Result<Table, CliError> {
    let a = envelope_a(input, a)?;
    let state = input.resolve()?;
    let c = membership_constant(&state, a, cfg)?;
    let e = state.coefficients(cfg.kmax);
    let mu = (1.0 - a) / (1.0 + a);
    let alpha = -0.25 * mu.ln();

    let mut t = Table::new("coeffs", &COEFF_COLUMNS);
    t.note("a", a);
    t.note("envelope_constant", c);
    for (k, ck) in e.coeffs.iter().enumerate() {
        let abs = ck.norm();
        let ln_abs = abs.ln();
        let ln21 = if k >= 1 { Some(ln_thm21_bound(k, a, c)?) } else { None };
        let ln22 = if k >= 2 {
            let hermite_scale = 0.5 * (k as f64 * std::f64::consts::LN_2 + ln_factorial(k as u64));
            Some(c.ln() + thm22_contour(k, mu)?.ln_bound + hermite_scale)
        } else {
            None
        };
        let sharp = (k >= 1 && abs > 0.0).then(|| (ln_abs + 0.25 * (k as f64).ln() + alpha * k as f64).exp());
        t.push(vec![
            k.into(),
            (ln_abs / LN_10).into(),
            ln21.map(|v| v / LN_10).into(),
            ln22.map(|v| v / LN_10).into(),
            ln21.map(|v| (ln_abs - v).exp()).into(),
            ln22.map(|v| (ln_abs - v).exp()).into(),
            sharp.into(),
            abs.into(),
        ]);
    }
    if let Ok(fit) = decay_fit(&e, (10.min(cfg.kmax), cfg.kmax)) {
        t.note("fit_alpha", fit.alpha_hat);
        t.note("fit_power", fit.power_hat);
    }
    Ok(t)
}

pub fn envelope(input: &InputSpec, a: Option<f64>, cfg: &RunConfig) -> Result<Table, CliError> {
    let a = envelope_a(input, a)?;
    let state = input.resolve()?;
    let mut t = Table::new("envelope", &["side", "a", "constant", "argmax_x", "divergent"]);
    let mut member = true;
    for (side, f) in [("time", state.sample(&cfg.grid)), ("freq", state.fourier_sample(&cfg.grid))] {
        let r = envelope_scan(&f, a);
        member &= !r.divergent;
        t.push(vec![side.into(), a.into(), r.constant.into(), r.argmax_x.into(), r.divergent.into()]);
    }
    t.note("member", member);
    Ok(t)
}

pub fn bargmann(input: &InputSpec, ws: &[Complex64], a: Option<f64>, cfg: &RunConfig) -> Result<Table, CliError> {
    let a = envelope_a(input, a)?;
    let state = input.resolve()?;
    let f = state.sample(&cfg.grid);
    let s = sector_params(a)?.with_constant(membership_constant(&state, a, cfg)?);
    let mut t = Table::new("bargmann", &["w_re", "w_im", "u_re", "u_im", "abs_u", "quadrant_bound", "sector_bound"]);
    t.note("a", a);
    t.note("envelope_constant", s.c);
    for &w in ws {
        let u = bargmann_numeric(&f, w)?;
        t.push(vec![
            w.re.into(),
            w.im.into(),
            u.re.into(),
            u.im.into(),
            u.norm().into(),
            quadrant_bound(&s, w).into(),
            sector_bound(&s, w).ok().into(),
        ]);
    }
    Ok(t)
}

pub fn evolve(input: &InputSpec, times: &[f64], cfg: &RunConfig) -> Result<Table, CliError> {
    let state = input.resolve()?;
    let mut t = Table::new("evolve", &["t", "k", "re", "im", "abs"]);
    for &time in times {
        for (k, c) in state.at(time).coefficients(cfg.kmax).coeffs.iter().enumerate() {
            t.push(vec![time.into(), k.into(), c.re.into(), c.im.into(), c.norm().into()]);
        }
    }
    Ok(t)
}

pub fn confine(
    input: &InputSpec,
    beta: Option<f64>,
    gamma: Option<f64>,
    probe: bool,
    cfg: &RunConfig,
) -> Result<Table, CliError> {
    let beta = match (beta, input) {
        (Some(b), _) => b,
        (None, InputSpec::Squeezed { beta }) => *beta,
        (None, _) => return Err(CliError::Parse("--beta is required for this input".into())),
    };
    let gamma = gamma.unwrap_or(beta);
    let psi0 = input.resolve()?;
    let times = cfg.t_grid();
    let rep = confinement_check(&psi0, beta, gamma, &times, &cfg.grid)?;

    let mut t = Table::new("confine", &["t", "time_constant", "freq_constant", "constant", "is_sup"]);
    t.note("a", rep.a);
    t.note("sup_constant", rep.sup_constant);
    t.note("worst_t", rep.worst_t);
    t.note("critical_t", rep.critical_t);
    t.note("critical_time_constant", rep.critical_time_constant);
    t.note("initial_member", rep.initial_member);
    for s in &rep.samples {
        t.push(vec![
            s.t.into(),
            s.time.constant.into(),
            s.freq.constant.into(),
            s.constant().into(),
            (s.t == rep.worst_t).into(),
        ]);
    }
    if probe {
        let p = conjecture32_probe(&psi0, beta, &times, &cfg.grid)?;
        t.note("refined_sup", p.refined_sup);
        t.note("refinement_change", p.change);
        t.note("refinement_stable", p.stable);
    }
    Ok(t)
}

pub fn norms(a: f64, nmax: usize, input: Option<&InputSpec>, cfg: &RunConfig) -> Result<Table, CliError> {
    if !(a > 0.0 && a < 1.0) {
        return Err(CliError::Parse(format!("--a must lie in (0, 1), got {a}")));
    }
    let mut t = Table::new("norms", &["n", "phi_norm_closed", "phi_norm_lower", "ln_phi_norm_closed"]);
    t.note("a", a);
    if let Some(input) = input {
        let state = input.resolve()?;
        let norm = e2_norm_pair(&state.sample(&cfg.grid), &state.fourier_sample(&cfg.grid), a)?;
        t.note("input_e2_norm", norm);
    }
    for n in 0..=nmax {
        let ln_closed = ln_phi_norm_closed(n, a)?;
        t.push(vec![n.into(), phi_norm_closed(n, a)?.into(), phi_norm_lower(n, a)?.into(), ln_closed.into()]);
    }
    Ok(t)
}

pub struct VerifyOutcome {
    pub criteria: Vec<Criterion>,
    pub failed: usize,
}

pub fn verify_all(cfg: &RunConfig) -> VerifyOutcome {
    let criteria = run_all(&cfg.verify_config());
    let failed = criteria.iter().filter(|c| !c.pass).count();
    VerifyOutcome { criteria, failed }
}

impl VerifyOutcome {
    pub fn table(&self) -> Table {
        let mut t = Table::new("verify-all", &["id", "name", "pass", "measured", "threshold", "detail"]);
        for c in &self.criteria {
            t.push(vec![
                Cell::Int(c.id as i64),
                c.name.as_str().into(),
                c.pass.into(),
                c.measured.into(),
                c.threshold.into(),
                c.detail.as_str().into(),
            ]);
        }
        t
    }

    /// `{"all_pass", "failed", "tolerances", "criteria": [{id, name, pass, measured, threshold, detail}]}`.
    pub fn json(&self, cfg: &RunConfig) -> Value {
        let criteria: Vec<Value> = self
            .criteria
            .iter()
            .map(|c| {
                let mut v = serde_json::to_value(c).unwrap_or(Value::Null);
                // Non-finite measurements serialize as null.
                if !c.measured.is_finite() {
                    v["measured"] = Value::Null;
                }
                v
            })
            .collect();
        serde_json::json!({
            "all_pass": self.failed == 0,
            "failed": self.failed,
            "tolerances": cfg.tolerances,
            "criteria": criteria,
        })
    }
}
