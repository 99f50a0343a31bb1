use crate::error::{domain, Result};
use crate::logscale::{ln_central_ratio, ln_central_ratio_table};

/// The certificate is validated for `n = 1..=LEMMA41_CHECK_LIMIT`.
pub const LEMMA41_CHECK_LIMIT: usize = 10_000;

const DELTA_CANDIDATES: usize = 1000;
const DELTA_SAMPLES: usize = 10_000;

/// `Q_n = 2^{−2n} (2n)!/(n!)²`.
pub fn q(n: usize) -> f64 {
    ln_central_ratio(n).exp()
}

/// Explicit constant `B_β` in `Q_n ≥ B_β n^{−β/2}`, `n ≥ 1`.
///
/// The bound from the argument, `e^{D_β} m^{β/2}` with `D_β = ln Q_m`, is only
/// guaranteed for `n ≥ m`. `b_beta` also takes the minimum over `n < m`, so it
/// holds for every `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma41Certificate {
    pub beta: f64,
    /// Largest candidate with `ln(1−x) ≥ −βx` on `[0, δ]`.
    pub delta: f64,
    /// Smallest `m ≥ 1` with `1/(2k) ≤ δ` for all `k > m`.
    pub m: usize,
    pub d_beta: f64,
    pub proof_constant: f64,
    pub b_beta: f64,
    /// First `n` with `Q_n n^{β/2} < proof_constant`, if any.
    pub proof_constant_fails_at: Option<usize>,
    /// `min_n Q_n n^{β/2} / B_β` over the checked range.
    pub min_ratio: f64,
    pub checked_up_to: usize,
    pub valid: bool,
}

fn log_inequality_holds(beta: f64, delta: f64) -> bool {
    (0..=DELTA_SAMPLES).all(|i| {
        let x = delta * i as f64 / DELTA_SAMPLES as f64;
        (-x).ln_1p() >= -beta * x
    })
}

pub fn lemma41_certificate(beta: f64) -> Result<Lemma41Certificate> {
    if !(beta > 1.0 && beta.is_finite()) {
        return domain(format!("β must exceed 1 (Q_n ~ (πn)^{{−1/2}}), got {beta}"));
    }
    let delta = (1..=DELTA_CANDIDATES)
        .rev()
        .map(|i| 0.999 * i as f64 / DELTA_CANDIDATES as f64)
        .find(|&d| log_inequality_holds(beta, d))
        .ok_or_else(|| crate::Error::Domain(format!("no δ found for β = {beta}")))?;
    let m = ((0.5 / delta).ceil() as usize).saturating_sub(1).max(1);
    let d_beta: f64 = (1..=m).map(|k| (-0.5 / k as f64).ln_1p()).sum();
    let proof_constant = (d_beta + 0.5 * beta * (m as f64).ln()).exp();

    let ln_q = ln_central_ratio_table::<f64>(LEMMA41_CHECK_LIMIT);
    let scaled: Vec<f64> = (1..=LEMMA41_CHECK_LIMIT).map(|n| (ln_q[n] + 0.5 * beta * (n as f64).ln()).exp()).collect();
    let b_beta = scaled[..m - 1].iter().copied().fold(proof_constant, f64::min);
    let proof_constant_fails_at = scaled.iter().position(|&v| v < proof_constant * (1.0 - 1e-12)).map(|i| i + 1);
    let min_ratio = scaled.iter().map(|&v| v / b_beta).fold(f64::INFINITY, f64::min);
    Ok(Lemma41Certificate {
        beta,
        delta,
        m,
        d_beta,
        proof_constant,
        b_beta,
        proof_constant_fails_at,
        min_ratio,
        checked_up_to: LEMMA41_CHECK_LIMIT,
        valid: min_ratio >= 1.0 - 1e-12,
    })
}

/// Which version of the coefficient bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Thm42Form {
    /// `(C/A_α) (1−a)^{1/4} k^{α/2} μ^{k/2}`, as the argument produces it.
    Proof,
    /// The same without `(1−a)^{1/4}`; looser since that factor is below 1.
    Statement,
}

pub fn ln_thm42_bound(form: Thm42Form, k: usize, a: f64, c: f64, alpha: f64, cert: &Lemma41Certificate) -> Result<f64> {
    if !(alpha > 0.5) {
        return domain(format!("α must exceed 1/2, got {alpha}"));
    }
    if (cert.beta - 2.0 * alpha).abs() > 1e-12 {
        return domain(format!("certificate was built for β = {}, need β = 2α = {}", cert.beta, 2.0 * alpha));
    }
    if k == 0 {
        return domain("the bound is stated for k ≥ 1");
    }
    if !(a > 0.0 && a < 1.0) {
        return domain(format!("a must lie in (0, 1), got {a}"));
    }
    if !(c > 0.0) {
        return domain(format!("norm bound must be positive, got {c}"));
    }
    let mu = (1.0 - a) / (1.0 + a);
    let ln_a_alpha = 0.5 * cert.b_beta.ln();
    let extra = match form {
        Thm42Form::Proof => 0.25 * (1.0 - a).ln(),
        Thm42Form::Statement => 0.0,
    };
    Ok(c.ln() - ln_a_alpha + extra + 0.5 * alpha * (k as f64).ln() + 0.5 * k as f64 * mu.ln())
}

pub fn thm42_bound_form(form: Thm42Form, k: usize, a: f64, c: f64, alpha: f64, cert: &Lemma41Certificate) -> Result<f64> {
    Ok(ln_thm42_bound(form, k, a, c, alpha, cert)?.exp())
}

/// Bound on `|⟨ψ_0, φ_k⟩|` when `‖ψ_t‖_a ≤ C` for all `t`, proof form.
pub fn thm42_bound(k: usize, a: f64, c: f64, alpha: f64, cert: &Lemma41Certificate) -> Result<f64> {
    thm42_bound_form(Thm42Form::Proof, k, a, c, alpha, cert)
}

/// `2^{−1/4} (1−b)^{−1/4}`, the `E²(b)` norm of `g_1`, which bounds it over
/// the unit ball of `E(1)`.
pub fn e1_norm_bound_check(b: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&b) {
        return domain(format!("b must lie in [0, 1), got {b}"));
    }
    Ok(2f64.powf(-0.25) * (1.0 - b).powf(-0.25))
}

/// Hypothetical weak-confinement data: `‖ψ_t‖_{tanh β} ≤ K ‖ψ_0‖_{tanh Nβ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakConfinementParams {
    pub n_exp: f64,
    pub k_const: f64,
    pub beta: f64,
}

impl WeakConfinementParams {
    pub fn new(n_exp: f64, k_const: f64, beta: f64) -> Result<Self> {
        if !(n_exp > 1.0 && k_const > 0.0 && beta > 0.0) || !(n_exp * beta).is_finite() {
            return domain(format!("need N > 1, K > 0, β > 0; got N = {n_exp}, K = {k_const}, β = {beta}"));
        }
        Ok(Self { n_exp, k_const, beta })
    }

    /// `tanh β`.
    pub fn a(&self) -> f64 {
        self.beta.tanh()
    }

    /// `tanh Nβ`.
    pub fn b(&self) -> f64 {
        (self.n_exp * self.beta).tanh()
    }
}

/// One index of the weak-confinement chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainStep {
    pub k: usize,
    /// `ln` of `K(1−b)^{−1/4}/A · (1−a)^{1/4} k μ^{k/2}`.
    pub ln_intermediate: f64,
    /// `ln` of `(Kk/A) e^{β((N−1)/2 − k)}`.
    pub ln_bound: f64,
    /// `k > (N−1)/2`: the bound tends to zero as `β → ∞`.
    pub forced_zero: bool,
}

impl ChainStep {
    pub fn bound(&self) -> f64 {
        self.ln_bound.exp()
    }
}

/// Evaluates the chain with `α = 2` (so `k^{α/2} = k`); `cert` must have `β = 4`.
pub fn weak_confinement_chain(p: &WeakConfinementParams, k: usize, cert: &Lemma41Certificate) -> Result<ChainStep> {
    if (cert.beta - 4.0).abs() > 1e-12 {
        return domain(format!("the chain uses α = 2 and needs a β = 4 certificate, got β = {}", cert.beta));
    }
    if k == 0 {
        return domain("the chain is stated for k ≥ 1");
    }
    let ln_a = 0.5 * cert.b_beta.ln();
    let kf = k as f64;
    // 1 − tanh x = 2/(1 + e^{2x}), kept in log form for large β.
    let ln_one_minus_tanh = |x: f64| std::f64::consts::LN_2 - ln_1p_exp(2.0 * x);
    let ln_mu = -2.0 * p.beta;
    let ln_intermediate = p.k_const.ln() - 0.25 * ln_one_minus_tanh(p.n_exp * p.beta) - ln_a
        + 0.25 * ln_one_minus_tanh(p.beta)
        + kf.ln()
        + 0.5 * kf * ln_mu;
    let ln_bound = p.k_const.ln() + kf.ln() - ln_a + p.beta * (0.5 * (p.n_exp - 1.0) - kf);
    Ok(ChainStep { k, ln_intermediate, ln_bound, forced_zero: kf > 0.5 * (p.n_exp - 1.0) })
}

/// `ln(1 + e^x)` without overflow.
fn ln_1p_exp(x: f64) -> f64 {
    if x > 30.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}
