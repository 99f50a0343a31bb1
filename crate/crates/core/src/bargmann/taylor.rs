use num_complex::Complex;

use crate::hermite_basis::HermiteExpansion;
use crate::logscale::{ln_factorial_table, LogComplex};
use crate::scalar::Real;

/// Relative size of the estimated tail below which evaluation stops.
pub const TAYLOR_TAIL_TOLERANCE: f64 = 1e-14;

/// Taylor coefficients `c_n` of `Uf(w) = Σ c_n w^n`, in log-polar form.
///
/// `c_n = ⟨f, φ_n⟩/√(2^n n!)`; vanishing coefficients are explicit zero markers.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries<T> {
    pub coeffs: Vec<LogComplex<T>>,
}

/// A truncated evaluation of a Taylor series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorEval<T> {
    pub value: Complex<T>,
    /// Geometric estimate of the omitted tail, from the last two retained terms.
    pub tail: T,
    /// Set when the tail estimate exceeds `TAYLOR_TAIL_TOLERANCE` of the sum.
    pub truncated: bool,
    pub terms_used: usize,
}

fn ln_norms<T: Real>(len: usize) -> Vec<T> {
    let ln2 = T::LN_2();
    let half = T::lit(0.5);
    ln_factorial_table::<T>(len.saturating_sub(1))
        .into_iter()
        .enumerate()
        .map(|(n, lf)| half * (T::from_index(n) * ln2 + lf))
        .collect()
}

pub fn expansion_to_taylor<T: Real>(e: &HermiteExpansion<T>) -> TaylorSeries<T> {
    let norms = ln_norms::<T>(e.len());
    let coeffs = e
        .coeffs
        .iter()
        .zip(norms)
        .map(|(c, ln_norm)| LogComplex::from_complex(*c).scale_ln(-ln_norm))
        .collect();
    TaylorSeries { coeffs }
}

pub fn taylor_to_expansion<T: Real>(s: &TaylorSeries<T>) -> HermiteExpansion<T> {
    let norms = ln_norms::<T>(s.coeffs.len());
    HermiteExpansion::new(s.coeffs.iter().zip(norms).map(|(c, ln_norm)| c.scale_ln(ln_norm).to_complex()).collect())
}

impl<T: Real> TaylorSeries<T> {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ_n |c_n|² 2^n n!`, which equals `Σ_k |⟨f, φ_k⟩|²`.
    pub fn fock_norm_sq(&self) -> T {
        let norms = ln_norms::<T>(self.len());
        let two = T::lit(2.0);
        let ln_terms: Vec<T> = self
            .coeffs
            .iter()
            .zip(norms)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, ln_norm)| two * (c.ln_abs + ln_norm))
            .collect();
        let max = ln_terms.iter().copied().fold(T::neg_infinity(), T::max);
        if max == T::neg_infinity() {
            return T::zero();
        }
        let mut sum = T::zero();
        for t in ln_terms {
            sum = sum + (t - max).exp();
        }
        sum * max.exp()
    }

    /// Sums `c_n w^n` in index order, stopping once the tail estimate falls
    /// below `TAYLOR_TAIL_TOLERANCE` of the partial sum.
    pub fn eval(&self, w: Complex<T>) -> TaylorEval<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let tol = T::lit(TAYLOR_TAIL_TOLERANCE);
        let lw = LogComplex::from_complex(w);
        let mut sum = zero;
        let mut last: Option<(usize, T)> = None;
        let mut tail = T::zero();
        let mut used = 0;
        for (n, c) in self.coeffs.iter().enumerate() {
            used = n + 1;
            if c.is_zero() {
                continue;
            }
            let term = if n == 0 {
                *c
            } else if lw.is_zero() {
                continue;
            } else {
                LogComplex::new(c.ln_abs + T::from_index(n) * lw.ln_abs, c.phase + T::from_index(n) * lw.phase)
            };
            sum = sum + term.to_complex();
            let prev = last;
            last = Some((n, term.ln_abs));
            tail = tail_estimate(prev, last);
            if prev.is_some() && tail <= tol * sum.norm() {
                break;
            }
        }
        if lw.is_zero() || last.is_none() {
            tail = T::zero();
        }
        let truncated = tail > tol * sum.norm();
        TaylorEval { value: sum, tail, truncated, terms_used: used }
    }
}

/// `m ρ/(1−ρ)` with `ρ` the per-index ratio of the last two nonzero terms.
fn tail_estimate<T: Real>(prev: Option<(usize, T)>, last: Option<(usize, T)>) -> T {
    let (Some((i, li)), Some((j, lj))) = (prev, last) else {
        return T::infinity();
    };
    let ln_rho = (lj - li) / T::from_index(j - i);
    if ln_rho >= T::zero() {
        return T::infinity();
    }
    let rho = ln_rho.exp();
    lj.exp() * rho / (T::one() - rho)
}
