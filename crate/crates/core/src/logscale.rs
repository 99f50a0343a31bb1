//! Log-domain arithmetic for factorial-sized quantities.
//!
//! Coefficients of Gaussian-type functions involve `√((2m)!)`, `2^n n!` and
//! `μ^{-k}`, which leave the double range long before the indices the bounds
//! are checked at. Everything here stores `ln |z|` and `arg z` separately.

use num_complex::Complex;

use crate::scalar::Real;

/// A complex number stored as `exp(ln_abs) · exp(i·phase)`.
///
/// `ln_abs = -∞` is the explicit zero marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex<T> {
    pub ln_abs: T,
    pub phase: T,
}

impl<T: Real> LogComplex<T> {
    pub fn zero() -> Self {
        Self { ln_abs: T::neg_infinity(), phase: T::zero() }
    }

    pub fn new(ln_abs: T, phase: T) -> Self {
        Self { ln_abs, phase }
    }

    pub fn from_complex(z: Complex<T>) -> Self {
        if z.re.is_zero() && z.im.is_zero() {
            Self::zero()
        } else {
            Self { ln_abs: z.norm().ln(), phase: z.arg() }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ln_abs == T::neg_infinity()
    }

    /// Converts back; underflows to zero and overflows to infinity.
    pub fn to_complex(&self) -> Complex<T> {
        if self.is_zero() {
            return Complex::new(T::zero(), T::zero());
        }
        Complex::from_polar(self.ln_abs.exp(), self.phase)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self { ln_abs: self.ln_abs + other.ln_abs, phase: self.phase + other.phase }
    }

    /// Multiplies the magnitude by `exp(ln_factor)`.
    pub fn scale_ln(&self, ln_factor: T) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self { ln_abs: self.ln_abs + ln_factor, phase: self.phase }
    }
}

/// `ln n!` for `n = 0..=n_max`, accumulated as a running sum of `ln k`.
pub fn ln_factorial_table<T: Real>(n_max: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = T::zero();
    out.push(acc);
    for k in 1..=n_max {
        acc = acc + T::from_index(k).ln();
        out.push(acc);
    }
    out
}

/// `ln n!` in double precision.
pub fn ln_factorial(n: u64) -> f64 {
    statrs::function::factorial::ln_factorial(n)
}

/// `ln Q_n` for `n = 0..=n_max`, where `Q_n = 2^{-2n} (2n)! / (n!)²`.
///
/// Built from `Q_n = Q_{n-1}·(1 − 1/(2n))`, so no factorial is ever formed.
pub fn ln_central_ratio_table<T: Real>(n_max: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = T::zero();
    out.push(acc);
    let half = T::lit(0.5);
    for k in 1..=n_max {
        acc = acc + (-(half / T::from_index(k))).ln_1p();
        out.push(acc);
    }
    out
}

/// `ln Q_n` for a single `n`.
pub fn ln_central_ratio(n: usize) -> f64 {
    (1..=n).map(|k| (-0.5 / k as f64).ln_1p()).sum()
}

/// `ln Σ exp(x_i)`, ignoring `-∞` entries. Returns `-∞` for an empty sum.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let mut terms: Vec<f64> = xs.iter().map(|&x| (x - max).exp()).collect();
    terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
    max + neumaier_sum(&terms).ln()
}

/// Compensated summation.
pub fn neumaier_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Sums log-polar terms `Σ exp(ln_abs_i + i·phase_i)` with the largest
/// magnitude factored out. Returns the sum in log-polar form.
pub fn log_complex_sum<T: Real>(terms: &[LogComplex<T>]) -> LogComplex<T> {
    let max = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| t.ln_abs)
        .fold(T::neg_infinity(), T::max);
    if max == T::neg_infinity() {
        return LogComplex::zero();
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for t in terms.iter().filter(|t| !t.is_zero()) {
        acc = acc + Complex::from_polar((t.ln_abs - max).exp(), t.phase);
    }
    LogComplex::from_complex(acc).scale_ln(max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_ratio_small_values() {
        let q = ln_central_ratio_table::<f64>(3);
        assert!((q[1].exp() - 0.5).abs() < 1e-15);
        assert!((q[2].exp() - 0.375).abs() < 1e-15);
        assert!((q[3].exp() - 0.3125).abs() < 1e-15);
        assert!((ln_central_ratio(2) - q[2]).abs() < 1e-15);
    }

    #[test]
    fn factorial_tables_agree() {
        let t = ln_factorial_table::<f64>(200);
        for n in [0u64, 1, 5, 20, 100, 200] {
            let rel = (t[n as usize] - ln_factorial(n)).abs() / ln_factorial(n).max(1.0);
            assert!(rel < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn log_sum_exp_handles_large_exponents() {
        let v = log_sum_exp(&[1000.0, 1000.0, f64::NEG_INFINITY]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn log_complex_round_trip() {
        let z = Complex::new(-3.0, 4.0);
        let l = LogComplex::from_complex(z);
        assert!((l.to_complex() - z).norm() < 1e-14);
        assert!(LogComplex::<f64>::from_complex(Complex::new(0.0, 0.0)).is_zero());
        let s = log_complex_sum(&[l, LogComplex::from_complex(-z)]);
        assert!(s.to_complex().norm() < 1e-13);
    }
}
