use num_complex::Complex;

use crate::hermite_basis::SampledFunction;
use crate::scalar::Real;

/// Verdict of a Gaussian envelope test `|f(x)| ≤ C·exp(−a x²/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeReport<T> {
    pub a: T,
    /// `sup |f(x)| e^{a x²/2}`; only a lower estimate when `divergent`.
    pub constant: T,
    pub argmax_x: T,
    pub divergent: bool,
}

/// Fraction of the resolved support inspected for growth at each end.
const EDGE_WINDOW: f64 = 0.10;
/// Minimum relative growth across the window that counts as divergence.
const GROWTH_THRESHOLD: f64 = 1e-9;
/// Fraction of steps in the window that must be non-decreasing toward the edge.
const MONOTONE_FRACTION: f64 = 0.9;

/// Scans `|f(x_j)| e^{a x_j²/2}` over the grid.
///
/// Divergence is flagged when the weighted values grow toward either end of
/// the resolved support (the span of non-zero samples) across its outermost
/// tenth. Exact zeros (underflow, flushed roundoff) satisfy any bound and are
/// skipped.
pub fn envelope_scan<T: Real>(f: &SampledFunction<T>, a: T) -> EnvelopeReport<T> {
    let weighted = weighted_magnitudes(f, a);
    let grid = f.grid();
    let mut best = T::zero();
    let mut arg = 0;
    for (j, w) in weighted.iter().enumerate() {
        if *w > best {
            best = *w;
            arg = j;
        }
    }
    let divergent = grows_at_edges(&weighted);
    EnvelopeReport { a, constant: best, argmax_x: grid.x(arg), divergent }
}

pub(crate) fn weighted_magnitudes<T: Real>(f: &SampledFunction<T>, a: T) -> Vec<T> {
    let half = T::lit(0.5);
    f.grid()
        .points()
        .zip(f.values())
        .map(|(x, v): (T, &Complex<T>)| {
            let m = v.norm();
            if m.is_zero() {
                T::zero()
            } else {
                m * (half * a * x * x).exp()
            }
        })
        .collect()
}

fn grows_at_edges<T: Real>(weighted: &[T]) -> bool {
    let Some(first) = weighted.iter().position(|w| !w.is_zero()) else {
        return false;
    };
    let last = weighted.iter().rposition(|w| !w.is_zero()).unwrap();
    let support = last - first + 1;
    let width = ((support as f64 * EDGE_WINDOW).ceil() as usize).max(3);
    if width > support {
        return false;
    }
    let right: Vec<T> = weighted[last + 1 - width..=last].iter().copied().filter(|w| !w.is_zero()).collect();
    let left: Vec<T> =
        weighted[first..first + width].iter().rev().copied().filter(|w| !w.is_zero()).collect();
    increasing(&right) || increasing(&left)
}

fn increasing<T: Real>(window: &[T]) -> bool {
    if window.len() < 3 {
        return false;
    }
    let inner = window[0];
    let outer = window[window.len() - 1];
    if !(outer > inner * (T::one() + T::lit(GROWTH_THRESHOLD))) {
        return false;
    }
    let steps = window.len() - 1;
    let up = window.windows(2).filter(|p| p[1] >= p[0]).count();
    up as f64 >= MONOTONE_FRACTION * steps as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite_basis::{eval_phi, GridSpec};

    fn gauss(b: f64) -> SampledFunction<f64> {
        SampledFunction::from_real_fn(GridSpec::default(), move |x| (-b * x * x / 2.0).exp())
    }

    #[test]
    fn equality_case() {
        let r = envelope_scan(&gauss(0.5), 0.5);
        assert!((r.constant - 1.0).abs() < 1e-12);
        assert!(!r.divergent);
        let strict = envelope_scan(&gauss(0.5), 0.4);
        assert_eq!(strict.constant, 1.0);
        assert_eq!(strict.argmax_x, 0.0);
    }

    #[test]
    fn exponent_mismatch_diverges() {
        assert!(envelope_scan(&gauss(0.5), 0.7).divergent);
    }

    #[test]
    fn hermite_function_has_finite_constant() {
        let f = SampledFunction::from_real_fn(GridSpec::default(), |x| eval_phi(3, &[x])[0]);
        let r = envelope_scan(&f, 0.9);
        assert!(!r.divergent && r.constant.is_finite() && r.constant > 0.0);
    }

    #[test]
    fn zero_function() {
        let r = envelope_scan(&SampledFunction::zeros(GridSpec::default()), 2.0);
        assert_eq!(r.constant, 0.0);
        assert!(!r.divergent);
    }
}
