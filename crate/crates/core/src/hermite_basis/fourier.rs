//! Sampled Fourier transform `f̂(ξ) = (2π)^{−1/2} ∫ f(x) e^{−iξx} dx`.
//!
//! The output lives on the input grid. Since `ξ_m x_j` contains the product
//! `h² m j` with `h²` unrelated to `2π/N`, this is a chirp-z transform rather
//! than a plain DFT: `m j = (m² + j² − (m − j)²)/2` turns the sum into a
//! convolution, evaluated with a zero-padded FFT of length ≥ 2N − 1.

use num_complex::Complex;
use rustfft::FftPlanner;

use super::grid::SampledFunction;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest admissible endpoint/peak magnitude ratio of the input.
pub const EDGE_TOLERANCE: f64 = 1e-10;

/// Relative level (in units of machine epsilon times the peak) below which
/// output samples are roundoff, not signal, and are flushed to zero.
const NOISE_FLOOR_EPS: f64 = 1024.0;

fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

pub fn fourier_sampled<T: Real>(f: &SampledFunction<T>) -> Result<SampledFunction<T>> {
    let ratio = f.edge_ratio();
    if ratio > T::lit(EDGE_TOLERANCE) {
        return Err(Error::EdgeDecay { ratio: ratio.to_f64().unwrap_or(f64::INFINITY) });
    }
    let grid = *f.grid();
    let n = grid.num_points();
    let h = grid.spacing();
    let l = grid.half_width();
    let half_h2 = h * h / T::lit(2.0);
    let zero = Complex::new(T::zero(), T::zero());

    let m_len = (2 * n - 1).next_power_of_two();
    let mut a = vec![zero; m_len];
    for (j, (aj, fj)) in a.iter_mut().zip(f.values()).enumerate() {
        let jf = T::from_index(j);
        *aj = *fj * cis(l * h * jf - half_h2 * jf * jf);
    }
    let mut b = vec![zero; m_len];
    for d in 0..n {
        let df = T::from_index(d);
        let k = cis(half_h2 * df * df);
        b[d] = k;
        if d > 0 {
            b[m_len - d] = k;
        }
    }

    let mut planner = FftPlanner::<T>::new();
    let fwd = planner.plan_fft_forward(m_len);
    let inv = planner.plan_fft_inverse(m_len);
    fwd.process(&mut a);
    fwd.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x = *x * *y;
    }
    inv.process(&mut a);

    let scale = h / T::TAU().sqrt() / T::from_index(m_len);
    let global = cis(-(l * l));
    let mut out: Vec<Complex<T>> = (0..n)
        .map(|m| {
            let mf = T::from_index(m);
            a[m] * global * cis(l * h * mf - half_h2 * mf * mf) * scale
        })
        .collect();

    let peak = out.iter().map(|v| v.norm()).fold(T::zero(), T::max);
    let floor = peak * T::epsilon() * T::lit(NOISE_FLOOR_EPS);
    for v in out.iter_mut() {
        if v.norm() < floor {
            *v = zero;
        }
    }
    SampledFunction::new(grid, out)
}

#[cfg(test)]
mod tests {
    use super::super::{eval_phi, GridSpec};
    use super::*;

    fn gauss(grid: GridSpec<f64>, b: f64, amp: f64) -> SampledFunction<f64> {
        SampledFunction::from_real_fn(grid, move |x| amp * (-b * x * x / 2.0).exp())
    }

    #[test]
    fn unit_gaussian_is_self_dual() {
        let g = GridSpec::default();
        let f = gauss(g, 1.0, 1.0);
        let fh = fourier_sampled(&f).unwrap();
        assert!(fh.max_abs_diff(&f) < 1e-8);
    }

    #[test]
    fn narrow_gaussian_transform() {
        // ĝ_2 = 2^{−1/2} g_{1/2}
        let g = GridSpec::default();
        let fh = fourier_sampled(&gauss(g, 2.0, 1.0)).unwrap();
        assert!(fh.max_abs_diff(&gauss(g, 0.5, 0.5f64.sqrt())) < 1e-8);
    }

    #[test]
    fn phi1_picks_up_minus_i() {
        let g = GridSpec::default();
        let phi1 = SampledFunction::from_real_fn(g, |x| eval_phi(1, &[x])[0]);
        let fh = fourier_sampled(&phi1).unwrap();
        let expect = phi1.scaled(Complex::new(0.0, -1.0));
        assert!(fh.max_abs_diff(&expect) < 1e-8);
    }

    #[test]
    fn four_transforms_are_identity() {
        let g = GridSpec::default();
        let f = SampledFunction::from_fn(g, |x: f64| {
            Complex::new((-0.4 * x * x).exp() * (1.0 + x), 0.3 * x * (-0.6 * x * x).exp())
        });
        let mut h = f.clone();
        for _ in 0..4 {
            h = fourier_sampled(&h).unwrap();
        }
        assert!(h.max_abs_diff(&f) < 1e-8);
    }

    #[test]
    fn non_decaying_input_is_rejected() {
        let g = GridSpec::new(4.0, 256).unwrap();
        let f = gauss(g, 1.0, 1.0);
        assert!(matches!(fourier_sampled(&f), Err(Error::EdgeDecay { .. })));
    }
}
