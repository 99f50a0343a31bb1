//! Closed-form algebra on generalized Gaussians `A·exp(−b x²/2)`, `Re b > 0`.
//!
//! Fourier transform, Bargmann transform and Hermite coefficients are all
//! explicit for this family, which makes it the oracle for the quadrature
//! routines. Square roots use the principal branch throughout: with
//! `Re b > 0` both `b` and `1 + b` stay in the right half-plane.

use num_complex::Complex;

use crate::decay_analysis::EnvelopeReport;
use crate::error::{domain, Result};
use crate::hermite_basis::{GridSpec, HermiteExpansion, SampledFunction};
use crate::logscale::{ln_central_ratio_table, LogComplex};
use crate::scalar::Real;

/// Relative slack when comparing a width against an envelope parameter.
pub const ENVELOPE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedGaussian<T> {
    amplitude: Complex<T>,
    width: Complex<T>,
}

impl<T: Real> GeneralizedGaussian<T> {
    pub fn new(amplitude: Complex<T>, width: Complex<T>) -> Result<Self> {
        if !(width.re > T::zero()) || !width.im.is_finite() || !amplitude.norm().is_finite() {
            return domain(format!("Gaussian width needs Re b > 0, got {width:?}"));
        }
        Ok(Self { amplitude, width })
    }

    /// `g_a(x) = exp(−a x²/2)`.
    pub fn g(a: T) -> Result<Self> {
        Self::new(Complex::new(T::one(), T::zero()), Complex::new(a, T::zero()))
    }

    pub fn amplitude(&self) -> Complex<T> {
        self.amplitude
    }

    pub fn width(&self) -> Complex<T> {
        self.width
    }

    pub fn eval(&self, x: T) -> Complex<T> {
        let half = T::lit(0.5);
        self.amplitude * (-self.width * (half * x * x)).exp()
    }

    pub fn sample(&self, grid: &GridSpec<T>) -> SampledFunction<T> {
        SampledFunction::from_fn(*grid, |x| self.eval(x))
    }

    /// Möbius parameter `z = (1 − b)/(1 + b)`, `|z| < 1`.
    pub fn mobius(&self) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        (one - self.width) / (one + self.width)
    }

    /// Inverse of [`Self::mobius`]: the width with Möbius parameter `z`.
    pub fn width_from_mobius(z: Complex<T>) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        (one - z) / (one + z)
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self { amplitude: self.amplitude * c, width: self.width }
    }

    /// `‖f‖²` in `L²(dm)`: `|A|² (Re b)^{−1/2}`.
    pub fn norm_sq(&self) -> T {
        self.amplitude.norm_sqr() / self.width.re.sqrt()
    }
}

/// `P·exp(λ w²)`, the Bargmann image of a generalized Gaussian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BargmannGaussian<T> {
    pub prefactor: Complex<T>,
    pub quad_coeff: Complex<T>,
}

impl<T: Real> BargmannGaussian<T> {
    pub fn eval(&self, w: Complex<T>) -> Complex<T> {
        self.prefactor * (self.quad_coeff * w * w).exp()
    }
}

/// `(A, b) ↦ (A·b^{−1/2}, 1/b)`.
pub fn fourier_gaussian<T: Real>(g: &GeneralizedGaussian<T>) -> GeneralizedGaussian<T> {
    let one = Complex::new(T::one(), T::zero());
    GeneralizedGaussian { amplitude: g.amplitude / g.width.sqrt(), width: one / g.width }
}

/// `P = 2^{1/4} A (1+b)^{−1/2}`, `λ = (1−b)/(4(1+b))`.
pub fn bargmann_gaussian<T: Real>(g: &GeneralizedGaussian<T>) -> BargmannGaussian<T> {
    let one = Complex::new(T::one(), T::zero());
    let quarter_root_two = T::SQRT_2().sqrt();
    BargmannGaussian {
        prefactor: g.amplitude * quarter_root_two / (one + g.width).sqrt(),
        quad_coeff: g.mobius() / T::lit(4.0),
    }
}

/// Hermite coefficients in log-polar form.
///
/// `⟨g, φ_{2m}⟩ = P z^m √Q_m` with `Q_m = (2m)!/(4^m (m!)²)`; odd orders vanish.
pub fn hermite_log_coeffs<T: Real>(g: &GeneralizedGaussian<T>, kmax: usize) -> Vec<LogComplex<T>> {
    let p = LogComplex::from_complex(bargmann_gaussian(g).prefactor);
    let z = LogComplex::from_complex(g.mobius());
    let ln_q = ln_central_ratio_table::<T>(kmax / 2);
    let half = T::lit(0.5);
    (0..=kmax)
        .map(|k| {
            if k % 2 == 1 {
                return LogComplex::zero();
            }
            let m = k / 2;
            if m == 0 {
                return p;
            }
            if z.is_zero() {
                return LogComplex::zero();
            }
            let mf = T::from_index(m);
            LogComplex::new(p.ln_abs + mf * z.ln_abs + half * ln_q[m], p.phase + mf * z.phase)
        })
        .collect()
}

pub fn hermite_coeffs_gaussian<T: Real>(g: &GeneralizedGaussian<T>, kmax: usize) -> HermiteExpansion<T> {
    HermiteExpansion::new(hermite_log_coeffs(g, kmax).iter().map(LogComplex::to_complex).collect())
}

/// Best `C` with `|g(x)| ≤ C·exp(−a x²/2)`: `|A|` when `Re b ≥ a`, divergent otherwise.
pub fn envelope_constant<T: Real>(g: &GeneralizedGaussian<T>, a: T) -> EnvelopeReport<T> {
    let slack = T::lit(ENVELOPE_SLACK) * a.abs().max(T::one());
    let divergent = g.width.re < a - slack;
    EnvelopeReport {
        a,
        constant: if divergent { T::infinity() } else { g.amplitude.norm() },
        argmax_x: T::zero(),
        divergent,
    }
}

/// Outcome of an `E(a)` membership test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership<T> {
    pub member: bool,
    /// `max(C_time, C_freq)`; infinite for non-members.
    pub constant: T,
    pub time: EnvelopeReport<T>,
    pub freq: EnvelopeReport<T>,
}

pub fn e_membership<T: Real>(g: &GeneralizedGaussian<T>, a: T) -> Membership<T> {
    let time = envelope_constant(g, a);
    let freq = envelope_constant(&fourier_gaussian(g), a);
    let member = !time.divergent && !freq.divergent;
    Membership {
        member,
        constant: if member { time.constant.max(freq.constant) } else { T::infinity() },
        time,
        freq,
    }
}

/// The chirped Gaussian `exp((−a + i√(1−a²)) x²/2)` with `a = tanh 2α`.
///
/// It lies in `E(a)` with constant 1 and its Hermite coefficients decay at
/// exactly the endpoint rate `e^{−αk}` up to a `k^{−1/4}` factor.
pub fn example_2_3<T: Real>(alpha: T) -> Result<GeneralizedGaussian<T>> {
    if !(alpha > T::zero()) {
        return domain(format!("alpha must be positive, got {alpha:?}"));
    }
    let a = (alpha + alpha).tanh();
    GeneralizedGaussian::new(
        Complex::new(T::one(), T::zero()),
        Complex::new(a, -(T::one() - a * a).sqrt()),
    )
}

/// Initial datum of the explicit oscillator solution with `r = e^{−2β}`:
/// Möbius parameter `i r` and amplitude `e^{iπ/8}(1 + i r)^{−1/2}`.
///
/// Under the flow its Möbius parameter is `i r e^{4it}`, so at
/// `t ≡ −π/8 (mod π/2)` the width is real and equal to `tanh β`, while at
/// `t = 0` the envelope is `g_{tanh 2β}`.
pub fn example_3_3<T: Real>(beta: T) -> Result<GeneralizedGaussian<T>> {
    if !(beta > T::zero()) {
        return domain(format!("beta must be positive, got {beta:?}"));
    }
    let r = (-(beta + beta)).exp();
    let z = Complex::new(T::zero(), r);
    let one = Complex::new(T::one(), T::zero());
    let phase = Complex::from_polar(T::one(), T::FRAC_PI_8());
    GeneralizedGaussian::new(phase / (one + z).sqrt(), GeneralizedGaussian::width_from_mobius(z))
}
