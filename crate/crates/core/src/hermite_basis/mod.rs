//! Hermite functions normalized in `L²(dm)`, `dm = dx/√(2π)`.
//!
//! `φ_k = (2π)^{1/4} h_k`, where `h_k` is the Hermite function of unit norm
//! in `L²(dx)`. Two identities pin this normalization: `φ_0(0)² = √2` (the
//! `w = 0` term of Mehler's formula) and `Uφ_k(w) = w^k/√(2^k k!)` for the
//! Bargmann transform `U`.

mod fourier;
mod grid;

pub use fourier::{fourier_sampled, EDGE_TOLERANCE};
pub use grid::{GridSpec, SampledFunction, DEFAULT_HALF_WIDTH, DEFAULT_NUM_POINTS};

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Marker for the coefficient convention `coeffs[k] = ∫ f φ_k dm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    UnitDm,
}

/// Finite Hermite expansion `Σ coeffs[k] φ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteExpansion<T> {
    pub coeffs: Vec<Complex<T>>,
    pub convention: Convention,
}

impl<T: Real> HermiteExpansion<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        Self { coeffs, convention: Convention::UnitDm }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![Complex::new(T::zero(), T::zero()); len])
    }

    /// `φ_k` itself, padded with zeros to `len`.
    pub fn unit(k: usize, len: usize) -> Self {
        let mut e = Self::zeros(len.max(k + 1));
        e.coeffs[k] = Complex::new(T::one(), T::zero());
        e
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm_sq(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|v| *v * c).collect())
    }

    /// Largest coefficient-wise deviation; missing entries count as zero.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let n = self.len().max(other.len());
        let zero = Complex::new(T::zero(), T::zero());
        (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(zero);
                let b = other.coeffs.get(k).copied().unwrap_or(zero);
                (a - b).norm()
            })
            .fold(T::zero(), T::max)
    }
}

/// `φ_0, …, φ_{kmax}` at a single point.
///
/// The normalized three-term recurrence runs on the polynomial part with the
/// Gaussian factor deferred; the partial values are rescaled whenever they
/// grow large, so neither overflow nor premature underflow occurs. Results
/// below the smallest normal number are flushed to exact zero.
pub fn phi_all<T: Real>(kmax: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(kmax + 1);
    let big = T::rescale_threshold();
    let ln_big = big.ln();
    let tiny = T::min_positive_value();
    let ln_tiny = tiny.ln();
    let half_x2 = x * x / T::lit(2.0);
    let two = T::lit(2.0);

    let mut prev = T::zero();
    let mut cur = two.sqrt().sqrt();
    let mut ln_scale = T::zero();
    let factor_for = |ln_scale: T| {
        let arg = ln_scale - half_x2;
        (arg, arg.exp())
    };
    let (mut arg, mut factor) = factor_for(ln_scale);

    for k in 0..=kmax {
        let v = if arg > ln_tiny + T::lit(60.0) {
            cur * factor
        } else if cur.is_zero() {
            T::zero()
        } else {
            cur.signum() * (cur.abs().ln() + arg).exp()
        };
        out.push(if v.abs() < tiny { T::zero() } else { v });
        if k == kmax {
            break;
        }
        let kf = T::from_index(k);
        let next = (two / (kf + T::one())).sqrt() * x * cur - (kf / (kf + T::one())).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > big {
            prev = prev / big;
            cur = cur / big;
            ln_scale = ln_scale + ln_big;
            (arg, factor) = factor_for(ln_scale);
        }
    }
    out
}

/// `φ_k(x)` for each `x` in `xs`.
pub fn eval_phi<T: Real>(k: usize, xs: &[T]) -> Vec<T> {
    xs.iter().map(|&x| phi_all(k, x)[k]).collect()
}

fn check_band(grid: &GridSpec<impl Real>, k: usize) -> Result<()> {
    let limit = grid.band_limit();
    if k > limit {
        return Err(Error::BandLimit { k, limit });
    }
    Ok(())
}

/// `⟨f, φ_k⟩ = ∫ f φ_k dm`, trapezoidal.
pub fn inner_product<T: Real>(f: &SampledFunction<T>, k: usize) -> Result<Complex<T>> {
    Ok(analyze(f, k)?.coeffs[k])
}

/// `⟨f, φ_k⟩` for `k = 0..=kmax`.
pub fn analyze<T: Real>(f: &SampledFunction<T>, kmax: usize) -> Result<HermiteExpansion<T>> {
    let grid = *f.grid();
    check_band(&grid, kmax)?;
    let mut acc = vec![Complex::new(T::zero(), T::zero()); kmax + 1];
    for (x, v) in grid.points().zip(f.values()) {
        if v.re.is_zero() && v.im.is_zero() {
            continue;
        }
        for (a, p) in acc.iter_mut().zip(phi_all(kmax, x)) {
            *a = *a + *v * p;
        }
    }
    let w = grid.dm_weight();
    Ok(HermiteExpansion::new(acc.into_iter().map(|a| a * w).collect()))
}

/// `Σ coeffs[k] φ_k` sampled on `grid`.
pub fn synthesize<T: Real>(e: &HermiteExpansion<T>, grid: &GridSpec<T>) -> SampledFunction<T> {
    if e.is_empty() {
        return SampledFunction::zeros(*grid);
    }
    let kmax = e.len() - 1;
    SampledFunction::from_fn(*grid, |x| {
        e.coeffs
            .iter()
            .zip(phi_all(kmax, x))
            .fold(Complex::new(T::zero(), T::zero()), |acc, (c, p)| acc + *c * p)
    })
}

/// `(−i)^k` as an exact complex unit.
pub fn minus_i_pow<T: Real>(k: usize) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    match k % 4 {
        0 => Complex::new(o, z),
        1 => Complex::new(z, -o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, o),
    }
}

/// Fourier transform on the coefficient side: `φ̂_k = (−i)^k φ_k`.
pub fn fourier_expansion<T: Real>(e: &HermiteExpansion<T>) -> HermiteExpansion<T> {
    HermiteExpansion::new(
        e.coeffs.iter().enumerate().map(|(k, c)| *c * minus_i_pow::<T>(k)).collect(),
    )
}

fn check_mehler_w<T: Real>(w: T) -> Result<()> {
    if !(w.abs() < T::one()) {
        return domain(format!("Mehler parameter must satisfy |w| < 1, got {w:?}"));
    }
    Ok(())
}

/// Partial sum `Σ_{k ≤ kmax} φ_k(x)² w^k`.
pub fn mehler_lhs<T: Real>(x: T, w: T, kmax: usize) -> Result<T> {
    check_mehler_w(w)?;
    let mut wk = T::one();
    let mut sum = T::zero();
    for p in phi_all(kmax, x) {
        sum = sum + p * p * wk;
        wk = wk * w;
    }
    Ok(sum)
}

/// Closed form `√2 (1−w²)^{−1/2} exp(−(1−w)/(1+w) x²)`.
pub fn mehler_rhs<T: Real>(x: T, w: T) -> Result<T> {
    check_mehler_w(w)?;
    let one = T::one();
    Ok(T::SQRT_2() / (one - w * w).sqrt() * (-(one - w) / (one + w) * x * x).exp())
}
