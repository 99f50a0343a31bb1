use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Uniform grid `x_j = −L + j·(2L/N)`, `j = 0..N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    half_width: T,
    num_points: usize,
}

pub const DEFAULT_HALF_WIDTH: f64 = 16.0;
pub const DEFAULT_NUM_POINTS: usize = 4096;

impl<T: Real> GridSpec<T> {
    pub fn new(half_width: T, num_points: usize) -> Result<Self> {
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::InvalidGrid(format!("half width must be positive, got {half_width:?}")));
        }
        if num_points < 16 || !num_points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "number of points must be even and at least 16, got {num_points}"
            )));
        }
        Ok(Self { half_width, num_points })
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn spacing(&self) -> T {
        (self.half_width + self.half_width) / T::from_index(self.num_points)
    }

    pub fn x(&self, j: usize) -> T {
        -self.half_width + T::from_index(j) * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.num_points).map(move |j| self.x(j))
    }

    /// Largest Hermite order whose turning point `√(2k+1)` stays inside `0.8·L`.
    pub fn band_limit(&self) -> usize {
        let reach = 0.8 * self.half_width.to_f64().unwrap_or(0.0);
        let k = (reach * reach - 1.0) / 2.0;
        if k < 0.0 {
            0
        } else {
            k.floor() as usize
        }
    }

    /// Quadrature weight of the measure `dm = dx/√(2π)`.
    pub fn dm_weight(&self) -> T {
        self.spacing() / (T::TAU()).sqrt()
    }
}

impl Default for GridSpec<f64> {
    fn default() -> Self {
        Self { half_width: DEFAULT_HALF_WIDTH, num_points: DEFAULT_NUM_POINTS }
    }
}

/// Complex samples of a function on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<T> {
    grid: GridSpec<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> SampledFunction<T> {
    pub fn new(grid: GridSpec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != grid.num_points() {
            return Err(Error::InvalidGrid(format!(
                "{} samples for a {}-point grid",
                values.len(),
                grid.num_points()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Domain("sampled values must be finite".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: GridSpec<T>, f: impl Fn(T) -> Complex<T>) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values }
    }

    pub fn from_real_fn(grid: GridSpec<T>, f: impl Fn(T) -> T) -> Self {
        Self::from_fn(grid, |x| Complex::new(f(x), T::zero()))
    }

    pub fn zeros(grid: GridSpec<T>) -> Self {
        Self { grid, values: vec![Complex::new(T::zero(), T::zero()); grid.num_points()] }
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    /// `‖f‖²` in `L²(dm)`, trapezoidal.
    pub fn norm_sq(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr()) * self.grid.dm_weight()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    /// Largest endpoint magnitude relative to the peak magnitude.
    pub fn edge_ratio(&self) -> T {
        let peak = self.max_abs();
        if peak.is_zero() {
            return T::zero();
        }
        let n = self.values.len();
        self.values[0].norm().max(self.values[n - 1].norm()) / peak
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| *v * c).collect() }
    }

    /// Pointwise difference; both operands must share a grid.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::InvalidGrid("operands live on different grids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a - *b).collect();
        Ok(Self { grid: self.grid, values })
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(GridSpec::new(0.0, 64).is_err());
        assert!(GridSpec::new(4.0, 15).is_err());
        assert!(GridSpec::new(4.0, 33).is_err());
        assert!(GridSpec::new(4.0, 16).is_ok());
    }

    #[test]
    fn default_grid_geometry() {
        let g = GridSpec::default();
        assert_eq!(g.x(0), -16.0);
        assert_eq!(g.spacing(), 1.0 / 128.0);
        assert_eq!(g.x(2048), 0.0);
        // √(2k+1) ≤ 12.8  ⇔  k ≤ 81.42
        assert_eq!(g.band_limit(), 81);
    }

    #[test]
    fn sample_length_is_checked() {
        let g = GridSpec::new(4.0, 16).unwrap();
        assert!(SampledFunction::new(g, vec![Complex::new(0.0, 0.0); 15]).is_err());
        assert!(SampledFunction::new(g, vec![Complex::new(f64::NAN, 0.0); 16]).is_err());
    }
}
