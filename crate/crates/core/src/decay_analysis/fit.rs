use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hermite_basis::HermiteExpansion;

/// Magnitudes at or below this are treated as absent.
pub const NOISE_FLOOR: f64 = 1e-250;
const MIN_POINTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    All,
}

/// Least-squares model `ln|c_k| ≈ log_prefactor − alpha_hat·k − power_hat·ln k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub alpha_hat: f64,
    pub power_hat: f64,
    pub log_prefactor: f64,
    /// Root-mean-square residual of the fit in `ln` units.
    pub residual: f64,
    pub k_range: (usize, usize),
    pub parity: Parity,
    pub points: usize,
}

/// Fits the exponential rate and polynomial power of `|coeffs[k]|`, `k` in
/// the inclusive `k_range`.
///
/// If all usable coefficients share one parity, only that parity is fitted.
pub fn decay_fit(e: &HermiteExpansion<f64>, k_range: (usize, usize)) -> Result<DecayFit> {
    let (lo, hi) = k_range;
    let usable: Vec<(usize, f64)> = (lo.max(1)..=hi.min(e.len().saturating_sub(1)))
        .filter_map(|k| {
            let m = e.coeffs.get(k)?.norm();
            (m > NOISE_FLOOR).then(|| (k, m.ln()))
        })
        .collect();
    let evens = usable.iter().filter(|(k, _)| k % 2 == 0).count();
    let odds = usable.len() - evens;
    let parity = match (evens, odds) {
        (_, 0) => Parity::Even,
        (0, _) => Parity::Odd,
        _ => Parity::All,
    };
    let mut fit = fit_log_magnitudes(&usable)?;
    fit.k_range = k_range;
    fit.parity = parity;
    Ok(fit)
}

/// Same model fitted to `(k, ln|c_k|)` pairs directly.
pub fn fit_log_magnitudes(points: &[(usize, f64)]) -> Result<DecayFit> {
    if points.len() < MIN_POINTS {
        return Err(Error::Fit(format!(
            "need at least {MIN_POINTS} coefficients above the noise floor, have {}",
            points.len()
        )));
    }
    if points.iter().any(|(k, y)| *k == 0 || !y.is_finite()) {
        return Err(Error::Fit("indices must be positive with finite log-magnitudes".into()));
    }
    let n = points.len();
    let design = DMatrix::from_fn(n, 3, |i, j| {
        let k = points[i].0 as f64;
        match j {
            0 => 1.0,
            1 => -k,
            _ => -k.ln(),
        }
    });
    let rhs = DVector::from_iterator(n, points.iter().map(|p| p.1));
    let sol = design
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Fit(e.to_string()))?;
    let resid = &design * &sol - &rhs;
    Ok(DecayFit {
        alpha_hat: sol[1],
        power_hat: sol[2],
        log_prefactor: sol[0],
        residual: (resid.norm_squared() / n as f64).sqrt(),
        k_range: (points[0].0, points[n - 1].0),
        parity: Parity::All,
        points: n,
    })
}
