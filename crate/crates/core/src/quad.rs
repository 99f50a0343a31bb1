//! Adaptive Simpson quadrature.

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` to the given absolute tolerance.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    recurse(&f, a, b, fa, fm, fb, whole, abs_tol.max(f64::MIN_POSITIVE), 0)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
}

/// Largest sample of `f` on a uniform probe of `[a, b]`; used to scale tolerances.
pub fn probe_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, samples: usize) -> f64 {
    (0..=samples)
        .map(|i| f(a + (b - a) * i as f64 / samples as f64).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_and_transcendentals() {
        let cubic = adaptive_simpson(|x| x * x * x - x, 0.0, 2.0, 1e-14);
        assert!((cubic - 2.0).abs() < 1e-13);
        let sine = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-13);
        assert!((sine - 2.0).abs() < 1e-11);
    }

    #[test]
    fn peaked_integrand() {
        // ∫_0^{π/2} sin^{400} u du = (√π/2) Γ(200.5)/Γ(201)
        let exact = 0.5 * std::f64::consts::PI.sqrt()
            * (statrs::function::gamma::ln_gamma(200.5) - statrs::function::gamma::ln_gamma(201.0)).exp();
        let got = adaptive_simpson(|u: f64| u.sin().powi(400), 0.0, std::f64::consts::FRAC_PI_2, 1e-15);
        assert!(((got - exact) / exact).abs() < 1e-10, "{got} vs {exact}");
    }
}
