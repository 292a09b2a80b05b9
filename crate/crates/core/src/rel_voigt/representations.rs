//! Alternative integral representations of `H2`, used to cross-check the
//! closed form.

use std::f64::consts::PI;

use super::{pole_set, EvalResult, Method};
use crate::complex_fn::{exp_mul, principal_sqrt, Complex, FRAC_1_SQRT_PI};
use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::{
    integrate_interval, integrate_real_line, integrate_semi_infinite_oscillatory, QuadratureConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// Gaussian average of the Laplace transform of a cosine, as nested
    /// one-dimensional integrals.
    Double,
    /// The inner Gaussian integral done analytically, leaving one
    /// oscillatory integral over `[0, inf)`.
    SingleComplex,
}

fn require_positive_a(a: f64, u1: f64, u2: f64) -> Result<()> {
    ensure_finite(&[a, u1, u2], "a, u1, u2")?;
    if a <= 0.0 {
        return Err(Error::domain("representation requires a > 0"));
    }
    Ok(())
}

/// Contributions of the two poles above the real axis,
/// `exp(-t1+^2) / w1 + exp(-t2-^2) / w2`.
pub fn h2_rectangle_residues(a: f64, u1: f64, u2: f64) -> Result<Complex> {
    require_positive_a(a, u1, u2)?;
    let ps = pole_set(a, u1, u2)?;
    let r1 = exp_mul(-ps.t1_plus * ps.t1_plus, ps.w1.inv())?;
    let r2 = exp_mul(-ps.t2_minus * ps.t2_minus, ps.w2.inv())?;
    Ok(r1 + r2)
}

/// `H2` from the integral along the horizontal line `Im t = offset` plus
/// the residues of the poles between it and the real axis.
///
/// `offset = None` uses `1 + max(Im t1+, Im t2-)`.
pub fn h2_rectangle(a: f64, u1: f64, u2: f64, offset: Option<f64>, config: &QuadratureConfig) -> Result<EvalResult> {
    require_positive_a(a, u1, u2)?;
    config.validate()?;
    let ps = pole_set(a, u1, u2)?;
    let highest = ps.t1_plus.im.max(ps.t2_minus.im);
    let h = offset.unwrap_or(1.0 + highest);
    if !h.is_finite() || h <= highest {
        return Err(Error::domain("contour must enclose both poles"));
    }
    let s = u1 + u2;
    let p = u1 * u2;
    let denominator = |t: Complex| {
        let q = t * (t - s) + p;
        q * q + a * a
    };
    let line = |t: f64| {
        let z = Complex::new(t, h);
        let f = (-z * z).exp() / denominator(z);
        f * (a / PI)
    };
    // |exp(-z^2)| = exp(h^2 - t^2): widen the window so the tail stays as small
    // as on the real line
    let radius = config.truncation_radius.hypot(h);
    let line_config = QuadratureConfig {
        truncation_radius: radius,
        ..*config
    };
    let re = integrate_real_line(|t| line(t).re, &line_config)?;
    let im = integrate_real_line(|t| line(t).im, &line_config)?;
    let residues = h2_rectangle_residues(a, u1, u2)?;
    let residual = (im.value + residues.im).abs();
    Ok(EvalResult {
        value: re.value + residues.re,
        error_estimate: re.error_estimate + im.error_estimate + residual,
        method: Method::Quadrature,
        converged: re.converged && im.converged,
    })
}

/// `H2` from one of the alternative integral representations.
pub fn h2_integral_rep(
    a: f64,
    u1: f64,
    u2: f64,
    variant: Representation,
    config: &QuadratureConfig,
) -> Result<EvalResult> {
    require_positive_a(a, u1, u2)?;
    config.validate()?;
    match variant {
        Representation::Double => double(a, u1, u2, config),
        Representation::SingleComplex => single_complex(a, u1, u2, config),
    }
}

fn double(a: f64, u1: f64, u2: f64, config: &QuadratureConfig) -> Result<EvalResult> {
    // the outer weight integrates to 1/sqrt(pi), so inner errors pass through at about half size
    let inner_config = *config;
    let mut inner_error: f64 = 0.0;
    let mut inner_converged = true;
    let mut failure = None;
    let outer = integrate_real_line(
        |t| {
            let q = (t - u1) * (t - u2);
            let inner =
                integrate_semi_infinite_oscillatory(|x: f64| (-a * x).exp() * (q * x).cos(), q, a, &inner_config);
            match inner {
                Ok(r) => {
                    inner_error = inner_error.max(r.error_estimate);
                    inner_converged &= r.converged;
                    (-t * t).exp() * r.value / PI
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        config,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let outer = outer?;
    Ok(EvalResult {
        value: outer.value,
        // Int exp(-t^2) dt / pi = 1 / sqrt(pi)
        error_estimate: outer.error_estimate + inner_error * FRAC_1_SQRT_PI,
        method: Method::Quadrature,
        converged: outer.converged && inner_converged,
    })
}

fn single_complex(a: f64, u1: f64, u2: f64, config: &QuadratureConfig) -> Result<EvalResult> {
    let s2 = (u1 + u2) * (u1 + u2);
    let p = u1 * u2;
    let d2 = (u1 - u2) * (u1 - u2);
    let integrand = |x: f64| {
        let one_minus_ix = Complex::new(1.0, -x);
        // exp(i x p - x^2 s^2 / (4 (1 - i x))) / sqrt(1 - i x)
        let exponent = Complex::new(-a * x, p * x) - Complex::new(x * x * s2 / 4.0, 0.0) / one_minus_ix;
        (exponent.exp() / principal_sqrt(one_minus_ix)).re * FRAC_1_SQRT_PI
    };
    let x_max = (50.0 / a).max(200.0);
    // phase speed runs from |p| near the origin to (u1 - u2)^2 / 4 far out
    let omega = p.abs().max(0.25 * d2).max(1.0);
    let panel = (PI / omega).min(1.0);
    let panels = (x_max / panel).ceil() as usize;
    let breakpoints: Vec<f64> = (1..panels).map(|k| k as f64 * panel).collect();
    let panel_config = QuadratureConfig {
        max_subdivisions: config.max_subdivisions.max(4 * panels),
        ..*config
    };
    let r = integrate_interval(integrand, 0.0, x_max, &breakpoints, &panel_config)?;
    let tail = (-a * x_max).exp() / a * FRAC_1_SQRT_PI;
    let error_estimate = r.error_estimate + tail;
    Ok(EvalResult {
        value: r.value,
        error_estimate,
        method: Method::Quadrature,
        converged: r.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::super::h2;
    use super::*;
    use std::f64::consts::E;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default().with_tolerances(1e-12, 1e-10)
    }

    #[test]
    fn rectangle_matches_closed_form() {
        let want = h2(1.0, 1.0, 0.0).unwrap().value;
        let r = h2_rectangle(1.0, 1.0, 0.0, None, &cfg()).unwrap();
        assert!((r.value - want).abs() < 1e-7, "{} vs {want}", r.value);
    }

    #[test]
    fn rectangle_is_offset_independent() {
        let ps = pole_set(1.0, 0.5, -0.5).unwrap();
        let h = 1.0 + ps.t1_plus.im.max(ps.t2_minus.im);
        let x = h2_rectangle(1.0, 0.5, -0.5, Some(h), &cfg()).unwrap();
        let y = h2_rectangle(1.0, 0.5, -0.5, Some(2.0 * h), &cfg()).unwrap();
        assert!((x.value - y.value).abs() < 1e-8);
        assert!(h2_rectangle(1.0, 0.5, -0.5, Some(0.5 * ps.t1_plus.im), &cfg()).is_err());
    }

    #[test]
    fn residues_carry_small_width_limit() {
        let r = h2_rectangle_residues(1e-8, 1.0, 0.0).unwrap();
        assert!((r.re - (1.0 + 1.0 / E)).abs() < 1e-6);
    }

    #[test]
    fn representations_match_closed_form() {
        let want = h2(1.0, 1.0, 0.0).unwrap().value;
        for v in [Representation::Double, Representation::SingleComplex] {
            let r = h2_integral_rep(1.0, 1.0, 0.0, v, &cfg()).unwrap();
            assert!((r.value - want).abs() < 1e-6, "{v:?}: {} vs {want}", r.value);
        }
        let want = h2(2.0, 0.0, 0.0).unwrap().value;
        let r = h2_integral_rep(2.0, 0.0, 0.0, Representation::SingleComplex, &cfg()).unwrap();
        assert!((r.value - want).abs() < 1e-6);
        assert!(h2_integral_rep(0.0, 1.0, 0.0, Representation::Double, &cfg()).is_err());
    }

    #[test]
    fn inner_laplace_transform() {
        let (a, c) = (0.7, 2.5);
        let r = integrate_semi_infinite_oscillatory(|x: f64| (-a * x).exp() * (c * x).cos(), c, a, &cfg()).unwrap();
        assert!((r.value - a / (a * a + c * c)).abs() < 1e-12);
    }
}
