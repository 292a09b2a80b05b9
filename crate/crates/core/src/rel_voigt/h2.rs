use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::{pole_set, EvalResult, Method};
use crate::complex_fn::{faddeeva_w, Complex, FRAC_1_SQRT_PI};
use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::{integrate_real_line_seeded, QuadratureConfig};
use crate::Side;

/// `min(|u1|, |u2|)` at which the leading large-u form is offered.
pub const LARGE_U_THRESHOLD: f64 = 15.0;

/// Largest `a` accepted by [`h2_degenerate_series`].
pub const DEGENERATE_SERIES_MAX_A: f64 = 1e-3;

/// `H2(a, u1, u2)`.
///
/// Evaluated through the four Faddeeva terms
/// `[(w(t1+) + w(-t1-)) / w1 + (w(-t2+) + w(t2-)) / w2] / 2`, whose
/// arguments all lie in the upper half-plane for `a > 0`. Odd in `a`;
/// `a = 0` gives 0. When both `|u|` exceed [`LARGE_U_THRESHOLD`] the result
/// is compared with the leading asymptotic form, which replaces it only if
/// the closed form is non-finite or inconsistent with it.
pub fn h2(a: f64, u1: f64, u2: f64) -> Result<EvalResult> {
    ensure_finite(&[a, u1, u2], "a, u1, u2")?;
    if a == 0.0 {
        return Ok(EvalResult::exact(0.0, 0.0, Method::ClosedForm));
    }
    if a < 0.0 {
        let r = h2(-a, u1, u2)?;
        return Ok(EvalResult { value: -r.value, ..r });
    }
    let closed = closed_form(a, u1, u2);
    if u1.abs().min(u2.abs()) >= LARGE_U_THRESHOLD {
        let asym = h2_large_u_asymptotic(a, u1, u2)?;
        match closed {
            Ok(c) if (c.value - asym.value).abs() <= 10.0 * asym.error_estimate + c.error_estimate => return Ok(c),
            _ => return Ok(asym),
        }
    }
    closed
}

fn closed_form(a: f64, u1: f64, u2: f64) -> Result<EvalResult> {
    let ps = pole_set(a, u1, u2)?;
    let g1 = (faddeeva_w(ps.t1_plus)? + faddeeva_w(-ps.t1_minus)?) / ps.w1;
    let g2 = (faddeeva_w(-ps.t2_plus)? + faddeeva_w(ps.t2_minus)?) / ps.w2;
    let sum = (g1 + g2) * 0.5;
    if !(sum.re.is_finite() && sum.im.is_finite()) {
        return Err(Error::Overflow("H2 closed form"));
    }
    let residual = sum.im.abs();
    if residual > 1e-10 * (1.0 + sum.re.abs()) {
        return Err(Error::Numerical(format!(
            "imaginary residual {residual:e} in H2 closed form"
        )));
    }
    let roundoff = 16.0 * f64::EPSILON * (g1.norm() + g2.norm());
    Ok(EvalResult::exact(sum.re, roundoff + residual, Method::ClosedForm))
}

/// `H2` by direct adaptive quadrature of its defining integral, seeded at
/// the near-singular points `u1`, `u2`.
pub fn h2_quadrature(a: f64, u1: f64, u2: f64, config: &QuadratureConfig) -> Result<EvalResult> {
    ensure_finite(&[a, u1, u2], "a, u1, u2")?;
    if a == 0.0 {
        return Err(Error::domain("h2_quadrature requires a != 0"));
    }
    let d = (u1 - u2).abs();
    let root = a.abs().sqrt();
    let width = if d > 0.0 { root.min(a.abs() / d) } else { root };
    let mut seeds = Vec::with_capacity(10);
    for u in [u1, u2] {
        seeds.push(u);
        for k in [1.0, 10.0] {
            seeds.push(u - k * width);
            seeds.push(u + k * width);
        }
    }
    let scale = a / PI;
    let r = integrate_real_line_seeded(
        |t| {
            let p = (u1 - t) * (u2 - t);
            scale * (-t * t).exp() / (p * p + a * a)
        },
        &seeds,
        config,
    )?;
    Ok(EvalResult {
        value: r.value,
        error_estimate: r.error_estimate,
        method: Method::Quadrature,
        converged: r.converged,
    })
}

/// One-sided limit `+-(exp(-u1^2) + exp(-u2^2)) / |u1 - u2|` as `a -> 0+-`.
pub fn h2_limit_a0(u1: f64, u2: f64, side: Side) -> Result<f64> {
    ensure_finite(&[u1, u2], "u1, u2")?;
    if u1 == u2 {
        return Err(Error::domain("limit divergent on degenerate manifold u1 = u2"));
    }
    Ok(side.sign() * ((-u1 * u1).exp() + (-u2 * u2).exp()) / (u1 - u2).abs())
}

/// Two-term small-`a` expansion of `H2(a, u, u)`:
/// `exp(-u^2) [1 / sqrt(2a) + (2u^2 - 1) sqrt(a / 2)]`.
pub fn h2_degenerate_series(a: f64, u: f64) -> Result<EvalResult> {
    ensure_finite(&[a, u], "a, u")?;
    if a <= 0.0 {
        return Err(Error::domain("degenerate series requires a > 0"));
    }
    if a > DEGENERATE_SERIES_MAX_A {
        return Err(Error::domain(format!(
            "degenerate series requires a <= {DEGENERATE_SERIES_MAX_A:e}"
        )));
    }
    let g = (-u * u).exp();
    let root = a.sqrt();
    let value = g * (FRAC_1_SQRT_2 / root + FRAC_1_SQRT_2 * (2.0 * u * u - 1.0) * root);
    Ok(EvalResult::exact(value, g * a, Method::DegenerateSeries))
}

/// Leading large-u form `a / (sqrt(pi) (u1^2 u2^2 + a^2))`.
///
/// The first correction is `(3/u1^2 + 3/u2^2 + 4/|u1 u2|) / 2` relative;
/// higher orders push the true deviation slightly past it, so the error
/// estimate is twice that.
pub fn h2_large_u_asymptotic(a: f64, u1: f64, u2: f64) -> Result<EvalResult> {
    ensure_finite(&[a, u1, u2], "a, u1, u2")?;
    if a == 0.0 {
        return Err(Error::domain("large-u form requires a != 0"));
    }
    if u1.abs().min(u2.abs()) < LARGE_U_THRESHOLD {
        return Err(Error::domain(format!(
            "asymptotic regime not reached: min(|u1|, |u2|) < {LARGE_U_THRESHOLD}"
        )));
    }
    let p = u1 * u2;
    let value = FRAC_1_SQRT_PI * a / (p * p + a * a);
    let relative = 3.0 / (u1 * u1) + 3.0 / (u2 * u2) + 4.0 / p.abs();
    Ok(EvalResult::exact(
        value,
        value.abs() * relative,
        Method::LargeUAsymptotic,
    ))
}

/// `I2 = a/pi * Int dt / ((t - u1)^2 (t - u2)^2 + a^2) = Re(1/w1 + 1/w2)`.
pub fn i2_closed(a: f64, u1: f64, u2: f64) -> Result<f64> {
    ensure_finite(&[a, u1, u2], "a, u1, u2")?;
    if a == 0.0 {
        return Err(Error::domain("I2 requires a != 0 (real double poles at a = 0)"));
    }
    let ps = pole_set(a.abs(), u1, u2)?;
    let sum: Complex = ps.w1.inv() + ps.w2.inv();
    if sum.im.abs() > 1e-12 * (1.0 + sum.re.abs()) {
        return Err(Error::Numerical(format!("imaginary residual {:e} in I2", sum.im)));
    }
    Ok(a.signum() * sum.re)
}
