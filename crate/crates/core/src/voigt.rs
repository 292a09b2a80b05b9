//! Classical line-broadening function `H0` and Voigt profile `V0`.

use std::f64::consts::PI;

use crate::complex_fn::{faddeeva_w, Complex, FRAC_1_SQRT_PI};
use crate::error::{ensure_finite, Error, Result};
use crate::profiles::{reduce_nonrel, ProfileParams};
use crate::quadrature::{integrate_semi_infinite, QuadratureConfig};
use crate::rel_voigt::{EvalResult, Method};
use crate::Side;

/// `H0(a, u) = Re w(u + i a)` for `a > 0`; odd in `a`, zero at `a = 0`.
pub fn h0(a: f64, u: f64) -> Result<f64> {
    ensure_finite(&[a, u], "a, u")?;
    if a == 0.0 {
        return Ok(0.0);
    }
    let w = faddeeva_w(Complex::new(u, a.abs()))?;
    Ok(a.signum() * w.re)
}

/// `lim H0(a, u)` as `a -> 0+-`, i.e. `+-exp(-u^2)`.
pub fn h0_limit_a0(u: f64, side: Side) -> f64 {
    side.sign() * (-u * u).exp()
}

/// `H0` from `Re Int_0^inf exp(-a x + i u x - x^2/4) dx / sqrt(pi)`.
pub fn h0_laplace_rep(a: f64, u: f64, config: &QuadratureConfig) -> Result<EvalResult> {
    ensure_finite(&[a, u], "a, u")?;
    if a <= 0.0 {
        return Err(Error::domain("Laplace representation requires a > 0"));
    }
    let r = integrate_semi_infinite(
        |x| FRAC_1_SQRT_PI * (-a * x - 0.25 * x * x).exp() * (u * x).cos(),
        config,
    )?;
    Ok(EvalResult {
        value: r.value,
        error_estimate: r.error_estimate,
        method: Method::Quadrature,
        converged: r.converged,
    })
}

/// Classical Voigt profile `H0(a, u) / (sqrt(2 pi) sigma)`.
pub fn v0(e: f64, params: &ProfileParams) -> Result<f64> {
    params.require_gamma()?;
    let r = reduce_nonrel(e, params)?;
    Ok(h0(r.a, r.u)? / ((2.0 * PI).sqrt() * params.sigma))
}
