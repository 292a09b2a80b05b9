use std::f64::consts::PI;

use super::h2;
use crate::error::{ensure_finite, Error, Result};
use crate::profiles::{bw_nonrel, bw_rel, reduce_rel, ProfileParams};
use crate::voigt::v0;
use crate::Side;

/// Relativistic Voigt profile `H2(a, u1, u2) / (2 sqrt(pi) sigma^2)`.
pub fn v2(e: f64, params: &ProfileParams) -> Result<f64> {
    params.require_mu()?;
    params.require_gamma()?;
    let r = reduce_rel(e, params)?;
    let h = h2(r.a, r.u1, r.u2)?;
    Ok(h.value / (2.0 * PI.sqrt() * params.sigma * params.sigma))
}

/// One-sided `Gamma -> 0` limit of [`v2`]: two Gaussians at `+-mu`.
pub fn v2_gamma0_limit(e: f64, mu: f64, sigma: f64, side: Side) -> Result<f64> {
    ensure_finite(&[e, mu, sigma], "e, mu, sigma")?;
    if mu == 0.0 {
        return Err(Error::domain("Gamma -> 0 limit diverges at mu = 0"));
    }
    if !(sigma > 0.0) {
        return Err(Error::parameter("sigma", "must be > 0"));
    }
    let two_var = 2.0 * sigma * sigma;
    let sum = (-(e - mu) * (e - mu) / two_var).exp() + (-(e + mu) * (e + mu) / two_var).exp();
    Ok(side.sign() * sum / (2.0 * sigma * mu * (2.0 * PI).sqrt()))
}

fn damping_params(sigma: f64, gamma: f64, mu: f64) -> Result<ProfileParams> {
    let params = ProfileParams::new(mu, gamma, sigma)?;
    params.require_mu()?;
    params.require_gamma()?;
    if sigma < 0.0 {
        return Err(Error::parameter("sigma", "must be >= 0"));
    }
    Ok(params)
}

/// Peak suppression `V0(mu) / BW(mu)` of the classical profile; 1 at `sigma = 0`.
pub fn d0(sigma: f64, gamma: f64, mu: f64) -> Result<f64> {
    let params = damping_params(sigma, gamma, mu)?;
    if sigma == 0.0 {
        return Ok(1.0);
    }
    Ok(v0(mu, &params)? / bw_nonrel(mu, &params)?)
}

/// Peak suppression `V2(mu) / BW_rel(mu)`; 1 at `sigma = 0`.
pub fn d2(sigma: f64, gamma: f64, mu: f64) -> Result<f64> {
    let params = damping_params(sigma, gamma, mu)?;
    if sigma == 0.0 {
        return Ok(1.0);
    }
    Ok(v2(mu, &params)? / bw_rel(mu, &params)?)
}
