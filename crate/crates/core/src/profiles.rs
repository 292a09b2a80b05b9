//! Base line shapes and the maps to dimensionless coordinates.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{ensure_finite, Error, Result};

/// Mass, width and Gaussian resolution, all in energy units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileParams {
    pub mu: f64,
    pub gamma: f64,
    pub sigma: f64,
}

impl ProfileParams {
    /// Builds a parameter set; only finiteness is checked here; each
    /// operation enforces the signs it needs.
    pub fn new(mu: f64, gamma: f64, sigma: f64) -> Result<Self> {
        ensure_finite(&[mu, gamma, sigma], "profile parameters")?;
        Ok(ProfileParams { mu, gamma, sigma })
    }

    pub(crate) fn require_mu(&self) -> Result<()> {
        positive("mu", self.mu)
    }

    pub(crate) fn require_gamma(&self) -> Result<()> {
        positive("gamma", self.gamma)
    }

    pub(crate) fn require_sigma(&self) -> Result<()> {
        positive("sigma", self.sigma)
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::parameter(name, format!("must be finite and > 0, got {v}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedCoordsNonRel {
    pub a: f64,
    pub u: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedCoordsRel {
    pub a: f64,
    pub u1: f64,
    pub u2: f64,
}

/// Cauchy density centred at `mu` with full width `gamma`.
pub fn bw_nonrel(e: f64, params: &ProfileParams) -> Result<f64> {
    ensure_finite(&[e], "energy")?;
    params.require_gamma()?;
    let half = 0.5 * params.gamma;
    let d = e - params.mu;
    Ok(half / PI / (d * d + half * half))
}

/// `(mu gamma / pi) / ((E^2 - mu^2)^2 + (mu gamma)^2)`.
pub fn bw_rel(e: f64, params: &ProfileParams) -> Result<f64> {
    ensure_finite(&[e], "energy")?;
    params.require_mu()?;
    params.require_gamma()?;
    let mg = params.mu * params.gamma;
    // (E - mu)(E + mu) avoids cancellation near the peak
    let d = (e - params.mu) * (e + params.mu);
    Ok(mg / PI / (d * d + mg * mg))
}

/// Centred normal density with standard deviation `sigma`.
pub fn gaussian(x: f64, sigma: f64) -> Result<f64> {
    ensure_finite(&[x], "x")?;
    positive("sigma", sigma)?;
    let z = x / sigma;
    Ok((-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt()))
}

pub fn reduce_nonrel(e: f64, params: &ProfileParams) -> Result<ReducedCoordsNonRel> {
    ensure_finite(&[e, params.mu, params.gamma], "energy or parameters")?;
    params.require_sigma()?;
    let s = SQRT_2 * params.sigma;
    Ok(ReducedCoordsNonRel {
        a: params.gamma / (2.0 * s),
        u: (e - params.mu) / s,
    })
}

pub fn reduce_rel(e: f64, params: &ProfileParams) -> Result<ReducedCoordsRel> {
    ensure_finite(&[e, params.mu, params.gamma], "energy or parameters")?;
    params.require_sigma()?;
    let s = SQRT_2 * params.sigma;
    Ok(ReducedCoordsRel {
        a: params.gamma * params.mu / (2.0 * params.sigma * params.sigma),
        u1: (e - params.mu) / s,
        u2: (e + params.mu) / s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_fn::{principal_sqrt, Complex};
    use crate::quadrature::{integrate_interval, integrate_whole_line, QuadratureConfig};
    use proptest::prelude::*;

    fn p(mu: f64, gamma: f64, sigma: f64) -> ProfileParams {
        ProfileParams::new(mu, gamma, sigma).unwrap()
    }

    #[test]
    fn bw_nonrel_peak_and_symmetry() {
        let q = p(0.7, 2.0, 1.0);
        assert!((bw_nonrel(0.7, &q).unwrap() - 1.0 / PI).abs() < 1e-16);
        let q = p(1.3, 0.4, 1.0);
        let (x, y) = (bw_nonrel(1.3 + 0.37, &q).unwrap(), bw_nonrel(1.3 - 0.37, &q).unwrap());
        assert!((x - y).abs() < 1e-14 * x);
    }

    #[test]
    fn bw_nonrel_is_normalized() {
        let q = p(2.0, 0.3, 1.0);
        let r = integrate_whole_line(|e| bw_nonrel(e, &q).unwrap(), &[2.0], &QuadratureConfig::oracle()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn bw_rel_peak_and_parity() {
        let q = p(1.4, 0.2, 1.0);
        let peak = bw_rel(1.4, &q).unwrap();
        assert!((peak - 1.0 / (PI * 1.4 * 0.2)).abs() < 1e-14);
        let q = p(1.0, 0.1, 1.0);
        assert_eq!(bw_rel(1.3, &q).unwrap(), bw_rel(-1.3, &q).unwrap());
    }

    #[test]
    fn bw_rel_integral() {
        // residues at E^2 = mu^2 +- i mu gamma give Re 1/sqrt(mu^2 + i mu gamma)
        let q = p(1.0, 0.5, 1.0);
        let exact = principal_sqrt(Complex::new(1.0, 0.5)).inv().re;
        let r = integrate_whole_line(|e| bw_rel(e, &q).unwrap(), &[-1.0, 1.0], &QuadratureConfig::oracle()).unwrap();
        assert!((r.value - exact).abs() < 1e-11, "{} vs {exact}", r.value);
    }

    #[test]
    fn gaussian_values() {
        assert!((gaussian(0.0, 1.0).unwrap() - 0.398_942_280_401_432_7).abs() < 1e-16);
        let ratio = gaussian(0.8, 0.8).unwrap() / gaussian(0.0, 0.8).unwrap();
        assert!((ratio - (-0.5f64).exp()).abs() < 1e-15);
        let r = integrate_interval(
            |x| gaussian(x, 0.3).unwrap(),
            -6.0,
            6.0,
            &[0.0],
            &QuadratureConfig::oracle(),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters() {
        assert!(bw_nonrel(0.0, &p(1.0, 0.0, 1.0)).is_err());
        assert!(bw_rel(0.0, &p(-1.0, 1.0, 1.0)).is_err());
        assert!(gaussian(0.0, 0.0).is_err());
        assert!(reduce_nonrel(0.0, &p(1.0, 1.0, -1.0)).is_err());
        assert!(reduce_rel(0.0, &p(1.0, 1.0, 0.0)).is_err());
        assert!(ProfileParams::new(f64::NAN, 1.0, 1.0).is_err());
        assert!(bw_nonrel(f64::INFINITY, &p(1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn nonrel_reduction() {
        let r = reduce_nonrel(3.0, &p(3.0, 2.0 * SQRT_2, 1.0)).unwrap();
        assert!((r.a - 1.0).abs() < 1e-15 && r.u == 0.0);
        let r = reduce_nonrel(SQRT_2, &p(0.0, 1.0, 1.0)).unwrap();
        assert!((r.u - 1.0).abs() < 1e-15);
        let r = reduce_nonrel(2.0, &p(1.0, 1.0, 0.5)).unwrap();
        assert!((r.a - 1.0 / SQRT_2).abs() < 1e-15);
        assert!((r.u - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn rel_reduction() {
        let r = reduce_rel(1.0, &p(1.0, 1.0, 1.0 / SQRT_2)).unwrap();
        assert!((r.a - 1.0).abs() < 1e-15);
        assert!(r.u1.abs() < 1e-15);
        assert!((r.u2 - 2.0).abs() < 1e-15);
        let r = reduce_rel(0.8, &p(0.0, 1.0, 0.4)).unwrap();
        assert_eq!(r.u1, r.u2);
        let r = reduce_rel(0.0, &p(1.7, 1.0, 0.4)).unwrap();
        assert_eq!(r.u1, -r.u2);
    }

    proptest! {
        #[test]
        fn profiles_positive(e in -50.0..50.0f64, mu in 0.01..10.0f64, g in 0.01..5.0f64) {
            let q = p(mu, g, 1.0);
            prop_assert!(bw_nonrel(e, &q).unwrap() > 0.0);
            prop_assert!(bw_rel(e, &q).unwrap() > 0.0);
        }

        #[test]
        fn rel_reduction_round_trip(
            a in 1e-3..100.0f64,
            u1 in -20.0..20.0f64,
            gap in 1e-2..30.0f64,
            sigma in 0.05..5.0f64,
        ) {
            let u2 = u1 + gap;
            let s = SQRT_2 * sigma;
            let mu = 0.5 * gap * s;
            let e = 0.5 * (u1 + u2) * s;
            let gamma = 2.0 * sigma * sigma * a / mu;
            let r = reduce_rel(e, &p(mu, gamma, sigma)).unwrap();
            prop_assert!((r.a - a).abs() <= 1e-12 * a);
            prop_assert!((r.u1 - u1).abs() <= 1e-12 * (1.0 + u1.abs()));
            prop_assert!((r.u2 - u2).abs() <= 1e-12 * (1.0 + u2.abs()));
            prop_assert!(r.u2 > r.u1 && r.a > 0.0);
        }
    }
}
