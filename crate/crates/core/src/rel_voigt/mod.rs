//! The relativistic line-broadening function `H2`, its exact pole algebra,
//! limiting regimes and the relativistic Voigt profile.

mod h2;
mod profile;
mod representations;

use std::fmt;

use crate::complex_fn::{principal_sqrt, Complex};
use crate::error::{ensure_finite, Result};

pub use h2::{
    h2, h2_degenerate_series, h2_large_u_asymptotic, h2_limit_a0, h2_quadrature, i2_closed, DEGENERATE_SERIES_MAX_A,
    LARGE_U_THRESHOLD,
};
pub use profile::{d0, d2, v2, v2_gamma0_limit};
pub use representations::{h2_integral_rep, h2_rectangle, h2_rectangle_residues, Representation};

/// Evaluation path that produced an [`EvalResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    DegenerateSeries,
    LargeUAsymptotic,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::DegenerateSeries => "degenerate_series",
            Method::LargeUAsymptotic => "large_u_asymptotic",
            Method::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value with an absolute error estimate and the path that computed it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: Method,
    /// False only when an adaptive integration hit its subdivision limit.
    pub converged: bool,
}

impl EvalResult {
    pub(crate) fn exact(value: f64, error_estimate: f64, method: Method) -> Self {
        EvalResult {
            value,
            error_estimate: error_estimate.max(0.0),
            method,
            converged: true,
        }
    }
}

/// Roots of `(t - u1)^2 (t - u2)^2 + a^2`.
///
/// `t1_plus`, `t1_minus` solve `(t - u1)(t - u2) = i a` and are
/// `(u1 + u2 +- w1) / 2`; `t2_plus`, `t2_minus` solve the conjugate equation
/// with `w2`. Both square roots are principal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSet {
    pub w1: Complex,
    pub w2: Complex,
    pub t1_plus: Complex,
    pub t1_minus: Complex,
    pub t2_plus: Complex,
    pub t2_minus: Complex,
}

impl PoleSet {
    pub fn roots(&self) -> [Complex; 4] {
        [self.t1_plus, self.t1_minus, self.t2_plus, self.t2_minus]
    }

    /// Coefficients of `prod (t - root)`, lowest degree first, leading 1
    /// omitted.
    pub fn polynomial_coefficients(&self) -> [Complex; 4] {
        expand_roots(&self.roots())
    }

    /// True when `a = 0`: the roots collapse onto the real double roots
    /// `u1, u2`.
    pub fn is_collapsed(&self) -> bool {
        self.w1 == self.w2
    }
}

pub fn pole_set(a: f64, u1: f64, u2: f64) -> Result<PoleSet> {
    ensure_finite(&[a, u1, u2], "a, u1, u2")?;
    let d = u1 - u2;
    let s = u1 + u2;
    let w1 = principal_sqrt(Complex::new(d * d, 4.0 * a));
    let w2 = principal_sqrt(Complex::new(d * d, -4.0 * a));
    Ok(PoleSet {
        w1,
        w2,
        t1_plus: (s + w1) * 0.5,
        t1_minus: (s - w1) * 0.5,
        t2_plus: (s + w2) * 0.5,
        t2_minus: (s - w2) * 0.5,
    })
}

/// Monic coefficients `[c0, c1, c2, c3]` of `prod (t - r)` over the roots.
fn expand_roots(roots: &[Complex; 4]) -> [Complex; 4] {
    let mut c = [Complex::new(0.0, 0.0); 5];
    c[0] = Complex::new(1.0, 0.0);
    // c[k] holds the coefficient of t^(4-k)
    for (n, r) in roots.iter().enumerate() {
        for k in (1..=n + 1).rev() {
            c[k] -= r * c[k - 1];
        }
    }
    [c[4], c[3], c[2], c[1]]
}

/// Coefficients of `(t - u1)^2 (t - u2)^2 + a^2`, lowest degree first,
/// leading 1 omitted.
pub fn denominator_coefficients(a: f64, u1: f64, u2: f64) -> [f64; 4] {
    let s = u1 + u2;
    let p = u1 * u2;
    [p * p + a * a, -2.0 * s * p, s * s + 2.0 * p, -2.0 * s]
}
