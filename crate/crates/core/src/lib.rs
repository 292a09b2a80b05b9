//! Classical and relativistic Voigt profiles.
//!
//! The relativistic Voigt profile is the convolution of the relativistic
//! Breit-Wigner density with a Gaussian resolution kernel. Everything is
//! reduced to the dimensionless line-broadening functions
//!
//! ```text
//! H0(a, u)      = a/pi * Int exp(-t^2) / ((u - t)^2 + a^2) dt
//! H2(a, u1, u2) = a/pi * Int exp(-t^2) / ((u1 - t)^2 (u2 - t)^2 + a^2) dt
//! ```
//!
//! which are evaluated in closed form through the Faddeeva function and
//! cross-checked against adaptive quadrature of their defining integrals
//! and of several alternative integral representations.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference constants keep the digits they were published or computed with
#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod complex_fn;
pub mod error;
pub mod profiles;
pub mod quadrature;
pub mod rel_voigt;
pub mod voigt;

pub use complex_fn::{erfc_complex, faddeeva_w, scaled_wofz_term, Complex};
pub use error::{Error, Result};
pub use profiles::{ProfileParams, ReducedCoordsNonRel, ReducedCoordsRel};
pub use quadrature::{QuadratureConfig, QuadratureResult};
pub use rel_voigt::{EvalResult, Method, PoleSet};

/// Which side a one-sided limit is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}
