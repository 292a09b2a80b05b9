//! Complex error-function family.
//!
//! The Faddeeva function `w(z) = exp(-z^2) erfc(-iz)` is evaluated in the
//! upper half-plane by one of three schemes, chosen by region:
//!
//! * `|z| < 0.5`: Taylor series `sum (iz)^n / Gamma(n/2 + 1)`.
//! * large `|z|` (or far from the real axis): the Laplace continued fraction,
//!   evaluated forward with the modified Lentz algorithm.
//! * everywhere else: the exponentially convergent sum of Zaghloul and Ali
//!   (ACM TOMS Algorithm 916), which stays accurate close to the real axis
//!   where the continued fraction converges slowly.
//!
//! The lower half-plane follows from `w(z) = 2 exp(-z^2) - w(-z)` with the
//! exponential formed in log-scaled arithmetic.

use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use crate::error::{ensure_finite, Error, Result};

pub type Complex = num_complex::Complex64;

pub(crate) const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_286_948_079_451_560_772_6;

// Step of the exponential sum: pi / sqrt(-ln(eps / 2)).
const SUM_STEP: f64 = 0.518_321_480_430_086;

const SERIES_RADIUS_SQ: f64 = 0.25;
const ASYMPTOTIC_CUTOFF: f64 = 1.0e7;
const MAX_CF_TERMS: usize = 10_000;
const LN_MAX: f64 = 709.782_712_893_384;

/// Which evaluation scheme produced a Faddeeva value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaddeevaRegion {
    PowerSeries,
    ExponentialSum,
    ContinuedFraction,
}

/// A Faddeeva value together with the scheme that computed it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaddeevaEval {
    pub value: Complex,
    pub region: FaddeevaRegion,
    /// `true` when `z` was in the lower half-plane and the value was obtained
    /// from `w(-z)` by reflection.
    pub reflected: bool,
}

/// Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
pub fn faddeeva_w(z: Complex) -> Result<Complex> {
    faddeeva_w_diagnostic(z).map(|e| e.value)
}

/// Faddeeva function, also reporting the evaluation region.
pub fn faddeeva_w_diagnostic(z: Complex) -> Result<FaddeevaEval> {
    ensure_finite(&[z.re, z.im], "faddeeva_w argument")?;
    let eval = if z.im >= 0.0 {
        let (value, region) = w_upper(z);
        FaddeevaEval {
            value,
            region,
            reflected: false,
        }
    } else {
        let (mirror, region) = w_upper(-z);
        let minus_z_sq = Complex::new((z.im - z.re) * (z.im + z.re), -2.0 * z.re * z.im);
        let value = exp_mul(minus_z_sq, Complex::new(2.0, 0.0))? - mirror;
        FaddeevaEval {
            value,
            region,
            reflected: true,
        }
    };
    if eval.value.re.is_finite() && eval.value.im.is_finite() {
        Ok(eval)
    } else {
        Err(Error::Overflow("faddeeva_w"))
    }
}

/// Complementary error function of a complex argument.
pub fn erfc_complex(z: Complex) -> Result<Complex> {
    ensure_finite(&[z.re, z.im], "erfc argument")?;
    if z.re >= 0.0 {
        // erfc(z) = exp(-z^2) w(iz), and iz lies in the closed upper half-plane.
        let w = faddeeva_w(Complex::new(-z.im, z.re))?;
        let minus_z_sq = Complex::new((z.im - z.re) * (z.im + z.re), -2.0 * z.re * z.im);
        exp_mul(minus_z_sq, w)
    } else {
        Ok(Complex::new(2.0, 0.0) - erfc_complex(-z)?)
    }
}

/// `exp(-z^2) erfc(-iz)`, the product appearing in every closed form.
///
/// Always computed as a single Faddeeva evaluation; the two factors are never
/// formed separately.
pub fn scaled_wofz_term(z: Complex) -> Result<Complex> {
    faddeeva_w(z)
}

/// Principal square root, argument in `(-pi/2, pi/2]`.
pub fn principal_sqrt(z: Complex) -> Complex {
    let (x, y) = (z.re, z.im);
    if x == 0.0 && y == 0.0 {
        return Complex::new(0.0, y);
    }
    let t = (0.5 * (x.abs() + x.hypot(y))).sqrt();
    if x >= 0.0 {
        Complex::new(t, y / (2.0 * t))
    } else {
        Complex::new(y.abs() / (2.0 * t), t.copysign(y))
    }
}

/// `1/z` by Smith's algorithm (no intermediate overflow for large `|z|`).
pub(crate) fn recip(z: Complex) -> Complex {
    if z.re.abs() >= z.im.abs() {
        let r = z.im / z.re;
        let den = z.re + z.im * r;
        Complex::new(1.0 / den, -r / den)
    } else {
        let r = z.re / z.im;
        let den = z.re * r + z.im;
        Complex::new(r / den, -1.0 / den)
    }
}

/// `exp(e) * v`, falling back to log-scaled arithmetic when `exp(e.re)` alone
/// would overflow.
pub(crate) fn exp_mul(e: Complex, v: Complex) -> Result<Complex> {
    if e.re < 700.0 {
        return Ok(e.exp() * v);
    }
    let norm = v.norm();
    if norm == 0.0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    let log_mag = e.re + norm.ln();
    if log_mag > LN_MAX {
        return Err(Error::Overflow("exp(-z^2) factor"));
    }
    Ok(Complex::from_polar(log_mag.exp(), e.im + v.arg()))
}

fn w_upper(z: Complex) -> (Complex, FaddeevaRegion) {
    let x = z.re.abs();
    let y = z.im;
    let (w, region) = if x * x + y * y < SERIES_RADIUS_SQ {
        (w_series(Complex::new(x, y)), FaddeevaRegion::PowerSeries)
    } else if y > 7.0 || (x > 6.0 && (y > 0.1 || (x > 8.0 && y > 1e-10) || x > 28.0)) {
        (
            w_continued_fraction(Complex::new(x, y)),
            FaddeevaRegion::ContinuedFraction,
        )
    } else {
        (w_exponential_sum(x, y), FaddeevaRegion::ExponentialSum)
    };
    // w(-conj z) = conj w(z)
    if z.re < 0.0 {
        (w.conj(), region)
    } else {
        (w, region)
    }
}

fn w_series(z: Complex) -> Complex {
    let iz = Complex::new(-z.im, z.re);
    let mut power = Complex::new(1.0, 0.0);
    let mut inv_gamma_even = 1.0;
    let mut inv_gamma_odd = FRAC_2_SQRT_PI;
    let mut sum = Complex::new(0.0, 0.0);
    for n in 0..64usize {
        let k = (n / 2) as f64;
        let term = if n % 2 == 0 {
            let t = power * inv_gamma_even;
            inv_gamma_even /= k + 1.0;
            t
        } else {
            let t = power * inv_gamma_odd;
            inv_gamma_odd /= k + 1.5;
            t
        };
        sum += term;
        if n > 2 && term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        power *= iz;
    }
    sum
}

fn w_continued_fraction(z: Complex) -> Complex {
    let i_over_sqrt_pi = Complex::new(0.0, FRAC_1_SQRT_PI);
    if z.re + z.im > ASYMPTOTIC_CUTOFF {
        // Two-term truncation: i/(sqrt(pi) z) * (1 + 1/(2 z^2)).
        let inv = recip(z);
        return i_over_sqrt_pi * inv * (Complex::new(1.0, 0.0) + inv * inv * 0.5);
    }

    const TINY: f64 = 1e-300;
    let tiny = Complex::new(TINY, 0.0);
    let mut f = z;
    let mut c = z;
    let mut d = Complex::new(0.0, 0.0);
    for k in 1..=MAX_CF_TERMS {
        let ak = -0.5 * k as f64;
        d = z + d * ak;
        if d.norm_sqr() == 0.0 {
            d = tiny;
        }
        c = z + recip(c) * ak;
        if c.norm_sqr() == 0.0 {
            c = tiny;
        }
        d = recip(d);
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    i_over_sqrt_pi * recip(f)
}

/// Exponential-sum representation for `x >= 0`, `0 <= y <= 7`.
fn w_exponential_sum(x: f64, y: f64) -> Complex {
    let a = SUM_STEP;
    let c = 2.0 * a / PI;

    let mut sum1 = 0.0;
    // sum2 + sum3 and sum5 - sum4 of the original formulation
    let mut sum_even = 0.0;
    let mut sum_odd = 0.0;
    let n_max = ((x + 6.5) / a).ceil() as usize;
    for n in 1..=n_max {
        let an = a * n as f64;
        let den = an * an + y * y;
        let base = (-(an * an) - x * x).exp();
        let plus = (-(an - x) * (an - x)).exp();
        let minus = (-(an + x) * (an + x)).exp();
        sum1 += base / den;
        sum_even += (plus + minus) / den;
        let twice_anx = 2.0 * an * x;
        let diff = if twice_anx < 0.5 {
            2.0 * base * twice_anx.sinh()
        } else {
            plus - minus
        };
        sum_odd += an * diff / den;
    }

    let exp_x2 = (-x * x).exp();
    let lead = exp_x2 * erfcx_nonneg(y) - c * y * sum1;
    let xy = x * y;
    let (sin_xy, _) = xy.sin_cos();
    let (sin_2xy, cos_2xy) = (2.0 * xy).sin_cos();
    let sinc_xy = if xy == 0.0 { 1.0 } else { sin_xy / xy };
    let sinc_2xy = if xy == 0.0 { 1.0 } else { sin_2xy / (2.0 * xy) };

    let re = lead * cos_2xy + c * x * exp_x2 * sin_xy * sinc_xy + 0.5 * c * y * sum_even;
    let im = c * x * exp_x2 * sinc_2xy - lead * sin_2xy + 0.5 * c * sum_odd;
    Complex::new(re, im)
}

/// Scaled complementary error function `exp(y^2) erfc(y)` for real `y >= 0`.
pub(crate) fn erfcx_nonneg(y: f64) -> f64 {
    debug_assert!(y >= 0.0);
    if y < 1.5 {
        (y * y).exp() * libm::erfc(y)
    } else {
        // 1/sqrt(pi) / (y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))
        const TINY: f64 = 1e-300;
        let mut f = y;
        let mut c = y;
        let mut d = 0.0;
        for k in 1..=MAX_CF_TERMS {
            let ak = 0.5 * k as f64;
            d = y + ak * d;
            if d == 0.0 {
                d = TINY;
            }
            c = y + ak / c;
            if c == 0.0 {
                c = TINY;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        FRAC_1_SQRT_PI / f
    }
}
