//! Adaptive Gauss-Kronrod quadrature.
//!
//! All integrators share one globally adaptive engine built on the 10/21
//! point Gauss-Kronrod pair: the interval with the largest error estimate is
//! bisected until the summed estimate meets `max(abs_tol, rel_tol * |I|)`.
//! Infinite ranges are handled either by truncation (Gaussian-weighted
//! integrands), by a change of variables, or, for oscillatory integrands
//! with a known frequency, by summing half-period panels and accelerating
//! the partial sums with Wynn's epsilon algorithm.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Tolerances and limits shared by every integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Half-width of the window used for integrands with `exp(-t^2)` decay.
    pub truncation_radius: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
            truncation_radius: 12.0,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize, truncation_radius: f64) -> Result<Self> {
        let config = QuadratureConfig {
            abs_tol,
            rel_tol,
            max_subdivisions,
            truncation_radius,
        };
        config.validate()?;
        Ok(config)
    }

    /// Tight settings used when quadrature serves as a reference oracle.
    pub fn oracle() -> Self {
        QuadratureConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-13,
            max_subdivisions: 10_000,
            truncation_radius: 12.0,
        }
    }

    pub fn with_tolerances(self, abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            rel_tol,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::parameter("abs_tol", "must be > 0"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::parameter("rel_tol", "must be > 0"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::parameter("max_subdivisions", "must be >= 1"));
        }
        if !(self.truncation_radius > 0.0) || !self.truncation_radius.is_finite() {
            return Err(Error::parameter("truncation_radius", "must be finite and > 0"));
        }
        Ok(())
    }

    /// Error budget for an integral of magnitude `value`.
    pub fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate.
    pub error_estimate: f64,
    pub converged: bool,
    pub evaluations: usize,
}

// 21-point Kronrod abscissae; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_463_935_815,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

type Integrand<'a> = dyn FnMut(f64) -> f64 + 'a;

fn checked(f: &mut Integrand<'_>, t: f64) -> Result<f64> {
    let v = f(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Integration { at: t })
    }
}

/// One Gauss-Kronrod 10/21 panel: `(integral, error estimate, integral of |f|)`.
fn gauss_kronrod(f: &mut Integrand<'_>, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = checked(f, center)?;
    let mut res_gauss = 0.0;
    let mut res_kronrod = WGK[10] * f_center;
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = checked(f, center - x)?;
        let f2 = checked(f, center + x)?;
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let width = half.abs();
    let result = res_kronrod * half;
    res_abs *= width;
    res_asc *= width;
    let mut err = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((result, err, res_abs))
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    magnitude: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn adaptive(f: &mut Integrand<'_>, knots: &[f64], config: &QuadratureConfig) -> Result<QuadratureResult> {
    let mut heap = BinaryHeap::with_capacity(knots.len() + 16);
    let mut evaluations = 0;
    for pair in knots.windows(2) {
        let (value, error, magnitude) = gauss_kronrod(f, pair[0], pair[1])?;
        evaluations += 21;
        heap.push(Segment {
            a: pair[0],
            b: pair[1],
            value,
            error,
            magnitude,
        });
    }
    let sums = |heap: &BinaryHeap<Segment>| heap.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
    let (mut total, mut total_err) = sums(&heap);
    let mut magnitude: f64 = heap.iter().map(|s| s.magnitude).sum();
    let mut segments = heap.len();
    // below this the estimate is rounding noise and bisection cannot help
    let floor = |m: f64| 100.0 * f64::EPSILON * m;
    while total_err > config.tolerance_for(total) && total_err > floor(magnitude) && segments < config.max_subdivisions
    {
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let (v1, e1, m1) = gauss_kronrod(f, worst.a, mid)?;
        let (v2, e2, m2) = gauss_kronrod(f, mid, worst.b)?;
        evaluations += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        magnitude += m1 + m2 - worst.magnitude;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
            magnitude: m1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
            magnitude: m2,
        });
        segments += 1;
    }
    // re-sum to shed the drift of the running totals
    let (value, error_estimate) = sums(&heap);
    let error_estimate = error_estimate.max(0.0);
    Ok(QuadratureResult {
        value,
        error_estimate,
        converged: error_estimate <= config.tolerance_for(value),
        evaluations,
    })
}

fn knots(lo: f64, hi: f64, breakpoints: &[f64]) -> Vec<f64> {
    let mut pts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|p| p.is_finite() && *p > lo && *p < hi)
        .collect();
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Integrate `f` over `[lo, hi]`, with optional interior breakpoints that
/// seed the initial subdivision.
pub fn integrate_interval<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    config: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    config.validate()?;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::NonFinite("integration bounds"));
    }
    if lo == hi {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            converged: true,
            evaluations: 0,
        });
    }
    if lo > hi {
        let mut r = integrate_interval(f, hi, lo, breakpoints, config)?;
        r.value = -r.value;
        return Ok(r);
    }
    adaptive(&mut f, &knots(lo, hi, breakpoints), config)
}

/// Integrate a function with `exp(-t^2)`-type decay over the whole real line.
pub fn integrate_real_line<F>(f: F, config: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_real_line_seeded(f, &[], config)
}

/// As [`integrate_real_line`], with seed points where the integrand has
/// narrow features.
///
/// The integral is taken over `[-R, R]`, `R = truncation_radius`. Assuming
/// `f(t) exp(t^2)` does not grow beyond `R`, each tail is bounded by
/// `|f(+-R)| / (2R)`, which is added to the error estimate.
pub fn integrate_real_line_seeded<F>(mut f: F, seeds: &[f64], config: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    config.validate()?;
    let r = config.truncation_radius;
    let mut pts = seeds.to_vec();
    pts.push(0.0);
    let mut result = adaptive(&mut f, &knots(-r, r, &pts), config)?;
    let edge = checked(&mut f, r)?.abs() + checked(&mut f, -r)?.abs();
    result.evaluations += 2;
    result.error_estimate += edge / (2.0 * r);
    result.converged = result.converged && result.error_estimate <= config.tolerance_for(result.value);
    Ok(result)
}

/// Integrate over `[0, inf)` after the substitution `x = s / (1 - s)`.
pub fn integrate_semi_infinite<F>(mut f: F, config: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    config.validate()?;
    let mut g = |s: f64| {
        let one_minus = 1.0 - s;
        let x = s / one_minus;
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v / (one_minus * one_minus)
        }
    };
    adaptive(&mut g, &[0.0, 0.5, 1.0], config)
}

/// Integrate over the whole real line for integrands with algebraic decay,
/// via `t = s / (1 - s^2)` on `(-1, 1)`.
pub fn integrate_whole_line<F>(mut f: F, breakpoints: &[f64], config: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    config.validate()?;
    let to_s = |t: f64| 2.0 * t / (1.0 + (1.0 + 4.0 * t * t).sqrt());
    let mut g = |s: f64| {
        let d = 1.0 - s * s;
        let t = s / d;
        let v = f(t);
        if v == 0.0 {
            0.0
        } else {
            v * (1.0 + s * s) / (d * d)
        }
    };
    let mapped: Vec<f64> = breakpoints.iter().map(|&t| to_s(t)).collect();
    adaptive(&mut g, &knots(-1.0, 1.0, &mapped), config)
}

/// Integrate an oscillatory integrand over `[0, inf)`.
///
/// `frequency` is the angular frequency of the oscillation and `decay` the
/// rate of the exponential envelope. The range is cut into panels of length
/// `pi / max(|frequency|, decay)`, so each panel covers at most half a period
/// and at most a factor `exp(-pi)` of decay; partial sums over the panels are
/// extrapolated with Wynn's epsilon algorithm. For `exp(-a x) cos(w x)` the
/// partial sums are a limit plus two geometric sequences, which the
/// extrapolation removes exactly.
pub fn integrate_semi_infinite_oscillatory<F>(
    mut f: F,
    frequency: f64,
    decay: f64,
    config: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    config.validate()?;
    if !frequency.is_finite() {
        return Err(Error::NonFinite("frequency"));
    }
    if !(decay >= 0.0 && decay.is_finite()) {
        return Err(Error::parameter("decay", "must be finite and >= 0"));
    }
    let scale = frequency.abs().max(decay);
    if scale == 0.0 {
        return Err(Error::parameter("frequency", "frequency and decay cannot both be 0"));
    }
    let panel = PI / scale;
    let panel_config = config.with_tolerances(0.1 * config.abs_tol, 0.1 * config.rel_tol);

    const WINDOW: usize = 32;
    let mut partial: Vec<f64> = Vec::new();
    let mut sum = 0.0;
    let mut err_sum = 0.0;
    let mut evaluations = 0;
    let mut history = [f64::NAN; 3];
    let mut largest_sum: f64 = 0.0;
    for k in 0..config.max_subdivisions.max(4) {
        let lo = k as f64 * panel;
        let r = adaptive(&mut f, &[lo, lo + panel], &panel_config)?;
        evaluations += r.evaluations;
        sum += r.value;
        err_sum += r.error_estimate;
        partial.push(sum);
        largest_sum = largest_sum.max(sum.abs());
        let start = partial.len().saturating_sub(WINDOW);
        let estimate = wynn_epsilon(&partial[start..]);
        history = [history[1], history[2], estimate];
        if k >= 3 {
            let drift = (history[2] - history[1]).abs().max((history[1] - history[0]).abs());
            let tail_small = r.value.abs() + r.error_estimate <= 1e-3 * config.tolerance_for(sum);
            if tail_small && (sum - estimate).abs() <= config.tolerance_for(sum) {
                let error_estimate = err_sum + (sum - estimate).abs();
                return Ok(QuadratureResult {
                    value: sum,
                    error_estimate,
                    converged: error_estimate <= config.tolerance_for(sum),
                    evaluations,
                });
            }
            // extrapolation amplifies the rounding noise of the partial sums
            let noise = 64.0 * f64::EPSILON * largest_sum;
            if drift <= (0.1 * config.tolerance_for(estimate)).max(noise) {
                let error_estimate = err_sum + drift;
                return Ok(QuadratureResult {
                    value: estimate,
                    error_estimate,
                    converged: error_estimate <= config.tolerance_for(estimate),
                    evaluations,
                });
            }
        }
    }
    let estimate = history[2];
    Ok(QuadratureResult {
        value: estimate,
        error_estimate: err_sum + (history[2] - history[1]).abs(),
        converged: false,
        evaluations,
    })
}

/// Wynn's epsilon extrapolation of a sequence of partial sums. Returns the
/// last entry of the deepest even column that could be formed.
fn wynn_epsilon(sums: &[f64]) -> f64 {
    let n = sums.len();
    let mut best = sums[n - 1];
    let mut previous = vec![0.0; n + 1];
    let mut current = sums.to_vec();
    let mut column = 0usize;
    while current.len() >= 2 {
        let mut next = Vec::with_capacity(current.len() - 1);
        for j in 0..current.len() - 1 {
            let diff = current[j + 1] - current[j];
            let v = previous[j + 1] + 1.0 / diff;
            if diff == 0.0 || !v.is_finite() {
                return best;
            }
            next.push(v);
        }
        previous = current;
        current = next;
        column += 1;
        if column.is_multiple_of(2) {
            best = *current.last().unwrap();
        }
    }
    best
}
