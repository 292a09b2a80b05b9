use std::f64::consts::{E, PI};
use std::io::Write;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::CliError;
use crate::complex_fn::{faddeeva_w, Complex};
use crate::error::Result;
use crate::profiles::ProfileParams;
use crate::quadrature::{integrate_real_line_seeded, integrate_whole_line, QuadratureConfig};
use crate::rel_voigt::{
    d0, d2, h2, h2_degenerate_series, h2_integral_rep, h2_large_u_asymptotic, h2_quadrature, h2_rectangle, i2_closed,
    v2, v2_gamma0_limit, Representation,
};
use crate::voigt::{h0, h0_laplace_rep};
use crate::Side;

const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Symmetry,
    Oracle,
    Representations,
    Limits,
    All,
}

/// How a check's deviation is measured against its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Absolute,
    Relative,
    /// `|x - y| / max(1, |y|)`: absolute below 1, relative above.
    Mixed,
    /// A dimensionless ratio, e.g. successive deviations along a limit.
    Ratio,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub name: &'static str,
    pub suite: &'static str,
    pub grid_size: usize,
    pub max_abs_deviation: f64,
    pub max_rel_deviation: f64,
    pub metric: Metric,
    /// Largest deviation under `metric`.
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Default)]
struct Deviations {
    n: usize,
    abs: f64,
    rel: f64,
    mixed: f64,
}

impl Deviations {
    fn push(&mut self, got: f64, want: f64) {
        self.n += 1;
        let d = (got - want).abs();
        let d = if d.is_nan() { f64::INFINITY } else { d };
        self.abs = self.abs.max(d);
        self.rel = self.rel.max(d / want.abs());
        self.mixed = self.mixed.max(d / want.abs().max(1.0));
    }

    fn push_result(&mut self, got: Result<f64>, want: Result<f64>) {
        match (got, want) {
            (Ok(g), Ok(w)) => self.push(g, w),
            _ => self.push(f64::INFINITY, 0.0),
        }
    }

    fn merge(mut self, other: Deviations) -> Self {
        self.n += other.n;
        self.abs = self.abs.max(other.abs);
        self.rel = self.rel.max(other.rel);
        self.mixed = self.mixed.max(other.mixed);
        self
    }

    fn report(self, suite: &'static str, name: &'static str, metric: Metric, tolerance: f64) -> VerifyReport {
        let deviation = match metric {
            Metric::Absolute => self.abs,
            Metric::Relative => self.rel,
            Metric::Mixed => self.mixed,
            Metric::Ratio => unreachable!("ratio checks build their report directly"),
        };
        VerifyReport {
            name,
            suite,
            grid_size: self.n,
            max_abs_deviation: self.abs,
            max_rel_deviation: self.rel,
            metric,
            deviation,
            tolerance,
            passed: deviation <= tolerance,
        }
    }
}

fn ratio_report(suite: &'static str, name: &'static str, n: usize, ratio: f64, tolerance: f64) -> VerifyReport {
    let ratio = if ratio.is_nan() { f64::INFINITY } else { ratio };
    VerifyReport {
        name,
        suite,
        grid_size: n,
        max_abs_deviation: f64::NAN,
        max_rel_deviation: f64::NAN,
        metric: Metric::Ratio,
        deviation: ratio,
        tolerance,
        passed: ratio <= tolerance,
    }
}

/// Largest ratio of successive terms; below 1 means strictly shrinking.
fn max_successive_ratio(seq: &[f64]) -> f64 {
    seq.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max)
}

fn value(r: Result<crate::rel_voigt::EvalResult>) -> Result<f64> {
    r.map(|r| r.value)
}

fn symmetry() -> Vec<VerifyReport> {
    const S: &str = "symmetry";
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let points: Vec<(f64, f64, f64)> = (0..500)
        .map(|_| {
            (
                10f64.powf(rng.gen_range(-3.0..1.0)),
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
            )
        })
        .collect();
    let check = |f: &dyn Fn(f64, f64, f64) -> (Result<f64>, Result<f64>)| {
        let mut d = Deviations::default();
        for &(a, u1, u2) in &points {
            let (x, y) = f(a, u1, u2);
            d.push_result(x, y);
        }
        d
    };
    let h = |a, u1, u2| value(h2(a, u1, u2));
    vec![
        check(&|a, u1, u2| (h(a, u1, u2), h(a, u2, u1))).report(S, "h2 exchange u1 <-> u2", Metric::Mixed, 1e-12),
        check(&|a, u1, u2| (h(a, -u1, -u2), h(a, u1, u2))).report(S, "h2 reflection u -> -u", Metric::Mixed, 1e-12),
        check(&|a, u1, u2| (h(-a, u1, u2), h(a, u1, u2).map(|v| -v))).report(S, "h2 odd in a", Metric::Mixed, 1e-12),
        check(&|a, u1, u2| (h(a, -u1, u2), h(a, u1, -u2))).report(S, "h2 mixed sign flip", Metric::Mixed, 1e-12),
        check(&|a, u, _| (h0(a, -u), h0(a, u))).report(S, "h0 even in u", Metric::Mixed, 1e-12),
        check(&|a, u, _| (h0(-a, u), h0(a, u).map(|v| -v))).report(S, "h0 odd in a", Metric::Mixed, 1e-12),
    ]
}

fn oracle() -> Vec<VerifyReport> {
    const S: &str = "oracle";
    let config = QuadratureConfig::oracle();
    let mut grid = Vec::new();
    for a in [1e-3, 1e-2, 0.1, 1.0, 10.0] {
        for i in 0..41 {
            for j in 0..41 {
                grid.push((a, -10.0 + 0.5 * i as f64, -10.0 + 0.5 * j as f64));
            }
        }
    }
    let h2_dev = grid
        .par_iter()
        .map(|&(a, u1, u2)| {
            let mut d = Deviations::default();
            d.push_result(value(h2(a, u1, u2)), value(h2_quadrature(a, u1, u2, &config)));
            d
        })
        .reduce(Deviations::default, Deviations::merge);

    let mut h0_dev = Deviations::default();
    for k in -3..=1 {
        let a = 10f64.powi(k);
        for j in 0..=64 {
            let u = -8.0 + 0.25 * j as f64;
            let q = integrate_real_line_seeded(
                |t| a / PI * (-t * t).exp() / ((u - t) * (u - t) + a * a),
                &[u - a, u, u + a],
                &config,
            )
            .map(|r| r.value);
            h0_dev.push_result(h0(a, u), q);
        }
    }

    let mut i2_dev = Deviations::default();
    let us = [-2.0, 0.0, 1.0, 3.0];
    for a in [0.1, 1.0] {
        for &u1 in &us {
            for &u2 in &us {
                let q = integrate_whole_line(
                    |t| {
                        let p = (t - u1) * (t - u2);
                        a / PI / (p * p + a * a)
                    },
                    &[u1, u2],
                    &config,
                )
                .map(|r| r.value);
                i2_dev.push_result(i2_closed(a, u1, u2), q);
            }
        }
    }

    let mut w_dev = Deviations::default();
    for i in 0..16 {
        for j in 0..12 {
            let z = Complex::new(-4.9 + 9.8 * i as f64 / 15.0, 0.1 + 0.4 * j as f64);
            if z.norm() > 5.0 {
                continue;
            }
            let kernel = |t: f64| (-t * t).exp() / (z - t) / PI;
            let seeds = [z.re - z.im, z.re, z.re + z.im];
            // w(z) = (i/pi) Int exp(-t^2)/(z - t) dt
            let re = integrate_real_line_seeded(|t| -kernel(t).im, &seeds, &config);
            let im = integrate_real_line_seeded(|t| kernel(t).re, &seeds, &config);
            match (faddeeva_w(z), re, im) {
                (Ok(w), Ok(re), Ok(im)) => {
                    w_dev.push(w.re, re.value);
                    w_dev.push(w.im, im.value);
                }
                _ => w_dev.push(f64::INFINITY, 0.0),
            }
        }
    }

    vec![
        h2_dev.report(S, "h2 closed form vs quadrature", Metric::Mixed, 1e-8),
        h0_dev.report(S, "h0 closed form vs quadrature", Metric::Absolute, 1e-9),
        i2_dev.report(S, "i2 closed form vs quadrature", Metric::Absolute, 1e-9),
        w_dev.report(S, "w(z) vs Cauchy integral", Metric::Absolute, 1e-9),
    ]
}

fn representations() -> Vec<VerifyReport> {
    const S: &str = "representations";
    let config = QuadratureConfig::default().with_tolerances(1e-12, 1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let points: Vec<(f64, f64, f64)> = (0..50)
        .map(|_| {
            (
                rng.gen_range(0.1..5.0),
                rng.gen_range(-4.0..4.0),
                rng.gen_range(-4.0..4.0),
            )
        })
        .collect();
    let values: Vec<[Result<f64>; 4]> = points
        .par_iter()
        .map(|&(a, u1, u2)| {
            [
                value(h2(a, u1, u2)),
                value(h2_rectangle(a, u1, u2, None, &config)),
                value(h2_integral_rep(a, u1, u2, Representation::Double, &config)),
                value(h2_integral_rep(a, u1, u2, Representation::SingleComplex, &config)),
            ]
        })
        .collect();
    let names = [
        [
            "",
            "h2 vs rectangle contour",
            "h2 vs double integral",
            "h2 vs single complex integral",
        ],
        [
            "",
            "",
            "rectangle vs double integral",
            "rectangle vs single complex integral",
        ],
        ["", "", "", "double vs single complex integral"],
    ];
    let mut reports = Vec::new();
    for i in 0..3 {
        for j in i + 1..4 {
            let mut d = Deviations::default();
            for v in &values {
                d.push_result(v[i].clone(), v[j].clone());
            }
            reports.push(d.report(S, names[i][j], Metric::Mixed, 1e-6));
        }
    }
    let mut d = Deviations::default();
    for k in 0..10 {
        let a = 0.2 + 0.4 * k as f64;
        let u = -3.0 + 0.7 * k as f64;
        d.push_result(value(h0_laplace_rep(a, u, &config)), h0(a, u));
    }
    reports.push(d.report(S, "h0 vs Laplace representation", Metric::Absolute, 1e-9));
    reports
}

fn limits() -> Vec<VerifyReport> {
    const S: &str = "limits";
    let oracle = QuadratureConfig::oracle();
    let mut reports = Vec::new();

    let mut d = Deviations::default();
    d.push_result(value(h2(1e-6, 1.0, 0.0)), Ok(1.0 + 1.0 / E));
    d.push_result(value(h2(1e-6, 1.0, -1.0)), Ok(1.0 / E));
    reports.push(d.report(S, "h2(1e-6, u1, u2) near one-sided limit", Metric::Absolute, 5e-3));

    let mut n = 0;
    let mut worst: f64 = 0.0;
    for (u1, u2) in [(1.0f64, 0.0f64), (1.0, -1.0), (0.5, 2.0), (-3.0, 0.2)] {
        let limit = ((-u1 * u1).exp() + (-u2 * u2).exp()) / (u1 - u2).abs();
        let devs: Vec<f64> = [0.1, 0.01, 1e-3, 1e-4]
            .iter()
            .map(|&a| value(h2(a, u1, u2)).map_or(f64::INFINITY, |v| (v - limit).abs()))
            .collect();
        n += devs.len();
        worst = worst.max(max_successive_ratio(&devs));
    }
    reports.push(ratio_report(S, "h2 approach to a -> 0+ limit", n, worst, 0.9));

    let mut d = Deviations::default();
    for u in [0.0, 1.0, 2.0] {
        d.push_result(h0(1e-6, u), Ok((-u * u).exp()));
    }
    reports.push(d.report(S, "h0(1e-6, u) near exp(-u^2)", Metric::Absolute, 5e-3));

    let mut d = Deviations::default();
    d.push_result(i2_closed(1e-8, 1.0, 0.0), Ok(2.0));
    reports.push(d.report(S, "i2(1e-8, 1, 0) near 2/|u1 - u2|", Metric::Absolute, 1e-6));

    let mut d = Deviations::default();
    let mut growth = Deviations::default();
    for a in [1e-4, 1e-5] {
        for u in [0.0, 1.0] {
            let q = value(h2_quadrature(a, u, u, &oracle));
            d.push_result(value(h2_degenerate_series(a, u)), q.clone());
            let ratio = value(h2_quadrature(a / 4.0, u, u, &oracle)).and_then(|x| q.map(|y| x / y));
            growth.push_result(ratio, Ok(2.0));
        }
    }
    reports.push(d.report(S, "degenerate series vs quadrature", Metric::Relative, 1e-3));
    reports.push(growth.report(S, "degenerate growth H2(a/4)/H2(a) = 2", Metric::Relative, 1e-2));

    let mut d = Deviations::default();
    d.push_result(
        value(h2(1.0, 20.0, 30.0)),
        value(h2_large_u_asymptotic(1.0, 20.0, 30.0)),
    );
    reports.push(d.report(S, "h2(1, 20, 30) vs large-u form", Metric::Relative, 1e-2));

    let mut worst: f64 = 0.0;
    let large = [
        (1.0, 20.0, 30.0),
        (1.0, 40.0, 60.0),
        (1.0, 80.0, 120.0),
        (0.5, -25.0, 35.0),
        (3.0, 50.0, -20.0),
    ];
    for &(a, u1, u2) in &large {
        worst = worst.max(match (h2(a, u1, u2), h2_large_u_asymptotic(a, u1, u2)) {
            (Ok(x), Ok(y)) => (x.value - y.value).abs() / y.error_estimate,
            _ => f64::INFINITY,
        });
    }
    reports.push(ratio_report(
        S,
        "large-u form within its error estimate",
        large.len(),
        worst,
        1.0,
    ));

    let mut d = Deviations::default();
    for (gamma, mu) in [(0.5, 1.0), (0.1, 2.0), (3.0, 0.3)] {
        d.push_result(d0(0.0, gamma, mu), Ok(1.0));
        d.push_result(d2(0.0, gamma, mu), Ok(1.0));
    }
    reports.push(d.report(S, "d0(0) = d2(0) = 1", Metric::Absolute, 0.0));

    let mut d = Deviations::default();
    for (mu, gamma) in [(1.0, 0.5), (2.0, 0.1)] {
        let got = ProfileParams::new(mu, gamma, gamma / 100.0).and_then(|p| v2(mu, &p));
        d.push_result(got, Ok(1.0 / (PI * mu * gamma)));
    }
    reports.push(d.report(S, "v2(mu) at sigma = gamma/100", Metric::Relative, 1e-2));

    let limit = v2_gamma0_limit(1.2, 1.0, 0.5, Side::Plus);
    let devs: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(
            |&g| match (ProfileParams::new(1.0, g, 0.5).and_then(|p| v2(1.2, &p)), &limit) {
                (Ok(v), Ok(l)) => (v - l).abs(),
                _ => f64::INFINITY,
            },
        )
        .collect();
    reports.push(ratio_report(
        S,
        "v2 approach to gamma -> 0 limit",
        devs.len(),
        max_successive_ratio(&devs),
        0.9,
    ));

    // analytic phi with no poles near the real axis
    let (a, u1, u2): (f64, f64, f64) = (1e-5, 1.0, -1.0);
    let phi = |t: f64| 1.0 / (t * t + 25.0);
    let w = (a / (u1 - u2).abs()).min(a.sqrt());
    let q = integrate_whole_line(
        |t| {
            let p = (t - u1) * (t - u2);
            a / PI * phi(t) / (p * p + a * a)
        },
        &[u1 - w, u1, u1 + w, u2 - w, u2, u2 + w],
        &oracle,
    )
    .map(|r| r.value);
    let mut d = Deviations::default();
    d.push_result(q, Ok((phi(u1) + phi(u2)) / (u1 - u2).abs()));
    reports.push(d.report(S, "small-a limit for analytic weight", Metric::Relative, 1e-3));

    let mut d = Deviations::default();
    for sep in [10.0, 20.0] {
        d.push_result(value(h2(1e-8, -0.5 * sep, 0.5 * sep)), Ok(0.0));
    }
    reports.push(d.report(S, "h2 vanishes at large separation", Metric::Absolute, 1e-6));

    reports
}

/// Run one suite (or all) and return its reports.
pub fn run_suite(suite: Suite) -> Vec<VerifyReport> {
    match suite {
        Suite::Symmetry => symmetry(),
        Suite::Oracle => oracle(),
        Suite::Representations => representations(),
        Suite::Limits => limits(),
        Suite::All => [symmetry(), oracle(), representations(), limits()].concat(),
    }
}

pub(super) fn cmd_verify(
    suite: Suite,
    tolerance: Option<f64>,
    json: bool,
    out: &mut dyn Write,
) -> std::result::Result<(), CliError> {
    let mut reports = run_suite(suite);
    if let Some(t) = tolerance {
        for r in &mut reports {
            r.tolerance = t;
            r.passed = r.deviation <= t;
        }
    }
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&reports).map_err(std::io::Error::other)?
        )?;
    } else {
        writeln!(
            out,
            "{:<16} {:<44} {:>6} {:>10} {:>10} {:>8} {:>10} {:>10}  result",
            "suite", "check", "points", "max_abs", "max_rel", "metric", "deviation", "tolerance"
        )?;
        let cell = |x: f64| {
            if x.is_nan() {
                "-".to_string()
            } else {
                format!("{x:.3e}")
            }
        };
        for r in &reports {
            let metric = match r.metric {
                Metric::Absolute => "abs",
                Metric::Relative => "rel",
                Metric::Mixed => "mixed",
                Metric::Ratio => "ratio",
            };
            writeln!(
                out,
                "{:<16} {:<44} {:>6} {:>10} {:>10} {:>8} {:>10.3e} {:>10.3e}  {}",
                r.suite,
                r.name,
                r.grid_size,
                cell(r.max_abs_deviation),
                cell(r.max_rel_deviation),
                metric,
                r.deviation,
                r.tolerance,
                if r.passed { "PASS" } else { "FAIL" }
            )?;
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::Verification(failed));
    }
    Ok(())
}
