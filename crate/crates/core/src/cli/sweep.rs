use std::collections::BTreeMap;
use std::io::Write;

use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::{CliError, Function, SweepArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

/// A validated one-parameter grid for one function.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub function: Function,
    pub fixed: BTreeMap<String, f64>,
    pub axis: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub scale: Scale,
}

/// One grid point: the axis value and either a result or an error name.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub value: Option<f64>,
    pub error_estimate: Option<f64>,
    pub error: Option<&'static str>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), String> {
        let params = self.function.params();
        if !params.contains(&self.axis.as_str()) {
            return Err(format!("{} has no parameter `{}`", self.function.name(), self.axis));
        }
        if self.fixed.contains_key(&self.axis) {
            return Err(format!("axis `{}` is also fixed", self.axis));
        }
        for name in self.fixed.keys() {
            if !params.contains(&name.as_str()) {
                return Err(format!("{} has no parameter `{name}`", self.function.name()));
            }
        }
        for p in params {
            if *p != self.axis && !self.fixed.contains_key(*p) {
                return Err(format!("missing --fixed {p}=VALUE"));
            }
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start >= self.stop {
            return Err("require finite start < stop".into());
        }
        if self.steps < 2 {
            return Err("require steps >= 2".into());
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return Err("log scale requires start > 0".into());
        }
        Ok(())
    }

    /// Grid points; the end points are exactly `start` and `stop`.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == n {
                    return self.stop;
                }
                let f = i as f64 / n as f64;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * f,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * f).exp(),
                }
            })
            .collect()
    }

    /// Evaluate every grid point; rows come back in grid order.
    pub fn run(&self) -> Vec<SweepRow> {
        let names = self.function.params();
        self.grid()
            .into_par_iter()
            .map(|x| {
                let args: Vec<f64> = names
                    .iter()
                    .map(|n| if *n == self.axis { x } else { self.fixed[*n] })
                    .collect();
                match self.function.evaluate(&args) {
                    Ok(r) => SweepRow {
                        x,
                        value: Some(r.value),
                        error_estimate: r.error_estimate,
                        error: None,
                    },
                    Err(e) => SweepRow {
                        x,
                        value: None,
                        error_estimate: None,
                        error: Some(e.name()),
                    },
                }
            })
            .collect()
    }
}

fn parse_fixed(items: &[String]) -> Result<BTreeMap<String, f64>, String> {
    let mut fixed = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("--fixed expects NAME=VALUE, got `{item}`"))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse value in `{item}`"))?;
        let k = k.trim();
        let k = if k == "energy" { "e" } else { k };
        if fixed.insert(k.to_string(), v).is_some() {
            return Err(format!("parameter `{k}` fixed more than once"));
        }
    }
    Ok(fixed)
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub(super) fn write_csv(spec: &SweepSpec, rows: &[SweepRow], out: &mut dyn Write) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record([spec.axis.as_str(), "value", "error_estimate", "error"])?;
    for r in rows {
        w.write_record([
            sci(r.x),
            r.value.map(sci).unwrap_or_default(),
            r.error_estimate.map(sci).unwrap_or_default(),
            r.error.unwrap_or_default().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub(super) fn cmd_sweep(args: &SweepArgs, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = SweepSpec {
        function: args.function,
        fixed: parse_fixed(&args.fixed).map_err(CliError::Usage)?,
        axis: if args.axis == "energy" {
            "e".into()
        } else {
            args.axis.clone()
        },
        start: args.start,
        stop: args.stop,
        steps: args.steps,
        scale: args.scale,
    };
    spec.validate().map_err(CliError::Usage)?;
    let rows = spec.run();
    if json {
        let fixed: Map<String, Value> = spec.fixed.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    spec.axis.as_str(): r.x,
                    "value": r.value,
                    "error_estimate": r.error_estimate,
                    "error": r.error,
                })
            })
            .collect();
        let doc = json!({
            "function": spec.function.name(),
            "axis": spec.axis,
            "scale": match spec.scale { Scale::Linear => "linear", Scale::Log => "log" },
            "fixed": fixed,
            "rows": rows,
        });
        writeln!(out, "{doc}")?;
    } else {
        write_csv(&spec, &rows, out).map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            other => CliError::Io(std::io::Error::other(format!("{other:?}"))),
        })?;
    }
    Ok(())
}
