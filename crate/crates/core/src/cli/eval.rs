use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use super::{CliError, EvalArgs};
use crate::error::Result;
use crate::profiles::ProfileParams;
use crate::rel_voigt::{d0, d2, h2, i2_closed, v2, Method};
use crate::voigt::{h0, v0};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    H0,
    H2,
    V0,
    V2,
    D0,
    D2,
    I2,
}

/// A function value, with error estimate and method where the library
/// reports them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub error_estimate: Option<f64>,
    pub method: Option<Method>,
}

impl Evaluation {
    fn plain(value: f64) -> Self {
        Evaluation {
            value,
            error_estimate: None,
            method: None,
        }
    }
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::H0 => "h0",
            Function::H2 => "h2",
            Function::V0 => "v0",
            Function::V2 => "v2",
            Function::D0 => "d0",
            Function::D2 => "d2",
            Function::I2 => "i2",
        }
    }

    /// Parameter names in call order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Function::H0 => &["a", "u"],
            Function::H2 | Function::I2 => &["a", "u1", "u2"],
            Function::V0 | Function::V2 => &["e", "mu", "gamma", "sigma"],
            Function::D0 | Function::D2 => &["sigma", "gamma", "mu"],
        }
    }

    /// Order the supplied `(name, value)` pairs to match [`Function::params`].
    pub fn bind(self, supplied: &[(&str, f64)]) -> std::result::Result<Vec<f64>, String> {
        if let Some((name, _)) = supplied.iter().find(|(n, _)| !self.params().contains(n)) {
            return Err(format!("{} does not take parameter `{name}`", self.name()));
        }
        self.params()
            .iter()
            .map(|p| {
                let mut found = supplied.iter().filter(|(n, _)| n == p);
                match (found.next(), found.next()) {
                    (Some(&(_, v)), None) => Ok(v),
                    (None, _) => Err(format!("{} requires --{p}", self.name())),
                    (Some(_), Some(_)) => Err(format!("parameter `{p}` given more than once")),
                }
            })
            .collect()
    }

    /// Evaluate with arguments in [`Function::params`] order.
    pub fn evaluate(self, x: &[f64]) -> Result<Evaluation> {
        let from_rel = |r: crate::rel_voigt::EvalResult| Evaluation {
            value: r.value,
            error_estimate: Some(r.error_estimate),
            method: Some(r.method),
        };
        Ok(match self {
            Function::H0 => Evaluation::plain(h0(x[0], x[1])?),
            Function::H2 => from_rel(h2(x[0], x[1], x[2])?),
            Function::I2 => Evaluation::plain(i2_closed(x[0], x[1], x[2])?),
            Function::V0 => Evaluation::plain(v0(x[0], &ProfileParams::new(x[1], x[2], x[3])?)?),
            Function::V2 => Evaluation::plain(v2(x[0], &ProfileParams::new(x[1], x[2], x[3])?)?),
            Function::D0 => Evaluation::plain(d0(x[0], x[1], x[2])?),
            Function::D2 => Evaluation::plain(d2(x[0], x[1], x[2])?),
        })
    }
}

const ZERO_WIDTH_NOTE: &str = "H2 is odd in a and set to 0 at a = 0; the one-sided limits \
are +-(exp(-u1^2) + exp(-u2^2))/|u1 - u2| and diverge when u1 = u2";

/// Shortest round-trip text, in scientific notation outside `[1e-4, 1e16)`.
fn short(x: f64) -> String {
    let m = x.abs();
    if m == 0.0 || (1e-4..1e16).contains(&m) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub(super) fn cmd_eval(args: &EvalArgs, json: bool, out: &mut dyn Write) -> std::result::Result<(), CliError> {
    let supplied = args.params.pairs();
    let x = args.function.bind(&supplied).map_err(CliError::Usage)?;
    let r = args.function.evaluate(&x).map_err(CliError::Domain)?;
    let note = (args.function == Function::H2 && x[0] == 0.0).then_some(ZERO_WIDTH_NOTE);
    let names = args.function.params();
    if json {
        let mut params = Map::new();
        for (n, v) in names.iter().zip(&x) {
            params.insert((*n).to_string(), json!(v));
        }
        let doc = json!({
            "function": args.function.name(),
            "params": Value::Object(params),
            "value": r.value,
            "error_estimate": r.error_estimate,
            "method": r.method.map(|m| m.as_str()),
            "note": note,
        });
        writeln!(out, "{doc}")?;
    } else {
        let call: Vec<String> = names
            .iter()
            .zip(&x)
            .map(|(n, v)| format!("{n}={}", short(*v)))
            .collect();
        writeln!(out, "{}({})", args.function.name(), call.join(", "))?;
        writeln!(out, "value           {}", short(r.value))?;
        if let Some(e) = r.error_estimate {
            writeln!(out, "error_estimate  {}", short(e))?;
        }
        if let Some(m) = r.method {
            writeln!(out, "method          {m}")?;
        }
        if let Some(n) = note {
            writeln!(out, "note: {n}")?;
        }
    }
    Ok(())
}
