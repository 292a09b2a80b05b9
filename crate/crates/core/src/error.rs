use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("{0}")]
    Domain(String),

    #[error("integrand is not finite at t = {at}")]
    Integration { at: f64 },

    #[error("result is not representable: {0}")]
    Overflow(&'static str),

    #[error("inconsistent evaluation: {0}")]
    Numerical(String),
}

impl Error {
    /// Short machine-readable name, used in the CLI `error` column.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFinite(_) => "non_finite",
            Error::Parameter { .. } => "parameter",
            Error::Domain(_) => "domain",
            Error::Integration { .. } => "integration",
            Error::Overflow(_) => "overflow",
            Error::Numerical(_) => "numerical",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parameter(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(values: &[f64], what: &'static str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
