//! Flat `key = value` configuration files.
//!
//! All values are SI. Keys:
//!
//! | key        | meaning                           | unit    |
//! |------------|-----------------------------------|---------|
//! | `rho`      | atomic density                    | m^-3    |
//! | `L`        | medium length                     | m       |
//! | `lambda`   | optical wavelength                | m       |
//! | `gamma_ge` | transversal relaxation rate       | 1/s     |
//! | `Omega`    | drive Rabi frequency              | rad/s   |
//! | `w`        | transverse Gaussian width         | m       |
//! | `T`        | pulse duration (optional)         | s       |
//! | `n`        | principal quantum number          | -       |
//! | `q`        | parabolic quantum number          | -       |
//! | `gamma_d`  | Rydberg relaxation rate           | 1/s     |
//!
//! `#` starts a comment; blank lines are ignored. `T` defaults to
//! `0.3 L / v` when omitted.

use std::fmt;

use polariton_core::eit::{EitError, MediumConfig};
use polariton_core::rydberg::{make_rydberg, RydbergError};

/// Required float keys, in file-documentation order.
pub const FLOAT_KEYS: [&str; 6] = ["rho", "L", "lambda", "gamma_ge", "Omega", "w"];

/// Parsed-but-unvalidated configuration values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawConfig {
    pub rho: f64,
    pub length: f64,
    pub lambda: f64,
    pub gamma_ge: f64,
    pub omega: f64,
    pub w: f64,
    pub pulse_duration: Option<f64>,
    pub n: u32,
    pub q: i32,
    pub gamma_d: f64,
}

impl RawConfig {
    /// The built-in worked-example values.
    pub fn paper() -> Self {
        Self {
            rho: 1e20,
            length: 1e-4,
            lambda: 5e-7,
            gamma_ge: 1e7,
            omega: 1.6e7,
            w: 3e-5,
            pulse_duration: None,
            n: 25,
            q: 24,
            gamma_d: 2e3,
        }
    }

    /// Validate into a [`MediumConfig`].
    pub fn build(&self) -> Result<MediumConfig, ConfigError> {
        let rydberg = make_rydberg(self.n, self.q, self.gamma_d)?;
        let cfg = MediumConfig::new(
            self.rho,
            self.length,
            self.lambda,
            self.gamma_ge,
            self.omega,
            self.w,
            self.pulse_duration,
            rydberg,
        )?;
        Ok(cfg)
    }
}

/// Configuration-file failures, with the line or key at fault.
#[derive(Debug)]
pub enum ConfigError {
    Syntax {
        line: usize,
        message: String,
    },
    UnknownKey {
        line: usize,
        key: String,
    },
    DuplicateKey {
        line: usize,
        key: String,
    },
    InvalidValue {
        line: usize,
        key: String,
        message: String,
    },
    MissingKey {
        key: &'static str,
    },
    Eit(EitError),
    Rydberg(RydbergError),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Syntax { line, message } => {
                write!(f, "config line {line}: {message}")
            }
            ConfigError::UnknownKey { line, key } => {
                write!(f, "config line {line}: unknown key `{key}`")
            }
            ConfigError::DuplicateKey { line, key } => {
                write!(f, "config line {line}: duplicate key `{key}`")
            }
            ConfigError::InvalidValue { line, key, message } => {
                write!(
                    f,
                    "config line {line}: invalid value for `{key}`: {message}"
                )
            }
            ConfigError::MissingKey { key } => {
                write!(f, "config is missing required key `{key}`")
            }
            ConfigError::Eit(e) => write!(f, "invalid configuration: {e}"),
            ConfigError::Rydberg(e) => write!(f, "invalid configuration: {e}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl From<EitError> for ConfigError {
    fn from(e: EitError) -> Self {
        ConfigError::Eit(e)
    }
}
impl From<RydbergError> for ConfigError {
    fn from(e: RydbergError) -> Self {
        ConfigError::Rydberg(e)
    }
}

/// Parse a flat `key = value` document.
pub fn parse_config(text: &str) -> Result<RawConfig, ConfigError> {
    let mut rho = None;
    let mut length = None;
    let mut lambda = None;
    let mut gamma_ge = None;
    let mut omega = None;
    let mut w = None;
    let mut pulse_duration = None;
    let mut n = None;
    let mut q = None;
    let mut gamma_d = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();

        let parse_f64 = |key: &str| -> Result<f64, ConfigError> {
            value.parse::<f64>().map_err(|e| ConfigError::InvalidValue {
                line: line_no,
                key: key.to_owned(),
                message: e.to_string(),
            })
        };
        let dup = |key: &str| ConfigError::DuplicateKey {
            line: line_no,
            key: key.to_owned(),
        };

        match key {
            "rho" => set_once(&mut rho, parse_f64(key)?, || dup(key))?,
            "L" => set_once(&mut length, parse_f64(key)?, || dup(key))?,
            "lambda" => set_once(&mut lambda, parse_f64(key)?, || dup(key))?,
            "gamma_ge" => set_once(&mut gamma_ge, parse_f64(key)?, || dup(key))?,
            "Omega" => set_once(&mut omega, parse_f64(key)?, || dup(key))?,
            "w" => set_once(&mut w, parse_f64(key)?, || dup(key))?,
            "T" => set_once(&mut pulse_duration, parse_f64(key)?, || dup(key))?,
            "gamma_d" => set_once(&mut gamma_d, parse_f64(key)?, || dup(key))?,
            "n" => {
                let v = value
                    .parse::<u32>()
                    .map_err(|e| ConfigError::InvalidValue {
                        line: line_no,
                        key: key.to_owned(),
                        message: e.to_string(),
                    })?;
                set_once(&mut n, v, || dup(key))?;
            }
            "q" => {
                let v = value
                    .parse::<i32>()
                    .map_err(|e| ConfigError::InvalidValue {
                        line: line_no,
                        key: key.to_owned(),
                        message: e.to_string(),
                    })?;
                set_once(&mut q, v, || dup(key))?;
            }
            other => {
                return Err(ConfigError::UnknownKey {
                    line: line_no,
                    key: other.to_owned(),
                })
            }
        }
    }

    Ok(RawConfig {
        rho: rho.ok_or(ConfigError::MissingKey { key: "rho" })?,
        length: length.ok_or(ConfigError::MissingKey { key: "L" })?,
        lambda: lambda.ok_or(ConfigError::MissingKey { key: "lambda" })?,
        gamma_ge: gamma_ge.ok_or(ConfigError::MissingKey { key: "gamma_ge" })?,
        omega: omega.ok_or(ConfigError::MissingKey { key: "Omega" })?,
        w: w.ok_or(ConfigError::MissingKey { key: "w" })?,
        pulse_duration,
        n: n.ok_or(ConfigError::MissingKey { key: "n" })?,
        q: q.ok_or(ConfigError::MissingKey { key: "q" })?,
        gamma_d: gamma_d.ok_or(ConfigError::MissingKey { key: "gamma_d" })?,
    })
}

fn set_once<T>(
    slot: &mut Option<T>,
    value: T,
    dup: impl FnOnce() -> ConfigError,
) -> Result<(), ConfigError> {
    if slot.is_some() {
        return Err(dup());
    }
    *slot = Some(value);
    Ok(())
}
