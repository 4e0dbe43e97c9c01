//! Parameter scans: sweep one configuration field and tabulate the derived
//! quantities at each step.

use std::fmt;

use polariton_core::collision::{closed_form_phase, phase_bound};
use polariton_core::eit::{derive_eit, feasibility, fidelity};
use serde::Serialize;

use crate::config::RawConfig;

/// Fields that may be swept, with their SI units.
pub const SCAN_FIELDS: [(&str, &str); 10] = [
    ("rho", "m^-3"),
    ("L", "m"),
    ("lambda", "m"),
    ("gamma_ge", "s^-1"),
    ("Omega", "rad_s^-1"),
    ("w", "m"),
    ("T", "s"),
    ("n", "1"),
    ("q", "1"),
    ("gamma_d", "s^-1"),
];

/// Spacing of scan steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScanSpacing {
    Linear,
    Log,
}

/// A parsed `FIELD:MIN:MAX:STEPS[:log]` axis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanAxis {
    pub field: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub spacing: ScanSpacing,
}

/// Errors in the axis specification.
#[derive(Debug)]
pub struct ScanError(pub String);

impl fmt::Display for ScanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid scan axis: {}", self.0)
    }
}
impl std::error::Error for ScanError {}

impl ScanAxis {
    /// Parse `FIELD:MIN:MAX:STEPS[:log]`.
    pub fn parse(spec: &str) -> Result<Self, ScanError> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 4 && parts.len() != 5 {
            return Err(ScanError(format!(
                "expected FIELD:MIN:MAX:STEPS[:log], got `{spec}`"
            )));
        }
        let field = parts[0].to_owned();
        if !SCAN_FIELDS.iter().any(|(name, _)| *name == field) {
            return Err(ScanError(format!(
                "unknown field `{field}`; valid fields: {}",
                SCAN_FIELDS.map(|(name, _)| name).join(", ")
            )));
        }
        let min: f64 = parts[1]
            .parse()
            .map_err(|e| ScanError(format!("bad MIN `{}`: {e}", parts[1])))?;
        let max: f64 = parts[2]
            .parse()
            .map_err(|e| ScanError(format!("bad MAX `{}`: {e}", parts[2])))?;
        let steps: usize = parts[3]
            .parse()
            .map_err(|e| ScanError(format!("bad STEPS `{}`: {e}", parts[3])))?;
        let spacing = match parts.get(4) {
            None => ScanSpacing::Linear,
            Some(&"log") => ScanSpacing::Log,
            Some(other) => return Err(ScanError(format!("expected `log`, got `{other}`"))),
        };
        if steps < 2 {
            return Err(ScanError("STEPS must be >= 2".into()));
        }
        if !min.is_finite() || !max.is_finite() || min >= max {
            return Err(ScanError("need finite MIN < MAX".into()));
        }
        if spacing == ScanSpacing::Log && min <= 0.0 {
            return Err(ScanError("log spacing needs MIN > 0".into()));
        }
        Ok(Self {
            field,
            min,
            max,
            steps,
            spacing,
        })
    }

    /// The swept values, in deterministic axis order.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                let frac = i as f64 / (n - 1) as f64;
                match self.spacing {
                    ScanSpacing::Linear => self.min + frac * (self.max - self.min),
                    ScanSpacing::Log => {
                        (self.min.ln() + frac * (self.max.ln() - self.min.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

/// One scan step's derived quantities; NaN columns mark an infeasible build.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanRow {
    pub value: f64,
    pub v: f64,
    pub delta_omega: f64,
    pub phi_closed: f64,
    pub phi_bound: f64,
    pub fidelity: f64,
    pub feasible: bool,
}

/// Apply a swept value to the raw configuration.
///
/// Integer fields round to the nearest integer; sweeping `n` clamps `q` to
/// the valid range `|q| <= n - 1` so quantum-number validity is preserved
/// along the axis.
pub fn apply_field(raw: &mut RawConfig, field: &str, value: f64) {
    match field {
        "rho" => raw.rho = value,
        "L" => raw.length = value,
        "lambda" => raw.lambda = value,
        "gamma_ge" => raw.gamma_ge = value,
        "Omega" => raw.omega = value,
        "w" => raw.w = value,
        "T" => raw.pulse_duration = Some(value),
        "gamma_d" => raw.gamma_d = value,
        "n" => {
            let n = value.round().max(1.0) as u32;
            raw.n = n;
            let bound = (n - 1) as i32;
            raw.q = raw.q.clamp(-bound, bound);
        }
        "q" => raw.q = value.round() as i32,
        other => unreachable!("field `{other}` was validated at parse time"),
    }
}

/// Run the scan. Steps that fail validation or leave the slow-light regime
/// yield a row flagged infeasible instead of aborting.
pub fn run_scan_rows(base: &RawConfig, axis: &ScanAxis, margin_factor: f64) -> Vec<ScanRow> {
    axis.values()
        .into_iter()
        .map(|value| {
            let mut raw = *base;
            apply_field(&mut raw, &axis.field, value);
            let built = raw.build().ok().and_then(|cfg| {
                derive_eit(&cfg).ok().map(|der| {
                    let report = feasibility(&cfg, &der, margin_factor);
                    ScanRow {
                        value,
                        v: der.v,
                        delta_omega: der.delta_omega,
                        phi_closed: closed_form_phase(
                            &der,
                            cfg.rydberg.interaction_constant,
                            cfg.width,
                        ),
                        phi_bound: phase_bound(&der, &cfg),
                        fidelity: fidelity(&cfg, &der),
                        feasible: report.overall_pass,
                    }
                })
            });
            built.unwrap_or(ScanRow {
                value,
                v: f64::NAN,
                delta_omega: f64::NAN,
                phi_closed: f64::NAN,
                phi_bound: f64::NAN,
                fidelity: f64::NAN,
                feasible: false,
            })
        })
        .collect()
}

/// CSV header for the scan table; the first column carries the swept
/// field's name and unit.
pub fn scan_csv_header(axis: &ScanAxis) -> String {
    let unit = SCAN_FIELDS
        .iter()
        .find(|(name, _)| *name == axis.field)
        .map(|(_, unit)| *unit)
        .unwrap_or("1");
    format!(
        "{}_{unit},v_m_s^-1,delta_omega_rad_s^-1,phi_closed_rad,phi_bound_rad,fidelity,feasible\n",
        axis.field
    )
}
