//! Derived EIT/polariton parameters and the feasibility report.
//!
//! From the medium configuration this module derives the resonant
//! absorption coefficient `kappa0 = 3 lambda^2 rho / (2 pi)`, the slow-light
//! group velocity `v = 2 |Omega|^2 / (kappa0 gamma_ge)`, the transparency
//! bandwidth `delta_omega = |Omega|^2 / (gamma_ge sqrt(kappa0 L))`, and the
//! pulse exit time `t_out = L/v`. The experimental group-velocity expression
//! is treated as ground truth and the polariton mixing angle is back-derived
//! from it via `sin^2 theta = 1 - v/c`, since the collective coupling
//! `g^2 N` is not independently specifiable from these inputs.
//!
//! Slow-light containment is viable only inside a window of inequalities
//! (large optical depth, pulse inside the transparency window and shorter
//! than the medium, dipole-dipole shift within the bandwidth, negligible
//! Rydberg decay); [`feasibility`] scores all five and [`fidelity`] gives
//! the Rydberg-decay factor `exp(-gamma_d L/v)`.

use core::fmt;

#[allow(unused_imports)] // float math comes from libm when std is off
use num_traits::Float;
use serde::Serialize;

use crate::constants::SPEED_OF_LIGHT;
use crate::potential::dd_potential_1d;
use crate::rydberg::RydbergSpec;

/// Soft-inequality margin: "much greater/less than" passes when the ratio
/// clears this factor. The strict `<` checks use factor 1.
pub const DEFAULT_MARGIN_FACTOR: f64 = 10.0;

/// Default pulse duration as a fraction of the transit time: `T v / L = 0.3`,
/// mid-range of the allowed window `(kappa0 L)^(-1/2) << T v / L < 1`.
pub const DEFAULT_PULSE_FRACTION: f64 = 0.3;

/// Atomic ensemble, field geometry, and drive parameters (SI units).
///
/// Both drive arms share one Rabi frequency, so the two polaritons have a
/// common mixing angle and group velocity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MediumConfig {
    /// Atomic density `rho`, 1/m^3.
    pub density: f64,
    /// Medium length `L`, m.
    pub length: f64,
    /// Optical wavelength `lambda`, m.
    pub wavelength: f64,
    /// Transversal relaxation rate `gamma_ge` of the intermediate level, 1/s.
    pub gamma_ge: f64,
    /// Drive Rabi frequency `Omega`, rad/s.
    pub rabi: f64,
    /// Transverse Gaussian intensity 1/e radius `w`, m.
    pub width: f64,
    /// Pulse duration `T`, s.
    pub pulse_duration: f64,
    /// Rydberg level data.
    pub rydberg: RydbergSpec,
}

/// EIT quantities derived from a [`MediumConfig`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivedEit {
    /// Resonant absorption coefficient `kappa0`, 1/m.
    pub kappa0: f64,
    /// `sin^2 theta` of the dark-state polariton mixing angle, in (0, 1].
    pub sin2_theta: f64,
    /// Group velocity actually used downstream, m/s (`= v_approx`).
    pub v: f64,
    /// Experimental-parameter group velocity `2 Omega^2/(kappa0 gamma_ge)`.
    pub v_approx: f64,
    /// EIT transparency bandwidth `delta_omega`, rad/s.
    pub delta_omega: f64,
    /// Transit time `t_out = L/v`, s.
    pub t_out: f64,
}

/// One validity inequality, written as `lhs < rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FeasibilityCheck {
    /// Stable identifier.
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs / lhs`; passes when it clears the check's factor.
    pub margin_ratio: f64,
    /// Required factor: the configured margin for soft checks, 1 for strict.
    pub required_factor: f64,
    pub pass: bool,
}

/// All five slow-light validity checks for one configuration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub margin_factor: f64,
    pub checks: [FeasibilityCheck; 5],
    pub overall_pass: bool,
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<34} {:>14} {:>14} {:>10} {:>7} pass",
            "check", "lhs", "rhs", "margin", "needed"
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<34} {:>14.6e} {:>14.6e} {:>10.4} {:>7.1} {}",
                c.name,
                c.lhs,
                c.rhs,
                c.margin_ratio,
                c.required_factor,
                if c.pass { "yes" } else { "NO" }
            )?;
        }
        write!(
            f,
            "overall: {} (soft-check margin factor {})",
            if self.overall_pass { "PASS" } else { "FAIL" },
            self.margin_factor
        )
    }
}

/// Configuration or regime errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EitError {
    /// A medium parameter is non-positive or non-finite; carries the
    /// parameter's config-file key.
    InvalidParameter { key: &'static str },
    /// The derived group velocity is not below c, so the slow-light
    /// perturbative chain is invalid.
    OutsideSlowLightRegime { v_approx: f64 },
}

impl fmt::Display for EitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EitError::InvalidParameter { key } => {
                write!(f, "medium parameter `{key}` must be positive and finite")
            }
            EitError::OutsideSlowLightRegime { v_approx } => write!(
                f,
                "derived group velocity {v_approx} m/s is not below c: outside the slow-light regime"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EitError {}

impl MediumConfig {
    /// Validate and build a configuration. `pulse_duration = None` resolves
    /// the default `T = 0.3 L / v_approx`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        density: f64,
        length: f64,
        wavelength: f64,
        gamma_ge: f64,
        rabi: f64,
        width: f64,
        pulse_duration: Option<f64>,
        rydberg: RydbergSpec,
    ) -> Result<Self, EitError> {
        let positive = [
            (density, "rho"),
            (length, "L"),
            (wavelength, "lambda"),
            (gamma_ge, "gamma_ge"),
            (rabi, "Omega"),
            (width, "w"),
        ];
        for (value, key) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(EitError::InvalidParameter { key });
            }
        }
        let pulse_duration = match pulse_duration {
            Some(t) => {
                if !t.is_finite() || t <= 0.0 {
                    return Err(EitError::InvalidParameter { key: "T" });
                }
                t
            }
            None => {
                let kappa0 =
                    3.0 * wavelength * wavelength * density / (2.0 * core::f64::consts::PI);
                let v_approx = 2.0 * rabi * rabi / (kappa0 * gamma_ge);
                DEFAULT_PULSE_FRACTION * length / v_approx
            }
        };
        Ok(Self {
            density,
            length,
            wavelength,
            gamma_ge,
            rabi,
            width,
            pulse_duration,
            rydberg,
        })
    }

    /// The worked-example configuration: cold alkali atoms at
    /// `rho = 1e20 m^-3` in a 100 um trap, 0.5 um light focused to 30 um,
    /// n = 25, q = 24 Rydberg levels, and a 1.6e7 rad/s drive.
    pub fn paper_defaults() -> Self {
        let rydberg =
            crate::rydberg::make_rydberg(25, 24, 2e3).expect("built-in quantum numbers are valid");
        Self::new(1e20, 1e-4, 5e-7, 1e7, 1.6e7, 3e-5, None, rydberg)
            .expect("built-in defaults are valid")
    }
}

/// Derive the EIT/polariton parameters from a configuration.
pub fn derive_eit(cfg: &MediumConfig) -> Result<DerivedEit, EitError> {
    let kappa0 =
        3.0 * cfg.wavelength * cfg.wavelength * cfg.density / (2.0 * core::f64::consts::PI);
    let v_approx = 2.0 * cfg.rabi * cfg.rabi / (kappa0 * cfg.gamma_ge);
    if v_approx >= SPEED_OF_LIGHT {
        return Err(EitError::OutsideSlowLightRegime { v_approx });
    }
    let sin2_theta = 1.0 - v_approx / SPEED_OF_LIGHT;
    let delta_omega = cfg.rabi * cfg.rabi / (cfg.gamma_ge * (kappa0 * cfg.length).sqrt());
    Ok(DerivedEit {
        kappa0,
        sin2_theta,
        v: v_approx,
        v_approx,
        delta_omega,
        t_out: cfg.length / v_approx,
    })
}

fn check(name: &'static str, lhs: f64, rhs: f64, required_factor: f64) -> FeasibilityCheck {
    let margin_ratio = rhs / lhs;
    FeasibilityCheck {
        name,
        lhs,
        rhs,
        margin_ratio,
        required_factor,
        pass: margin_ratio > required_factor,
    }
}

/// Score the five slow-light validity inequalities.
///
/// Soft inequalities (`>>`/`<<`) pass when their ratio clears
/// `margin_factor`; the strict `<` checks use factor 1. Infeasibility is
/// data, not an error.
pub fn feasibility(cfg: &MediumConfig, der: &DerivedEit, margin_factor: f64) -> FeasibilityReport {
    let optical_depth = der.kappa0 * cfg.length;
    let pulse_fraction = cfg.pulse_duration * der.v / cfg.length;
    let dd_contact = dd_potential_1d(0.0, cfg.rydberg.interaction_constant, cfg.width).abs();
    let checks = [
        check("optical_depth_large", 1.0, optical_depth, margin_factor),
        check(
            "pulse_fits_transparency_window",
            optical_depth.sqrt().recip(),
            pulse_fraction,
            margin_factor,
        ),
        check("pulse_shorter_than_medium", pulse_fraction, 1.0, 1.0),
        check(
            "dd_shift_within_eit_bandwidth",
            dd_contact,
            der.delta_omega,
            1.0,
        ),
        check(
            "rydberg_decay_negligible",
            der.t_out * cfg.rydberg.gamma_d,
            1.0,
            margin_factor,
        ),
    ];
    FeasibilityReport {
        margin_factor,
        checks,
        overall_pass: checks.iter().all(|c| c.pass),
    }
}

/// Rydberg-decay fidelity `F = exp(-gamma_d L / v)`.
pub fn fidelity(cfg: &MediumConfig, der: &DerivedEit) -> f64 {
    (-cfg.rydberg.gamma_d * cfg.length / der.v).exp()
}
