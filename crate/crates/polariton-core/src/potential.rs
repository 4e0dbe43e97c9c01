//! Dipole-dipole interaction potentials.
//!
//! Two permanent dipoles aligned with z and separated by `r` at polar angle
//! `theta` shift each other by `C (1 - 3 cos^2 theta)/r^3`. Averaging that
//! shift over the Gaussian transverse intensity profile `exp(-r_perp^2/w^2)`
//! of the optical mode collapses it to an effective 1D potential of the
//! on-axis separation `s = z - z'`:
//!
//! ```text
//! delta(s) = (2C/w^3) * g(|s|/w),
//! g(zeta)  = 2 zeta - sqrt(pi) (1 + 2 zeta^2) erfcx(zeta)
//! ```
//!
//! `g` is evaluated through the scaled complementary error function, never
//! as a bare `exp * erfc` product, so it stays finite out to arbitrarily
//! large separations. It is strictly negative, even in `s`, has its minimum
//! `-sqrt(pi)` at `zeta = 0`, and falls off like `-1/zeta^3`.

use core::fmt;

#[allow(unused_imports)] // float math comes from libm when std is off
use num_traits::Float;

use crate::numerics::{self, integrate_adaptive, QuadratureError, QuadratureResult};

/// Default half-width for [`reduced_potential_integral`]: the omitted tail
/// is `1/zeta_max^2 ~ 6e-8`, an order below the 1e-6 consistency check.
pub const DEFAULT_ZETA_MAX: f64 = 4000.0;

/// Transverse beam width and medium length, m.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geometry {
    /// Gaussian 1/e intensity radius `w` (the width in `exp(-r_perp^2/w^2)`).
    pub width: f64,
    /// Medium length `L`.
    pub length: f64,
}

impl Geometry {
    /// Validate `w > 0`, `L > 0`.
    pub fn new(width: f64, length: f64) -> Result<Self, PotentialError> {
        if !width.is_finite() || width <= 0.0 {
            return Err(PotentialError::InvalidInput(
                "width must be positive and finite",
            ));
        }
        if !length.is_finite() || length <= 0.0 {
            return Err(PotentialError::InvalidInput(
                "length must be positive and finite",
            ));
        }
        Ok(Self { width, length })
    }
}

/// Invalid geometry or a singular evaluation point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialError {
    /// Zero separation: the bare 1/r^3 shift diverges.
    Singularity,
    InvalidInput(&'static str),
}

impl fmt::Display for PotentialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialError::Singularity => {
                write!(f, "dipole-dipole shift is singular at zero separation")
            }
            PotentialError::InvalidInput(msg) => write!(f, "invalid potential input: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PotentialError {}

/// Bare 3D dipole-dipole shift `C (1 - 3 cos^2 theta)/r^3`, rad/s.
///
/// `theta` is the angle between the interatomic axis and the dipole (z)
/// axis; the shift changes sign at the magic angle `arccos(1/sqrt(3))`.
pub fn dd_shift_3d(separation: f64, theta: f64, c_dd: f64) -> Result<f64, PotentialError> {
    if !separation.is_finite() || !theta.is_finite() || !c_dd.is_finite() || c_dd < 0.0 {
        return Err(PotentialError::InvalidInput(
            "separation, theta, and C must be finite with C >= 0",
        ));
    }
    if separation == 0.0 {
        return Err(PotentialError::Singularity);
    }
    if separation < 0.0 {
        return Err(PotentialError::InvalidInput("separation must be positive"));
    }
    let cos = theta.cos();
    Ok(c_dd * (1.0 - 3.0 * cos * cos) / (separation * separation * separation))
}

/// Dimensionless 1D potential `g(zeta)`, i.e. `delta(s)` in units of `2C/w^3`
/// with `zeta = s/w`. Even in `zeta`; `g(0) = -sqrt(pi)`.
///
/// Beyond `zeta = 20` the defining expression `2 zeta - sqrt(pi)(1 + 2
/// zeta^2) erfcx(zeta)` is a difference of near-equal terms whose true value
/// `~ -1/zeta^3` sinks under the rounding of `2 zeta`, so the tail switches
/// to the alternating asymptotic series
/// `g = -1/z^3 (1 - 3/z^2 + 11.25/z^4 - ...)`, which stays strictly
/// negative and accurate out to arbitrarily large separations.
pub fn reduced_potential(zeta: f64) -> f64 {
    let z = zeta.abs();
    if z.is_nan() {
        return f64::NAN;
    }
    if z < 20.0 {
        return 2.0 * z - core::f64::consts::PI.sqrt() * (1.0 + 2.0 * z * z) * numerics::erfcx(z);
    }
    let inv_z2 = 1.0 / (z * z);
    let mut term = -inv_z2 / z;
    let mut sum = term;
    let mut m = 1.0;
    loop {
        // t_{m+1}/t_m = -(2m+1)(m+1) / (2m zeta^2)
        let next = term * (-(2.0 * m + 1.0) * (m + 1.0) / (2.0 * m)) * inv_z2;
        if next.abs() >= term.abs() {
            break; // divergent tail of the asymptotic series reached
        }
        term = next;
        sum += term;
        m += 1.0;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Transverse-averaged 1D dipole-dipole potential `delta(z - z')`, rad/s.
///
/// `s` is the on-axis separation (either sign), `w` the Gaussian width of
/// the transverse intensity profile. Strictly negative for `C > 0`, even in
/// `s`, with `delta(0) = -2 sqrt(pi) C / w^3`; non-finite inputs or invalid
/// geometry propagate as NaN.
pub fn dd_potential_1d(s: f64, c_dd: f64, w: f64) -> f64 {
    if !w.is_finite() || w <= 0.0 || c_dd < 0.0 {
        return f64::NAN;
    }
    2.0 * c_dd / (w * w * w) * reduced_potential(s / w)
}

/// Integral of the reduced potential over `[-zeta_max, zeta_max]`, split at
/// the `zeta = 0` cusp. Converges to exactly -2 as `zeta_max -> infinity`
/// (the constant behind the closed-form collision phase).
pub fn reduced_potential_integral_to(zeta_max: f64) -> Result<QuadratureResult, QuadratureError> {
    if !zeta_max.is_finite() || zeta_max <= 0.0 {
        return Err(QuadratureError::InvalidInput(
            "zeta_max must be positive and finite",
        ));
    }
    let left = integrate_adaptive(
        reduced_potential,
        -zeta_max,
        0.0,
        numerics::DEFAULT_REL_TOL,
        numerics::DEFAULT_ABS_TOL,
    )?;
    let right = integrate_adaptive(
        reduced_potential,
        0.0,
        zeta_max,
        numerics::DEFAULT_REL_TOL,
        numerics::DEFAULT_ABS_TOL,
    )?;
    Ok(QuadratureResult {
        value: left.value + right.value,
        abs_error_estimate: left.abs_error_estimate + right.abs_error_estimate,
        evaluations: left.evaluations + right.evaluations,
    })
}

/// [`reduced_potential_integral_to`] with [`DEFAULT_ZETA_MAX`].
pub fn reduced_potential_integral() -> Result<QuadratureResult, QuadratureError> {
    reduced_potential_integral_to(DEFAULT_ZETA_MAX)
}
