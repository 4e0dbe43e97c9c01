//! Rydberg quantum numbers to permanent dipole moments and the
//! dipole-dipole interaction constant.
//!
//! In a static electric field along z, a Rydberg state with (effective)
//! principal quantum number `n` and parabolic quantum number `q = n1 - n2`
//! carries the permanent dipole moment `p = (3/2) n q e a0`. Two such
//! dipoles interact with strength `C = p^2 / (4 pi eps0 hbar)` (both
//! states are assumed to share the same moment). Quantum-defect and
//! state-mixing corrections are out of scope: `n` is taken as the effective
//! value supplied by the caller.

use core::fmt;

use crate::constants::{BOHR_RADIUS, ELEMENTARY_CHARGE, HBAR, VACUUM_PERMITTIVITY};
use serde::Serialize;

/// A Rydberg level pair with its derived interaction quantities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RydbergSpec {
    /// Effective principal quantum number, `>= 1`.
    pub n: u32,
    /// Parabolic quantum number `n1 - n2`, `|q| <= n - 1`.
    pub q: i32,
    /// Permanent dipole moment `(3/2) n q e a0`, C m (signed with `q`).
    pub dipole_moment: f64,
    /// Dipole-dipole interaction constant `p^2/(4 pi eps0 hbar)`, m^3 rad/s.
    pub interaction_constant: f64,
    /// Rydberg-state relaxation rate, 1/s (measured input, not derived).
    pub gamma_d: f64,
}

/// Rejected quantum numbers or decay rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RydbergError {
    /// `n < 1` or `|q| > n - 1`.
    InvalidQuantumNumbers { n: u32, q: i32 },
    /// `gamma_d` negative or non-finite.
    InvalidDecayRate,
}

impl fmt::Display for RydbergError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RydbergError::InvalidQuantumNumbers { n, q } => {
                write!(
                    f,
                    "invalid Rydberg quantum numbers n={n}, q={q}: need n >= 1 and |q| <= n-1"
                )
            }
            RydbergError::InvalidDecayRate => write!(f, "gamma_d must be finite and >= 0"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RydbergError {}

/// Build a [`RydbergSpec`] from quantum numbers and a measured decay rate.
///
/// `gamma_d = 0` is accepted as the decay-free idealization.
pub fn make_rydberg(n: u32, q: i32, gamma_d: f64) -> Result<RydbergSpec, RydbergError> {
    if n < 1 || q.unsigned_abs() > n - 1 {
        return Err(RydbergError::InvalidQuantumNumbers { n, q });
    }
    if !gamma_d.is_finite() || gamma_d < 0.0 {
        return Err(RydbergError::InvalidDecayRate);
    }
    let dipole_moment = 1.5 * f64::from(n) * f64::from(q) * ELEMENTARY_CHARGE * BOHR_RADIUS;
    let interaction_constant =
        dipole_moment * dipole_moment / (4.0 * core::f64::consts::PI * VACUUM_PERMITTIVITY * HBAR);
    Ok(RydbergSpec {
        n,
        q,
        dipole_moment,
        interaction_constant,
        gamma_d,
    })
}
