//! Overflow-safe special functions and adaptive quadrature.
//!
//! Every physics module evaluates the 1D dipole-dipole potential through
//! [`erfcx`] — never as a bare `exp(x^2) * erfc(x)` product, which overflows
//! for arguments beyond ~26 — and integrates it with [`integrate_adaptive`].

mod erf;
mod quadrature;

pub use erf::{erfc, erfcx};
pub use quadrature::{
    integrate, integrate_adaptive, QuadratureError, QuadratureResult, DEFAULT_ABS_TOL,
    DEFAULT_REL_TOL, MAX_EVALUATIONS,
};
