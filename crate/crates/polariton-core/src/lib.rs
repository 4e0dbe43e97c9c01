//! Physics core for counter-propagating slow-light polaritons coupled by
//! Rydberg dipole-dipole interactions in an EIT medium.
//!
//! The crate is organized bottom-up:
//!
//! * [`numerics`] — overflow-safe special functions ([`numerics::erfcx`]) and
//!   an adaptive Gauss-Kronrod integrator used by every physics module.
//! * [`constants`] — CODATA-2018 physical constants, compiled in so results
//!   are bit-reproducible across platforms.
//! * [`rydberg`] — quantum numbers to permanent dipole moments and the
//!   dipole-dipole interaction constant.
//! * [`potential`] — the 3D anisotropic dipole-dipole shift and its
//!   transverse-averaged 1D form.
//! * [`eit`] — derived EIT/polariton parameters, feasibility checks, and the
//!   Rydberg-decay fidelity.
//! * [`collision`] — conditional phase shift (quadrature and closed form),
//!   the output two-particle wavefunction, homogeneity and Schmidt
//!   diagnostics.
//!
//! The crate is `no_std`-compatible (with `alloc`); the companion CLI crate
//! carries all IO, file formats, and scenario orchestration.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod collision;
pub mod constants;
pub mod eit;
pub mod numerics;
pub mod potential;
pub mod rydberg;

pub use collision::{PhaseResult, PulseEnvelope, TwoParticleGrid};
pub use eit::{DerivedEit, FeasibilityReport, MediumConfig};
pub use numerics::QuadratureResult;
pub use rydberg::RydbergSpec;

/// Re-exported because it appears in this crate's public API
/// ([`TwoParticleGrid::amplitudes`]).
pub use num_complex::Complex64;
