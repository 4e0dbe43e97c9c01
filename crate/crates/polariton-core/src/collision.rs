//! Two-polariton collision: conditional phase, output wavefunction, and
//! entanglement diagnostics.
//!
//! Counter-propagating polaritons keep their intensity profiles (the
//! intensities are constants of motion) while the two-excitation amplitude
//! acquires the conditional phase
//!
//! ```text
//! phi(z1, z2, t) = -sin^4(theta) * integral_0^t delta(z1 - z2 - 2 v (t - t')) dt'
//! ```
//!
//! so the output state is `F12 = f1(z1 - v t) f2(z2 + v t) exp(i phi)`. For a
//! full traversal, `phi(L, 0, L/v)` approaches the closed form
//! `2 C sin^4(theta) / (v w^2)`. The quadrature route here keeps the finite
//! medium; the closed form takes the infinite-medium limit, and the two are
//! compared through [`phase_result`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
#[allow(unused_imports)] // float math comes from libm when std is off
use num_traits::Float;
use serde::Serialize;

use crate::eit::{DerivedEit, MediumConfig};
use crate::numerics::{self, erfc, integrate_adaptive, QuadratureError};
use crate::potential::dd_potential_1d;

/// Relative intensity a pulse may lose off the grid before
/// [`evolve_two_particle`] refuses to evaluate.
pub const MASS_LOSS_TOL: f64 = 1e-6;

/// Grid margin used by [`default_scenario`], in units of `sigma_z` beyond
/// the pulse centers' travel; 6 sigma keeps the off-grid tail near 2e-9.
pub const GRID_MARGIN_SIGMAS: f64 = 6.0;

/// FWHM-to-rms conversion for a Gaussian, `2 sqrt(2 ln 2)`.
const FWHM_PER_SIGMA: f64 = 2.354820045030949;

/// sqrt(2 pi)
const SQRT_TAU: f64 = 2.5066282746310002;

const REL_DIFF_GUARD: f64 = 1e-300;

/// Which pulse an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnvelopeId {
    First,
    Second,
}

impl fmt::Display for EnvelopeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnvelopeId::First => write!(f, "first"),
            EnvelopeId::Second => write!(f, "second"),
        }
    }
}

/// Collision-module failures.
#[derive(Clone, Debug, PartialEq)]
pub enum CollisionError {
    InvalidInput(&'static str),
    /// Phase quadrature did not converge.
    Quadrature(QuadratureError),
    /// A translated envelope leaks more than [`MASS_LOSS_TOL`] of its
    /// intensity off the grid.
    Truncation {
        envelope: EnvelopeId,
        mass_loss: f64,
    },
    /// Metric or spectrum is undefined because the amplitude is identically
    /// zero.
    UndefinedForZeroAmplitude,
    /// The singular value decomposition did not converge.
    SvdNonConvergence,
}

impl fmt::Display for CollisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollisionError::InvalidInput(msg) => write!(f, "invalid collision input: {msg}"),
            CollisionError::Quadrature(e) => write!(f, "phase quadrature failed: {e}"),
            CollisionError::Truncation { envelope, mass_loss } => write!(
                f,
                "grid does not cover the {envelope} envelope: relative mass loss {mass_loss:.3e} exceeds {MASS_LOSS_TOL:.0e}"
            ),
            CollisionError::UndefinedForZeroAmplitude => {
                write!(f, "metric undefined: two-particle amplitude is identically zero")
            }
            CollisionError::SvdNonConvergence => {
                write!(f, "singular value decomposition did not converge")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CollisionError {}

impl From<QuadratureError> for CollisionError {
    fn from(e: QuadratureError) -> Self {
        CollisionError::Quadrature(e)
    }
}

/// Spatial envelope of a single-excitation wavepacket.
///
/// The Gaussian shape is normalized so that the intensity integrates to the
/// medium length (`integral |f|^2 dz = L`, from the polariton commutator
/// normalization), and `sigma_z` is the rms width of the intensity
/// distribution `|f|^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PulseEnvelope {
    /// Center position at t = 0, m.
    pub center_z0: f64,
    /// Intensity rms width, m.
    pub sigma_z: f64,
    /// Normalization length (the medium length), m.
    pub norm_length: f64,
    pub shape: EnvelopeShape,
}

/// Supported envelope shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnvelopeShape {
    Gaussian,
}

impl PulseEnvelope {
    /// Gaussian envelope with intensity rms width `sigma_z` centered at
    /// `center_z0`, normalized to `norm_length`.
    pub fn gaussian(
        center_z0: f64,
        sigma_z: f64,
        norm_length: f64,
    ) -> Result<Self, CollisionError> {
        if !center_z0.is_finite() {
            return Err(CollisionError::InvalidInput(
                "envelope center must be finite",
            ));
        }
        if !sigma_z.is_finite() || sigma_z <= 0.0 {
            return Err(CollisionError::InvalidInput(
                "sigma_z must be positive and finite",
            ));
        }
        if !norm_length.is_finite() || norm_length <= 0.0 {
            return Err(CollisionError::InvalidInput(
                "norm_length must be positive and finite",
            ));
        }
        Ok(Self {
            center_z0,
            sigma_z,
            norm_length,
            shape: EnvelopeShape::Gaussian,
        })
    }

    /// Amplitude `f(z)`; real and non-negative for the Gaussian shape.
    pub fn amplitude(&self, z: f64) -> f64 {
        let d = z - self.center_z0;
        let peak = (self.norm_length / (self.sigma_z * SQRT_TAU)).sqrt();
        peak * (-d * d / (4.0 * self.sigma_z * self.sigma_z)).exp()
    }

    /// Fraction of the envelope's intensity inside `[a, b]` after
    /// translating its center by `shift`.
    pub fn contained_intensity_fraction(&self, shift: f64, a: f64, b: f64) -> f64 {
        let c = self.center_z0 + shift;
        let scale = self.sigma_z * core::f64::consts::SQRT_2;
        0.5 * (erfc((a - c) / scale) - erfc((b - c) / scale))
    }
}

/// Complex two-particle amplitude sampled on a `(z1, z2)` grid at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoParticleGrid {
    z1_grid: Vec<f64>,
    z2_grid: Vec<f64>,
    /// Row-major: `amplitude[i * n2 + j]` is the value at `(z1[i], z2[j])`.
    amplitude: Vec<Complex64>,
    time: f64,
}

impl TwoParticleGrid {
    /// Assemble a grid, enforcing strictly increasing uniform axes and a
    /// matching amplitude length.
    pub fn from_parts(
        z1_grid: Vec<f64>,
        z2_grid: Vec<f64>,
        amplitude: Vec<Complex64>,
        time: f64,
    ) -> Result<Self, CollisionError> {
        validate_axis(&z1_grid)?;
        validate_axis(&z2_grid)?;
        if amplitude.len() != z1_grid.len() * z2_grid.len() {
            return Err(CollisionError::InvalidInput(
                "amplitude length must equal n1 * n2",
            ));
        }
        if !time.is_finite() {
            return Err(CollisionError::InvalidInput("time must be finite"));
        }
        Ok(Self {
            z1_grid,
            z2_grid,
            amplitude,
            time,
        })
    }

    pub fn z1_grid(&self) -> &[f64] {
        &self.z1_grid
    }
    pub fn z2_grid(&self) -> &[f64] {
        &self.z2_grid
    }
    pub fn time(&self) -> f64 {
        self.time
    }
    pub fn n1(&self) -> usize {
        self.z1_grid.len()
    }
    pub fn n2(&self) -> usize {
        self.z2_grid.len()
    }
    pub fn amplitude(&self, i: usize, j: usize) -> Complex64 {
        self.amplitude[i * self.z2_grid.len() + j]
    }
    /// Row-major backing storage.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitude
    }

    /// `integral |F|^2 dz2` along each `z1` row (trapezoid in `z2`).
    pub fn marginal_intensity_z1(&self) -> Vec<f64> {
        let n2 = self.n2();
        let dz2 = self.z2_grid[1] - self.z2_grid[0];
        self.z1_grid
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let row = &self.amplitude[i * n2..(i + 1) * n2];
                let mut acc = 0.0;
                for (j, a) in row.iter().enumerate() {
                    let wgt = if j == 0 || j == n2 - 1 { 0.5 } else { 1.0 };
                    acc += wgt * a.norm_sqr();
                }
                acc * dz2
            })
            .collect()
    }
}

fn validate_axis(grid: &[f64]) -> Result<f64, CollisionError> {
    if grid.len() < 2 {
        return Err(CollisionError::InvalidInput(
            "grid axis needs at least two points",
        ));
    }
    let step = grid[1] - grid[0];
    if !step.is_finite() || step <= 0.0 {
        return Err(CollisionError::InvalidInput(
            "grid axis must be strictly increasing",
        ));
    }
    for pair in grid.windows(2) {
        let d = pair[1] - pair[0];
        if (d - step).abs() > 1e-9 * step {
            return Err(CollisionError::InvalidInput(
                "grid axis must be uniformly spaced",
            ));
        }
    }
    Ok(step)
}

/// Evenly spaced axis over `[min, max]` with `n >= 2` points.
pub fn uniform_grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    let step = (max - min) / (n - 1) as f64;
    (0..n).map(|i| min + i as f64 * step).collect()
}

/// Conditional phase and the closed-form route it is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseResult {
    /// `2 C sin^4(theta) / (v w^2)`, rad.
    pub phi_closed: f64,
    /// Time quadrature of the 1D potential along the collision, rad.
    pub phi_quadrature: f64,
    /// `|phi_closed - phi_quadrature| / max(|phi_closed|, eps)`.
    pub rel_difference: f64,
}

/// Conditional phase `phi(z1, z2, t)` by adaptive quadrature over `t'`.
///
/// The integrand has a cusp where `z1 - z2 - 2v(t - t') = 0`; the interval
/// is split there so the quadrature converges at full order. Depends on
/// `(z1, z2)` only through the separation `z1 - z2`.
pub fn phase_shift(
    z1: f64,
    z2: f64,
    t: f64,
    der: &DerivedEit,
    c_dd: f64,
    w: f64,
) -> Result<f64, CollisionError> {
    if !z1.is_finite() || !z2.is_finite() {
        return Err(CollisionError::InvalidInput("positions must be finite"));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(CollisionError::InvalidInput("time must be finite and >= 0"));
    }
    if !w.is_finite() || w <= 0.0 || !c_dd.is_finite() || c_dd < 0.0 {
        return Err(CollisionError::InvalidInput("need w > 0 and C >= 0"));
    }
    phase_from_separation(z1 - z2, t, der, c_dd, w)
}

fn phase_from_separation(
    s: f64,
    t: f64,
    der: &DerivedEit,
    c_dd: f64,
    w: f64,
) -> Result<f64, CollisionError> {
    if t == 0.0 || c_dd == 0.0 {
        return Ok(0.0);
    }
    let v = der.v;
    let integrand = move |tp: f64| dd_potential_1d(s - 2.0 * v * (t - tp), c_dd, w);
    let sin4 = der.sin2_theta * der.sin2_theta;
    let cusp = t - s / (2.0 * v);
    let integral = if cusp > 0.0 && cusp < t {
        let head = integrate_adaptive(
            integrand,
            0.0,
            cusp,
            numerics::DEFAULT_REL_TOL,
            numerics::DEFAULT_ABS_TOL,
        )?;
        let tail = integrate_adaptive(
            integrand,
            cusp,
            t,
            numerics::DEFAULT_REL_TOL,
            numerics::DEFAULT_ABS_TOL,
        )?;
        head.value + tail.value
    } else {
        integrate_adaptive(
            integrand,
            0.0,
            t,
            numerics::DEFAULT_REL_TOL,
            numerics::DEFAULT_ABS_TOL,
        )?
        .value
    };
    Ok(-sin4 * integral)
}

/// Infinite-medium closed form `2 C sin^4(theta) / (v w^2)`, rad.
pub fn closed_form_phase(der: &DerivedEit, c_dd: f64, w: f64) -> f64 {
    let sin4 = der.sin2_theta * der.sin2_theta;
    2.0 * c_dd * sin4 / (der.v * w * w)
}

/// Upper bound `w sqrt(kappa0/(pi L)) / 2` on the closed-form phase imposed
/// by keeping the contact shift inside the EIT bandwidth.
pub fn phase_bound(der: &DerivedEit, cfg: &MediumConfig) -> f64 {
    0.5 * cfg.width * (der.kappa0 / (core::f64::consts::PI * cfg.length)).sqrt()
}

/// Full-traversal phase `phi(L, 0, L/v)` by quadrature, compared against the
/// closed form.
pub fn phase_result(
    der: &DerivedEit,
    c_dd: f64,
    w: f64,
    length: f64,
) -> Result<PhaseResult, CollisionError> {
    let phi_closed = closed_form_phase(der, c_dd, w);
    let phi_quadrature = phase_shift(length, 0.0, der.t_out, der, c_dd, w)?;
    let rel_difference = (phi_closed - phi_quadrature).abs() / phi_closed.abs().max(REL_DIFF_GUARD);
    Ok(PhaseResult {
        phi_closed,
        phi_quadrature,
        rel_difference,
    })
}

/// Output two-particle wavefunction
/// `F12(z1, z2) = f1(z1 - v t) f2(z2 + v t) exp(i phi(z1, z2, t))` on a grid.
///
/// Refuses to evaluate when a translated envelope loses more than
/// [`MASS_LOSS_TOL`] of its intensity off the grid. When both axes share the
/// same spacing, the phase is computed once per anti-diagonal (it depends
/// only on `z1 - z2`).
#[allow(clippy::too_many_arguments)]
pub fn evolve_two_particle(
    env1: &PulseEnvelope,
    env2: &PulseEnvelope,
    t: f64,
    z1_grid: &[f64],
    z2_grid: &[f64],
    der: &DerivedEit,
    c_dd: f64,
    w: f64,
) -> Result<TwoParticleGrid, CollisionError> {
    let step1 = validate_axis(z1_grid)?;
    let step2 = validate_axis(z2_grid)?;
    if !t.is_finite() || t < 0.0 {
        return Err(CollisionError::InvalidInput("time must be finite and >= 0"));
    }

    let shift = der.v * t;
    for (env, env_shift, grid, id) in [
        (env1, shift, z1_grid, EnvelopeId::First),
        (env2, -shift, z2_grid, EnvelopeId::Second),
    ] {
        let frac = env.contained_intensity_fraction(env_shift, grid[0], *grid.last().unwrap());
        let mass_loss = 1.0 - frac;
        if mass_loss > MASS_LOSS_TOL {
            return Err(CollisionError::Truncation {
                envelope: id,
                mass_loss,
            });
        }
    }

    let n1 = z1_grid.len();
    let n2 = z2_grid.len();
    let f1: Vec<f64> = z1_grid.iter().map(|&z| env1.amplitude(z - shift)).collect();
    let f2: Vec<f64> = z2_grid.iter().map(|&z| env2.amplitude(z + shift)).collect();

    let mut amplitude = vec![Complex64::new(0.0, 0.0); n1 * n2];
    let toeplitz = ((step1 - step2) / step1).abs() < 1e-12;
    if toeplitz {
        // z1[i] - z2[j] = base + (i - j) * step: one phase per anti-diagonal
        let base = z1_grid[0] - z2_grid[0];
        let mut diag_phase = vec![0.0f64; n1 + n2 - 1];
        for (m, phase) in diag_phase.iter_mut().enumerate() {
            let k = m as isize - (n2 as isize - 1);
            let s = base + k as f64 * step1;
            *phase = phase_from_separation(s, t, der, c_dd, w)?;
        }
        for i in 0..n1 {
            for j in 0..n2 {
                let m = (i as isize - j as isize + n2 as isize - 1) as usize;
                amplitude[i * n2 + j] = Complex64::from_polar(f1[i] * f2[j], diag_phase[m]);
            }
        }
    } else {
        for i in 0..n1 {
            for j in 0..n2 {
                let weight = f1[i] * f2[j];
                amplitude[i * n2 + j] = if weight == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    let phi = phase_from_separation(z1_grid[i] - z2_grid[j], t, der, c_dd, w)?;
                    Complex64::from_polar(weight, phi)
                };
            }
        }
    }

    TwoParticleGrid::from_parts(z1_grid.to_vec(), z2_grid.to_vec(), amplitude, t)
}

/// Intensity-weighted relative phase spread over the grid.
///
/// Phases are unwrapped around the intensity-weighted circular mean, then
/// the weighted standard deviation is divided by the weighted mean absolute
/// phase. A grid whose phase is identically zero scores 0; an identically
/// zero amplitude is an error.
pub fn homogeneity_metric(grid: &TwoParticleGrid) -> Result<f64, CollisionError> {
    let mut total_weight = 0.0;
    let mut direction = Complex64::new(0.0, 0.0);
    for a in grid.amplitudes() {
        let wgt = a.norm_sqr();
        if wgt > 0.0 {
            total_weight += wgt;
            direction += a * a.norm(); // |a|^2 exp(i arg a)
        }
    }
    if total_weight == 0.0 {
        return Err(CollisionError::UndefinedForZeroAmplitude);
    }
    let circular_mean = if direction.norm() == 0.0 {
        0.0
    } else {
        direction.arg()
    };

    let tau = core::f64::consts::TAU;
    let mut mean = 0.0;
    let mut mean_abs = 0.0;
    for a in grid.amplitudes() {
        let wgt = a.norm_sqr();
        if wgt > 0.0 {
            let d = a.arg() - circular_mean;
            let unwrapped = circular_mean + (d - tau * (d / tau).round());
            mean += wgt * unwrapped;
            mean_abs += wgt * unwrapped.abs();
        }
    }
    mean /= total_weight;
    mean_abs /= total_weight;

    let mut var = 0.0;
    for a in grid.amplitudes() {
        let wgt = a.norm_sqr();
        if wgt > 0.0 {
            let d = a.arg() - circular_mean;
            let unwrapped = circular_mean + (d - tau * (d / tau).round());
            var += wgt * (unwrapped - mean) * (unwrapped - mean);
        }
    }
    let std = (var / total_weight).sqrt();

    if mean_abs == 0.0 {
        return Ok(0.0); // phase is exactly zero everywhere that carries weight
    }
    Ok(std / mean_abs)
}

/// Singular values of the amplitude matrix, descending, normalized so that
/// the squares sum to one. The Schmidt number follows as
/// [`schmidt_number`]`= 1 / sum sigma^4`.
pub fn schmidt_spectrum(grid: &TwoParticleGrid) -> Result<Vec<f64>, CollisionError> {
    let n1 = grid.n1();
    let n2 = grid.n2();
    let mat = DMatrix::from_fn(n1, n2, |i, j| grid.amplitude(i, j));
    let svd = nalgebra::SVD::try_new(mat, false, false, f64::EPSILON, 0)
        .ok_or(CollisionError::SvdNonConvergence)?;
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    let total: f64 = values.iter().map(|s| s * s).sum();
    if total == 0.0 {
        return Err(CollisionError::UndefinedForZeroAmplitude);
    }
    let scale = total.sqrt();
    for s in values.iter_mut() {
        *s /= scale;
    }
    values.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Effective mode count `K = 1 / sum sigma^4` of a normalized Schmidt
/// spectrum; 1 for a product state.
pub fn schmidt_number(spectrum: &[f64]) -> f64 {
    let quartic: f64 = spectrum.iter().map(|s| s * s * s * s).sum();
    1.0 / quartic
}

/// Envelopes, grids, and evaluation time for one collision run.
#[derive(Clone, Debug, PartialEq)]
pub struct CollisionScenario {
    pub env1: PulseEnvelope,
    pub env2: PulseEnvelope,
    pub time: f64,
    pub z1_grid: Vec<f64>,
    pub z2_grid: Vec<f64>,
}

/// The ideal-collision scenario: pulses of rms width
/// `sigma_z = v T / (2 sqrt(2 ln 2))` start centered on the medium
/// boundaries (z = 0 and z = L), counter-propagate for `t_out = L/v` so they
/// exactly swap ends, on grids that pad `[0, L]` by
/// [`GRID_MARGIN_SIGMAS`]` * sigma_z` to keep the translated envelopes
/// covered.
pub fn default_scenario(
    cfg: &MediumConfig,
    der: &DerivedEit,
    grid_points: usize,
) -> Result<CollisionScenario, CollisionError> {
    if grid_points < 8 {
        return Err(CollisionError::InvalidInput("grid needs at least 8 points"));
    }
    let sigma = der.v * cfg.pulse_duration / FWHM_PER_SIGMA;
    let env1 = PulseEnvelope::gaussian(0.0, sigma, cfg.length)?;
    let env2 = PulseEnvelope::gaussian(cfg.length, sigma, cfg.length)?;
    let pad = GRID_MARGIN_SIGMAS * sigma;
    let grid = uniform_grid(-pad, cfg.length + pad, grid_points);
    Ok(CollisionScenario {
        env1,
        env2,
        time: der.t_out,
        z1_grid: grid.clone(),
        z2_grid: grid,
    })
}

/// Run the scenario through [`evolve_two_particle`].
pub fn evolve_scenario(
    scenario: &CollisionScenario,
    der: &DerivedEit,
    c_dd: f64,
    w: f64,
) -> Result<TwoParticleGrid, CollisionError> {
    evolve_two_particle(
        &scenario.env1,
        &scenario.env2,
        scenario.time,
        &scenario.z1_grid,
        &scenario.z2_grid,
        der,
        c_dd,
        w,
    )
}
