//! Scenario orchestration behind the CLI subcommands.
//!
//! Exit-code contract, stable across subcommands: 0 = success/feasible,
//! 2 = computed fine but infeasible (or outside the expected windows for
//! the worked example), 1 = usage or configuration errors (mapped in
//! `main`).

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use polariton_core::collision::{
    default_scenario, evolve_scenario, homogeneity_metric, phase_bound, phase_result, phase_shift,
    schmidt_number, schmidt_spectrum, CollisionError, PhaseResult,
};
use polariton_core::eit::{
    derive_eit, feasibility, fidelity, DerivedEit, EitError, FeasibilityReport, MediumConfig,
};
use polariton_core::potential::{dd_potential_1d, reduced_potential};
use serde::Serialize;

use crate::config::{ConfigError, RawConfig};
use crate::format::{csv_line, sci};
use crate::scan::{run_scan_rows, scan_csv_header, ScanAxis, ScanRow};

/// Points per plot-data curve.
const CURVE_POINTS: usize = 401;

/// Anything that should abort a run with exit code 1.
#[derive(Debug)]
pub enum HarnessError {
    Config(ConfigError),
    Eit(EitError),
    Collision(CollisionError),
    Io(io::Error),
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Config(e) => write!(f, "{e}"),
            HarnessError::Eit(e) => write!(f, "{e}"),
            HarnessError::Collision(e) => write!(f, "{e}"),
            HarnessError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}
impl std::error::Error for HarnessError {}

impl From<ConfigError> for HarnessError {
    fn from(e: ConfigError) -> Self {
        HarnessError::Config(e)
    }
}
impl From<EitError> for HarnessError {
    fn from(e: EitError) -> Self {
        HarnessError::Eit(e)
    }
}
impl From<CollisionError> for HarnessError {
    fn from(e: CollisionError) -> Self {
        HarnessError::Collision(e)
    }
}
impl From<io::Error> for HarnessError {
    fn from(e: io::Error) -> Self {
        HarnessError::Io(e)
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), HarnessError> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| HarnessError::Io(io::Error::other(e)))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// `validate`: score the five feasibility inequalities.
pub fn run_validate(
    raw: &RawConfig,
    margin_factor: f64,
    out: Option<&Path>,
    stdout: &mut impl io::Write,
) -> Result<i32, HarnessError> {
    let cfg = raw.build()?;
    let der = derive_eit(&cfg)?;
    let report = feasibility(&cfg, &der, margin_factor);
    writeln!(stdout, "{report}")?;
    if let Some(path) = out {
        write_json(path, &report)?;
    }
    Ok(if report.overall_pass { 0 } else { 2 })
}

/// Everything the `phase` subcommand reports.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PhaseSummary {
    pub derived: DerivedEit,
    pub phase: PhaseResult,
    pub phi_bound: f64,
    pub fidelity: f64,
}

/// `phase`: closed form vs quadrature, bound, and decay fidelity.
pub fn run_phase(
    raw: &RawConfig,
    out: Option<&Path>,
    stdout: &mut impl io::Write,
) -> Result<i32, HarnessError> {
    let cfg = raw.build()?;
    let der = derive_eit(&cfg)?;
    let phase = phase_result(
        &der,
        cfg.rydberg.interaction_constant,
        cfg.width,
        cfg.length,
    )?;
    let summary = PhaseSummary {
        derived: der,
        phase,
        phi_bound: phase_bound(&der, &cfg),
        fidelity: fidelity(&cfg, &der),
    };
    writeln!(stdout, "group velocity v       = {} m/s", sci(der.v))?;
    writeln!(stdout, "sin^2(theta)           = {}", sci(der.sin2_theta))?;
    writeln!(
        stdout,
        "phi (closed form)      = {} rad",
        sci(phase.phi_closed)
    )?;
    writeln!(
        stdout,
        "phi (quadrature)       = {} rad",
        sci(phase.phi_quadrature)
    )?;
    writeln!(
        stdout,
        "relative difference    = {}",
        sci(phase.rel_difference)
    )?;
    writeln!(
        stdout,
        "phi bound              = {} rad",
        sci(summary.phi_bound)
    )?;
    writeln!(stdout, "fidelity               = {}", sci(summary.fidelity))?;
    if let Some(path) = out {
        write_json(path, &summary)?;
    }
    Ok(0)
}

#[derive(Clone, Copy, Debug, Serialize)]
struct AxisInfo {
    min: f64,
    max: f64,
    points: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
struct GridParameters {
    interaction_constant: f64,
    width: f64,
    length: f64,
    v: f64,
    sin2_theta: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
struct GridHeader {
    z1: AxisInfo,
    z2: AxisInfo,
    time: f64,
    parameters: GridParameters,
}

/// Diagnostics written by `collide`.
#[derive(Clone, Debug, Serialize)]
pub struct CollideMetrics {
    pub homogeneity: f64,
    /// True when the phase is identically zero (C = 0), where the relative
    /// spread is defined as 0 by convention.
    pub exact_zero_phase: bool,
    pub schmidt_number: f64,
    pub schmidt_spectrum: Vec<f64>,
    pub phase: PhaseResult,
    pub fidelity: f64,
}

/// `collide`: evolve the two-pulse wavefunction through the medium and
/// write the grid, diagnostics, and the two reduced plot-data curves.
pub fn run_collide(
    raw: &RawConfig,
    grid_points: usize,
    out_dir: &Path,
    stdout: &mut impl io::Write,
) -> Result<i32, HarnessError> {
    let cfg = raw.build()?;
    let der = derive_eit(&cfg)?;
    let c_dd = cfg.rydberg.interaction_constant;

    let scenario = default_scenario(&cfg, &der, grid_points)?;
    let grid = evolve_scenario(&scenario, &der, c_dd, cfg.width)?;

    fs::create_dir_all(out_dir)?;

    // grid CSV, z1-major
    let mut csv = String::with_capacity(grid.n1() * grid.n2() * 48);
    csv.push_str("z1_m,z2_m,re,im\n");
    for (i, &z1) in grid.z1_grid().iter().enumerate() {
        for (j, &z2) in grid.z2_grid().iter().enumerate() {
            let a = grid.amplitude(i, j);
            csv.push_str(&csv_line(&[sci(z1), sci(z2), sci(a.re), sci(a.im)]));
        }
    }
    fs::write(out_dir.join("grid.csv"), csv)?;

    let header = GridHeader {
        z1: AxisInfo {
            min: grid.z1_grid()[0],
            max: *grid.z1_grid().last().unwrap(),
            points: grid.n1(),
        },
        z2: AxisInfo {
            min: grid.z2_grid()[0],
            max: *grid.z2_grid().last().unwrap(),
            points: grid.n2(),
        },
        time: grid.time(),
        parameters: GridParameters {
            interaction_constant: c_dd,
            width: cfg.width,
            length: cfg.length,
            v: der.v,
            sin2_theta: der.sin2_theta,
        },
    };
    write_json(&out_dir.join("grid_header.json"), &header)?;

    let spectrum = schmidt_spectrum(&grid)?;
    let metrics = CollideMetrics {
        homogeneity: homogeneity_metric(&grid)?,
        exact_zero_phase: c_dd == 0.0,
        schmidt_number: schmidt_number(&spectrum),
        schmidt_spectrum: spectrum,
        phase: phase_result(&der, c_dd, cfg.width, cfg.length)?,
        fidelity: fidelity(&cfg, &der),
    };
    write_json(&out_dir.join("metrics.json"), &metrics)?;

    // reduced potential curve over zeta in [-4, 4]
    let mut pot = String::from("zeta,g_reduced\n");
    for i in 0..CURVE_POINTS {
        let zeta = -4.0 + 8.0 * i as f64 / (CURVE_POINTS - 1) as f64;
        pot.push_str(&csv_line(&[sci(zeta), sci(reduced_potential(zeta))]));
    }
    fs::write(out_dir.join("potential_curve.csv"), pot)?;

    // collision phase phi(v t, L - v t, t) in units of 2C/(v w^2),
    // against tau = v t / w
    let tau_max = cfg.length / cfg.width;
    let phase_unit = 2.0 * c_dd / (der.v * cfg.width * cfg.width);
    let mut pha = String::from("tau,phi_reduced\n");
    for i in 0..CURVE_POINTS {
        let tau = tau_max * i as f64 / (CURVE_POINTS - 1) as f64;
        let t = tau * cfg.width / der.v;
        let reduced = if phase_unit == 0.0 {
            0.0
        } else {
            phase_shift(der.v * t, cfg.length - der.v * t, t, &der, c_dd, cfg.width)? / phase_unit
        };
        pha.push_str(&csv_line(&[sci(tau), sci(reduced)]));
    }
    fs::write(out_dir.join("phase_curve.csv"), pha)?;

    writeln!(stdout, "wrote grid.csv, grid_header.json, metrics.json,")?;
    writeln!(
        stdout,
        "      potential_curve.csv, phase_curve.csv to {}",
        out_dir.display()
    )?;
    writeln!(stdout, "homogeneity    = {}", sci(metrics.homogeneity))?;
    writeln!(stdout, "schmidt number = {}", sci(metrics.schmidt_number))?;
    Ok(0)
}

/// `scan` result document.
#[derive(Clone, Debug, Serialize)]
pub struct ScanDocument {
    pub axis: ScanAxis,
    pub margin_factor: f64,
    pub rows: Vec<ScanRow>,
}

/// Render scan rows as CSV (header row with units, LF endings).
pub fn scan_to_csv(axis: &ScanAxis, rows: &[ScanRow]) -> String {
    let mut out = scan_csv_header(axis);
    for r in rows {
        out.push_str(&csv_line(&[
            sci(r.value),
            sci(r.v),
            sci(r.delta_omega),
            sci(r.phi_closed),
            sci(r.phi_bound),
            sci(r.fidelity),
            r.feasible.to_string(),
        ]));
    }
    out
}

/// `scan`: sweep one field, tabulate, write CSV or JSON.
pub fn run_scan(
    raw: &RawConfig,
    axis: &ScanAxis,
    margin_factor: f64,
    json: bool,
    out: Option<&Path>,
    stdout: &mut impl io::Write,
) -> Result<i32, HarnessError> {
    let rows = run_scan_rows(raw, axis, margin_factor);
    let text = if json {
        let doc = ScanDocument {
            axis: axis.clone(),
            margin_factor,
            rows,
        };
        let mut s = serde_json::to_string_pretty(&doc)
            .map_err(|e| HarnessError::Io(io::Error::other(e)))?;
        s.push('\n');
        s
    } else {
        scan_to_csv(axis, &rows)
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(0)
}

/// One expected-window comparison in the worked-example summary.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ReproWindow {
    pub name: &'static str,
    pub value: f64,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub pass: bool,
}

fn window(name: &'static str, value: f64, lo: Option<f64>, hi: Option<f64>) -> ReproWindow {
    let pass = lo.is_none_or(|l| value > l) && hi.is_none_or(|h| value < h);
    ReproWindow {
        name,
        value,
        lo,
        hi,
        pass,
    }
}

/// Full summary of the built-in worked example.
#[derive(Clone, Debug, Serialize)]
pub struct PaperReproSummary {
    pub config: MediumConfig,
    pub derived: DerivedEit,
    pub dd_contact_shift: f64,
    pub contact_over_bandwidth: f64,
    pub phase: PhaseResult,
    pub phi_bound: f64,
    pub fidelity: f64,
    pub homogeneity: f64,
    pub feasibility: FeasibilityReport,
    pub windows: Vec<ReproWindow>,
    pub overall_pass: bool,
}

/// Compute the worked-example summary for any configuration.
pub fn paper_repro_summary(
    raw: &RawConfig,
    margin_factor: f64,
    grid_points: usize,
) -> Result<PaperReproSummary, HarnessError> {
    let cfg = raw.build()?;
    let der = derive_eit(&cfg)?;
    let c_dd = cfg.rydberg.interaction_constant;
    let phase = phase_result(&der, c_dd, cfg.width, cfg.length)?;
    let report = feasibility(&cfg, &der, margin_factor);
    let scenario = default_scenario(&cfg, &der, grid_points)?;
    let grid = evolve_scenario(&scenario, &der, c_dd, cfg.width)?;
    let homogeneity = homogeneity_metric(&grid)?;
    let dd_contact_shift = dd_potential_1d(0.0, c_dd, cfg.width).abs();
    let contact_over_bandwidth = dd_contact_shift / der.delta_omega;
    let fid = fidelity(&cfg, &der);

    let windows = vec![
        window("group_velocity_m_s", der.v, Some(3.5), Some(5.0)),
        window("fidelity", fid, Some(0.95), None),
        window("phi_closed_rad", phase.phi_closed, Some(2.4), Some(3.4)),
        window(
            "contact_shift_over_bandwidth",
            contact_over_bandwidth,
            Some(0.7),
            Some(1.0),
        ),
        window("phase_homogeneity", homogeneity, None, Some(0.01)),
    ];
    let overall_pass = report.overall_pass && windows.iter().all(|w| w.pass);
    Ok(PaperReproSummary {
        config: cfg,
        derived: der,
        dd_contact_shift,
        contact_over_bandwidth,
        phase,
        phi_bound: phase_bound(&der, &cfg),
        fidelity: fid,
        homogeneity,
        feasibility: report,
        windows,
        overall_pass,
    })
}

/// `paper-repro`: run the worked example (or an override config) and check
/// the expected windows.
pub fn run_paper_repro(
    raw: &RawConfig,
    margin_factor: f64,
    grid_points: usize,
    out: Option<&Path>,
    stdout: &mut impl io::Write,
) -> Result<i32, HarnessError> {
    let s = paper_repro_summary(raw, margin_factor, grid_points)?;
    writeln!(stdout, "v              = {} m/s", sci(s.derived.v))?;
    writeln!(
        stdout,
        "kappa0 L       = {}",
        sci(s.derived.kappa0 * s.config.length)
    )?;
    writeln!(
        stdout,
        "delta_omega    = {} rad/s",
        sci(s.derived.delta_omega)
    )?;
    writeln!(stdout, "|delta(0)|     = {} rad/s", sci(s.dd_contact_shift))?;
    writeln!(stdout, "phi_closed     = {} rad", sci(s.phase.phi_closed))?;
    writeln!(
        stdout,
        "phi_quadrature = {} rad",
        sci(s.phase.phi_quadrature)
    )?;
    writeln!(stdout, "phi_bound      = {} rad", sci(s.phi_bound))?;
    writeln!(stdout, "fidelity       = {}", sci(s.fidelity))?;
    writeln!(stdout, "homogeneity    = {}", sci(s.homogeneity))?;
    writeln!(stdout)?;
    writeln!(stdout, "{}", s.feasibility)?;
    writeln!(stdout)?;
    for w in &s.windows {
        let lo = w.lo.map_or("-inf".to_owned(), sci);
        let hi = w.hi.map_or("inf".to_owned(), sci);
        writeln!(
            stdout,
            "{:<30} {:>18} in ({lo}, {hi}): {}",
            w.name,
            sci(w.value),
            if w.pass { "pass" } else { "MISS" }
        )?;
    }
    writeln!(
        stdout,
        "overall: {}",
        if s.overall_pass { "PASS" } else { "FAIL" }
    )?;
    if let Some(path) = out {
        write_json(path, &s)?;
    }
    Ok(if s.overall_pass { 0 } else { 2 })
}
