//! Globally adaptive quadrature on a Gauss-Kronrod 7/15 pair.
//!
//! The embedded low/high-order rule gives a per-interval error estimate
//! (rescaled the same way QUADPACK does); the interval with the worst
//! estimate is bisected until the requested tolerance is met or the
//! evaluation budget runs out. Integrands with known cusps must be split at
//! the cusp by the caller; the bisection then converges at full order on
//! each smooth piece.

#![allow(clippy::excessive_precision)] // nodes and weights quoted at full published precision

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;
#[allow(unused_imports)] // float math comes from libm when std is off
use num_traits::Float;

/// Hard cap on integrand evaluations before giving up.
pub const MAX_EVALUATIONS: usize = 1_000_000;
/// Default relative tolerance; leaves three digits of headroom over the
/// 1e-6 scale checked by the verification suite.
pub const DEFAULT_REL_TOL: f64 = 1e-9;
/// Default absolute tolerance in the caller's (reduced) units.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;

/// Outcome of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    /// Estimate of the integral, in the caller's units.
    pub value: f64,
    /// Estimated absolute error, `>= 0`.
    pub abs_error_estimate: f64,
    /// Number of integrand evaluations spent (`>= 1`).
    pub evaluations: usize,
}

/// Failure modes of [`integrate_adaptive`].
#[derive(Clone, Debug, PartialEq)]
pub enum QuadratureError {
    /// Bounds or tolerances violate the preconditions.
    InvalidInput(&'static str),
    /// The integrand produced NaN or infinity inside the interval.
    NonFiniteIntegrand { at: f64 },
    /// Tolerance was not reached within [`MAX_EVALUATIONS`]; carries the
    /// best estimate found.
    ToleranceNotReached { best: QuadratureResult },
}

impl core::fmt::Display for QuadratureError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            QuadratureError::InvalidInput(msg) => write!(f, "invalid quadrature input: {msg}"),
            QuadratureError::NonFiniteIntegrand { at } => {
                write!(f, "integrand is non-finite at x = {at}")
            }
            QuadratureError::ToleranceNotReached { best } => write!(
                f,
                "quadrature tolerance not reached after {} evaluations (best estimate {} +/- {})",
                best.evaluations, best.value, best.abs_error_estimate
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for QuadratureError {}

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights, from QUADPACK's dqk15.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// QUADPACK's empirical error rescaling: damps the raw |K15 - G7|
/// difference toward the scale of the integrand's variation.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

struct PanelEstimate {
    value: f64,
    error: f64,
    non_finite_at: Option<f64>,
}

/// One G7/K15 evaluation over `[a, b]` (15 integrand calls).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> PanelEstimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];
    let mut res_kronrod = WGK[7] * f_center;
    let mut res_gauss = WG[3] * f_center;
    let mut res_abs = res_kronrod.abs();
    let mut non_finite_at = if f_center.is_finite() {
        None
    } else {
        Some(center)
    };

    for j in 0..7 {
        let dx = half * XGK[j];
        let x1 = center - dx;
        let x2 = center + dx;
        let v1 = f(x1);
        let v2 = f(x2);
        if non_finite_at.is_none() {
            if !v1.is_finite() {
                non_finite_at = Some(x1);
            } else if !v2.is_finite() {
                non_finite_at = Some(x2);
            }
        }
        fv1[j] = v1;
        fv2[j] = v2;
        let fsum = v1 + v2;
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (v1.abs() + v2.abs());
        if j % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss nodes
            res_gauss += WG[j / 2] * fsum;
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let raw_err = (res_kronrod - res_gauss) * half;
    PanelEstimate {
        value: res_kronrod * half,
        error: rescale_error(raw_err, res_abs * half.abs(), res_asc * half.abs()),
        non_finite_at,
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    seq: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on error; older panels win ties so refinement order is
        // deterministic
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Integrate `f` over `[a, b]` until
/// `|error| <= max(abs_tol, rel_tol * |value|)`.
///
/// Deterministic for identical inputs. Returns the best estimate inside
/// [`QuadratureError::ToleranceNotReached`] if the budget of
/// [`MAX_EVALUATIONS`] runs out or the interval can no longer be split.
pub fn integrate_adaptive<F>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !a.is_finite() || !b.is_finite() {
        return Err(QuadratureError::InvalidInput("bounds must be finite"));
    }
    if a >= b {
        return Err(QuadratureError::InvalidInput("bounds must satisfy a < b"));
    }
    if !(rel_tol.is_finite() && rel_tol > 0.0 && abs_tol.is_finite() && abs_tol > 0.0) {
        return Err(QuadratureError::InvalidInput("tolerances must be positive"));
    }

    let mut evaluations = 15usize;
    let mut seq = 0usize;
    let first = gk15(&f, a, b);
    if let Some(at) = first.non_finite_at {
        return Err(QuadratureError::NonFiniteIntegrand { at });
    }

    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut total_value = first.value;
    let mut total_error = first.error;
    heap.push(Panel {
        a,
        b,
        value: first.value,
        error: first.error,
        seq,
    });

    loop {
        if total_error <= abs_tol.max(rel_tol * total_value.abs()) {
            return Ok(QuadratureResult {
                value: total_value,
                abs_error_estimate: total_error,
                evaluations,
            });
        }
        let best = QuadratureResult {
            value: total_value,
            abs_error_estimate: total_error,
            evaluations,
        };
        if evaluations + 30 > MAX_EVALUATIONS {
            return Err(QuadratureError::ToleranceNotReached { best });
        }
        // worst panel; heap is non-empty by construction
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Err(QuadratureError::ToleranceNotReached { best }),
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval is at machine resolution; no further progress possible
            return Err(QuadratureError::ToleranceNotReached { best });
        }
        let left = gk15(&f, worst.a, mid);
        let right = gk15(&f, mid, worst.b);
        evaluations += 30;
        if let Some(at) = left.non_finite_at.or(right.non_finite_at) {
            return Err(QuadratureError::NonFiniteIntegrand { at });
        }
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        seq += 1;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: left.value,
            error: left.error,
            seq,
        });
        seq += 1;
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: right.value,
            error: right.error,
            seq,
        });
    }
}

/// [`integrate_adaptive`] with the default tolerances.
pub fn integrate<F>(f: F, a: f64, b: f64) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_adaptive(f, a, b, DEFAULT_REL_TOL, DEFAULT_ABS_TOL)
}
