//! Integration engine: a 15-point Gauss-Kronrod base rule with global
//! bisection adaptivity, plus an endpoint-singularity-aware wrapper for
//! kernels of the form `(hi - u)^g` or `(u - lo)^g` with `g > -1`.
//!
//! The gamma function lives here as well since every operator and theorem
//! coefficient needs it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Default tolerance for fixture-grade integrals.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance used inside the inequality harness where margins are >= 1e-3.
pub const HARNESS_TOL: f64 = 1e-7;

/// Panel cap for the adaptive driver.
const MAX_PANELS: usize = 1 << 14;

// Lanczos coefficients, from Pugh's analysis of the Lanczos approximation
// (the same table statrs uses); good to ~1e-14 relative over the range
// needed here.
const GAMMA_R: f64 = 10.900511;
#[allow(clippy::excessive_precision)]
const GAMMA_DK: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];
#[allow(clippy::excessive_precision)]
const TWO_SQRT_E_OVER_PI: f64 = 1.8603827342052657173362492472666631120594218414085755;

/// Gamma function via the Lanczos approximation.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, &dk)| s + dk / (i as f64 - x));
        std::f64::consts::PI
            / ((std::f64::consts::PI * x).sin()
                * s
                * TWO_SQRT_E_OVER_PI
                * ((0.5 - x + GAMMA_R) / std::f64::consts::E).powf(0.5 - x))
    } else {
        let s = GAMMA_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(GAMMA_DK[0], |s, (i, &dk)| s + dk / (x + i as f64 - 1.0));
        s * TWO_SQRT_E_OVER_PI * ((x - 0.5 + GAMMA_R) / std::f64::consts::E).powf(x - 0.5)
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// 15-point Kronrod nodes with the embedded 7-point Gauss rule (QUADPACK).
#[allow(clippy::excessive_precision)]
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
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];
#[allow(clippy::excessive_precision)]
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

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One G7-K15 application on `[a, b]`. Returns (value, error estimate).
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];

    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();

    for (j, wg) in WG.iter().enumerate().take(3) {
        let jtw = j * 2 + 1;
        let x = half * XGK[jtw];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_gauss += wg * (f1 + f2);
        res_kronrod += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    res_gauss += WG[3] * f_center;

    for j in 0..4 {
        let jtwm1 = j * 2;
        if jtwm1 >= 7 {
            break;
        }
        let x = half * XGK[jtwm1];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_kronrod += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half;
    let value = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    (value, rescale_error(err, res_abs, res_asc))
}

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
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
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// Adaptive integration of `g` over `[lo, hi]`: bisection of the current
/// worst panel under the G7-K15 rule until the summed error estimate meets
/// `tol` (absolute) or the panel cap is hit.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult> {
    if !(lo < hi) {
        return Err(Error::Param(format!("integration bounds must satisfy lo < hi, got [{lo}, {hi}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Param(format!("tolerance must be positive, got {tol}")));
    }

    let (v, e) = qk15(&g, lo, hi);
    if !v.is_finite() || !e.is_finite() {
        return Err(Error::Eval(format!("integrand produced a non-finite value on [{lo}, {hi}]")));
    }
    let mut evaluations = 15usize;
    let mut total_value = v;
    let mut total_err = e;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { lo, hi, value: v, err: e });

    let min_width = (hi - lo) * f64::EPSILON * 16.0;
    // panels too narrow to bisect at double precision are parked; their
    // contribution stays in the totals
    let mut parked = 0usize;

    while total_err > tol && total_err > total_value.abs() * 1e-15 {
        if heap.len() + parked >= MAX_PANELS {
            return Err(Error::NonConvergence {
                estimate: total_err,
                tol,
                panels: heap.len() + parked,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        if worst.hi - worst.lo <= min_width {
            parked += 1;
            continue;
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        let (v1, e1) = qk15(&g, worst.lo, mid);
        let (v2, e2) = qk15(&g, mid, worst.hi);
        if !(v1.is_finite() && v2.is_finite() && e1.is_finite() && e2.is_finite()) {
            return Err(Error::Eval(format!(
                "integrand produced a non-finite value on [{}, {}]",
                worst.lo, worst.hi
            )));
        }
        evaluations += 30;
        total_value += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { lo: worst.lo, hi: mid, value: v1, err: e1 });
        heap.push(Panel { lo: mid, hi: worst.hi, value: v2, err: e2 });
    }

    Ok(QuadResult {
        value: total_value,
        error_estimate: total_err.max(0.0),
        evaluations,
    })
}

/// Which endpoint carries the algebraic weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularEnd {
    Lo,
    Hi,
}

/// Computes `int_lo^hi w(u) g(u) du` with `w(u) = (hi - u)^gamma_exp`
/// (`singular_at = Hi`) or `(u - lo)^gamma_exp` (`singular_at = Lo`).
///
/// The weight is absorbed by the substitution `v = (hi - u)^(gamma_exp + 1)`
/// (resp. `(u - lo)^(gamma_exp + 1)`), which removes the singularity for
/// every `gamma_exp > -1`; the transformed integral goes through
/// [`integrate_adaptive`].
pub fn integrate_endpoint_singular<F: Fn(f64) -> f64>(
    g: F,
    lo: f64,
    hi: f64,
    gamma_exp: f64,
    singular_at: SingularEnd,
    tol: f64,
) -> Result<QuadResult> {
    if gamma_exp <= -1.0 {
        return Err(Error::Param(format!(
            "weight exponent must exceed -1 for integrability, got {gamma_exp}"
        )));
    }
    if !(lo < hi) {
        return Err(Error::Param(format!("integration bounds must satisfy lo < hi, got [{lo}, {hi}]")));
    }
    let c = gamma_exp + 1.0;
    let span = (hi - lo).powf(c);
    let inv = 1.0 / c;
    let transformed = |v: f64| {
        let offset = v.powf(inv);
        let u = match singular_at {
            SingularEnd::Hi => (hi - offset).clamp(lo, hi),
            SingularEnd::Lo => (lo + offset).clamp(lo, hi),
        };
        g(u)
    };
    let inner = integrate_adaptive(transformed, 0.0, span, tol * c)?;
    Ok(QuadResult {
        value: inner.value / c,
        error_estimate: inner.error_estimate / c,
        evaluations: inner.evaluations,
    })
}
