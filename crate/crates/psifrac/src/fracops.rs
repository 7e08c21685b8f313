//! The fractional integral and derivative operators taken with respect to a
//! weight function, anchored at either end of the working interval, and the
//! weighted Taylor expansion they generate.
//!
//! Both operators integrate in the transformed variable `u = psi(s)`, which
//! turns the kernel into a pure endpoint weight `(U - u)^(alpha-1)` handled
//! by [`quad::integrate_endpoint_singular`](crate::quad::integrate_endpoint_singular).

use crate::error::{Error, Result};
use crate::funcs::TestFunction;
use crate::psi::{Interval, PsiFunction, ScalarFunction};
use crate::quad::{self, gamma, SingularEnd, DEFAULT_TOL};
use crate::Side;

/// Smallest integer order `n` with `n - 1 < alpha <= n`: `floor(alpha) + 1`
/// for fractional orders, `alpha` itself when `alpha` is an integer.
pub fn integer_order(alpha: f64) -> Result<usize> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Param(format!("fractional order must be positive, got {alpha}")));
    }
    let rounded = alpha.round();
    if (alpha - rounded).abs() < 1e-12 {
        Ok(rounded as usize)
    } else {
        Ok(alpha.floor() as usize + 1)
    }
}

/// Is `alpha` treated as an integer order?
pub fn is_integer_order(alpha: f64) -> bool {
    (alpha - alpha.round()).abs() < 1e-12
}

/// Order, side and interval of one fractional operator application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracParams {
    pub alpha: f64,
    pub n: usize,
    pub side: Side,
    pub interval: Interval,
}

impl FracParams {
    pub fn new(alpha: f64, side: Side, interval: Interval) -> Result<Self> {
        Ok(Self { alpha, n: integer_order(alpha)?, side, interval })
    }
}

/// Fractional integral of order `alpha` at `t`:
/// `1/Gamma(alpha) * int psi'(s) (psi(t)-psi(s))^(alpha-1) f(s) ds` over
/// `[a, t]` (left) or with the mirrored kernel over `[t, b]` (right).
/// Returns 0 when `t` sits at the anchor.
pub fn rl_integral(side: Side, f: &ScalarFunction, psi: &PsiFunction, alpha: f64, t: f64) -> Result<f64> {
    rl_integral_tol(side, f, psi, alpha, t, DEFAULT_TOL)
}

pub fn rl_integral_tol(
    side: Side,
    f: &ScalarFunction,
    psi: &PsiFunction,
    alpha: f64,
    t: f64,
    tol: f64,
) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Param(format!("fractional order must be positive, got {alpha}")));
    }
    if !psi.domain().contains(t) {
        return Err(Error::Range(format!("evaluation point {t} outside [{}, {}]", psi.a(), psi.b())));
    }
    let u_t = psi.eval(t);
    let (lo, hi, singular) = match side {
        Side::Left => (psi.psi_a(), u_t, SingularEnd::Hi),
        Side::Right => (u_t, psi.psi_b(), SingularEnd::Lo),
    };
    let width = hi - lo;
    if width <= 0.0 || width < 1e-15 * psi.psi_len() {
        return Ok(0.0);
    }
    let psi_c = *psi;
    let f_c = f.clone();
    let r = quad::integrate_endpoint_singular(
        move |u| f_c.eval(psi_c.inverse_clamped(u)),
        lo,
        hi,
        alpha - 1.0,
        singular,
        tol,
    )?;
    Ok(r.value / gamma(alpha))
}

/// Fractional derivative of order `alpha` at `t`: the kernel of order
/// `n - alpha` applied to the n-fold weighted derivative. For integer
/// `alpha` this collapses to `f^[n](t)` (left) or `(-1)^n f^[n](t)`
/// (right) with no quadrature.
pub fn caputo_derivative(side: Side, f: &TestFunction, psi: &PsiFunction, alpha: f64, t: f64) -> Result<f64> {
    caputo_derivative_tol(side, f, psi, alpha, t, DEFAULT_TOL)
}

pub fn caputo_derivative_tol(
    side: Side,
    f: &TestFunction,
    psi: &PsiFunction,
    alpha: f64,
    t: f64,
    tol: f64,
) -> Result<f64> {
    let n = integer_order(alpha)?;
    if let Some(available) = f.max_order() {
        if n > available {
            return Err(Error::Order { requested: n, available });
        }
    }
    if !psi.domain().contains(t) {
        return Err(Error::Range(format!("evaluation point {t} outside [{}, {}]", psi.a(), psi.b())));
    }
    let inner_sign = match side {
        Side::Left => 1.0,
        Side::Right => {
            if n % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        }
    };
    if is_integer_order(alpha) {
        return Ok(inner_sign * f.psi_deriv(n, t)?);
    }
    let u_t = psi.eval(t);
    let (lo, hi, singular) = match side {
        Side::Left => (psi.psi_a(), u_t, SingularEnd::Hi),
        Side::Right => (u_t, psi.psi_b(), SingularEnd::Lo),
    };
    let width = hi - lo;
    if width <= 0.0 || width < 1e-15 * psi.psi_len() {
        return Ok(0.0);
    }
    let f_c = f.clone();
    let r = quad::integrate_endpoint_singular(
        move |u| f_c.psi_deriv_at_u(n, u).unwrap_or(f64::NAN),
        lo,
        hi,
        n as f64 - alpha - 1.0,
        singular,
        tol,
    )?;
    Ok(inner_sign * r.value / gamma(n as f64 - alpha))
}

/// The fractional derivative packaged as a callable of the evaluation
/// point; evaluation failures surface as NaN and are caught downstream.
pub fn caputo_scalar(side: Side, f: &TestFunction, psi: &PsiFunction, alpha: f64, tol: f64) -> ScalarFunction {
    let f = f.clone();
    let psi = *psi;
    ScalarFunction::new(psi.domain(), move |t| {
        caputo_derivative_tol(side, &f, &psi, alpha, t, tol).unwrap_or(f64::NAN)
    })
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// Partial sum of the weighted Taylor expansion:
/// left `sum_{k<n} f^[k](a)/k! (psi(t)-psi(a))^k`,
/// right `sum_{k<n} (-1)^k f^[k](b)/k! (psi(b)-psi(t))^k`.
pub fn taylor_partial_sum(side: Side, f: &TestFunction, psi: &PsiFunction, n: usize, t: f64) -> Result<f64> {
    let u_t = psi.eval(t);
    let mut acc = 0.0;
    for k in 0..n {
        let term = match side {
            Side::Left => f.psi_deriv(k, psi.a())? / factorial(k) * (u_t - psi.psi_a()).powi(k as i32),
            Side::Right => {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * f.psi_deriv(k, psi.b())? / factorial(k) * (psi.psi_b() - u_t).powi(k as i32)
            }
        };
        acc += term;
    }
    Ok(acc)
}

/// Max absolute residual of `f = partial_sum + I^alpha D^alpha f` over a
/// grid: the identity the whole inequality family rests on. The inner
/// derivative is evaluated through quadrature (tolerance 1e-9) and the
/// outer integral at 1e-7.
pub fn taylor_residual(side: Side, f: &TestFunction, psi: &PsiFunction, alpha: f64, grid: &[f64]) -> Result<f64> {
    let n = integer_order(alpha)?;
    let d = caputo_scalar(side, f, psi, alpha, 1e-9);
    let mut worst: f64 = 0.0;
    for &t in grid {
        let reconstructed = taylor_partial_sum(side, f, psi, n, t)? + rl_integral_tol(side, &d, psi, alpha, t, 1e-7)?;
        let r = (f.eval(t) - reconstructed).abs();
        if r.is_nan() {
            return Err(Error::Eval(format!("Taylor residual NaN at t = {t}")));
        }
        worst = worst.max(r);
    }
    Ok(worst)
}
