//! Test functions with closed-form weighted derivatives.
//!
//! Every family here is of the form `f(t) = g(psi(t))` for a `g` whose
//! ordinary derivatives are known, so `f^[k] = g^(k)(psi(t))` is exact and
//! the oracles built on these functions stay independent of the
//! finite-difference path. Polynomial forms additionally carry closed-form
//! fractional derivatives on both sides (used as cross-checks only, never
//! inside the operators).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fracops::integer_order;
use crate::psi::{PsiFunction, ScalarFunction};
use crate::quad::gamma;
use crate::Side;

fn falling_factorial(beta: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc *= beta - j as f64;
    }
    acc
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// k-th derivative of `sum c_j z^j` at `z`.
fn poly_deriv_eval(coeffs: &[f64], k: usize, z: f64) -> f64 {
    let mut acc = 0.0;
    for (j, &c) in coeffs.iter().enumerate().skip(k) {
        acc += c * falling_factorial(j as f64, k) * z.powi((j - k) as i32);
    }
    acc
}

/// Re-express `sum c_j (z0 + w)^j` as coefficients in `w`.
fn poly_shift(coeffs: &[f64], z0: f64) -> Vec<f64> {
    let mut out = vec![0.0; coeffs.len()];
    for (j, &c) in coeffs.iter().enumerate() {
        for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
            *slot += c * binomial(j, i) * z0.powi((j - i) as i32);
        }
    }
    out
}

/// Re-express `sum c_j (z0 - w)^j` as coefficients in `w`.
fn poly_reflect(coeffs: &[f64], z0: f64) -> Vec<f64> {
    let mut out = vec![0.0; coeffs.len()];
    for (j, &c) in coeffs.iter().enumerate() {
        for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
            *slot += c * binomial(j, i) * z0.powi((j - i) as i32) * if i % 2 == 0 { 1.0 } else { -1.0 };
        }
    }
    out
}

#[derive(Clone)]
enum Form {
    /// `scale * (psi(t) - psi(a))^beta`
    PowLeft { beta: f64, scale: f64 },
    /// `scale * (psi(b) - psi(t))^beta`
    PowRight { beta: f64, scale: f64 },
    /// `sum c_j (psi(t) - u0)^j`, with the same polynomial re-based onto
    /// `(u - psi(a))` and `(psi(b) - u)` for the closed fractional forms
    Poly {
        coeffs: Vec<f64>,
        u0: f64,
        left: Vec<f64>,
        right: Vec<f64>,
    },
    /// An opaque callable; weighted derivatives go through the
    /// finite-difference path, pre-built up to the declared order.
    Raw {
        f: ScalarFunction,
        order: usize,
        derivs: Vec<ScalarFunction>,
    },
}

/// A test function bound to its weight function.
#[derive(Clone)]
pub struct TestFunction {
    tag: String,
    psi: PsiFunction,
    form: Arc<Form>,
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TestFunction({})", self.tag)
    }
}

impl TestFunction {
    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }

    pub fn psi(&self) -> &PsiFunction {
        &self.psi
    }

    /// Highest weighted-derivative order available; `None` means unlimited.
    pub fn max_order(&self) -> Option<usize> {
        match &*self.form {
            Form::Raw { order, .. } => Some(*order),
            _ => None,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_at_u(self.psi.eval(t), t)
    }

    fn eval_at_u(&self, u: f64, t: f64) -> f64 {
        match &*self.form {
            Form::PowLeft { beta, scale } => scale * (u - self.psi.psi_a()).max(0.0).powf(*beta),
            Form::PowRight { beta, scale } => scale * (self.psi.psi_b() - u).max(0.0).powf(*beta),
            Form::Poly { coeffs, u0, .. } => poly_deriv_eval(coeffs, 0, u - u0),
            Form::Raw { f, .. } => f.eval(t),
        }
    }

    /// `f^[k]` at `t`: the k-fold weighted derivative.
    pub fn psi_deriv(&self, k: usize, t: f64) -> Result<f64> {
        self.psi_deriv_at_u(k, self.psi.eval(t))
    }

    /// Same as [`psi_deriv`](Self::psi_deriv) but parameterized by
    /// `u = psi(t)`; the operator kernels integrate in this variable.
    pub fn psi_deriv_at_u(&self, k: usize, u: f64) -> Result<f64> {
        match &*self.form {
            Form::PowLeft { beta, scale } => {
                let ff = falling_factorial(*beta, k);
                if ff == 0.0 {
                    return Ok(0.0);
                }
                Ok(scale * ff * (u - self.psi.psi_a()).max(0.0).powf(beta - k as f64))
            }
            Form::PowRight { beta, scale } => {
                let ff = falling_factorial(*beta, k);
                if ff == 0.0 {
                    return Ok(0.0);
                }
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                Ok(sign * scale * ff * (self.psi.psi_b() - u).max(0.0).powf(beta - k as f64))
            }
            Form::Poly { coeffs, u0, .. } => Ok(poly_deriv_eval(coeffs, k, u - u0)),
            Form::Raw { order, derivs, .. } => {
                if k > *order {
                    return Err(Error::Order { requested: k, available: *order });
                }
                Ok(derivs[k].eval(self.psi.inverse_clamped(u)))
            }
        }
    }

    /// Closed-form fractional derivative of order `alpha` where one is
    /// known analytically; `None` otherwise. Validated against the
    /// quadrature operator before use as an oracle.
    pub fn caputo_closed(&self, side: Side, alpha: f64, t: f64) -> Option<f64> {
        let n = integer_order(alpha).ok()?;
        let x = match side {
            Side::Left => (self.psi.eval(t) - self.psi.psi_a()).max(0.0),
            Side::Right => (self.psi.psi_b() - self.psi.eval(t)).max(0.0),
        };
        match (&*self.form, side) {
            (Form::PowLeft { beta, scale }, Side::Left) | (Form::PowRight { beta, scale }, Side::Right) => {
                let is_int = (beta - beta.round()).abs() < 1e-12;
                if is_int && (beta.round() as usize) < n {
                    Some(0.0)
                } else if *beta > n as f64 - 1.0 {
                    Some(scale * gamma(beta + 1.0) / gamma(beta + 1.0 - alpha) * x.powf(beta - alpha))
                } else {
                    None
                }
            }
            (Form::Poly { left, .. }, Side::Left) => Some(poly_frac_deriv(left, n, alpha, x)),
            (Form::Poly { right, .. }, Side::Right) => Some(poly_frac_deriv(right, n, alpha, x)),
            _ => None,
        }
    }

    /// View the function as a plain callable.
    pub fn as_scalar(&self) -> ScalarFunction {
        let this = self.clone();
        ScalarFunction::new(self.psi.domain(), move |t| this.eval(t))
    }

    /// The function multiplied by a constant.
    pub fn scaled(&self, lambda: f64) -> Self {
        let form = match &*self.form {
            Form::PowLeft { beta, scale } => Form::PowLeft { beta: *beta, scale: scale * lambda },
            Form::PowRight { beta, scale } => Form::PowRight { beta: *beta, scale: scale * lambda },
            Form::Poly { coeffs, u0, left, right } => Form::Poly {
                coeffs: coeffs.iter().map(|c| c * lambda).collect(),
                u0: *u0,
                left: left.iter().map(|c| c * lambda).collect(),
                right: right.iter().map(|c| c * lambda).collect(),
            },
            Form::Raw { f, order, .. } => {
                let inner = f.clone();
                let scaled = ScalarFunction::new(f.domain(), move |t| lambda * inner.eval(t));
                return from_scalar(&self.psi, scaled, *order, format!("{}*{}", lambda, self.tag));
            }
        };
        Self {
            tag: format!("{}*{}", lambda, self.tag),
            psi: self.psi,
            form: Arc::new(form),
        }
    }
}

/// `sum_{j >= n} c_j Gamma(j+1)/Gamma(j+1-alpha) x^(j-alpha)` — the closed
/// fractional derivative of a polynomial whose coefficients are expressed
/// in the anchored basis (distance `x` from the anchor).
fn poly_frac_deriv(anchored: &[f64], n: usize, alpha: f64, x: f64) -> f64 {
    let mut acc = 0.0;
    for (j, &c) in anchored.iter().enumerate().skip(n) {
        if c == 0.0 {
            continue;
        }
        acc += c * gamma(j as f64 + 1.0) / gamma(j as f64 + 1.0 - alpha) * x.powf(j as f64 - alpha);
    }
    acc
}

/// `(psi(t) - psi(a))^beta` (left anchor) or `(psi(b) - psi(t))^beta`
/// (right anchor), with exact weighted derivatives of all orders.
pub fn psi_monomial(psi: &PsiFunction, anchor: Side, beta: f64) -> Result<TestFunction> {
    if !(beta >= 0.0) {
        return Err(Error::Param(format!("monomial exponent must be nonnegative, got {beta}")));
    }
    let form = match anchor {
        Side::Left => Form::PowLeft { beta, scale: 1.0 },
        Side::Right => Form::PowRight { beta, scale: 1.0 },
    };
    Ok(TestFunction {
        tag: format!("mono_{}(beta={beta})", anchor.label()),
        psi: *psi,
        form: Arc::new(form),
    })
}

/// `sum c_k (psi(t) - psi(anchor_t))^k` with exact weighted derivatives and
/// closed fractional derivatives on both sides.
pub fn psi_polynomial(psi: &PsiFunction, coeffs: &[f64], anchor_t: f64) -> TestFunction {
    let coeffs: Vec<f64> = if coeffs.is_empty() { vec![0.0] } else { coeffs.to_vec() };
    let u0 = psi.eval(anchor_t);
    let deg = coeffs.len() - 1;
    // with x = u - psi(a):  (u - u0) = (psi(a) - u0) + x
    // with w = psi(b) - u:  (u - u0) = (psi(b) - u0) - w
    let left = poly_shift(&coeffs, psi.psi_a() - u0);
    let right = poly_reflect(&coeffs, psi.psi_b() - u0);
    TestFunction {
        tag: format!("poly(deg={deg})"),
        psi: *psi,
        form: Arc::new(Form::Poly { coeffs, u0, left, right }),
    }
}

/// `[(psi(t) - psi(a)) (psi(b) - psi(t))]^r`: all weighted derivatives of
/// order below `r` vanish at both ends.
pub fn boundary_flat(psi: &PsiFunction, r: usize) -> Result<TestFunction> {
    if r < 1 {
        return Err(Error::Param("flatness order must be at least 1".into()));
    }
    // in z = u - psi(a):  (u - A)(B - u) = len * z - z^2
    let base = vec![0.0, psi.psi_len(), -1.0];
    let mut coeffs = vec![1.0];
    for _ in 0..r {
        coeffs = poly_mul(&coeffs, &base);
    }
    let left = coeffs.clone();
    let right = poly_reflect(&coeffs, psi.psi_len());
    Ok(TestFunction {
        tag: format!("flat(r={r})"),
        psi: *psi,
        form: Arc::new(Form::Poly { coeffs, u0: psi.psi_a(), left, right }),
    })
}

/// Wraps an opaque callable; weighted derivatives use the finite-difference
/// path and are limited to `order`.
pub fn from_scalar(psi: &PsiFunction, f: ScalarFunction, order: usize, tag: impl Into<String>) -> TestFunction {
    let derivs = (0..=order).map(|k| crate::psi::psi_derivative(&f, psi, k)).collect();
    TestFunction {
        tag: tag.into(),
        psi: *psi,
        form: Arc::new(Form::Raw { f, order, derivs }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::{make_psi, Interval};

    #[test]
    fn constant_polynomial_annihilated() {
        let psi = make_psi("identity", &[], 0.0, 1.0).unwrap();
        let f = psi_polynomial(&psi, &[5.0], 0.0);
        assert_eq!(f.eval(0.7), 5.0);
        for k in 1..4 {
            assert_eq!(f.psi_deriv(k, 0.3).unwrap(), 0.0);
        }
    }

    #[test]
    fn linear_polynomial_derivative() {
        let psi = make_psi("identity", &[], 0.0, 1.0).unwrap();
        let f = psi_polynomial(&psi, &[0.0, 1.0], 0.0);
        assert_eq!(f.eval(0.25), 0.25);
        assert_eq!(f.psi_deriv(1, 0.8).unwrap(), 1.0);
    }

    #[test]
    fn log_weight_second_derivative_constant() {
        let e = std::f64::consts::E;
        let psi = make_psi("log", &[], 1.0, e).unwrap();
        let f = psi_polynomial(&psi, &[1.0, 2.0, 3.0], 1.0);
        for t in [1.2, 1.9, 2.5] {
            assert!((f.psi_deriv(2, t).unwrap() - 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn monomial_rejects_negative_exponent() {
        let psi = make_psi("identity", &[], 0.0, 1.0).unwrap();
        assert!(psi_monomial(&psi, Side::Left, -0.5).is_err());
    }

    #[test]
    fn monomial_constant_has_zero_fractional_derivative() {
        let psi = make_psi("log", &[], 1.0, 4.0).unwrap();
        let f = psi_monomial(&psi, Side::Left, 0.0).unwrap();
        assert_eq!(f.eval(2.0), 1.0);
        assert_eq!(f.caputo_closed(Side::Left, 0.7, 2.0), Some(0.0));
    }

    #[test]
    fn boundary_flat_values_vanish() {
        let psi = make_psi("identity", &[], 0.0, 1.0).unwrap();
        let f = boundary_flat(&psi, 1).unwrap();
        assert!((f.eval(0.5) - 0.25).abs() < 1e-15);
        assert!(f.eval(0.0).abs() < 1e-15);
        assert!(f.eval(1.0).abs() < 1e-15);
    }

    #[test]
    fn boundary_flat_derivatives_vanish_below_order() {
        for r in [1usize, 2, 3] {
            let psi = make_psi("log", &[], 1.0, std::f64::consts::E).unwrap();
            let f = boundary_flat(&psi, r).unwrap();
            for k in 0..r {
                assert!(
                    f.psi_deriv(k, psi.a()).unwrap().abs() < 1e-9,
                    "r={r} k={k} at a"
                );
                assert!(
                    f.psi_deriv(k, psi.b()).unwrap().abs() < 1e-9,
                    "r={r} k={k} at b"
                );
            }
            // order r does not vanish
            assert!(f.psi_deriv(r, psi.a()).unwrap().abs() > 1e-6);
        }
    }

    #[test]
    fn right_anchored_basis_agrees_with_direct_eval() {
        let psi = make_psi("power", &[2.0], 1.0, 2.0).unwrap();
        let f = psi_polynomial(&psi, &[0.5, -1.5, 2.0, 0.25], 1.3);
        // the right-anchored coefficients must reproduce the same function
        if let Form::Poly { right, .. } = &*f.form {
            for t in [1.0, 1.4, 1.8, 2.0] {
                let w = psi.psi_b() - psi.eval(t);
                let via_right: f64 = right
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c * w.powi(j as i32))
                    .sum();
                assert!((via_right - f.eval(t)).abs() < 1e-12);
            }
        } else {
            panic!("expected polynomial form");
        }
    }

    #[test]
    fn raw_wrapper_enforces_order() {
        let dom = Interval::new(0.0, 1.0).unwrap();
        let psi = make_psi("identity", &[], 0.0, 1.0).unwrap();
        let f = from_scalar(&psi, ScalarFunction::new(dom, |t: f64| t.sin()), 2, "sin");
        assert!(f.psi_deriv(2, 0.5).is_ok());
        assert!(matches!(f.psi_deriv(3, 0.5), Err(Error::Order { .. })));
    }

    #[test]
    fn scaling_is_linear_everywhere() {
        let psi = make_psi("identity", &[], 0.0, 1.0).unwrap();
        let f = boundary_flat(&psi, 2).unwrap();
        let g = f.scaled(3.0);
        for t in [0.1, 0.6, 0.9] {
            assert!((g.eval(t) - 3.0 * f.eval(t)).abs() < 1e-14);
            assert!((g.psi_deriv(2, t).unwrap() - 3.0 * f.psi_deriv(2, t).unwrap()).abs() < 1e-12);
        }
    }
}
