//! Weight functions: a closed set of strictly increasing smooth functions
//! with exact derivatives and inverses, and the iterated weighted-derivative
//! operator `((1/psi') d/dt)^k` for plain callables (finite differences in
//! the transformed variable `u = psi(t)`).

use std::sync::Arc;

use crate::error::{Error, Result};

/// A closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !(a < b) {
            return Err(Error::Param(format!("interval must satisfy a < b (finite), got [{a}, {b}]")));
        }
        Ok(Self { a, b })
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, t: f64) -> bool {
        let slack = 1e-12 * self.len().max(1.0);
        t >= self.a - slack && t <= self.b + slack
    }

    pub fn clamp(&self, t: f64) -> f64 {
        t.clamp(self.a, self.b)
    }
}

/// The supported weight kinds. Keeping this a closed enumeration makes
/// derivatives and inverses exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiKind {
    Identity,
    /// `c0 + c1 t` with `c1 > 0`
    Affine { c0: f64, c1: f64 },
    /// `ln t` on a domain inside `(0, inf)`
    Log,
    /// `t^sigma` with `sigma > 0`, domain inside `(0, inf)`
    Power { sigma: f64 },
    /// `e^t`
    Exp,
}

impl PsiKind {
    /// Parses a kind from its report label and parameter list.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self> {
        let want = |n: usize| -> Result<()> {
            if params.len() != n {
                Err(Error::Param(format!(
                    "weight kind '{name}' takes {n} parameter(s), got {}",
                    params.len()
                )))
            } else {
                Ok(())
            }
        };
        match name {
            "identity" => {
                want(0)?;
                Ok(Self::Identity)
            }
            "affine" => {
                want(2)?;
                Ok(Self::Affine { c0: params[0], c1: params[1] })
            }
            "log" => {
                want(0)?;
                Ok(Self::Log)
            }
            "power" => {
                want(1)?;
                Ok(Self::Power { sigma: params[0] })
            }
            "exp" => {
                want(0)?;
                Ok(Self::Exp)
            }
            other => Err(Error::Param(format!("unknown weight kind '{other}'"))),
        }
    }
}

/// An increasing smooth weight function restricted to a working interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiFunction {
    kind: PsiKind,
    domain: Interval,
}

impl PsiFunction {
    /// Builds a weight function, validating parameter constraints and that
    /// the working interval stays inside the kind's natural domain.
    pub fn new(kind: PsiKind, domain: Interval) -> Result<Self> {
        match kind {
            PsiKind::Affine { c1, .. } => {
                if !(c1 > 0.0) {
                    return Err(Error::Param(format!("affine slope must be positive, got {c1}")));
                }
            }
            PsiKind::Log => {
                if !(domain.a > 0.0) {
                    return Err(Error::Domain(format!(
                        "log weight needs a domain inside (0, inf), got [{}, {}]",
                        domain.a, domain.b
                    )));
                }
            }
            PsiKind::Power { sigma } => {
                if !(sigma > 0.0) {
                    return Err(Error::Param(format!("power exponent must be positive, got {sigma}")));
                }
                if !(domain.a > 0.0) {
                    return Err(Error::Domain(format!(
                        "power weight needs a domain inside (0, inf), got [{}, {}]",
                        domain.a, domain.b
                    )));
                }
            }
            PsiKind::Identity | PsiKind::Exp => {}
        }
        Ok(Self { kind, domain })
    }

    pub fn kind(&self) -> PsiKind {
        self.kind
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn a(&self) -> f64 {
        self.domain.a
    }

    pub fn b(&self) -> f64 {
        self.domain.b
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.kind {
            PsiKind::Identity => t,
            PsiKind::Affine { c0, c1 } => c0 + c1 * t,
            PsiKind::Log => t.ln(),
            PsiKind::Power { sigma } => t.powf(sigma),
            PsiKind::Exp => t.exp(),
        }
    }

    pub fn deriv(&self, t: f64) -> f64 {
        match self.kind {
            PsiKind::Identity => 1.0,
            PsiKind::Affine { c1, .. } => c1,
            PsiKind::Log => 1.0 / t,
            PsiKind::Power { sigma } => sigma * t.powf(sigma - 1.0),
            PsiKind::Exp => t.exp(),
        }
    }

    /// Value of psi at the left end of the working interval.
    pub fn psi_a(&self) -> f64 {
        self.eval(self.domain.a)
    }

    /// Value of psi at the right end of the working interval.
    pub fn psi_b(&self) -> f64 {
        self.eval(self.domain.b)
    }

    /// `psi(b) - psi(a)`, the length of the transformed interval.
    pub fn psi_len(&self) -> f64 {
        self.psi_b() - self.psi_a()
    }

    /// Inverse of psi for `u` in `[psi(a), psi(b)]`. Closed form per kind.
    pub fn inverse(&self, u: f64) -> Result<f64> {
        let (ua, ub) = (self.psi_a(), self.psi_b());
        let slack = 1e-9 * (ub - ua).max(1.0);
        if u < ua - slack || u > ub + slack {
            return Err(Error::Range(format!(
                "inverse argument {u} outside [{ua}, {ub}]"
            )));
        }
        Ok(self.inverse_clamped(u))
    }

    /// Closed-form inverse with the result clamped into the working
    /// interval (round-off at the endpoints must not escape the domain).
    pub fn inverse_clamped(&self, u: f64) -> f64 {
        let t = match self.kind {
            PsiKind::Identity => u,
            PsiKind::Affine { c0, c1 } => (u - c0) / c1,
            PsiKind::Log => u.exp(),
            PsiKind::Power { sigma } => u.powf(1.0 / sigma),
            PsiKind::Exp => u.ln(),
        };
        self.domain.clamp(t)
    }

    /// Label used in reports and CSV output.
    pub fn label(&self) -> String {
        match self.kind {
            PsiKind::Identity => "identity".into(),
            PsiKind::Affine { c0, c1 } => format!("affine({c0};{c1})"),
            PsiKind::Log => "log".into(),
            PsiKind::Power { sigma } => format!("power({sigma})"),
            PsiKind::Exp => "exp".into(),
        }
    }
}

/// Convenience constructor mirroring the report labels.
pub fn make_psi(name: &str, params: &[f64], a: f64, b: f64) -> Result<PsiFunction> {
    PsiFunction::new(PsiKind::from_name(name, params)?, Interval::new(a, b)?)
}

/// An evaluable real function on a declared interval. Cheap to clone and
/// safe to evaluate from multiple threads.
#[derive(Clone)]
pub struct ScalarFunction {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    domain: Interval,
}

impl ScalarFunction {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(domain: Interval, f: F) -> Self {
        Self { f: Arc::new(f), domain }
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }
}

impl std::fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ScalarFunction on [{}, {}]", self.domain.a, self.domain.b)
    }
}

// Finite-difference step in the transformed variable.
fn fd_step(ua: f64, ub: f64) -> f64 {
    (1e-5f64).max(1e-5 * (ub - ua))
}

// First derivative of `phi` at `u`, step `h`, staying inside `[lo, hi]`.
// The stencil (central or one-sided, both second order) is chosen by the
// coarse step so that the Richardson pair below stays consistent.
fn fd1_at(phi: &dyn Fn(f64) -> f64, u: f64, h: f64, coarse_h: f64, lo: f64, hi: f64) -> f64 {
    if u - coarse_h >= lo && u + coarse_h <= hi {
        (phi(u + h) - phi(u - h)) / (2.0 * h)
    } else if u + 2.0 * coarse_h <= hi {
        (-3.0 * phi(u) + 4.0 * phi(u + h) - phi(u + 2.0 * h)) / (2.0 * h)
    } else {
        (3.0 * phi(u) - 4.0 * phi(u - h) + phi(u - 2.0 * h)) / (2.0 * h)
    }
}

fn fd1_richardson(phi: Arc<dyn Fn(f64) -> f64 + Send + Sync>, lo: f64, hi: f64, h: f64) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
    Arc::new(move |u: f64| {
        let coarse = fd1_at(&*phi, u, h, h, lo, hi);
        let fine = fd1_at(&*phi, u, 0.5 * h, h, lo, hi);
        (4.0 * fine - coarse) / 3.0
    })
}

/// The k-fold weighted derivative `((1/psi'(t)) d/dt)^k f` as a new
/// callable, computed by central differences (Richardson-extrapolated once)
/// in the variable `u = psi(t)`; near the ends of `[psi(a), psi(b)]` the
/// stencils switch to one-sided forms of matching order.
pub fn psi_derivative(f: &ScalarFunction, psi: &PsiFunction, k: usize) -> ScalarFunction {
    let psi = *psi;
    let (ua, ub) = (psi.psi_a(), psi.psi_b());
    let h = fd_step(ua, ub);
    let base: Arc<dyn Fn(f64) -> f64 + Send + Sync> = {
        let f = f.clone();
        Arc::new(move |u: f64| f.eval(psi.inverse_clamped(u)))
    };
    let mut cur = base;
    for _ in 0..k {
        cur = fd1_richardson(cur, ua, ub, h);
    }
    ScalarFunction::new(f.domain(), move |t: f64| cur(psi.eval(t)))
}
