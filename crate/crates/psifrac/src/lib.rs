//! Numerics for fractional integrals and derivatives taken with respect to
//! an increasing weight function, together with checkers for the
//! trapezoid-type integral inequalities those operators satisfy.
//!
//! The crate is organized bottom-up:
//!
//! - [`psi`] — the weight functions (identity, affine, log, power, exp),
//!   their derivatives/inverses, and the iterated weighted derivative.
//! - [`funcs`] — test functions with closed-form weighted derivatives and,
//!   where available, closed-form fractional derivatives.
//! - [`quad`] — adaptive Gauss-Kronrod integration, an endpoint-singular
//!   wrapper for weakly singular kernels, and the gamma function.
//! - [`fracops`] — the fractional integral and derivative operators (both
//!   sides) and the weighted Taylor expansion built from them.
//! - [`norms`] — sup / weighted-L1 / weighted-Lq norms and the per-regime
//!   bound coefficients.
//! - [`iyengar`] — LHS/RHS evaluation of the inequality family in all six
//!   variants plus the classical two-endpoint baseline.
//! - [`suite`] — deterministic randomized verification suites and a
//!   parallel runner.
//! - [`report`] — CSV/report row types and fixed-precision formatting.
//! - [`parse`] — tiny spec-string parsers shared by the CLI and the demo.

// `!(x > 0.0)`-style guards are used on purpose: they reject NaN along
// with out-of-range values, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fracops;
pub mod funcs;
pub mod iyengar;
pub mod norms;
pub mod parse;
pub mod psi;
pub mod quad;
pub mod report;
pub mod suite;

pub use error::{Error, Result};

/// Which endpoint anchors an operator or expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn label(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}
