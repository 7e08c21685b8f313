//! Small spec-string parsers shared by the command-line front end and the
//! browser demo: weight specs like `power:2`, function specs like
//! `monomial:beta=1.5` or `poly:1,-2,0.5`, regimes like `lqpsi:2`.

use crate::error::{Error, Result};
use crate::funcs::{boundary_flat, psi_monomial, psi_polynomial, TestFunction};
use crate::norms::Regime;
use crate::psi::{make_psi, PsiFunction};
use crate::Side;

fn parse_num(text: &str, what: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| Error::Param(format!("cannot parse {what} '{text}' as a number")))
}

/// `identity` | `log` | `exp` | `power:SIGMA` | `affine:C0,C1`, bound to
/// the working interval `[a, b]`.
pub fn parse_psi(spec: &str, a: f64, b: f64) -> Result<PsiFunction> {
    let (kind, rest) = match spec.split_once(':') {
        Some((k, r)) => (k.trim(), r.trim()),
        None => (spec.trim(), ""),
    };
    let params: Vec<f64> = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|p| parse_num(p, "weight parameter"))
            .collect::<Result<_>>()?
    };
    make_psi(kind, &params, a, b)
}

/// `monomial:beta=B[,anchor=left|right]` | `poly:C0,C1,...[@left|@right]` |
/// `flat:R`.
pub fn parse_function(spec: &str, psi: &PsiFunction) -> Result<TestFunction> {
    let (family, rest) = match spec.split_once(':') {
        Some((f, r)) => (f.trim(), r.trim()),
        None => (spec.trim(), ""),
    };
    match family {
        "monomial" => {
            let mut beta = None;
            let mut anchor = Side::Left;
            for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
                match part.trim().split_once('=') {
                    Some(("beta", v)) => beta = Some(parse_num(v, "beta")?),
                    Some(("anchor", v)) => anchor = parse_side(v)?,
                    _ => return Err(Error::Param(format!("bad monomial parameter '{part}'"))),
                }
            }
            let beta = beta.ok_or_else(|| Error::Param("monomial needs beta=<value>".into()))?;
            psi_monomial(psi, anchor, beta)
        }
        "poly" => {
            let (coeff_text, anchor) = match rest.split_once('@') {
                Some((c, side)) => (c, parse_side(side)?),
                None => (rest, Side::Left),
            };
            let coeffs: Vec<f64> = coeff_text
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| parse_num(p, "polynomial coefficient"))
                .collect::<Result<_>>()?;
            if coeffs.is_empty() {
                return Err(Error::Param("poly needs at least one coefficient".into()));
            }
            let anchor_t = match anchor {
                Side::Left => psi.a(),
                Side::Right => psi.b(),
            };
            Ok(psi_polynomial(psi, &coeffs, anchor_t))
        }
        "flat" => {
            let r = parse_num(rest, "flatness order")?;
            if r < 1.0 || r.fract() != 0.0 {
                return Err(Error::Param(format!("flatness order must be a positive integer, got {rest}")));
            }
            boundary_flat(psi, r as usize)
        }
        other => Err(Error::Param(format!("unknown function family '{other}'"))),
    }
}

pub fn parse_side(text: &str) -> Result<Side> {
    match text.trim() {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        other => Err(Error::Param(format!("side must be 'left' or 'right', got '{other}'"))),
    }
}

/// `linf` | `l1psi` | `lqpsi:P` (with `q` derived from `1/p + 1/q = 1`).
pub fn parse_regime(text: &str) -> Result<Regime> {
    let t = text.trim();
    if t == "linf" {
        return Ok(Regime::Linf);
    }
    if t == "l1psi" {
        return Ok(Regime::L1Psi);
    }
    if let Some(rest) = t.strip_prefix("lqpsi:") {
        let p = parse_num(rest, "Hoelder exponent p")?;
        if !(p > 1.0) {
            return Err(Error::Param(format!("Hoelder exponent p must exceed 1, got {p}")));
        }
        return Ok(Regime::LqPsi { p, q: p / (p - 1.0) });
    }
    Err(Error::Param(format!(
        "unknown regime '{t}' (expected linf, l1psi or lqpsi:P)"
    )))
}
