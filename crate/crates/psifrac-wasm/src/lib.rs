//! Browser bindings for the interactive demo page: three operations, each
//! returning a JSON string the page plots directly. The JSON builders are
//! plain Rust and unit-tested on the host; only the thin exported wrappers
//! involve wasm-bindgen.

use wasm_bindgen::prelude::wasm_bindgen;

use psifrac::fracops::{caputo_derivative, rl_integral};
use psifrac::iyengar::{check, minimizer_split, Checker, InequalityInstance, Variant};
use psifrac::norms::theorem_coefficient;
use psifrac::parse::{parse_function, parse_psi, parse_regime, parse_side};
use psifrac::Result;

fn json_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        "null".into()
    }
}

fn json_array(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|&v| json_num(v)).collect();
    format!("[{}]", items.join(","))
}

fn json_error(message: impl std::fmt::Display) -> String {
    format!("{{\"error\":\"{}\"}}", message.to_string().replace('"', "'"))
}

fn sweep_curve_impl(
    psi_spec: &str,
    a: f64,
    b: f64,
    fn_spec: &str,
    alpha: f64,
    regime_spec: &str,
    grid: usize,
) -> Result<String> {
    let psi = parse_psi(psi_spec, a, b)?;
    let f = parse_function(fn_spec, &psi)?;
    let regime = parse_regime(regime_spec)?;
    let coeff = theorem_coefficient(regime, alpha)?;
    let checker = Checker::new(&f, &psi, alpha, regime)?;
    let grid = grid.clamp(3, 2001);
    let mut s_vals = Vec::with_capacity(grid);
    let mut lhs = Vec::with_capacity(grid);
    let mut rhs = Vec::with_capacity(grid);
    for j in 0..grid {
        let u = psi.psi_a() + psi.psi_len() * j as f64 / (grid - 1) as f64;
        let s = psi.inverse_clamped(u);
        s_vals.push(s);
        lhs.push(checker.lhs_split(s)?);
        rhs.push(checker.rhs_split(s)?);
    }
    Ok(format!(
        "{{\"s\":{},\"lhs\":{},\"rhs\":{},\"s_star\":{},\"theta\":{},\"degenerate\":{}}}",
        json_array(&s_vals),
        json_array(&lhs),
        json_array(&rhs),
        json_num(minimizer_split(&psi)),
        json_num(coeff.theta),
        (coeff.theta - 1.0).abs() < 1e-12,
    ))
}

fn operator_curve_impl(
    psi_spec: &str,
    a: f64,
    b: f64,
    fn_spec: &str,
    alpha: f64,
    side_spec: &str,
    grid: usize,
) -> Result<String> {
    let psi = parse_psi(psi_spec, a, b)?;
    let f = parse_function(fn_spec, &psi)?;
    let side = parse_side(side_spec)?;
    let scalar = f.as_scalar();
    let grid = grid.clamp(3, 1001);
    let mut t_vals = Vec::with_capacity(grid);
    let mut f_vals = Vec::with_capacity(grid);
    let mut integral = Vec::with_capacity(grid);
    let mut derivative = Vec::with_capacity(grid);
    for j in 0..grid {
        let t = a + (b - a) * j as f64 / (grid - 1) as f64;
        t_vals.push(t);
        f_vals.push(f.eval(t));
        integral.push(rl_integral(side, &scalar, &psi, alpha, t)?);
        derivative.push(caputo_derivative(side, &f, &psi, alpha, t)?);
    }
    Ok(format!(
        "{{\"t\":{},\"f\":{},\"integral\":{},\"derivative\":{}}}",
        json_array(&t_vals),
        json_array(&f_vals),
        json_array(&integral),
        json_array(&derivative),
    ))
}

fn parse_variant(spec: &str) -> Result<Variant> {
    let t = spec.trim();
    if t == "midpoint" {
        return Ok(Variant::Midpoint);
    }
    if t == "sharp_midpoint" {
        return Ok(Variant::SharpMidpoint);
    }
    if t == "trapezoid" {
        return Ok(Variant::Trapezoid);
    }
    if let Some(rest) = t.strip_prefix("split=") {
        let frac: f64 = rest
            .parse()
            .map_err(|_| psifrac::Error::Param(format!("bad split fraction '{rest}'")))?;
        return Ok(Variant::Split { s: frac });
    }
    if let Some(rest) = t.strip_prefix("partition=") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() == 2 {
            let i = parts[0].trim().parse().map_err(|_| psifrac::Error::Param("bad i".into()))?;
            let m = parts[1].trim().parse().map_err(|_| psifrac::Error::Param("bad m".into()))?;
            return Ok(Variant::Partition { i, m });
        }
    }
    Err(psifrac::Error::Param(format!("unknown variant '{t}'")))
}

fn check_report_impl(
    psi_spec: &str,
    a: f64,
    b: f64,
    fn_spec: &str,
    alpha: f64,
    regime_spec: &str,
    variant_spec: &str,
) -> Result<String> {
    let psi = parse_psi(psi_spec, a, b)?;
    let f = parse_function(fn_spec, &psi)?;
    let regime = parse_regime(regime_spec)?;
    let mut variant = parse_variant(variant_spec)?;
    if let Variant::Split { s: frac } = variant {
        // the page passes split points as fractions of the transformed span
        let u = psi.psi_a() + psi.psi_len() * frac.clamp(0.0, 1.0);
        variant = Variant::Split { s: psi.inverse_clamped(u) };
    }
    let inst = InequalityInstance::new(f, psi, alpha, regime, variant)?;
    let r = check(&inst)?;
    Ok(format!(
        "{{\"lhs\":{},\"rhs\":{},\"margin\":{},\"passed\":{},\"norm_left\":{},\"norm_right\":{},\"divisor\":{},\"theta\":{},\"integral_f\":{}}}",
        json_num(r.lhs),
        json_num(r.rhs),
        json_num(r.margin),
        r.passed,
        json_num(r.diagnostics.norm_left),
        json_num(r.diagnostics.norm_right),
        json_num(r.diagnostics.divisor),
        json_num(r.diagnostics.theta),
        json_num(r.diagnostics.integral_f),
    ))
}

/// RHS and LHS of the split-form inequality over a transformed-uniform
/// grid of split points, plus the minimizing split.
#[wasm_bindgen]
pub fn sweep_curve_json(
    psi_spec: &str,
    a: f64,
    b: f64,
    fn_spec: &str,
    alpha: f64,
    regime_spec: &str,
    grid: usize,
) -> String {
    sweep_curve_impl(psi_spec, a, b, fn_spec, alpha, regime_spec, grid).unwrap_or_else(json_error)
}

/// Fractional integral and derivative curves over the working interval.
#[wasm_bindgen]
pub fn operator_curve_json(
    psi_spec: &str,
    a: f64,
    b: f64,
    fn_spec: &str,
    alpha: f64,
    side_spec: &str,
    grid: usize,
) -> String {
    operator_curve_impl(psi_spec, a, b, fn_spec, alpha, side_spec, grid).unwrap_or_else(json_error)
}

/// Full check report for one instance (variant: `midpoint`,
/// `sharp_midpoint`, `trapezoid`, `split=FRAC` or `partition=I,M`).
#[wasm_bindgen]
pub fn check_report_json(
    psi_spec: &str,
    a: f64,
    b: f64,
    fn_spec: &str,
    alpha: f64,
    regime_spec: &str,
    variant_spec: &str,
) -> String {
    check_report_impl(psi_spec, a, b, fn_spec, alpha, regime_spec, variant_spec).unwrap_or_else(json_error)
}
