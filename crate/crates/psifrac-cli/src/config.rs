//! TOML suite configuration and its expansion into runnable problems.
//! The expansion order (weights, then functions, then orders, then
//! regimes, then variants) fixes the report row order; together with the
//! seeded generator this makes reports a pure function of the config
//! bytes.

use serde::Deserialize;

use psifrac::funcs::{boundary_flat, psi_monomial, psi_polynomial, TestFunction};
use psifrac::iyengar::Variant;
use psifrac::norms::Regime;
use psifrac::psi::{make_psi, PsiFunction};
use psifrac::suite::{SplitMix64, SuiteProblem};
use psifrac::{Error, Result, Side};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputCfg,
    pub psi: Vec<PsiCfg>,
    #[serde(default)]
    pub functions: Vec<FuncCfg>,
    pub alphas: Vec<f64>,
    pub regimes: RegimesCfg,
    pub variants: VariantsCfg,
    #[serde(default)]
    pub tolerances: TolerancesCfg,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputCfg {
    #[serde(default = "default_out_dir")]
    pub dir: String,
    #[serde(default = "default_csv_name")]
    pub csv: String,
    #[serde(default = "default_summary_name")]
    pub summary: String,
}

fn default_out_dir() -> String {
    "out".into()
}
fn default_csv_name() -> String {
    "report.csv".into()
}
fn default_summary_name() -> String {
    "summary.txt".into()
}

impl Default for OutputCfg {
    fn default() -> Self {
        Self {
            dir: default_out_dir(),
            csv: default_csv_name(),
            summary: default_summary_name(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesCfg {
    /// relative pass tolerance: a row fails when
    /// `margin < -check_rel * max(1, rhs)`
    #[serde(default = "default_check_rel")]
    pub check_rel: f64,
}

fn default_check_rel() -> f64 {
    1e-6
}

impl Default for TolerancesCfg {
    fn default() -> Self {
        Self { check_rel: default_check_rel() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiCfg {
    pub kind: String,
    #[serde(default)]
    pub params: Vec<f64>,
    pub interval: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum FuncCfg {
    #[serde(rename = "monomial")]
    Monomial {
        beta: f64,
        #[serde(default = "default_anchor")]
        anchor: String,
    },
    #[serde(rename = "poly")]
    Poly {
        coeffs: Vec<f64>,
        #[serde(default = "default_anchor")]
        anchor: String,
    },
    #[serde(rename = "flat")]
    Flat { r: usize },
    #[serde(rename = "random_poly")]
    RandomPoly {
        count: usize,
        #[serde(default = "default_max_degree")]
        max_degree: usize,
    },
}

fn default_anchor() -> String {
    "left".into()
}
fn default_max_degree() -> usize {
    4
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimesCfg {
    #[serde(default)]
    pub linf: bool,
    #[serde(default)]
    pub l1psi: bool,
    /// (p, q) Hoelder pairs, each its own regime column
    #[serde(default)]
    pub lqpsi: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariantsCfg {
    /// split points as fractions of the transformed interval
    #[serde(default)]
    pub split: Vec<f64>,
    #[serde(default)]
    pub midpoint: bool,
    #[serde(default)]
    pub sharp_midpoint: bool,
    /// (i, m) node choices
    #[serde(default)]
    pub partition: Vec<[u32; 2]>,
    #[serde(default)]
    pub partition_flat: Vec<[u32; 2]>,
    #[serde(default)]
    pub trapezoid: bool,
}

pub fn parse_config(text: &str) -> Result<Config> {
    let config: Config =
        toml::from_str(text).map_err(|e| Error::Param(format!("config parse error: {e}")))?;
    if config.psi.is_empty() {
        return Err(Error::Param("no weight functions configured".into()));
    }
    if config.functions.is_empty() {
        return Err(Error::Param("no test functions".into()));
    }
    if config.alphas.is_empty() {
        return Err(Error::Param("no orders configured".into()));
    }
    if !config.regimes.linf && !config.regimes.l1psi && config.regimes.lqpsi.is_empty() {
        return Err(Error::Param("no regimes enabled".into()));
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must be rejected too
    if !(config.tolerances.check_rel > 0.0) {
        return Err(Error::Param("check_rel must be positive".into()));
    }
    for v in &config.variants.split {
        if !(0.0..=1.0).contains(v) {
            return Err(Error::Param(format!("split fraction {v} outside [0, 1]")));
        }
    }
    Ok(config)
}

fn side_from(name: &str) -> Result<Side> {
    match name {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        other => Err(Error::Param(format!("anchor must be 'left' or 'right', got '{other}'"))),
    }
}

fn build_functions(cfg: &Config, psi: &PsiFunction, rng: &mut SplitMix64) -> Result<Vec<TestFunction>> {
    let mut out = Vec::new();
    for spec in &cfg.functions {
        match spec {
            FuncCfg::Monomial { beta, anchor } => {
                out.push(psi_monomial(psi, side_from(anchor)?, *beta)?);
            }
            FuncCfg::Poly { coeffs, anchor } => {
                let anchor_t = match side_from(anchor)? {
                    Side::Left => psi.a(),
                    Side::Right => psi.b(),
                };
                out.push(psi_polynomial(psi, coeffs, anchor_t));
            }
            FuncCfg::Flat { r } => {
                out.push(boundary_flat(psi, *r)?);
            }
            FuncCfg::RandomPoly { count, max_degree } => {
                if *max_degree < 1 {
                    return Err(Error::Param("random_poly needs max_degree >= 1".into()));
                }
                for idx in 0..*count {
                    let degree = 1 + rng.below(*max_degree);
                    let coeffs: Vec<f64> = (0..=degree).map(|_| rng.uniform(-2.0, 2.0)).collect();
                    let anchor_t = if idx % 2 == 0 { psi.a() } else { psi.b() };
                    out.push(
                        psi_polynomial(psi, &coeffs, anchor_t)
                            .with_tag(format!("rpoly(deg={degree};#{})", idx + 1)),
                    );
                }
            }
        }
    }
    Ok(out)
}

fn build_variants(cfg: &VariantsCfg, psi: &PsiFunction) -> Vec<Variant> {
    let mut out = Vec::new();
    for &frac in &cfg.split {
        let u = psi.psi_a() + psi.psi_len() * frac;
        out.push(Variant::Split { s: psi.inverse_clamped(u) });
    }
    if cfg.midpoint {
        out.push(Variant::Midpoint);
    }
    if cfg.sharp_midpoint {
        out.push(Variant::SharpMidpoint);
    }
    for &[i, m] in &cfg.partition {
        out.push(Variant::Partition { i, m });
    }
    for &[i, m] in &cfg.partition_flat {
        out.push(Variant::PartitionFlat { i, m });
    }
    if cfg.trapezoid {
        out.push(Variant::Trapezoid);
    }
    out
}

/// Expands a parsed config into problems in deterministic report order.
pub fn build_problems(cfg: &Config) -> Result<Vec<SuiteProblem>> {
    let mut regimes: Vec<Regime> = Vec::new();
    if cfg.regimes.linf {
        regimes.push(Regime::Linf);
    }
    if cfg.regimes.l1psi {
        regimes.push(Regime::L1Psi);
    }
    for &[p, q] in &cfg.regimes.lqpsi {
        regimes.push(Regime::LqPsi { p, q });
    }

    let mut rng = SplitMix64::new(cfg.seed);
    let mut problems = Vec::new();
    for psi_cfg in &cfg.psi {
        let psi = make_psi(&psi_cfg.kind, &psi_cfg.params, psi_cfg.interval[0], psi_cfg.interval[1])?;
        let functions = build_functions(cfg, &psi, &mut rng)?;
        let variants = build_variants(&cfg.variants, &psi);
        for f in &functions {
            for &alpha in &cfg.alphas {
                for &regime in &regimes {
                    let skip = regime.validate(alpha).err().map(|e| match e {
                        Error::Regime(msg) => msg,
                        other => other.to_string(),
                    });
                    problems.push(SuiteProblem {
                        f: f.clone(),
                        psi,
                        alpha,
                        regime,
                        variants: if skip.is_none() { variants.clone() } else { Vec::new() },
                        skip,
                    });
                }
            }
        }
    }
    Ok(problems)
}
