//! `psifrac` — fractional-operator evaluation and inequality verification
//! from the command line.
//!
//! Exit codes: 0 all checks passed, 1 at least one inequality failure,
//! 2 usage or configuration error.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use psifrac::fracops::{caputo_derivative, rl_integral};
use psifrac::iyengar::{minimizer_split, Checker};
use psifrac::norms::theorem_coefficient;
use psifrac::parse::{parse_function, parse_psi, parse_regime, parse_side};
use psifrac::report::{fmt_f64, summarize, Status, SuiteRow, CSV_HEADER};
use psifrac::suite::run_problems;

#[derive(Parser)]
#[command(name = "psifrac", version, about = "Fractional-operator numerics and inequality verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configured verification suite; write a per-instance CSV and a
    /// summary, exit 1 on any failing instance
    Verify {
        /// TOML suite configuration
        config: PathBuf,
        /// Override the output directory from the config
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Also evaluate the weighted-L1 bound with its as-printed
        /// coefficients and write a side-by-side comparison CSV
        #[arg(long = "as-printed-326")]
        as_printed_326: bool,
        /// Worker threads (0 = auto); the PSIFRAC_THREADS environment
        /// variable is used when the flag is absent
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print the fractional integral and derivative of a function at the
    /// given points
    Operator {
        /// left | right
        #[arg(long)]
        side: String,
        /// identity | log | exp | power:S | affine:C0,C1
        #[arg(long)]
        psi: String,
        /// working interval, e.g. 0,1
        #[arg(long, value_delimiter = ',')]
        interval: Vec<f64>,
        #[arg(long)]
        alpha: f64,
        /// monomial:beta=B | poly:C0,C1,... | flat:R
        #[arg(long = "fn")]
        function: String,
        /// evaluation points, comma-separated
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<f64>,
    },
    /// Sweep the split point (or the order) of one inequality instance and
    /// print a CSV series with an argmin footer
    Sweep {
        #[arg(long)]
        psi: String,
        #[arg(long, value_delimiter = ',')]
        interval: Vec<f64>,
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        alpha: f64,
        /// linf | l1psi | lqpsi:P
        #[arg(long, default_value = "linf")]
        regime: String,
        /// s | alpha
        #[arg(long, default_value = "s")]
        variable: String,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// order range for alpha sweeps, e.g. 0.1,0.9
        #[arg(long, value_delimiter = ',')]
        range: Option<Vec<f64>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { config, out_dir, as_printed_326, threads } => {
            cmd_verify(&config, out_dir.as_deref(), as_printed_326, threads)
        }
        Command::Operator { side, psi, interval, alpha, function, points } => {
            cmd_operator(&side, &psi, &interval, alpha, &function, &points)
        }
        Command::Sweep { psi, interval, function, alpha, regime, variable, grid, range } => {
            cmd_sweep(&psi, &interval, &function, alpha, &regime, &variable, grid, range.as_deref())
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn thread_request(flag: Option<usize>) -> Result<usize, String> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("PSIFRAC_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("PSIFRAC_THREADS must be a nonnegative integer, got '{v}'")),
        Err(_) => Ok(0),
    }
}

fn cmd_verify(
    config_path: &Path,
    out_dir: Option<&Path>,
    as_printed_326: bool,
    threads: Option<usize>,
) -> Result<ExitCode, String> {
    let text = fs::read_to_string(config_path)
        .map_err(|e| format!("cannot read config {}: {e}", config_path.display()))?;
    let cfg = config::parse_config(&text).map_err(|e| e.to_string())?;
    let problems = config::build_problems(&cfg).map_err(|e| e.to_string())?;
    let threads = thread_request(threads)?;

    let mut rows = run_problems(&problems, threads);
    // re-derive pass/fail under the configured tolerance (the default
    // matches the runner exactly)
    let check_rel = cfg.tolerances.check_rel;
    for row in &mut rows {
        if let (Some(margin), Some(rhs)) = (row.margin, row.rhs) {
            let pass = margin >= -check_rel * rhs.max(1.0);
            row.status = if pass { Status::Pass } else { Status::Fail };
        }
    }

    let dir = out_dir
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| PathBuf::from(&cfg.output.dir));
    fs::create_dir_all(&dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.csv_line());
        csv.push('\n');
    }
    let csv_path = dir.join(&cfg.output.csv);
    fs::write(&csv_path, &csv).map_err(|e| format!("cannot write {}: {e}", csv_path.display()))?;

    let mut summary = format!("psifrac verify (seed {})\n", cfg.seed);
    summary.push_str(&summarize(&rows));
    let summary_path = dir.join(&cfg.output.summary);
    fs::write(&summary_path, &summary)
        .map_err(|e| format!("cannot write {}: {e}", summary_path.display()))?;

    if as_printed_326 {
        let mut alt = String::from(CSV_HEADER);
        alt.push('\n');
        for row in &rows {
            let (Some(lhs), Some(alt_rhs)) = (row.lhs, row.rhs_printed_326) else {
                continue;
            };
            let margin = alt_rhs - lhs;
            let status = if margin >= -check_rel * alt_rhs.max(1.0) { Status::Pass } else { Status::Fail };
            let alt_row = SuiteRow {
                lhs: Some(lhs),
                rhs: Some(alt_rhs),
                margin: Some(margin),
                status,
                ..row.clone()
            };
            alt.push_str(&alt_row.csv_line());
            alt.push('\n');
        }
        let alt_path = dir.join("report_printed326.csv");
        fs::write(&alt_path, &alt).map_err(|e| format!("cannot write {}: {e}", alt_path.display()))?;
    }

    print!("{summary}");
    let failures = rows.iter().filter(|r| r.status.is_failure()).count();
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn interval_pair(interval: &[f64]) -> Result<(f64, f64), String> {
    if interval.len() != 2 {
        return Err("--interval needs exactly two values, e.g. --interval 0,1".into());
    }
    Ok((interval[0], interval[1]))
}

fn cmd_operator(
    side: &str,
    psi_spec: &str,
    interval: &[f64],
    alpha: f64,
    function: &str,
    points: &[f64],
) -> Result<ExitCode, String> {
    let (lo, hi) = interval_pair(interval)?;
    let side = parse_side(side).map_err(|e| e.to_string())?;
    let psi = parse_psi(psi_spec, lo, hi).map_err(|e| e.to_string())?;
    let f = parse_function(function, &psi).map_err(|e| e.to_string())?;
    let scalar = f.as_scalar();
    println!("t,integral,derivative");
    for &t in points {
        let integral = rl_integral(side, &scalar, &psi, alpha, t).map_err(|e| e.to_string())?;
        let derivative = caputo_derivative(side, &f, &psi, alpha, t).map_err(|e| e.to_string())?;
        println!("{},{},{}", fmt_f64(t), fmt_f64(integral), fmt_f64(derivative));
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    psi_spec: &str,
    interval: &[f64],
    function: &str,
    alpha: f64,
    regime_spec: &str,
    variable: &str,
    grid: usize,
    range: Option<&[f64]>,
) -> Result<ExitCode, String> {
    if grid < 3 {
        return Err("sweep grid needs at least 3 points".into());
    }
    let (lo_t, hi_t) = interval_pair(interval)?;
    let psi = parse_psi(psi_spec, lo_t, hi_t).map_err(|e| e.to_string())?;
    let f = parse_function(function, &psi).map_err(|e| e.to_string())?;
    let regime = parse_regime(regime_spec).map_err(|e| e.to_string())?;

    match variable {
        "s" => {
            let coeff = theorem_coefficient(regime, alpha).map_err(|e| e.to_string())?;
            let checker = Checker::new(&f, &psi, alpha, regime).map_err(|e| e.to_string())?;
            println!("s,lhs,rhs,margin");
            let mut best: Option<(f64, f64)> = None;
            for j in 0..grid {
                let u = psi.psi_a() + psi.psi_len() * j as f64 / (grid - 1) as f64;
                let s = psi.inverse_clamped(u);
                let lhs = checker.lhs_split(s).map_err(|e| e.to_string())?;
                let rhs = checker.rhs_split(s).map_err(|e| e.to_string())?;
                println!("{},{},{},{}", fmt_f64(s), fmt_f64(lhs), fmt_f64(rhs), fmt_f64(rhs - lhs));
                if best.map(|(_, r)| rhs < r).unwrap_or(true) {
                    best = Some((s, rhs));
                }
            }
            if (coeff.theta - 1.0).abs() < 1e-12 {
                println!("# constant bracket; minimizer degenerate");
            } else {
                let (s_min, _) = best.unwrap();
                println!(
                    "# argmin s={} (transformed midpoint at s={})",
                    fmt_f64(s_min),
                    fmt_f64(minimizer_split(&psi))
                );
            }
        }
        "alpha" => {
            let range = range.ok_or("alpha sweeps need --range lo,hi")?;
            if range.len() != 2 {
                return Err("--range needs exactly two values, e.g. --range 0.1,0.9".into());
            }
            let (lo, hi) = (range[0], range[1]);
            if !(lo > 0.0 && hi > lo) {
                return Err("alpha range must satisfy 0 < lo < hi".into());
            }
            println!("alpha,lhs,rhs,margin");
            let s = minimizer_split(&psi);
            for j in 0..grid {
                let a = lo + (hi - lo) * j as f64 / (grid - 1) as f64;
                if let Err(e) = regime.validate(a) {
                    println!("# skipped alpha={}: {}", fmt_f64(a), e);
                    continue;
                }
                let checker = Checker::new(&f, &psi, a, regime).map_err(|e| e.to_string())?;
                let lhs = checker.lhs_split(s).map_err(|e| e.to_string())?;
                let rhs = checker.rhs_split(s).map_err(|e| e.to_string())?;
                println!("{},{},{},{}", fmt_f64(a), fmt_f64(lhs), fmt_f64(rhs), fmt_f64(rhs - lhs));
            }
        }
        other => return Err(format!("sweep variable must be 's' or 'alpha', got '{other}'")),
    }
    Ok(ExitCode::SUCCESS)
}
