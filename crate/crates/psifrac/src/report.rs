//! Report rows and deterministic formatting. All floating-point output
//! goes through [`fmt_f64`] (fixed 15-digit decimals, locale-independent)
//! so that identical inputs produce byte-identical reports.

/// Fixed CSV header shared by every per-instance report.
pub const CSV_HEADER: &str = "instance_id,theorem,part,regime,psi,function,alpha,param,lhs,rhs,margin,status";

/// Fixed 15-decimal formatting; negative zero is normalized away.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.15}");
    if s == "-0.000000000000000" {
        "0.000000000000000".into()
    } else {
        s
    }
}

/// Outcome of one suite row.
#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    /// precondition or hypothesis not met; the reason lands in the report
    Skip(String),
    /// an operator failed to evaluate; counted as a failure
    Error(String),
}

impl Status {
    pub fn label(&self) -> String {
        match self {
            Status::Pass => "pass".into(),
            Status::Fail => "fail".into(),
            Status::Skip(reason) => format!("skipped: {reason}"),
            Status::Error(reason) => format!("error: {reason}"),
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Fail | Status::Error(_))
    }
}

/// One evaluated (or skipped) inequality instance.
#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub instance_id: usize,
    /// 1 = sup regime, 2 = weighted L1, 3 = weighted Lq
    pub theorem: u8,
    /// lowercase roman numeral of the variant
    pub part: String,
    pub regime: String,
    pub psi: String,
    pub function: String,
    pub alpha: f64,
    pub param: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub margin: Option<f64>,
    pub status: Status,
    /// weighted-L1 RHS under the as-printed coefficients, where defined;
    /// never part of the main CSV
    pub rhs_printed_326: Option<f64>,
}

impl SuiteRow {
    pub fn csv_line(&self) -> String {
        let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        let clean = |s: &str| s.replace(',', ";");
        format!(
            "{:04},{},{},{},{},{},{},{},{},{},{},{}",
            self.instance_id,
            self.theorem,
            clean(&self.part),
            clean(&self.regime),
            clean(&self.psi),
            clean(&self.function),
            fmt_f64(self.alpha),
            clean(&self.param),
            opt(self.lhs),
            opt(self.rhs),
            opt(self.margin),
            clean(&self.status.label())
        )
    }
}

/// Pass/fail/skip counts keyed by (theorem, part), in report order.
pub fn summarize(rows: &[SuiteRow]) -> String {
    use std::collections::BTreeMap;
    let mut counts: BTreeMap<(u8, String), (usize, usize, usize)> = BTreeMap::new();
    let mut failures = 0usize;
    for row in rows {
        let entry = counts.entry((row.theorem, row.part.clone())).or_default();
        match row.status {
            Status::Pass => entry.0 += 1,
            Status::Fail | Status::Error(_) => {
                entry.1 += 1;
                failures += 1;
            }
            Status::Skip(_) => entry.2 += 1,
        }
    }
    let mut out = String::new();
    out.push_str(&format!("instances: {}\n", rows.len()));
    for ((theorem, part), (pass, fail, skip)) in &counts {
        out.push_str(&format!(
            "theorem {theorem} part ({part}): {pass} pass, {fail} fail, {skip} skip\n"
        ));
    }
    out.push_str(&format!(
        "total failures: {failures}\nresult: {}\n",
        if failures == 0 { "PASS" } else { "FAIL" }
    ));
    out
}
