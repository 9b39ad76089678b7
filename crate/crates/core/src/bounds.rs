//! Bound exponents and trend tables.
//!
//! All counts and exponents are exact integers; the ratio columns are the
//! only floating-point values and are reported, never asserted.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::subset::{binomial, binomial_sum_le, small_side_size, GroundScale};

pub const COLUMNS: [&str; 9] = [
    "n",
    "lower_exp",
    "middle_exp",
    "overhead_exp",
    "small_side",
    "count_scarce",
    "count_linear",
    "ratio_scarce",
    "ratio_linear",
];

/// Exact counts for one `n`, when known.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Counts {
    pub scarce: Option<BigUint>,
    pub linear: Option<BigUint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub n: u32,
    /// `C(n, ⌈(n+1)/2⌉)`, the exponent of the lower bound.
    pub lower_exp: BigUint,
    /// `C(n, ⌊n/2⌋)`.
    pub middle_exp: BigUint,
    /// `2 · Σ_{k ≤ ⌊n/3⌋} C(n, k)`.
    pub overhead_exp: BigUint,
    /// `|S(n)|`.
    pub small_side: BigUint,
    pub count_scarce: Option<BigUint>,
    pub count_linear: Option<BigUint>,
}

impl BoundRow {
    /// `log2(count_scarce) / middle_exp`.
    pub fn ratio_scarce(&self) -> Option<f64> {
        self.count_scarce
            .as_ref()
            .map(|c| log2(c) / to_f64(&self.middle_exp))
    }

    pub fn ratio_linear(&self) -> Option<f64> {
        self.count_linear
            .as_ref()
            .map(|c| log2(c) / to_f64(&self.middle_exp))
    }

    /// Checks the exponent inequalities and, where counts are present,
    /// `2^lower ≤ scarce ≤ linear ≤ scarce · 2^|S|`.
    pub fn validate(&self) -> VerificationReport {
        let mut report = VerificationReport::new(format!("bound chain, n={}", self.n));
        report.check(self.lower_exp <= self.middle_exp, || {
            format!(
                "lower_exp {} > middle_exp {}",
                self.lower_exp, self.middle_exp
            )
        });
        report.check(self.small_side <= self.overhead_exp, || {
            format!(
                "|S| {} > overhead_exp {}",
                self.small_side, self.overhead_exp
            )
        });
        if let Some(scarce) = &self.count_scarce {
            let floor = pow2(&self.lower_exp);
            report.check(&floor <= scarce, || {
                format!("count_scarce {scarce} below 2^{}", self.lower_exp)
            });
        }
        if let (Some(scarce), Some(linear)) = (&self.count_scarce, &self.count_linear) {
            report.check(scarce <= linear, || {
                format!("count_scarce {scarce} > count_linear {linear}")
            });
            let ceiling = scarce * pow2(&self.small_side);
            report.check(linear <= &ceiling, || {
                format!(
                    "count_linear {linear} > count_scarce * 2^{}",
                    self.small_side
                )
            });
        }
        report
    }
}

fn pow2(exp: &BigUint) -> BigUint {
    let e = exp.to_u64().expect("exponent fits u64");
    BigUint::from(1u32) << e
}

fn to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// `log2` of an exact integer, accurate for values far beyond `f64` range.
pub fn log2(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return to_f64(x).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit head");
    top.log2() + shift as f64
}

pub fn bound_row(n: GroundScale, counts: Counts) -> BoundRow {
    let k = n.n();
    BoundRow {
        n: k,
        lower_exp: binomial(k, (k + 2) / 2).expect("ceil((n+1)/2) <= n"),
        middle_exp: binomial(k, k / 2).expect("floor(n/2) <= n"),
        overhead_exp: binomial_sum_le(k, k / 3) * 2u32,
        small_side: small_side_size(n),
        count_scarce: counts.scarce,
        count_linear: counts.linear,
    }
}

/// Rows for `n_min..=n_max`; `counts(n)` supplies whatever is known.
pub fn trend_table<F>(n_min: u32, n_max: u32, mut counts: F) -> Result<Vec<BoundRow>>
where
    F: FnMut(GroundScale) -> Result<Counts>,
{
    if n_min > n_max {
        return Err(Error::input(format!("empty range {n_min}..={n_max}")));
    }
    (n_min..=n_max)
        .map(|n| {
            let scale = GroundScale::new(n)?;
            Ok(bound_row(scale, counts(scale)?))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::input(format!("unknown report format {other:?}"))),
        }
    }
}

fn ratio_text(r: Option<f64>) -> Option<String> {
    r.map(|r| format!("{r:.6}"))
}

/// Serializes rows. Integers are decimal strings, ratios carry six decimals,
/// missing counts are `null` in JSON and `uncomputed` in CSV.
pub fn emit_report(rows: &[BoundRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "lower_exp": r.lower_exp.to_string(),
                        "middle_exp": r.middle_exp.to_string(),
                        "overhead_exp": r.overhead_exp.to_string(),
                        "small_side": r.small_side.to_string(),
                        "count_scarce": r.count_scarce.as_ref().map(|c| c.to_string()),
                        "count_linear": r.count_linear.as_ref().map(|c| c.to_string()),
                        "ratio_scarce": ratio_text(r.ratio_scarce()),
                        "ratio_linear": ratio_text(r.ratio_linear()),
                    })
                })
                .collect();
            let doc = json!({ "columns": COLUMNS, "rows": rows });
            let mut out = serde_json::to_string_pretty(&doc).expect("plain JSON values");
            out.push('\n');
            out
        }
        ReportFormat::Csv => {
            let mut out = COLUMNS.join(",");
            out.push('\n');
            let missing = || "uncomputed".to_string();
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.n,
                    r.lower_exp,
                    r.middle_exp,
                    r.overhead_exp,
                    r.small_side,
                    r.count_scarce
                        .as_ref()
                        .map_or_else(missing, |c| c.to_string()),
                    r.count_linear
                        .as_ref()
                        .map_or_else(missing, |c| c.to_string()),
                    ratio_text(r.ratio_scarce()).unwrap_or_else(missing),
                    ratio_text(r.ratio_linear()).unwrap_or_else(missing),
                );
            }
            out
        }
    }
}
