//! Table construction, verification dispatch, and output rendering for the
//! `binosum` binary.
//!
//! Everything here is deterministic for a fixed configuration: scans shard
//! across a worker pool but aggregate in index order, and all rendering goes
//! through exact integers/rationals (decimal renderings are directionally
//! rounded, so printed enclosures still enclose).

use std::collections::BTreeSet;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::asymptotics::{
    self, central_ratio, sandwich_e1, scaled_value, three_over_sqrt_pi, upper_e2, BoundsContext,
    SandwichE1, UpperE2,
};
use crate::binomial::SumRow;
use crate::chains;
use crate::enclosure::{decimal_down, decimal_up, CertifiedFloat, Precision};
use crate::maxima::{self, is_exceptional, r0};
use crate::polys;
use crate::reed_muller::{best_order, merit, rm_code, RMCode};
use crate::report::VerificationReport;
use crate::{fmt_rational, Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Md => "md",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Theorem1,
    Lower,
    Upper,
    Lemma3,
    #[value(name = "lemma_l2")]
    LemmaL2,
    Strat,
    Bounds,
    Ash,
    Limits,
}

impl VerifyTarget {
    pub fn name(self) -> &'static str {
        match self {
            VerifyTarget::Theorem1 => "theorem1",
            VerifyTarget::Lower => "lower",
            VerifyTarget::Upper => "upper",
            VerifyTarget::Lemma3 => "lemma3",
            VerifyTarget::LemmaL2 => "lemma_l2",
            VerifyTarget::Strat => "strat",
            VerifyTarget::Bounds => "bounds",
            VerifyTarget::Ash => "ash",
            VerifyTarget::Limits => "limits",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LimitKind {
    Asymptotic,
    Ratio,
}

impl LimitKind {
    pub fn name(self) -> &'static str {
        match self {
            LimitKind::Asymptotic => "asymptotic",
            LimitKind::Ratio => "ratio",
        }
    }
}

/// Effective configuration of one invocation, echoed into JSON output.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: String,
    pub target: Option<VerifyTarget>,
    pub kind: Option<LimitKind>,
    pub m_range: Option<(u64, u64)>,
    pub i_range: Option<(u64, u64)>,
    pub j_range: Option<(u64, u64)>,
    pub s_range: Option<(u64, u64)>,
    pub m: Option<u64>,
    pub r: Option<u64>,
    pub points: Option<Vec<u64>>,
    pub format: Format,
    pub workers: usize,
    pub precision_cap_bits: u32,
}

impl RunConfig {
    pub fn new(command: &str, format: Format, workers: usize, cap_bits: u32) -> RunConfig {
        RunConfig {
            command: command.into(),
            target: None,
            kind: None,
            m_range: None,
            i_range: None,
            j_range: None,
            s_range: None,
            m: None,
            r: None,
            points: None,
            format,
            workers,
            precision_cap_bits: cap_bits,
        }
    }

    pub fn precision(&self) -> Precision {
        Precision::with_cap(self.precision_cap_bits)
    }
}

fn range_str(range: (u64, u64)) -> String {
    format!("{}..{}", range.0, range.1)
}

fn config_json(cfg: &RunConfig) -> Value {
    let mut obj = serde_json::Map::new();
    if let Some(t) = cfg.target {
        obj.insert("target".into(), json!(t.name()));
    }
    if let Some(k) = cfg.kind {
        obj.insert("kind".into(), json!(k.name()));
    }
    if let Some(r) = cfg.m_range {
        obj.insert("m_range".into(), json!(range_str(r)));
    }
    if let Some(r) = cfg.i_range {
        obj.insert("i_range".into(), json!(range_str(r)));
    }
    if let Some(r) = cfg.j_range {
        obj.insert("j_range".into(), json!(range_str(r)));
    }
    if let Some(r) = cfg.s_range {
        obj.insert("s_range".into(), json!(range_str(r)));
    }
    if let Some(m) = cfg.m {
        obj.insert("m".into(), json!(m));
    }
    if let Some(r) = cfg.r {
        obj.insert("r".into(), json!(r));
    }
    if let Some(points) = &cfg.points {
        obj.insert("points".into(), json!(points));
    }
    obj.insert("format".into(), json!(cfg.format.name()));
    obj.insert("workers".into(), json!(cfg.workers));
    obj.insert("precision_cap_bits".into(), json!(cfg.precision_cap_bits));
    Value::Object(obj)
}

fn top_json(cfg: &RunConfig, report: Value) -> String {
    let doc = json!({
        "command": cfg.command,
        "config": config_json(cfg),
        "report": report,
    });
    serde_json::to_string_pretty(&doc).expect("json serialization")
}

fn rational_json(q: &Rational) -> Value {
    json!({"num": q.numer().to_string(), "den": q.denom().to_string()})
}

/// Decimal digits used when an enclosure endpoint is printed. Outward
/// rounding keeps the printed interval a true enclosure.
const ENCLOSURE_DIGITS: u32 = 40;

fn enclosure_json(e: &CertifiedFloat) -> Value {
    json!({
        "lo": decimal_down(e.lo(), ENCLOSURE_DIGITS),
        "hi": decimal_up(e.hi(), ENCLOSURE_DIGITS),
        "bits": e.bits(),
    })
}

fn enclosure_str(e: &CertifiedFloat) -> String {
    format!(
        "[{}, {}]@{}",
        decimal_down(e.lo(), 12),
        decimal_up(e.hi(), 12),
        e.bits()
    )
}

/// Minimal CSV quoting: wrap when the field contains a comma, quote, or
/// newline, doubling any quotes.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn md_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", header.join(" | ")));
    let sep: Vec<&str> = header.iter().map(|_| "---:").collect();
    out.push_str(&format!("| {} |\n", sep.join(" | ")));
    for row in rows {
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    out
}

// ---------------------------------------------------------------------------
// table1

#[derive(Clone, Debug)]
pub struct Table1Row {
    pub m: u64,
    /// `floor(f_m(r))` for `r = 0..=m`.
    pub floors: Vec<BigInt>,
    /// The generic peak column `r0(m)`, omitted when it falls past the row.
    pub boxed: Option<u64>,
    /// For exceptional `m`, the column `r0(m) - 1` that actually peaks.
    pub circled: Option<u64>,
}

pub fn table1_rows(m_lo: u64, m_hi: u64) -> Result<Vec<Table1Row>> {
    if m_lo > m_hi {
        return Err(Error::out_of_range(
            "m range",
            format!("{m_lo}..{m_hi}"),
            "lo <= hi",
        ));
    }
    Ok((m_lo..=m_hi)
        .map(|m| {
            let row = SumRow::new(m);
            let floors = (0..=m).map(|r| row.sum(r) >> r).collect();
            let peak = r0(m);
            Table1Row {
                m,
                floors,
                boxed: (peak <= m).then_some(peak),
                circled: is_exceptional(m).then(|| peak - 1),
            }
        })
        .collect())
}

fn table1_cell(row: &Table1Row, r: u64) -> String {
    let value = &row.floors[r as usize];
    if row.boxed == Some(r) {
        format!("[{value}]")
    } else if row.circled == Some(r) {
        format!("({value})")
    } else {
        value.to_string()
    }
}

pub fn render_table1(cfg: &RunConfig, rows: &[Table1Row]) -> String {
    match cfg.format {
        Format::Md => {
            let r_max = rows.iter().map(|row| row.m).max().unwrap_or(0);
            let mut header = vec!["m".to_string()];
            header.extend((0..=r_max).map(|r| format!("r={r}")));
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    let mut cells = vec![row.m.to_string()];
                    cells.extend((0..=r_max).map(|r| {
                        if r <= row.m {
                            table1_cell(row, r)
                        } else {
                            String::new()
                        }
                    }));
                    cells
                })
                .collect();
            md_table(&header, &body)
        }
        Format::Csv => {
            let mut out = String::from("m,r,floor,marker\n");
            for row in rows {
                for r in 0..=row.m {
                    let marker = if row.boxed == Some(r) {
                        "boxed"
                    } else if row.circled == Some(r) {
                        "circled"
                    } else {
                        ""
                    };
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        row.m, r, row.floors[r as usize], marker
                    ));
                }
            }
            out
        }
        Format::Json => {
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "m": row.m,
                        "floors": row.floors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        "boxed": row.boxed,
                        "circled": row.circled,
                    })
                })
                .collect();
            top_json(cfg, json!({ "rows": rows_json }))
        }
    }
}

// ---------------------------------------------------------------------------
// table2

#[derive(Clone, Debug)]
pub struct Table2Entry {
    pub m: u64,
    pub r0: u64,
    /// `f_m(r0 - 1)`.
    pub f_prev: Rational,
    /// `f_m(r0)`.
    pub f_peak: Rational,
    pub box_prev: bool,
    pub box_peak: bool,
}

/// The thirteen exact pairs `(f_m(r0-1), f_m(r0))` for `m = 0..=12`, the
/// larger of each pair marked (both, when they tie at `m = 1`).
pub fn table2_entries() -> Vec<Table2Entry> {
    (0..=12u64)
        .map(|m| {
            let row = SumRow::new(m);
            let peak = r0(m);
            let f_prev = row.f_value(peak - 1);
            let f_peak = row.f_value(peak); // peak <= m + 1 always holds here
            Table2Entry {
                m,
                r0: peak,
                box_prev: f_prev >= f_peak,
                box_peak: f_peak >= f_prev,
                f_prev,
                f_peak,
            }
        })
        .collect()
}

fn boxed_rational(q: &Rational, boxed: bool) -> String {
    if boxed {
        format!("[{}]", fmt_rational(q))
    } else {
        fmt_rational(q)
    }
}

pub fn render_table2(cfg: &RunConfig, entries: &[Table2Entry]) -> String {
    match cfg.format {
        Format::Md => {
            let mut header = vec!["m".to_string()];
            header.extend(entries.iter().map(|e| e.m.to_string()));
            let mut prev_row = vec!["f(r0-1)".to_string()];
            prev_row.extend(
                entries
                    .iter()
                    .map(|e| boxed_rational(&e.f_prev, e.box_prev)),
            );
            let mut peak_row = vec!["f(r0)".to_string()];
            peak_row.extend(
                entries
                    .iter()
                    .map(|e| boxed_rational(&e.f_peak, e.box_peak)),
            );
            md_table(&header, &[prev_row, peak_row])
        }
        Format::Csv => {
            let mut out = String::from("m,r0,f_r0_minus_1,f_r0,box\n");
            for e in entries {
                let side = match (e.box_prev, e.box_peak) {
                    (true, true) => "both",
                    (true, false) => "r0-1",
                    (false, true) => "r0",
                    (false, false) => unreachable!("one side always attains the max"),
                };
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    e.m,
                    e.r0,
                    csv_field(&fmt_rational(&e.f_prev)),
                    csv_field(&fmt_rational(&e.f_peak)),
                    side
                ));
            }
            out
        }
        Format::Json => {
            let entries_json: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "m": e.m,
                        "r0": e.r0,
                        "f_r0_minus_1": rational_json(&e.f_prev),
                        "f_r0": rational_json(&e.f_peak),
                        "box_r0_minus_1": e.box_prev,
                        "box_r0": e.box_peak,
                    })
                })
                .collect();
            top_json(cfg, json!({ "entries": entries_json }))
        }
    }
}

// ---------------------------------------------------------------------------
// verify

/// Default sweep ranges per target, used when the matching flag is absent.
pub fn default_range(target: VerifyTarget) -> (u64, u64) {
    match target {
        VerifyTarget::Theorem1 => (0, 3000),
        VerifyTarget::Lower | VerifyTarget::Upper | VerifyTarget::Bounds => (0, 2000),
        VerifyTarget::Lemma3 => (2, 200),
        VerifyTarget::LemmaL2 => (4, 40),
        VerifyTarget::Strat => (2, 200),
        VerifyTarget::Ash => (1, 1000),
        VerifyTarget::Limits => (5, 1000),
    }
}

/// Dispatches one verification target, filling the target's range field with
/// its default when absent (so a JSON echo of the config shows the effective
/// range).
pub fn run_verify(cfg: &mut RunConfig, target: VerifyTarget) -> Result<VerificationReport> {
    let prec = cfg.precision();
    match target {
        VerifyTarget::Theorem1 => {
            let (lo, hi) = *cfg.m_range.get_or_insert_with(|| default_range(target));
            maxima::verify_argmax_range(lo, hi)
        }
        VerifyTarget::Lower => {
            let (lo, hi) = *cfg.m_range.get_or_insert_with(|| default_range(target));
            maxima::verify_increasing_range(lo, hi)
        }
        VerifyTarget::Upper => {
            let (lo, hi) = *cfg.m_range.get_or_insert_with(|| default_range(target));
            maxima::verify_decreasing_range(lo, hi)
        }
        VerifyTarget::Lemma3 => {
            let (lo, hi) = *cfg.i_range.get_or_insert_with(|| default_range(target));
            polys::verify_coeff_certificates(lo, hi)
        }
        VerifyTarget::LemmaL2 => {
            let (lo, hi) = *cfg.j_range.get_or_insert_with(|| default_range(target));
            polys::verify_headsum_windows(lo, hi)
        }
        VerifyTarget::Strat => {
            let (lo, hi) = *cfg.m_range.get_or_insert_with(|| default_range(target));
            chains::verify_chain_equivalences(lo, hi)
        }
        VerifyTarget::Bounds => {
            let (lo, hi) = *cfg.m_range.get_or_insert_with(|| default_range(target));
            asymptotics::verify_bounds_range(lo, hi, prec)
        }
        VerifyTarget::Ash => {
            let (lo, hi) = *cfg.s_range.get_or_insert_with(|| default_range(target));
            asymptotics::verify_ash_range(lo, hi, prec)
        }
        VerifyTarget::Limits => {
            let (lo, hi) = *cfg.s_range.get_or_insert_with(|| default_range(target));
            asymptotics::verify_limits(lo, hi, prec)
        }
    }
}

pub fn render_verify(cfg: &RunConfig, report: &VerificationReport) -> String {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    match cfg.format {
        Format::Md => {
            let mut out = format!("# verify {}\n\n", report.command);
            out.push_str(&format!("range: {}\n", report.range));
            out.push_str(&format!("checked: {}\n", report.checked));
            out.push_str(&format!("failures: {}\n", report.failures.len()));
            out.push_str(&format!("elapsed_ms: {}\n", report.elapsed_ms));
            out.push_str(&format!("status: {status}\n"));
            if !report.failures.is_empty() {
                out.push('\n');
                for f in &report.failures {
                    out.push_str(&format!(
                        "- {}: expected {}; actual {}\n",
                        f.witness, f.expected, f.actual
                    ));
                }
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("field,value\n");
            out.push_str(&format!("target,{}\n", csv_field(&report.command)));
            out.push_str(&format!("range,{}\n", csv_field(&report.range)));
            out.push_str(&format!("checked,{}\n", report.checked));
            out.push_str(&format!("failure_count,{}\n", report.failures.len()));
            out.push_str(&format!("elapsed_ms,{}\n", report.elapsed_ms));
            out.push_str(&format!("status,{status}\n"));
            if !report.failures.is_empty() {
                out.push_str("\nwitness,expected,actual\n");
                for f in &report.failures {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        csv_field(&f.witness),
                        csv_field(&f.expected),
                        csv_field(&f.actual)
                    ));
                }
            }
            out
        }
        Format::Json => {
            let failures: Vec<Value> = report
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "witness": f.witness,
                        "expected": f.expected,
                        "actual": f.actual,
                    })
                })
                .collect();
            top_json(
                cfg,
                json!({
                    "target": report.command,
                    "range": report.range,
                    "checked": report.checked,
                    "failures": failures,
                    "elapsed_ms": report.elapsed_ms,
                    "status": status,
                }),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// bounds

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub ctx: BoundsContext,
    pub sandwich: SandwichE1,
    pub e2: UpperE2,
}

pub fn bounds_report(m: u64, prec: Precision) -> Result<BoundsReport> {
    let sandwich = sandwich_e1(m)?;
    let e2 = upper_e2(m, prec)?;
    Ok(BoundsReport {
        ctx: BoundsContext::new(m),
        sandwich,
        e2,
    })
}

pub fn render_bounds(cfg: &RunConfig, report: &BoundsReport) -> String {
    let ctx = &report.ctx;
    let s = &report.sandwich;
    match cfg.format {
        Format::Md => {
            let mut out = format!("# bounds m={}\n\n", ctx.m);
            out.push_str(&format!("r0: {}\n", ctx.r0));
            out.push_str(&format!("k: {}\n", ctx.k));
            out.push_str(&format!("f_r0: {}\n", fmt_rational(&s.f)));
            out.push_str(&format!("lower: {}\n", fmt_rational(&s.lower)));
            out.push_str(&format!("upper: {}\n", fmt_rational(&s.upper)));
            out.push_str(&format!("sandwich_holds: {}\n", s.holds));
            out.push_str(&format!("e2_bound: {}\n", enclosure_str(&report.e2.bound)));
            out.push_str(&format!("e2_holds: {}\n", report.e2.holds));
            out
        }
        Format::Csv => {
            let mut out = String::from("field,value\n");
            out.push_str(&format!("m,{}\n", ctx.m));
            out.push_str(&format!("r0,{}\n", ctx.r0));
            out.push_str(&format!("k,{}\n", ctx.k));
            out.push_str(&format!("f_r0,{}\n", csv_field(&fmt_rational(&s.f))));
            out.push_str(&format!("lower,{}\n", csv_field(&fmt_rational(&s.lower))));
            out.push_str(&format!("upper,{}\n", csv_field(&fmt_rational(&s.upper))));
            out.push_str(&format!("sandwich_holds,{}\n", s.holds));
            out.push_str(&format!(
                "e2_bound_lo,{}\n",
                decimal_down(report.e2.bound.lo(), 18)
            ));
            out.push_str(&format!(
                "e2_bound_hi,{}\n",
                decimal_up(report.e2.bound.hi(), 18)
            ));
            out.push_str(&format!("e2_bound_bits,{}\n", report.e2.bound.bits()));
            out.push_str(&format!("e2_holds,{}\n", report.e2.holds));
            out
        }
        Format::Json => top_json(
            cfg,
            json!({
                "m": ctx.m,
                "r0": ctx.r0,
                "k": ctx.k,
                "f_r0": rational_json(&s.f),
                "lower": rational_json(&s.lower),
                "upper": rational_json(&s.upper),
                "sandwich_holds": s.holds,
                "e2_bound": enclosure_json(&report.e2.bound),
                "e2_holds": report.e2.holds,
            }),
        ),
    }
}

// ---------------------------------------------------------------------------
// rm

#[derive(Clone, Debug)]
pub struct RmEntry {
    pub code: RMCode,
    pub merit: Rational,
    pub is_best: bool,
}

#[derive(Clone, Debug)]
pub struct RmReport {
    pub m: u64,
    pub best: BTreeSet<u64>,
    pub entries: Vec<RmEntry>,
}

/// Parameters and merit at one order (when `r` is given) or at every
/// merit-maximizing order.
pub fn rm_report(m: u64, r: Option<u64>) -> Result<RmReport> {
    let best = best_order(m);
    let orders: Vec<u64> = match r {
        Some(r) => vec![r],
        None => best.iter().copied().collect(),
    };
    let entries = orders
        .into_iter()
        .map(|r| {
            let code = rm_code(r, m)?;
            let merit = merit(&code);
            Ok(RmEntry {
                is_best: best.contains(&r),
                merit,
                code,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RmReport { m, best, entries })
}

pub fn render_rm(cfg: &RunConfig, report: &RmReport) -> String {
    let best_str = format!(
        "{{{}}}",
        report
            .best
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    match cfg.format {
        Format::Md => {
            let mut out = format!("# rm m={}\n\n", report.m);
            out.push_str(&format!("best_orders: {best_str}\n\n"));
            let header: Vec<String> = ["r", "n", "k", "d", "merit", "best"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let rows: Vec<Vec<String>> = report
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.code.r.to_string(),
                        e.code.n.to_string(),
                        e.code.k.to_string(),
                        e.code.d.to_string(),
                        fmt_rational(&e.merit),
                        if e.is_best { "yes" } else { "no" }.to_string(),
                    ]
                })
                .collect();
            out.push_str(&md_table(&header, &rows));
            out
        }
        Format::Csv => {
            let mut out = String::from("r,n,k,d,merit,best\n");
            for e in &report.entries {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    e.code.r,
                    e.code.n,
                    e.code.k,
                    e.code.d,
                    csv_field(&fmt_rational(&e.merit)),
                    e.is_best
                ));
            }
            out
        }
        Format::Json => {
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "r": e.code.r,
                        "n": e.code.n.to_string(),
                        "k": e.code.k.to_string(),
                        "d": e.code.d.to_string(),
                        "merit": rational_json(&e.merit),
                        "is_best": e.is_best,
                    })
                })
                .collect();
            top_json(
                cfg,
                json!({
                    "m": report.m,
                    "best_orders": report.best.iter().copied().collect::<Vec<u64>>(),
                    "codes": entries,
                }),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// limit

#[derive(Clone, Debug)]
pub enum LimitReport {
    /// Scaled peak values against the `3/sqrt(pi)` target.
    Asymptotic {
        target: CertifiedFloat,
        points: Vec<(u64, CertifiedFloat, CertifiedFloat)>, // (m, scaled, gap)
    },
    /// Head-to-center ratios against the limit 2.
    Ratio { points: Vec<RatioPoint> },
}

#[derive(Clone, Debug)]
pub struct RatioPoint {
    pub s: u64,
    pub ratio: Rational,
    pub gap: Rational,
    pub bound: Rational,
    pub within_bound: bool,
}

pub fn default_points(kind: LimitKind) -> Vec<u64> {
    match kind {
        LimitKind::Asymptotic => vec![300, 1000, 3000],
        LimitKind::Ratio => vec![100, 300, 1000],
    }
}

pub fn limit_report(kind: LimitKind, points: &[u64], prec: Precision) -> Result<LimitReport> {
    if points.is_empty() {
        return Err(Error::out_of_range("points", "(empty)", "at least one"));
    }
    match kind {
        LimitKind::Asymptotic => {
            let target = three_over_sqrt_pi(prec.start_bits);
            let points = points
                .iter()
                .map(|&m| {
                    let scaled = scaled_value(m, prec)?;
                    let gap = target.sub(&scaled);
                    Ok((m, scaled, gap))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(LimitReport::Asymptotic { target, points })
        }
        LimitKind::Ratio => {
            let two = Rational::from(BigInt::from(2));
            let points = points
                .iter()
                .map(|&s| {
                    let ratio = central_ratio(s)?;
                    let bound = Rational::new(BigInt::from(2 * s), BigInt::from(s + 1));
                    Ok(RatioPoint {
                        s,
                        gap: &two - &ratio,
                        within_bound: ratio < bound,
                        ratio,
                        bound,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(LimitReport::Ratio { points })
        }
    }
}

pub fn render_limit(cfg: &RunConfig, report: &LimitReport) -> String {
    match report {
        LimitReport::Asymptotic { target, points } => match cfg.format {
            Format::Md => {
                let mut out = String::from("# limit asymptotic\n\n");
                out.push_str(&format!("target 3/sqrt(pi): {}\n\n", enclosure_str(target)));
                let header: Vec<String> = ["m", "scaled", "gap"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                let rows: Vec<Vec<String>> = points
                    .iter()
                    .map(|(m, scaled, gap)| {
                        vec![m.to_string(), enclosure_str(scaled), enclosure_str(gap)]
                    })
                    .collect();
                out.push_str(&md_table(&header, &rows));
                out
            }
            Format::Csv => {
                let mut out = String::from("m,scaled_lo,scaled_hi,gap_lo,gap_hi,bits\n");
                for (m, scaled, gap) in points {
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        m,
                        decimal_down(scaled.lo(), 18),
                        decimal_up(scaled.hi(), 18),
                        decimal_down(gap.lo(), 18),
                        decimal_up(gap.hi(), 18),
                        scaled.bits()
                    ));
                }
                out
            }
            Format::Json => {
                let points_json: Vec<Value> = points
                    .iter()
                    .map(|(m, scaled, gap)| {
                        json!({
                            "m": m,
                            "scaled": enclosure_json(scaled),
                            "gap": enclosure_json(gap),
                        })
                    })
                    .collect();
                top_json(
                    cfg,
                    json!({
                        "target": enclosure_json(target),
                        "points": points_json,
                    }),
                )
            }
        },
        LimitReport::Ratio { points } => match cfg.format {
            Format::Md => {
                let mut out = String::from("# limit ratio\n\n");
                let header: Vec<String> = ["s", "ratio", "gap_to_2", "bound", "within_bound"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                let rows: Vec<Vec<String>> = points
                    .iter()
                    .map(|p| {
                        vec![
                            p.s.to_string(),
                            decimal_down(&p.ratio, 12),
                            decimal_down(&p.gap, 12),
                            fmt_rational(&p.bound),
                            if p.within_bound { "yes" } else { "no" }.to_string(),
                        ]
                    })
                    .collect();
                out.push_str(&md_table(&header, &rows));
                out
            }
            Format::Csv => {
                let mut out = String::from("s,ratio,gap_to_2,bound,within_bound\n");
                for p in points {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        p.s,
                        decimal_down(&p.ratio, 18),
                        decimal_down(&p.gap, 18),
                        csv_field(&fmt_rational(&p.bound)),
                        p.within_bound
                    ));
                }
                out
            }
            Format::Json => {
                let points_json: Vec<Value> = points
                    .iter()
                    .map(|p| {
                        json!({
                            "s": p.s,
                            "ratio": rational_json(&p.ratio),
                            "gap_to_2": rational_json(&p.gap),
                            "bound": rational_json(&p.bound),
                            "within_bound": p.within_bound,
                        })
                    })
                    .collect();
                top_json(cfg, json!({ "points": points_json }))
            }
        },
    }
}
