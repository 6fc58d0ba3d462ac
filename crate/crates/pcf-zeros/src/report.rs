//! Run reports, CSV/JSON output, and the batch table mode.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{run_chain, verify_zeros, ChainConfig, ZeroRecord};
use crate::error::ChainError;

pub const CSV_HEADER: &str = "index,re,im,est_rel_error,iterations";
pub const TABLE_HEADER: &str = "a,L,n_zeros,wall_time_seconds";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("a = {a}, L = {l}: {source}")]
    Run { a: f64, l: f64, source: ChainError },
}

impl ReportError {
    /// 1 for input problems (including Hermite parameters), 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Parse { .. } | ReportError::Io(_) => 1,
            ReportError::Run { source, .. } => chain_exit_code(source),
        }
    }
}

pub fn chain_exit_code(e: &ChainError) -> i32 {
    match e {
        ChainError::Hermite(_) | ChainError::Config(_) => 1,
        _ => 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub a: f64,
    pub l: f64,
    pub n_zeros: usize,
    pub wall_time_seconds: f64,
    pub config: ChainConfig,
    pub zeros: Vec<ZeroRecord>,
}

impl RunReport {
    pub fn run(a: f64, l: f64, cfg: &ChainConfig, verify: bool) -> Result<Self, ChainError> {
        let start = Instant::now();
        let mut zeros = run_chain(a, l, cfg)?;
        if verify {
            zeros = verify_zeros(a, &zeros, cfg);
        }
        Ok(Self {
            a,
            l,
            n_zeros: zeros.len(),
            wall_time_seconds: start.elapsed().as_secs_f64(),
            config: *cfg,
            zeros,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.zeros {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.index,
                sig17(r.z.re),
                sig17(r.z.im),
                sig17(r.est_rel_error),
                r.inner_iterations
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = JsonReport {
            a: self.a,
            l: self.l,
            config: self.config,
            zeros: self
                .zeros
                .iter()
                .map(|r| JsonZero {
                    index: r.index,
                    re: r.z.re,
                    im: r.z.im,
                    est_rel_error: r.est_rel_error.is_finite().then_some(r.est_rel_error),
                    iterations: r.inner_iterations,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Float with 17 significant digits; `nan` for NaN.
pub fn sig17(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonZero {
    pub index: usize,
    pub re: f64,
    pub im: f64,
    /// `null` when not verified.
    pub est_rel_error: Option<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonConfig {
    pub eps: f64,
    pub delta: f64,
    pub taylor_order: usize,
    pub lg_order: usize,
    pub a_lg: f64,
    pub max_inner_iters: usize,
    pub max_refine_iters: usize,
    pub max_zeros: usize,
    pub step_scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct JsonReport {
    a: f64,
    #[serde(rename = "L")]
    l: f64,
    config: ChainConfig,
    zeros: Vec<JsonZero>,
}

/// Parsed form of an emitted JSON report.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ParsedReport {
    pub a: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub config: JsonConfig,
    pub zeros: Vec<JsonZero>,
}

/// One `(a, L)` request of a table file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableEntry {
    pub a: f64,
    pub l: f64,
}

/// Lines of `a L`; blank lines and `#` comments are skipped.
pub fn parse_table(text: &str) -> Result<Vec<TableEntry>, ReportError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ReportError::Parse { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!("expected `a L`, found {:?}", raw.trim())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| err(format!("{s:?}: {e}")));
        let (a, l) = (num(fields[0])?, num(fields[1])?);
        if !a.is_finite() || !(l > 0.0) || !l.is_finite() {
            return Err(err("a must be finite and L positive".to_string()));
        }
        out.push(TableEntry { a, l });
    }
    Ok(out)
}

pub fn read_table(path: &Path) -> Result<Vec<TableEntry>, ReportError> {
    parse_table(&std::fs::read_to_string(path)?)
}

/// Runs every entry concurrently; results keep the input order.
pub fn run_table(entries: &[TableEntry], cfg: &ChainConfig, verify: bool) -> Result<Vec<RunReport>, ReportError> {
    entries
        .par_iter()
        .map(|e| RunReport::run(e.a, e.l, cfg, verify).map_err(|source| ReportError::Run { a: e.a, l: e.l, source }))
        .collect()
}

#[derive(Serialize)]
struct TableRow {
    a: f64,
    #[serde(rename = "L")]
    l: f64,
    n_zeros: usize,
    wall_time_seconds: f64,
}

pub fn render_table(reports: &[RunReport], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from(TABLE_HEADER);
            out.push('\n');
            for r in reports {
                let _ = writeln!(out, "{},{},{},{:.6}", r.a, r.l, r.n_zeros, r.wall_time_seconds);
            }
            out
        }
        Format::Json => {
            let rows: Vec<TableRow> = reports
                .iter()
                .map(|r| TableRow { a: r.a, l: r.l, n_zeros: r.n_zeros, wall_time_seconds: r.wall_time_seconds })
                .collect();
            serde_json::to_string_pretty(&rows).expect("plain data serializes")
        }
    }
}
