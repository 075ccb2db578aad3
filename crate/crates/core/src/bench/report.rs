//! CSV and JSON reports.
//!
//! Undefined index values are written as `NA`; infinities as `inf`/`-inf`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bench::alt::AltEvalResult;
use crate::bench::sweep::{KRange, SweepResult};
use crate::clustering::FcmConfig;
use crate::cvi::CviIndex;
use crate::density::Divergence;
use crate::error::{Error, Result};
use crate::similarity::SimilarityMeasure;

pub const NA: &str = "NA";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    /// `json` for a `.json` extension, CSV otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ReportFormat::Json,
            _ => ReportFormat::Csv,
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::InvalidConfig(format!("unknown report format `{s}`"))),
        }
    }
}

/// A report cell: a finite number, or a sentinel string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportValue {
    Number(f64),
    Text(String),
}

impl From<Option<f64>> for ReportValue {
    fn from(v: Option<f64>) -> Self {
        match v {
            Some(x) if x.is_finite() => ReportValue::Number(x),
            Some(x) if x.is_nan() => ReportValue::Text(NA.into()),
            Some(x) if x > 0.0 => ReportValue::Text("inf".into()),
            Some(_) => ReportValue::Text("-inf".into()),
            None => ReportValue::Text(NA.into()),
        }
    }
}

impl ReportValue {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            ReportValue::Number(x) => Some(*x),
            ReportValue::Text(t) if t == "inf" => Some(f64::INFINITY),
            ReportValue::Text(t) if t == "-inf" => Some(f64::NEG_INFINITY),
            ReportValue::Text(_) => None,
        }
    }
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Number(x) => write!(f, "{x:?}"),
            ReportValue::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    pub values: BTreeMap<CviIndex, ReportValue>,
}

/// JSON form of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub k_range: KRange,
    pub fcm: FcmConfig,
    pub divergence: Divergence,
    pub best_k: BTreeMap<CviIndex, Option<usize>>,
    pub rows: Vec<SweepRow>,
}

impl From<&SweepResult> for SweepReport {
    fn from(r: &SweepResult) -> Self {
        let rows = r
            .per_k
            .iter()
            .map(|rep| SweepRow {
                k: rep.k,
                values: CviIndex::ALL.iter().map(|&i| (i, rep.get(i).into())).collect(),
            })
            .collect();
        SweepReport {
            k_range: r.k_range,
            fcm: r.fcm,
            divergence: r.divergence,
            best_k: r.best_k.clone(),
            rows,
        }
    }
}

/// Something that can be written as a report.
pub trait Report {
    fn to_csv(&self) -> String;
    fn to_json(&self) -> Result<String>;
}

fn header(first: &str) -> String {
    let mut h = vec![first.to_string()];
    h.extend(CviIndex::ALL.iter().map(|i| i.name().to_string()));
    h.join(",")
}

impl Report for SweepResult {
    fn to_csv(&self) -> String {
        let mut out = header("k");
        out.push('\n');
        for rep in &self.per_k {
            let mut cells = vec![rep.k.to_string()];
            cells.extend(CviIndex::ALL.iter().map(|&i| ReportValue::from(rep.get(i)).to_string()));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&SweepReport::from(self))?)
    }
}

/// JSON form of an alternative-methodology result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltEvalReport {
    pub runs: usize,
    pub k_candidates: Vec<usize>,
    pub base_seed: u64,
    pub divergence: Divergence,
    pub table: BTreeMap<SimilarityMeasure, BTreeMap<CviIndex, usize>>,
}

impl From<&AltEvalResult> for AltEvalReport {
    fn from(r: &AltEvalResult) -> Self {
        AltEvalReport {
            runs: r.runs,
            k_candidates: r.k_candidates.clone(),
            base_seed: r.base_seed,
            divergence: r.divergence,
            table: r.counts.clone(),
        }
    }
}

impl Report for AltEvalResult {
    fn to_csv(&self) -> String {
        let mut out = header("measure");
        out.push('\n');
        for m in SimilarityMeasure::ALL {
            let mut cells = vec![m.name().to_string()];
            cells.extend(CviIndex::ALL.iter().map(|&i| self.count(m, i).to_string()));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&AltEvalReport::from(self))?)
    }
}

pub fn render(result: &impl Report, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => Ok(result.to_csv()),
        ReportFormat::Json => result.to_json().map(|mut s| {
            s.push('\n');
            s
        }),
    }
}

pub fn emit_report(result: &impl Report, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = render(result, format)?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
