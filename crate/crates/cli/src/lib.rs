//! Knot-table ingestion, batch execution, and report emission.
//!
//! The CSV interchange format has a header row with any subset of the
//! columns `name, braid, bands, n, genus, braid_index, thickness,
//! jones_span` (`name` is mandatory, unknown columns are ignored with a
//! warning, blank cells mean "absent"). Braid words use the signed-token
//! syntax (`"1 -2 1 -2"`), band words the pair syntax (`"(1,4) -(2,3)"`).
//!
//! Batch processing computes the available invariants for each record
//! (crossing count, writhe, diagram Turaev genus, Jones span within the
//! evaluator limits, Bennequin genus, word-level dealternation bound) and
//! then runs the verdict gate. Records are processed in parallel when the
//! `parallel` feature is on; output order is always input order.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use pcs_core::bennequin::{bennequin_genus, BandWord};
use pcs_core::braid::{BraidWord, Pattern};
use pcs_core::diagram::closure_diagram;
use pcs_core::jones::{jones_span_with, jones_with, EvalConfig};
use pcs_core::obstruction::{gate, GateOptions, KnotProfile, ObstructionReport};
use pcs_core::poly::Var;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// One row of a knot table, as ingested.
#[derive(Debug, Clone, Default)]
pub struct KnotRecord {
    pub name: String,
    pub braid: Option<String>,
    pub bands: Option<String>,
    pub n: Option<usize>,
    pub genus: Option<u32>,
    pub braid_index: Option<u32>,
    pub thickness: Option<u32>,
    pub jones_span: Option<u32>,
}

impl KnotRecord {
    /// A record must carry a braid word, a band word, or a full
    /// (genus, braid index) profile.
    pub fn validate(&self) -> Result<(), String> {
        let has_profile = self.genus.is_some() && self.braid_index.is_some();
        if self.braid.is_none() && self.bands.is_none() && !has_profile {
            return Err(
                "record needs a braid word, a band word, or both genus and braid_index"
                    .to_string(),
            );
        }
        if let Some(text) = &self.braid {
            BraidWord::parse(text, self.n).map_err(|e| format!("braid: {e}"))?;
        }
        if let Some(text) = &self.bands {
            BandWord::parse(text, self.n).map_err(|e| format!("bands: {e}"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RowError {
    pub line: usize,
    pub name: String,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {} ({}): {}", self.line, self.name, self.message)
    }
}

/// Ingested rows in file order; bad rows are kept as errors, not dropped.
#[derive(Debug, Clone)]
pub enum RowResult {
    Record(KnotRecord),
    Error(RowError),
}

pub struct Ingest {
    pub rows: Vec<RowResult>,
}

impl Ingest {
    pub fn records(&self) -> impl Iterator<Item = &KnotRecord> {
        self.rows.iter().filter_map(|r| match r {
            RowResult::Record(rec) => Some(rec),
            RowResult::Error(_) => None,
        })
    }

    pub fn errors(&self) -> impl Iterator<Item = &RowError> {
        self.rows.iter().filter_map(|r| match r {
            RowResult::Error(e) => Some(e),
            RowResult::Record(_) => None,
        })
    }
}

const KNOWN_COLUMNS: [&str; 8] = [
    "name",
    "braid",
    "bands",
    "n",
    "genus",
    "braid_index",
    "thickness",
    "jones_span",
];

fn parse_opt<T: std::str::FromStr>(field: Option<&str>, what: &str) -> Result<Option<T>, String> {
    match field.map(str::trim) {
        None | Some("") => Ok(None),
        Some(text) => text
            .parse()
            .map(Some)
            .map_err(|_| format!("{what}: malformed value `{text}`")),
    }
}

/// Read a knot-table CSV. Unreadable files and a missing `name` column
/// are fatal; everything else is a per-row error.
pub fn ingest_csv(path: &Path) -> anyhow::Result<Ingest> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;

    let headers = reader.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    for header in headers.iter() {
        if !KNOWN_COLUMNS.contains(&header.to_ascii_lowercase().as_str()) {
            eprintln!("warning: ignoring unknown column `{header}`");
        }
    }
    let name_col = find("name")
        .ok_or_else(|| anyhow::anyhow!("{}: missing `name` column", path.display()))?;
    let cols: Vec<Option<usize>> =
        KNOWN_COLUMNS.iter().map(|c| find(c)).collect();

    let mut rows = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let line = idx + 2; // header is line 1
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                rows.push(RowResult::Error(RowError {
                    line,
                    name: String::new(),
                    message: e.to_string(),
                }));
                continue;
            }
        };
        let get = |slot: usize| cols[slot].and_then(|c| row.get(c));
        let name = row.get(name_col).unwrap_or("").trim().to_string();
        let build = || -> Result<KnotRecord, String> {
            if name.is_empty() {
                return Err("empty name".to_string());
            }
            let non_empty = |s: Option<&str>| {
                s.map(str::trim).filter(|t| !t.is_empty()).map(str::to_string)
            };
            let record = KnotRecord {
                name: name.clone(),
                braid: non_empty(get(1)),
                bands: non_empty(get(2)),
                n: parse_opt(get(3), "n")?,
                genus: parse_opt(get(4), "genus")?,
                braid_index: parse_opt(get(5), "braid_index")?,
                thickness: parse_opt(get(6), "thickness")?,
                jones_span: parse_opt(get(7), "jones_span")?,
            };
            record.validate()?;
            Ok(record)
        };
        match build() {
            Ok(record) => rows.push(RowResult::Record(record)),
            Err(message) => {
                rows.push(RowResult::Error(RowError { line, name, message }))
            }
        }
    }
    Ok(Ingest { rows })
}

#[derive(Debug, Clone, Default)]
pub struct BatchOptions {
    pub eval: EvalConfig,
    pub gate: GateOptions,
    /// Trust word-derived genus and strand count as exact profile values
    /// when the profile omits them.
    pub exact: bool,
}

/// One entry of the batch output stream: a report or an embedded error.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum BatchEntry {
    Report(Box<ObstructionReport>),
    Error { name: String, error: String },
}

impl BatchEntry {
    pub fn is_error(&self) -> bool {
        matches!(self, BatchEntry::Error { .. })
    }

    pub fn name(&self) -> &str {
        match self {
            BatchEntry::Report(r) => &r.name,
            BatchEntry::Error { name, .. } => name,
        }
    }
}

fn process_record(record: &KnotRecord, options: &BatchOptions) -> Result<ObstructionReport, String> {
    let braid = record
        .braid
        .as_deref()
        .map(|t| BraidWord::parse(t, record.n))
        .transpose()
        .map_err(|e| format!("braid: {e}"))?;
    let bands = record
        .bands
        .as_deref()
        .map(|t| BandWord::parse(t, record.n))
        .transpose()
        .map_err(|e| format!("bands: {e}"))?;

    let mut genus = record.genus;
    let mut braid_index = record.braid_index;
    if options.exact {
        if genus.is_none() {
            genus = bands
                .as_ref()
                .and_then(|b| bennequin_genus(b).ok());
        }
        if braid_index.is_none() {
            braid_index = bands
                .as_ref()
                .map(|b| b.n() as u32)
                .or_else(|| braid.as_ref().map(|w| w.n() as u32));
        }
    }

    // Jones span: supplied, or computed from a word when the closure is a
    // knot within evaluator limits.
    let mut span = record.jones_span;
    if span.is_none() {
        let word = braid
            .clone()
            .or_else(|| bands.as_ref().map(|b| b.expand()));
        if let Some(w) = word {
            if w.component_count() == 1 {
                if let Ok(s) = jones_span_with(&w, &options.eval) {
                    span = u32::try_from(s).ok();
                }
            }
        }
    }

    let (Some(g), Some(b)) = (genus, braid_index) else {
        return Err(
            "no (genus, braid_index) profile; supply both or pass --exact with a word"
                .to_string(),
        );
    };
    let mut profile = KnotProfile::new(record.name.clone(), g, b).map_err(|e| e.to_string())?;
    profile.thickness = record.thickness;
    profile.jones_span = span;
    profile.braid = braid;
    profile.bands = bands;
    gate(&profile, &options.gate).map_err(|e| e.to_string())
}

/// Gate every record; output order equals input order regardless of the
/// worker count.
pub fn run_batch(records: &[KnotRecord], options: &BatchOptions) -> Vec<BatchEntry> {
    let work = |record: &KnotRecord| match process_record(record, options) {
        Ok(report) => BatchEntry::Report(Box::new(report)),
        Err(error) => BatchEntry::Error { name: record.name.clone(), error },
    };
    #[cfg(feature = "parallel")]
    {
        records.par_iter().map(work).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        records.iter().map(work).collect()
    }
}

/// Run a whole ingested table, keeping row errors in place.
pub fn run_ingested(ingest: &Ingest, options: &BatchOptions) -> Vec<BatchEntry> {
    let records: Vec<KnotRecord> = ingest.records().cloned().collect();
    let mut reports = run_batch(&records, options).into_iter();
    ingest
        .rows
        .iter()
        .map(|row| match row {
            RowResult::Record(_) => reports.next().expect("one report per record"),
            RowResult::Error(e) => BatchEntry::Error {
                name: e.name.clone(),
                error: format!("row {}: {}", e.line, e.message),
            },
        })
        .collect()
}

/// Word-level invariants reported by `analyze`.
#[derive(Debug, Clone, Serialize)]
pub struct WordReport {
    pub word: String,
    pub n: usize,
    pub crossings: usize,
    pub writhe: i64,
    pub components: usize,
    pub alternating_word: Option<Pattern>,
    pub alternating_diagram: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub turaev_genus_diagram: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jones: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jones_variable: Option<char>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jones_span: Option<i64>,
}

/// Compute every word invariant that is in reach under the limits.
pub fn analyze_word(word: &BraidWord, eval: &EvalConfig) -> WordReport {
    let d = closure_diagram(word);
    let jones_poly = jones_with(word, eval).ok();
    let components = word.component_count();
    WordReport {
        word: word.to_string(),
        n: word.n(),
        crossings: d.crossing_count(),
        writhe: word.writhe(),
        components,
        alternating_word: word.alternating_pattern(),
        alternating_diagram: d.is_alternating(),
        turaev_genus_diagram: d.turaev_genus().ok(),
        jones_span: jones_poly
            .as_ref()
            .filter(|_| components == 1)
            .map(|p| p.span()),
        jones_variable: jones_poly.as_ref().map(|p| match p.var() {
            Var::A => 'A',
            Var::T => 't',
        }),
        jones: jones_poly.map(|p| p.to_string()),
    }
}
