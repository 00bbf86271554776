//! `pcs` — purely cosmetic surgery obstruction toolkit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pcs_cli::{analyze_word, ingest_csv, run_ingested, BatchEntry, BatchOptions, WordReport};
use pcs_core::bennequin::BandWord;
use pcs_core::braid::BraidWord;
use pcs_core::dealternation::{dealternation_upper_word_with, RewriteConfig};
use pcs_core::error::Error as CoreError;
use pcs_core::jones::EvalConfig;
use pcs_core::obstruction::{gate, GateOptions, KnotProfile, ObstructionReport};

#[derive(Parser)]
#[command(
    name = "pcs",
    version,
    about = "Decide when a knot admits no purely cosmetic surgery",
    long_about = "Exact obstruction pipeline: Jones polynomials and diagram-level Turaev \
                  genus from braid words, dealternation bounds from band words, and the \
                  thickness/slope gate over (genus, braid index) profiles."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one braid word (verdict included when --g/--b are given)
    Analyze {
        /// Braid word, e.g. "1 -2 1 -2"
        braid: String,
        /// Strand count override (default: inferred)
        #[arg(long)]
        n: Option<usize>,
        /// Seifert genus (trusted)
        #[arg(long)]
        g: Option<u32>,
        /// Braid index (trusted)
        #[arg(long)]
        b: Option<u32>,
        /// Known knot Floer thickness
        #[arg(long)]
        th: Option<u32>,
        /// Known Jones span
        #[arg(long)]
        span: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Verdict for a (genus, braid index) profile
    Gate {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        th: Option<u32>,
        #[arg(long)]
        span: Option<u32>,
        #[arg(long, default_value = "profile")]
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Jones polynomial of a braid closure
    Jones {
        braid: String,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Dealternation cost report for a band word
    Dealt {
        /// Band word, e.g. "(1,4) (1,2) -(2,3)"
        #[arg(long)]
        bands: String,
        /// Strand count (default: largest band index)
        #[arg(long)]
        n: Option<usize>,
        /// Rewrite-search depth override
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Batch-process a knot-table CSV
    Batch {
        csv: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Force the exponential state-sum evaluator
    #[arg(long)]
    oracle: bool,
    /// Crossing guard for the state-sum evaluator
    #[arg(long, default_value_t = 16)]
    max_crossings: usize,
    /// Enable the braid-index-3 known-result shortcut
    #[arg(long)]
    known_results: bool,
    /// Trust word-derived genus / strand count as exact profile values
    #[arg(long)]
    exact: bool,
}

impl Common {
    fn eval(&self) -> EvalConfig {
        EvalConfig {
            oracle_max_crossings: self.max_crossings,
            force_oracle: self.oracle,
            ..EvalConfig::default()
        }
    }

    fn batch_options(&self) -> BatchOptions {
        BatchOptions {
            eval: self.eval(),
            gate: GateOptions { known_results: self.known_results },
            exact: self.exact,
        }
    }
}

const EXIT_OK: u8 = 0;
const EXIT_FAILURES: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

/// Limit-guard failures are runtime failures (exit 1); anything else
/// about the input itself is a usage error (exit 2).
fn core_error_exit(e: &CoreError) -> ExitCode {
    match e {
        CoreError::OracleLimit { .. } | CoreError::BasisLimit { .. } => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURES)
        }
        _ => usage_error(e),
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

#[derive(Serialize)]
struct AnalyzeOutput {
    #[serde(flatten)]
    word: WordReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    gate: Option<ObstructionReport>,
}

fn report_text(report: &ObstructionReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", report.name));
    if let (Some(g), Some(b)) = (report.inputs.g, report.inputs.b) {
        out.push_str(&format!("profile: g = {g}, b = {b}"));
        if let Some(th) = report.inputs.th {
            out.push_str(&format!(", th = {th}"));
        }
        if let Some(span) = report.inputs.span {
            out.push_str(&format!(", span = {span}"));
        }
        out.push('\n');
    }
    if let Some(bound) = &report.bounds.lemma3 {
        out.push_str(&format!("lemma3 bound: {} (floor {})\n", bound.exact, bound.floor));
    }
    if let Some(bound) = &report.bounds.thm4 {
        out.push_str(&format!("thm4 bound: {} (floor {})\n", bound.exact, bound.floor));
    }
    if let Some(crossing) = &report.bounds.crossing {
        out.push_str(&format!("crossing bound: {crossing}\n"));
    }
    if let Some(v) = report.constraints.eqn3 {
        out.push_str(&format!("eqn3: {v}\n"));
    }
    if let Some(v) = report.constraints.eqn4 {
        out.push_str(&format!("eqn4: {v}\n"));
    }
    match report.th_upper {
        Some(th) => out.push_str(&format!("th_upper: {th}\n")),
        None => out.push_str("th_upper: none\n"),
    }
    let slopes = if report.verdict.unbounded {
        "unbounded".to_string()
    } else if report.verdict.slopes.is_empty() {
        "none".to_string()
    } else {
        report.verdict.slopes.join(", ")
    };
    out.push_str(&format!(
        "verdict: {:?}\nroute: {}\nslopes: {slopes}\n",
        report.verdict.status, report.verdict.route
    ));
    out
}

fn word_text(report: &WordReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("word: {} (n = {}, c = {})\n", report.word, report.n, report.crossings));
    out.push_str(&format!("writhe: {}\n", report.writhe));
    out.push_str(&format!("components: {}\n", report.components));
    out.push_str(&format!(
        "alternating word: {}\n",
        report
            .alternating_word
            .map_or("no".to_string(), |p| format!("{p:?}"))
    ));
    out.push_str(&format!("alternating diagram: {}\n", report.alternating_diagram));
    match report.turaev_genus_diagram {
        Some(g) => out.push_str(&format!("turaev genus (diagram): {g}\n")),
        None => out.push_str("turaev genus (diagram): n/a (split closure)\n"),
    }
    if let Some(jones) = &report.jones {
        out.push_str(&format!("jones: {jones}\n"));
    }
    if let Some(span) = report.jones_span {
        out.push_str(&format!("jones span: {span}\n"));
    }
    out
}

fn run_analyze(
    braid: &str,
    n: Option<usize>,
    g: Option<u32>,
    b: Option<u32>,
    th: Option<u32>,
    span: Option<u32>,
    common: &Common,
) -> ExitCode {
    let word = match BraidWord::parse(braid, n) {
        Ok(w) => w,
        Err(e) => return usage_error(e),
    };
    let report = analyze_word(&word, &common.eval());
    let gate_report = match (g, b) {
        (Some(g), Some(b)) => {
            let mut profile = match KnotProfile::new("analyze", g, b) {
                Ok(p) => p,
                Err(e) => return usage_error(e),
            };
            profile.thickness = th;
            profile.jones_span = span.or_else(|| {
                report.jones_span.and_then(|s| u32::try_from(s).ok())
            });
            profile.braid = Some(word.clone());
            match gate(&profile, &GateOptions { known_results: common.known_results }) {
                Ok(r) => Some(r),
                Err(e) => return core_error_exit(&e),
            }
        }
        _ => None,
    };
    match common.format {
        Format::Json => print_json(&AnalyzeOutput { word: report, gate: gate_report }),
        _ => {
            print!("{}", word_text(&report));
            if let Some(r) = &gate_report {
                print!("{}", report_text(r));
            }
        }
    }
    ExitCode::from(EXIT_OK)
}

fn run_gate(name: &str, g: u32, b: u32, th: Option<u32>, span: Option<u32>, common: &Common) -> ExitCode {
    let mut profile = match KnotProfile::new(name, g, b) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    profile.thickness = th;
    profile.jones_span = span;
    match gate(&profile, &GateOptions { known_results: common.known_results }) {
        Ok(report) => {
            match common.format {
                Format::Json => print_json(&report),
                _ => print!("{}", report_text(&report)),
            }
            ExitCode::from(EXIT_OK)
        }
        Err(e) => core_error_exit(&e),
    }
}

fn run_jones(braid: &str, n: Option<usize>, common: &Common) -> ExitCode {
    let word = match BraidWord::parse(braid, n) {
        Ok(w) => w,
        Err(e) => return usage_error(e),
    };
    match pcs_core::jones::jones_with(&word, &common.eval()) {
        Ok(poly) => {
            match common.format {
                Format::Json => {
                    let span = (word.component_count() == 1).then(|| poly.span());
                    #[derive(Serialize)]
                    struct JonesOutput {
                        word: String,
                        jones: String,
                        variable: String,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        span: Option<i64>,
                    }
                    print_json(&JonesOutput {
                        word: word.to_string(),
                        jones: poly.to_string(),
                        variable: poly.var().symbol().to_string(),
                        span,
                    });
                }
                _ => println!("{poly}"),
            }
            ExitCode::from(EXIT_OK)
        }
        Err(e) => core_error_exit(&e),
    }
}

fn run_dealt(bands: &str, n: Option<usize>, depth: Option<usize>, common: &Common) -> ExitCode {
    let word = match BandWord::parse(bands, n) {
        Ok(w) => w,
        Err(e) => return usage_error(e),
    };
    let cfg = RewriteConfig { depth, ..RewriteConfig::default() };
    match dealternation_upper_word_with(&word, &cfg) {
        Ok(report) => {
            match common.format {
                Format::Json => print_json(&report),
                _ => {
                    println!(
                        "band word: {word} (n = {}, k = {})",
                        report.n, report.band_count
                    );
                    println!(
                        "pattern: {:?}, shift: {}, wrap count: {}",
                        report.pattern, report.shift, report.wrap_count
                    );
                    for bc in &report.per_band {
                        println!(
                            "  {}: cost {} via {}",
                            bc.band, bc.cost, bc.representative
                        );
                    }
                    println!("total crossing changes: {}", report.total);
                    println!("formula bound (n-3)k + r_1n: {}", report.formula_bound);
                }
            }
            ExitCode::from(EXIT_OK)
        }
        Err(e) => usage_error(e),
    }
}

fn run_batch_cmd(csv: &Path, common: &Common) -> ExitCode {
    let ingest = match ingest_csv(csv) {
        Ok(i) => i,
        Err(e) => return usage_error(e),
    };
    let entries = run_ingested(&ingest, &common.batch_options());
    let any_errors = entries.iter().any(BatchEntry::is_error);
    match common.format {
        Format::Json => print_json(&entries),
        Format::Text => {
            for entry in &entries {
                match entry {
                    BatchEntry::Report(r) => println!("{}", report_text(r)),
                    BatchEntry::Error { name, error } => {
                        println!("name: {name}\nerror: {error}\n")
                    }
                }
            }
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(std::io::stdout());
            writer
                .write_record(["name", "status", "g", "b", "th_upper", "span", "slopes", "route"])
                .expect("stdout");
            for entry in &entries {
                let record = match entry {
                    BatchEntry::Report(r) => [
                        r.name.clone(),
                        format!("{:?}", r.verdict.status),
                        r.inputs.g.map_or_else(String::new, |v| v.to_string()),
                        r.inputs.b.map_or_else(String::new, |v| v.to_string()),
                        r.th_upper.map_or_else(String::new, |v| v.to_string()),
                        r.inputs.span.map_or_else(String::new, |v| v.to_string()),
                        if r.verdict.unbounded {
                            "unbounded".into()
                        } else {
                            r.verdict.slopes.join(" ")
                        },
                        r.verdict.route.clone(),
                    ],
                    BatchEntry::Error { name, error } => [
                        name.clone(),
                        "Error".into(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        error.clone(),
                    ],
                };
                writer.write_record(&record).expect("stdout");
            }
            writer.flush().expect("stdout");
        }
    }
    if any_errors {
        ExitCode::from(EXIT_FAILURES)
    } else {
        ExitCode::from(EXIT_OK)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze { braid, n, g, b, th, span, common } => {
            run_analyze(braid, *n, *g, *b, *th, *span, common)
        }
        Command::Gate { g, b, th, span, name, common } => {
            run_gate(name, *g, *b, *th, *span, common)
        }
        Command::Jones { braid, n, common } => run_jones(braid, *n, common),
        Command::Dealt { bands, n, depth, common } => run_dealt(bands, *n, *depth, common),
        Command::Batch { csv, common } => run_batch_cmd(csv, common),
    }
}
