//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for unreadable or invalid input, 1 when an
//! internal invariant check fails.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::aggregate::{EvaluationReport, UnmappedPolicy};
use crate::mapping::MappingError;
use crate::metrics::{pair_baseline, ContingencyTable, Scores};
use crate::model::{parse_clustering, parse_hierarchy, Clustering, ExpertHierarchy, FlattenMode, ModelError};
use crate::pipeline::{evaluate, EvalConfig, EvalError, Evaluation, DEFAULT_THRESHOLD};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(format!("writing output: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Internal(format!("writing csv: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "clustereval", version, about = "Evaluate word clusterings against expert gold standards")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map system classes to expert columns and report overall P/R/F.
    Evaluate(RunConfig),
    /// Print the F-measure table and the resolved mapping.
    Table(RunConfig),
    /// CSV of overall scores over a list of thresholds.
    Sweep(SweepConfig),
    /// Pair-counting baseline between two flat clusterings.
    Baseline(BaselineConfig),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Flatten {
    #[default]
    Inherit,
    OwnOnly,
}

impl From<Flatten> for FlattenMode {
    fn from(f: Flatten) -> Self {
        match f {
            Flatten::Inherit => FlattenMode::Inherit,
            Flatten::OwnOnly => FlattenMode::OwnOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum UnmappedCols {
    #[default]
    AllColumns,
    TopLevel,
    Leaves,
}

impl From<UnmappedCols> for UnmappedPolicy {
    fn from(u: UnmappedCols) -> Self {
        match u {
            UnmappedCols::AllColumns => UnmappedPolicy::AllColumns,
            UnmappedCols::TopLevel => UnmappedPolicy::TopLevel,
            UnmappedCols::Leaves => UnmappedPolicy::Leaves,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{s:?} is not a number: {e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long)]
    pub system: PathBuf,
    /// Expert gold file; repeat for several experts.
    #[arg(long = "expert", required = true)]
    pub experts: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = parse_unit)]
    pub threshold: f64,
    #[arg(long, value_enum, default_value_t)]
    pub flatten: Flatten,
    #[arg(long = "unmapped-cols", value_enum, default_value_t)]
    pub unmapped_cols: UnmappedCols,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Include the F-table and re-map trace.
    #[arg(long)]
    pub trace: bool,
}

impl RunConfig {
    pub fn new(system: impl Into<PathBuf>, experts: Vec<PathBuf>) -> Self {
        Self {
            system: system.into(),
            experts,
            threshold: DEFAULT_THRESHOLD,
            flatten: Flatten::default(),
            unmapped_cols: UnmappedCols::default(),
            format: Format::default(),
            trace: false,
        }
    }

    fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            threshold: self.threshold,
            flatten: self.flatten.into(),
            unmapped_cols: self.unmapped_cols.into(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepConfig {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long = "expert", required = true)]
    pub experts: Vec<PathBuf>,
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_unit)]
    pub thresholds: Vec<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub flatten: Flatten,
    #[arg(long = "unmapped-cols", value_enum, default_value_t)]
    pub unmapped_cols: UnmappedCols,
}

#[derive(Debug, Clone, Args)]
pub struct BaselineConfig {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long)]
    pub expert: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn input_error(path: &Path, e: ModelError) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn load_system(path: &Path) -> Result<Clustering, CliError> {
    parse_clustering(&read(path)?).map_err(|e| input_error(path, e))
}

fn display_name(name: &Option<String>, path: &Path) -> String {
    name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string())
    })
}

fn load_experts(paths: &[PathBuf]) -> Result<Vec<(String, ExpertHierarchy)>, CliError> {
    paths
        .iter()
        .map(|p| {
            let h = parse_hierarchy(&read(p)?).map_err(|e| input_error(p, e))?;
            Ok((display_name(&h.name, p), h))
        })
        .collect()
}

fn run_one(
    system: &Clustering,
    name: &str,
    expert: &ExpertHierarchy,
    config: &EvalConfig,
) -> Result<Evaluation, CliError> {
    let mut eval = evaluate(system, expert, config).map_err(|e| match e {
        EvalError::Model(e) => CliError::Input(format!("expert {name}: {e}")),
        EvalError::Mapping(MappingError::BadThreshold(t)) => {
            CliError::Input(format!("threshold {t} is outside [0, 1]"))
        }
        other => CliError::Internal(format!("expert {name}: {other}")),
    })?;
    eval.report.expert = Some(name.to_string());
    check_report(system, &eval)?;
    Ok(eval)
}

fn check_report(system: &Clustering, eval: &Evaluation) -> Result<(), CliError> {
    let o = eval.report.overall;
    if o.yy + o.yn != system.incidence_count() {
        return Err(CliError::Internal(format!(
            "overall yy+yn = {} but the system has {} incidences",
            o.yy + o.yn,
            system.incidence_count()
        )));
    }
    if eval.report.config.unmapped_cols == UnmappedPolicy::AllColumns
        && o.yy + o.ny != eval.columns.incidence_count()
    {
        return Err(CliError::Internal(format!(
            "overall yy+ny = {} but the expert columns have {} incidences",
            o.yy + o.ny,
            eval.columns.incidence_count()
        )));
    }
    Ok(())
}

fn pct(x: f64) -> String {
    format!("{:.2}", x * 100.0)
}

fn cells(t: &ContingencyTable) -> String {
    format!("yy={} yn={} ny={}", t.yy, t.yn, t.ny)
}

fn score_line(s: &Scores) -> String {
    format!(
        "precision={} recall={} f-measure={:.2}",
        pct(s.precision),
        pct(s.recall),
        s.f_measure
    )
}

fn write_text_report(out: &mut String, eval: &Evaluation, trace: bool) {
    let r = &eval.report;
    let _ = writeln!(out, "== expert: {} ==", r.expert.as_deref().unwrap_or(""));
    let _ = writeln!(
        out,
        "system: {} ({} classes), expert columns: {}",
        r.system.as_deref().unwrap_or(""),
        eval.table.n_rows(),
        eval.table.n_cols()
    );
    let _ = writeln!(
        out,
        "threshold: {}  flatten: {}  unmapped-cols: {}",
        r.config.threshold, r.config.flatten, r.config.unmapped_cols
    );
    if trace {
        out.push('\n');
        write_f_table(out, eval);
        write_trace(out, eval);
    }
    let _ = writeln!(out, "\nmapped pairs: {}", r.per_pair.len());
    for p in &r.per_pair {
        let _ = writeln!(
            out,
            "  {} -> {}  {}  {}",
            p.system_label,
            p.expert_path,
            cells(&p.table),
            score_line(&p.scores)
        );
    }
    let _ = writeln!(out, "unmapped system classes: {}", r.unmapped_system.len());
    for c in &r.unmapped_system {
        let _ = writeln!(out, "  {} (size {})", c.label, c.size);
    }
    let _ = writeln!(out, "unmapped expert columns: {}", r.unmapped_expert.len());
    for c in &r.unmapped_expert {
        let note = if c.counted { "" } else { ", not counted" };
        let _ = writeln!(out, "  {} (size {}{note})", c.path, c.size);
    }
    let _ = writeln!(out, "overall: {}", cells(&r.overall));
    let _ = writeln!(out, "{}\n", score_line(&r.overall_scores));
}

fn write_summary(out: &mut String, reports: &[&EvaluationReport]) {
    let width = reports
        .iter()
        .map(|r| r.expert.as_deref().unwrap_or("").len())
        .chain(["expert".len()])
        .max()
        .unwrap_or(6);
    let _ = writeln!(out, "{:<width$}  {:>9}  {:>9}  {:>9}", "expert", "precision", "recall", "f-measure");
    for r in reports {
        let s = &r.overall_scores;
        let _ = writeln!(
            out,
            "{:<width$}  {:>9}  {:>9}  {:>9.2}",
            r.expert.as_deref().unwrap_or(""),
            pct(s.precision),
            pct(s.recall),
            s.f_measure
        );
    }
}

fn write_f_table(out: &mut String, eval: &Evaluation) {
    let t = &eval.table;
    let row_w = t.rows.iter().map(String::len).max().unwrap_or(0).max(6);
    let col_w: Vec<usize> = t.cols.iter().map(|c| c.len().max(6)).collect();
    let _ = write!(out, "{:<row_w$}", "");
    for (c, w) in t.cols.iter().zip(&col_w) {
        let _ = write!(out, "  {c:>w$}");
    }
    out.push('\n');
    for (r, label) in t.rows.iter().enumerate() {
        let _ = write!(out, "{label:<row_w$}");
        for (f, w) in t.row(r).iter().zip(&col_w) {
            let _ = write!(out, "  {f:>w$.4}");
        }
        out.push('\n');
    }
}

fn write_trace(out: &mut String, eval: &Evaluation) {
    let t = &eval.table;
    let _ = writeln!(out, "re-map trace: {} events", eval.mapping.trace.len());
    for e in &eval.mapping.trace {
        let to = e.to.map_or("(unmapped)", |c| t.cols[c].as_str());
        let _ = writeln!(
            out,
            "  {}: {} -> {}  loss {:.4}",
            t.rows[e.row], t.cols[e.from], to, e.loss
        );
    }
}

#[derive(Serialize)]
struct TraceEntry<'a> {
    system: &'a str,
    from: &'a str,
    to: Option<&'a str>,
    loss: f64,
}

fn trace_entries(eval: &Evaluation) -> Vec<TraceEntry<'_>> {
    let t = &eval.table;
    eval.mapping
        .trace
        .iter()
        .map(|e| TraceEntry {
            system: &t.rows[e.row],
            from: &t.cols[e.from],
            to: e.to.map(|c| t.cols[c].as_str()),
            loss: e.loss,
        })
        .collect()
}

#[derive(Serialize)]
struct FTableJson<'a> {
    rows: &'a [String],
    cols: &'a [String],
    cells: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct ExpertRun<'a> {
    #[serde(flatten)]
    report: &'a EvaluationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_table: Option<FTableJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceEntry<'a>>>,
}

/// One scored row of a summary listing.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct SummaryRow {
    pub expert: String,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

#[derive(Serialize)]
struct EvaluateJson<'a> {
    reports: Vec<ExpertRun<'a>>,
    summary: Vec<SummaryRow>,
}

fn summary_row(r: &EvaluationReport) -> SummaryRow {
    SummaryRow {
        expert: r.expert.clone().unwrap_or_default(),
        precision: r.overall_scores.precision,
        recall: r.overall_scores.recall,
        f_measure: r.overall_scores.f_measure,
    }
}

fn evaluate_all(cfg: &RunConfig) -> Result<Vec<Evaluation>, CliError> {
    let system = load_system(&cfg.system)?;
    let experts = load_experts(&cfg.experts)?;
    let config = cfg.eval_config();
    let system_name = display_name(&system.name, &cfg.system);
    experts
        .iter()
        .map(|(name, h)| {
            let mut eval = run_one(&system, name, h, &config)?;
            eval.report.system = Some(system_name.clone());
            Ok(eval)
        })
        .collect()
}

pub fn cmd_evaluate(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let evals = evaluate_all(cfg)?;
    let reports: Vec<&EvaluationReport> = evals.iter().map(|e| &e.report).collect();
    match cfg.format {
        Format::Text => {
            let mut text = String::new();
            for eval in &evals {
                write_text_report(&mut text, eval, cfg.trace);
            }
            write_summary(&mut text, &reports);
            out.write_all(text.as_bytes())?;
        }
        Format::Json => {
            let doc = EvaluateJson {
                reports: evals
                    .iter()
                    .map(|e| ExpertRun {
                        report: &e.report,
                        f_table: cfg.trace.then(|| FTableJson {
                            rows: &e.table.rows,
                            cols: &e.table.cols,
                            cells: e.table.to_matrix(),
                        }),
                        trace: cfg.trace.then(|| trace_entries(e)),
                    })
                    .collect(),
                summary: reports.iter().map(|r| summary_row(r)).collect(),
            };
            write_json(out, &doc)?;
        }
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serializing report: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

#[derive(Serialize)]
struct MappingEntry<'a> {
    system: &'a str,
    expert: &'a str,
    f: f64,
    remapped: bool,
}

#[derive(Serialize)]
struct TableJson<'a> {
    expert: &'a str,
    threshold: f64,
    rows: &'a [String],
    cols: &'a [String],
    cells: Vec<Vec<f64>>,
    mapping: Vec<MappingEntry<'a>>,
    unmapped_rows: Vec<&'a str>,
    unmapped_cols: Vec<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceEntry<'a>>>,
}

pub fn cmd_table(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let evals = evaluate_all(cfg)?;
    match cfg.format {
        Format::Text => {
            let mut text = String::new();
            for eval in &evals {
                let t = &eval.table;
                let m = &eval.mapping;
                let remapped = m.remapped_rows();
                let _ = writeln!(
                    text,
                    "== expert: {} (threshold {}) ==",
                    eval.report.expert.as_deref().unwrap_or(""),
                    m.threshold
                );
                write_f_table(&mut text, eval);
                let _ = writeln!(text, "mapping (* = re-mapped):");
                for p in &m.pairs {
                    let mark = if remapped.contains(&p.row) { '*' } else { ' ' };
                    let _ = writeln!(text, "  {mark} {} -> {}  {:.4}", t.rows[p.row], t.cols[p.col], p.f);
                }
                for &r in &m.unmapped_rows {
                    let mark = if remapped.contains(&r) { '*' } else { ' ' };
                    let _ = writeln!(text, "  {mark} {} -> (unmapped)", t.rows[r]);
                }
                let unmapped: Vec<&str> = m.unmapped_cols.iter().map(|&c| t.cols[c].as_str()).collect();
                let unmapped = if unmapped.is_empty() { "none".to_string() } else { unmapped.join(", ") };
                let _ = writeln!(text, "unmapped expert columns: {unmapped}");
                if cfg.trace {
                    write_trace(&mut text, eval);
                }
                text.push('\n');
            }
            out.write_all(text.as_bytes())?;
        }
        Format::Json => {
            let docs: Vec<TableJson> = evals
                .iter()
                .map(|e| {
                    let t = &e.table;
                    let remapped = e.mapping.remapped_rows();
                    TableJson {
                        expert: e.report.expert.as_deref().unwrap_or(""),
                        threshold: e.mapping.threshold,
                        rows: &t.rows,
                        cols: &t.cols,
                        cells: t.to_matrix(),
                        mapping: e
                            .mapping
                            .pairs
                            .iter()
                            .map(|p| MappingEntry {
                                system: &t.rows[p.row],
                                expert: &t.cols[p.col],
                                f: p.f,
                                remapped: remapped.contains(&p.row),
                            })
                            .collect(),
                        unmapped_rows: e.mapping.unmapped_rows.iter().map(|&r| t.rows[r].as_str()).collect(),
                        unmapped_cols: e.mapping.unmapped_cols.iter().map(|&c| t.cols[c].as_str()).collect(),
                        trace: cfg.trace.then(|| trace_entries(e)),
                    }
                })
                .collect();
            write_json(out, &docs)?;
        }
    }
    Ok(())
}

/// Header of the sweep CSV.
pub const SWEEP_HEADER: [&str; 6] = ["expert", "threshold", "mapped_pairs", "precision", "recall", "f_measure"];

pub fn cmd_sweep(cfg: &SweepConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if cfg.thresholds.is_empty() {
        return Err(CliError::Input("at least one threshold is required".into()));
    }
    let system = load_system(&cfg.system)?;
    let experts = load_experts(&cfg.experts)?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(SWEEP_HEADER)?;
    for (name, h) in &experts {
        for &threshold in &cfg.thresholds {
            let config = EvalConfig {
                threshold,
                flatten: cfg.flatten.into(),
                unmapped_cols: cfg.unmapped_cols.into(),
            };
            let r = run_one(&system, name, h, &config)?.report;
            let s = r.overall_scores;
            csv.write_record([
                name.clone(),
                threshold.to_string(),
                r.per_pair.len().to_string(),
                s.precision.to_string(),
                s.recall.to_string(),
                s.f_measure.to_string(),
            ])?;
        }
    }
    csv.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct BaselineJson<'a> {
    system: &'a str,
    expert: &'a str,
    table: ContingencyTable,
    scores: Scores,
    warnings: &'a [String],
}

pub fn cmd_baseline(cfg: &BaselineConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let system = load_system(&cfg.system)?;
    let expert = parse_clustering(&read(&cfg.expert)?).map_err(|e| match e {
        ModelError::ChildrenNotAllowed { location } => CliError::Input(format!(
            "{}: {location}: the pair baseline compares flat clusterings, hierarchies are not supported",
            cfg.expert.display()
        )),
        e => input_error(&cfg.expert, e),
    })?;
    let system_name = display_name(&system.name, &cfg.system);
    let expert_name = display_name(&expert.name, &cfg.expert);
    let b = pair_baseline(&system, &expert);
    let mut warnings = Vec::new();
    for (side, ok) in [("system", b.system_is_partition), ("expert", b.expert_is_partition)] {
        if !ok {
            warnings.push(format!(
                "{side} clustering is not a partition; pairs repeated across classes are counted once"
            ));
        }
    }
    for w in &warnings {
        writeln!(err, "warning: {w}")?;
    }
    match cfg.format {
        Format::Text => {
            let t = b.table;
            let s = b.scores;
            let text = format!(
                "pair baseline: {system_name} vs {expert_name}\n{}\nprecision={:.2} recall={:.2} f-measure={:.2}\n",
                cells(&t),
                s.precision,
                s.recall,
                s.f_measure
            );
            out.write_all(text.as_bytes())?;
        }
        Format::Json => write_json(
            out,
            &BaselineJson {
                system: &system_name,
                expert: &expert_name,
                table: b.table,
                scores: b.scores,
                warnings: &warnings,
            },
        )?,
    }
    Ok(())
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Evaluate(cfg) => cmd_evaluate(cfg, out),
        Command::Table(cfg) => cmd_table(cfg, out),
        Command::Sweep(cfg) => cmd_sweep(cfg, out),
        Command::Baseline(cfg) => cmd_baseline(cfg, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_parser() {
        assert_eq!(parse_unit("0.2"), Ok(0.2));
        assert_eq!(parse_unit("1"), Ok(1.0));
        assert!(parse_unit("1.01").is_err());
        assert!(parse_unit("-0.1").is_err());
        assert!(parse_unit("NaN").is_err());
        assert!(parse_unit("abc").is_err());
    }

    #[test]
    fn command_line_shape() {
        let cli = Cli::try_parse_from([
            "clustereval", "evaluate", "--system", "s.json", "--expert", "a.json", "--expert", "b.json",
            "--threshold", "0.3", "--flatten", "own-only", "--unmapped-cols", "leaves", "--format",
            "json", "--trace",
        ])
        .unwrap();
        let Command::Evaluate(cfg) = cli.command else { panic!() };
        assert_eq!(cfg.experts.len(), 2);
        assert_eq!(cfg.threshold, 0.3);
        assert_eq!(cfg.flatten, Flatten::OwnOnly);
        assert_eq!(cfg.unmapped_cols, UnmappedCols::Leaves);
        assert_eq!(cfg.format, Format::Json);
        assert!(cfg.trace);

        let cli = Cli::try_parse_from([
            "clustereval", "sweep", "--system", "s.json", "--expert", "a.json", "--thresholds", "0,0.2,1",
        ])
        .unwrap();
        let Command::Sweep(cfg) = cli.command else { panic!() };
        assert_eq!(cfg.thresholds, [0.0, 0.2, 1.0]);

        assert!(Cli::try_parse_from(["clustereval", "evaluate", "--system", "s.json"]).is_err());
        assert!(Cli::try_parse_from([
            "clustereval", "sweep", "--system", "s", "--expert", "e", "--thresholds", "0.1,2"
        ])
        .is_err());
    }

    #[test]
    fn defaults() {
        let cli = Cli::try_parse_from(["clustereval", "table", "--system", "s", "--expert", "e"]).unwrap();
        let Command::Table(cfg) = cli.command else { panic!() };
        assert_eq!(cfg.threshold, 0.20);
        assert_eq!(cfg.flatten, Flatten::Inherit);
        assert_eq!(cfg.unmapped_cols, UnmappedCols::AllColumns);
        assert_eq!(cfg.format, Format::Text);
        assert!(!cfg.trace);
    }

    #[test]
    fn missing_file_is_input_error() {
        let cfg = RunConfig::new("/nonexistent/system.json", vec!["/nonexistent/e.json".into()]);
        let mut out = Vec::new();
        let err = cmd_evaluate(&cfg, &mut out).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(out.is_empty());
    }
}
