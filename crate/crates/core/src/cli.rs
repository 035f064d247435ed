//! End-to-end run: extract, measure, select, then write charts and reports.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use globset::{GlobBuilder, GlobSet, GlobSetBuilder};
use thiserror::Error;

use crate::chart::{self, CaptionPosition, ChartStyle, ScaleMode};
use crate::extractor::{self, ExtractError, ExtractOptions};
use crate::metrics::{self, ClassMetrics, LocMode};
use crate::report::{self, MetricsReport, ReportFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OutputFormat {
    Svg,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(OutputFormat::Svg),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(format!("unknown format {s:?} (expected svg, json or csv)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub root: PathBuf,
    pub include: Vec<String>,
    pub exclude: Vec<String>,
    /// Globs over simple or qualified class names; empty selects everything.
    pub select: Vec<String>,
    pub loc_mode: LocMode,
    pub scale_mode: ScaleMode,
    pub caption_position: CaptionPosition,
    pub qualified_captions: bool,
    pub columns: usize,
    pub out_dir: PathBuf,
    pub formats: Vec<OutputFormat>,
    pub strict: bool,
    pub export_xml: bool,
}

impl RunConfig {
    pub fn new(root: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            root: root.into(),
            include: vec![extractor::DEFAULT_INCLUDE.to_owned()],
            exclude: Vec::new(),
            select: Vec::new(),
            loc_mode: LocMode::default(),
            scale_mode: ScaleMode::default(),
            caption_position: CaptionPosition::default(),
            qualified_captions: false,
            columns: 3,
            out_dir: out_dir.into(),
            formats: vec![OutputFormat::Svg, OutputFormat::Json, OutputFormat::Csv],
            strict: false,
            export_xml: false,
        }
    }

    pub fn style(&self) -> ChartStyle {
        ChartStyle {
            caption_position: self.caption_position,
            scale_mode: self.scale_mode,
            qualified_caption: self.qualified_captions,
            ..ChartStyle::default()
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Extract(ExtractError),
    #[error("{}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Internal(Box<dyn std::error::Error + Send + Sync>),
}

impl RunError {
    /// 2 for usage and configuration problems, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Extract(ExtractError::RootMissing(_) | ExtractError::Glob(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOutcome {
    pub selected: Vec<ClassMetrics>,
    pub written: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

fn name_matcher(patterns: &[String]) -> Result<GlobSet, RunError> {
    let mut builder = GlobSetBuilder::new();
    for p in patterns {
        let glob = GlobBuilder::new(p)
            .literal_separator(false)
            .build()
            .map_err(|e| RunError::Usage(format!("invalid --select pattern {p:?}: {e}")))?;
        builder.add(glob);
    }
    builder.build().map_err(|e| RunError::Usage(e.to_string()))
}

fn validate(config: &RunConfig) -> Result<(), RunError> {
    if config.formats.is_empty() {
        return Err(RunError::Usage("at least one output format is required".into()));
    }
    if config.columns == 0 {
        return Err(RunError::Usage("--columns must be at least 1".into()));
    }
    config.style().validate().map_err(|e| RunError::Usage(e.to_string()))
}

fn write_file(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> Result<(), RunError> {
    fs::write(&path, contents).map_err(|source| RunError::Write { path: path.clone(), source })?;
    written.push(path);
    Ok(())
}

/// Runs the pipeline. The per-class summary goes to `stdout`, warnings to `stderr`.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<RunOutcome, RunError> {
    validate(config)?;
    let select = name_matcher(&config.select)?;

    let opts = ExtractOptions {
        include: config.include.clone(),
        exclude: config.exclude.clone(),
        strict: config.strict,
    };
    let extraction = extractor::extract_classes(&config.root, &opts).map_err(RunError::Extract)?;
    let root = &config.root;

    let mut outcome = RunOutcome::default();
    for d in &extraction.diagnostics {
        outcome
            .warnings
            .push(format!("{}: {}", extractor::relative_path(root, &d.path), d.message));
    }

    let all = metrics::compute_metrics(&extraction.classes, &extraction.sources, config.loc_mode)
        .map_err(|e| RunError::Internal(Box::new(e)))?;
    outcome.selected = all
        .into_iter()
        .filter(|m| config.select.is_empty() || select.is_match(&m.simple_name) || select.is_match(&m.qualified_name))
        .collect();
    if outcome.selected.is_empty() {
        outcome.warnings.push("no classes match the selection".into());
    }

    fs::create_dir_all(&config.out_dir).map_err(|source| RunError::Write {
        path: config.out_dir.clone(),
        source,
    })?;
    let out = &config.out_dir;

    if config.export_xml {
        let doc = extractor::export_xml(&extraction.classes, &extraction.sources, root);
        write_file(out.join("structure.xml"), &doc, &mut outcome.written)?;
    }

    if config.formats.contains(&OutputFormat::Svg) && !outcome.selected.is_empty() {
        let style = config.style();
        let global = chart::global_ceiling(&outcome.selected);
        let mut charts = Vec::with_capacity(outcome.selected.len());
        for m in &outcome.selected {
            let spec = chart::build_chart(m, &style, chart::ceiling_for(m, &style, global))
                .map_err(|e| RunError::Internal(Box::new(e)))?;
            write_file(
                out.join(format!("{}.svg", m.qualified_name)),
                &chart::render_svg(&spec, &style),
                &mut outcome.written,
            )?;
            charts.push(spec);
        }
        let grid = chart::render_grid(&charts, &style, config.columns).map_err(|e| RunError::Internal(Box::new(e)))?;
        write_file(out.join("grid.svg"), &grid, &mut outcome.written)?;
    }

    let report = MetricsReport::new(
        root,
        config.loc_mode,
        outcome.selected.clone(),
        extraction.diagnostics.clone(),
    );
    for (format, report_format, name) in [
        (OutputFormat::Json, ReportFormat::Json, "report.json"),
        (OutputFormat::Csv, ReportFormat::Csv, "report.csv"),
    ] {
        if config.formats.contains(&format) {
            write_file(out.join(name), &report::write_report(&report, report_format), &mut outcome.written)?;
        }
    }

    for w in &outcome.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    for m in &outcome.selected {
        let _ = writeln!(
            stdout,
            "{}\tnom={}\tnoa={}\tloc={}",
            m.qualified_name, m.nom, m.noa, m.loc
        );
    }
    Ok(outcome)
}

