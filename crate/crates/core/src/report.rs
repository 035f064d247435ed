//! JSON and CSV metric reports.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extractor::{relative_path, ClassKind, Diagnostic, Span};
use crate::metrics::{ClassMetrics, LocMode};

pub const CSV_HEADER: &str = "qualified_name,simple_name,kind,file,start_line,end_line,nom,noa,loc";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("malformed JSON report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(format!("unknown report format {s:?}")),
        }
    }
}

/// Metrics for a whole run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricsReport {
    pub generated_for: PathBuf,
    pub loc_mode: LocMode,
    /// Sorted by qualified name.
    pub entries: Vec<ClassMetrics>,
    pub diagnostics: Vec<Diagnostic>,
}

impl MetricsReport {
    /// Builds a report, sorting entries by qualified name byte-wise.
    pub fn new(root: &Path, loc_mode: LocMode, mut entries: Vec<ClassMetrics>, diagnostics: Vec<Diagnostic>) -> Self {
        entries.sort_by(|a, b| a.qualified_name.as_bytes().cmp(b.qualified_name.as_bytes()));
        MetricsReport {
            generated_for: root.to_path_buf(),
            loc_mode,
            entries,
            diagnostics,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonReport {
    root: String,
    loc_mode: LocMode,
    classes: Vec<JsonClass>,
    diagnostics: Vec<JsonDiagnostic>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonClass {
    qualified_name: String,
    simple_name: String,
    kind: ClassKind,
    file: String,
    start_line: usize,
    end_line: usize,
    nom: usize,
    noa: usize,
    loc: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDiagnostic {
    path: String,
    message: String,
}

pub fn write_report(r: &MetricsReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(r),
        ReportFormat::Csv => to_csv(r),
    }
}

fn to_json(r: &MetricsReport) -> String {
    let root = &r.generated_for;
    let doc = JsonReport {
        root: root.to_string_lossy().into_owned(),
        loc_mode: r.loc_mode,
        classes: r
            .entries
            .iter()
            .map(|m| JsonClass {
                qualified_name: m.qualified_name.clone(),
                simple_name: m.simple_name.clone(),
                kind: m.kind,
                file: relative_path(root, &m.file),
                start_line: m.span.start_line,
                end_line: m.span.end_line,
                nom: m.nom,
                noa: m.noa,
                loc: m.loc,
            })
            .collect(),
        diagnostics: r
            .diagnostics
            .iter()
            .map(|d| JsonDiagnostic {
                path: relative_path(root, &d.path),
                message: d.message.clone(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

fn to_csv(r: &MetricsReport) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).expect("in-memory write");
    for m in &r.entries {
        w.write_record([
            m.qualified_name.as_str(),
            m.simple_name.as_str(),
            m.kind.as_str(),
            relative_path(&r.generated_for, &m.file).as_str(),
            &m.span.start_line.to_string(),
            &m.span.end_line.to_string(),
            &m.nom.to_string(),
            &m.noa.to_string(),
            &m.loc.to_string(),
        ])
        .expect("in-memory write");
    }
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("CSV of UTF-8 fields is UTF-8")
}

/// Reads a JSON report back. Entry files are resolved against the report root.
pub fn read_json_report(text: &str) -> Result<MetricsReport, ReportError> {
    let doc: JsonReport = serde_json::from_str(text)?;
    let root = PathBuf::from(&doc.root);
    let entries = doc
        .classes
        .into_iter()
        .map(|c| ClassMetrics {
            qualified_name: c.qualified_name,
            simple_name: c.simple_name,
            kind: c.kind,
            file: root.join(&c.file),
            span: Span::new(c.start_line, c.end_line),
            nom: c.nom,
            noa: c.noa,
            loc: c.loc,
            loc_mode: doc.loc_mode,
        })
        .collect();
    let diagnostics = doc
        .diagnostics
        .into_iter()
        .map(|d| Diagnostic {
            path: root.join(&d.path),
            message: d.message,
        })
        .collect();
    Ok(MetricsReport {
        generated_for: root,
        loc_mode: doc.loc_mode,
        entries,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(q: &str, file: &str, nom: usize) -> ClassMetrics {
        ClassMetrics {
            qualified_name: q.into(),
            simple_name: q.rsplit('.').next().unwrap().into(),
            kind: ClassKind::Class,
            file: PathBuf::from("/root/src").join(file),
            span: Span::new(3, 40),
            nom,
            noa: 1,
            loc: 38,
            loc_mode: LocMode::Sloc,
        }
    }

    fn report(entries: Vec<ClassMetrics>) -> MetricsReport {
        MetricsReport::new(Path::new("/root/src"), LocMode::Sloc, entries, Vec::new())
    }

    #[test]
    fn empty_report() {
        let r = report(Vec::new());
        let json: serde_json::Value = serde_json::from_str(&write_report(&r, ReportFormat::Json)).unwrap();
        assert_eq!(json["classes"], serde_json::json!([]));
        assert_eq!(write_report(&r, ReportFormat::Csv), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn json_schema_keys_in_order() {
        let r = report(vec![entry("p.B", "p/B.java", 2), entry("p.A", "p/A.java", 7)]);
        let text = write_report(&r, ReportFormat::Json);
        let keys = ["\"qualified_name\"", "\"simple_name\"", "\"kind\"", "\"file\"", "\"start_line\"", "\"end_line\"", "\"nom\"", "\"noa\"", "\"loc\""];
        let positions: Vec<_> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("p.A").unwrap() < text.find("p.B").unwrap());
        assert!(text.contains("\"file\": \"p/A.java\""));
        assert!(text.lines().all(|l| !l.ends_with(' ')));
    }

    #[test]
    fn json_round_trip() {
        let r = report(vec![entry("p.A", "p/A.java", 7), entry("q.Z", "q/Z.java", 0)]);
        let back = read_json_report(&write_report(&r, ReportFormat::Json)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_quotes_commas() {
        let r = report(vec![entry("p.A", "we,ird/A.java", 7)]);
        let text = write_report(&r, ReportFormat::Csv);
        assert!(text.contains("\"we,ird/A.java\""));
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), 1);
        assert_eq!(&rows[0][3], "we,ird/A.java");
        assert_eq!(&rows[0][6], "7");
        assert_eq!(text.lines().count(), 2);
        assert!(!text.contains('\r'));
    }
}
