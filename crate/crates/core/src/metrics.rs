//! Per-class size metrics: number of methods, number of attributes, lines of code.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extractor::{ClassKind, ClassUnit, MemberKind, SourceFile, Span};

/// How lines inside a class span are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocMode {
    /// Every line of the span.
    Physical,
    /// Lines holding at least one token outside comments.
    #[default]
    Sloc,
}

impl LocMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LocMode::Physical => "physical",
            LocMode::Sloc => "sloc",
        }
    }
}

impl fmt::Display for LocMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LocMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "physical" => Ok(LocMode::Physical),
            "sloc" => Ok(LocMode::Sloc),
            _ => Err(format!("unknown LOC mode {s:?} (expected physical or sloc)")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("class {class}: span {start}..{end} lies outside {} ({lines} lines)", file.display())]
    SpanOutOfBounds {
        class: String,
        file: PathBuf,
        start: usize,
        end: usize,
        lines: usize,
    },
    #[error("class {class}: source {} not loaded", file.display())]
    MissingSource { class: String, file: PathBuf },
}

/// Metrics for one class, with the provenance needed to audit them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMetrics {
    pub qualified_name: String,
    pub simple_name: String,
    pub kind: ClassKind,
    pub file: PathBuf,
    pub span: Span,
    pub nom: usize,
    pub noa: usize,
    pub loc: usize,
    pub loc_mode: LocMode,
}

/// Methods and constructors declared directly in the class body.
pub fn count_methods(c: &ClassUnit) -> usize {
    c.members
        .iter()
        .filter(|m| matches!(m.kind, MemberKind::Method | MemberKind::Constructor))
        .count()
}

/// Field declarators and enum constants declared directly in the class body.
pub fn count_attributes(c: &ClassUnit) -> usize {
    c.members
        .iter()
        .filter(|m| matches!(m.kind, MemberKind::FieldDeclarator | MemberKind::EnumConstant))
        .count()
}

pub fn count_loc(c: &ClassUnit, src: &SourceFile, mode: LocMode) -> Result<usize, MetricsError> {
    let Span { start_line, end_line } = c.span;
    if start_line == 0 || start_line > end_line || end_line > src.line_count {
        return Err(MetricsError::SpanOutOfBounds {
            class: c.qualified_name.clone(),
            file: src.path.clone(),
            start: start_line,
            end: end_line,
            lines: src.line_count,
        });
    }
    Ok(match mode {
        LocMode::Physical => c.span.line_count(),
        LocMode::Sloc => (start_line..=end_line).filter(|&l| src.is_code_line(l)).count(),
    })
}

pub fn class_metrics(c: &ClassUnit, src: &SourceFile, mode: LocMode) -> Result<ClassMetrics, MetricsError> {
    Ok(ClassMetrics {
        qualified_name: c.qualified_name.clone(),
        simple_name: c.simple_name.clone(),
        kind: c.kind,
        file: c.file.clone(),
        span: c.span,
        nom: count_methods(c),
        noa: count_attributes(c),
        loc: count_loc(c, src, mode)?,
        loc_mode: mode,
    })
}

/// One entry per class, in input order.
pub fn compute_metrics(
    classes: &[ClassUnit],
    sources: &BTreeMap<PathBuf, SourceFile>,
    mode: LocMode,
) -> Result<Vec<ClassMetrics>, MetricsError> {
    classes
        .iter()
        .map(|c| {
            let src = sources.get(&c.file).ok_or_else(|| MetricsError::MissingSource {
                class: c.qualified_name.clone(),
                file: c.file.clone(),
            })?;
            class_metrics(c, src, mode)
        })
        .collect()
}
