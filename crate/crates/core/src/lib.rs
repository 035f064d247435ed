//! Class-size metrics for Java code bases, drawn as three-cone charts.
//!
//! The pipeline has three stages:
//!
//! 1. [`extractor`] walks a source tree and recovers every class, interface
//!    and enum with its direct members (optionally exported as structure XML).
//! 2. [`metrics`] counts methods, attributes and lines of code per class.
//! 3. [`chart`] turns the counts into a chart of three cones (green methods,
//!    red attributes, blue LOC) rendered as SVG, and [`report`] writes the
//!    numbers as JSON or CSV.
//!
//! [`cli::run`] wires the stages together behind the `classcone` binary.

pub mod chart;
pub mod cli;
pub mod extractor;
pub mod metrics;
pub mod report;

pub use extractor::{ClassKind, ClassUnit, Member, MemberKind, SourceFile, Span};
pub use metrics::{ClassMetrics, LocMode};
