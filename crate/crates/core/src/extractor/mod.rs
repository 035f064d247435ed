//! Class extraction: loading Java sources, recovering every named type
//! declaration with its direct members, and exporting the structure as XML.

mod lexer;
mod parser;
mod source;
mod walk;
pub mod xml;

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parser::parse_source;
pub use source::{load_source, Language, SourceFile};
pub use walk::{extract_classes, relative_path, Diagnostic, ExtractOptions, Extraction, DEFAULT_INCLUDE};
pub use xml::{export_xml, read_xml, XmlClass};

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: invalid UTF-8 at byte offset {offset}", path.display())]
    Decode { path: PathBuf, offset: usize },
    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("root directory {} does not exist or is not a directory", .0.display())]
    RootMissing(PathBuf),
    #[error("invalid glob pattern: {0}")]
    Glob(#[from] globset::Error),
    #[error("malformed structure XML: {0}")]
    Xml(String),
    #[error("{count} file(s) failed to load or parse; first: {first}")]
    Strict { count: usize, first: String },
}

/// Inclusive, 1-based physical line range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start_line: usize,
    pub end_line: usize,
}

impl Span {
    pub fn new(start_line: usize, end_line: usize) -> Self {
        debug_assert!(start_line <= end_line, "span {start_line}..{end_line}");
        Span { start_line, end_line }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start_line <= other.start_line && other.end_line <= self.end_line
    }

    pub fn line_count(&self) -> usize {
        self.end_line + 1 - self.start_line
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Class,
    Interface,
    Enum,
}

impl ClassKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassKind::Class => "class",
            ClassKind::Interface => "interface",
            ClassKind::Enum => "enum",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "class" => Some(ClassKind::Class),
            "interface" => Some(ClassKind::Interface),
            "enum" => Some(ClassKind::Enum),
            _ => None,
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MemberKind {
    Method,
    Constructor,
    FieldDeclarator,
    EnumConstant,
    NestedType,
    Initializer,
}

impl MemberKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MemberKind::Method => "method",
            MemberKind::Constructor => "constructor",
            MemberKind::FieldDeclarator => "field_declarator",
            MemberKind::EnumConstant => "enum_constant",
            MemberKind::NestedType => "nested_type",
            MemberKind::Initializer => "initializer",
        }
    }
}

/// A member declared directly in a class body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub kind: MemberKind,
    /// Empty for initializer blocks.
    pub name: String,
    pub span: Span,
}

/// One named class, interface or enum declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassUnit {
    pub file: PathBuf,
    pub simple_name: String,
    /// Package, enclosing type names and simple name joined with dots.
    pub qualified_name: String,
    pub kind: ClassKind,
    /// From the line of the declaration keyword through the closing brace.
    pub span: Span,
    /// 0 for top-level types.
    pub nesting_depth: usize,
    /// Direct members only, in source order.
    pub members: Vec<Member>,
}
