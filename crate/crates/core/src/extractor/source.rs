use std::fs;
use std::path::{Path, PathBuf};

use super::lexer;
use super::ExtractError;

/// Source language of a file. Only Java is parsed today.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Language {
    #[default]
    Java,
}

/// A loaded source file with LF-only line endings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub path: PathBuf,
    pub text: String,
    pub line_count: usize,
    pub language: Language,
    code_lines: Vec<bool>,
}

impl SourceFile {
    /// Builds a source file from in-memory text, normalizing CRLF and lone CR to LF.
    pub fn from_text(path: impl Into<PathBuf>, text: &str) -> Self {
        let text = normalize_newlines(text);
        let line_count = count_lines(&text);
        let code_lines = lexer::lex(&text, line_count).code_lines;
        SourceFile {
            path: path.into(),
            text,
            line_count,
            language: Language::Java,
            code_lines,
        }
    }

    /// Whether 1-based `line` contains at least one token outside comments.
    pub fn is_code_line(&self, line: usize) -> bool {
        line >= 1 && self.code_lines.get(line - 1).copied().unwrap_or(false)
    }
}

/// Reads and decodes a file as UTF-8. A leading byte-order mark is dropped.
pub fn load_source(path: &Path) -> Result<SourceFile, ExtractError> {
    let bytes = fs::read(path).map_err(|source| ExtractError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = std::str::from_utf8(&bytes).map_err(|e| ExtractError::Decode {
        path: path.to_path_buf(),
        offset: e.valid_up_to(),
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    Ok(SourceFile::from_text(path, text))
}

fn normalize_newlines(text: &str) -> String {
    if !text.contains('\r') {
        return text.to_owned();
    }
    text.replace("\r\n", "\n").replace('\r', "\n")
}

fn count_lines(text: &str) -> usize {
    if text.is_empty() {
        return 0;
    }
    let newlines = text.bytes().filter(|&b| b == b'\n').count();
    if text.ends_with('\n') {
        newlines
    } else {
        newlines + 1
    }
}
