use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use globset::{Glob, GlobSet, GlobSetBuilder};
use rayon::prelude::*;
use walkdir::WalkDir;

use super::{load_source, parse_source, ClassUnit, ExtractError, SourceFile};

pub const DEFAULT_INCLUDE: &str = "**/*.java";

#[derive(Debug, Clone)]
pub struct ExtractOptions {
    /// Globs matched against paths relative to the root, `/`-separated.
    pub include: Vec<String>,
    pub exclude: Vec<String>,
    /// Fail on the first batch of per-file errors instead of collecting diagnostics.
    pub strict: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            include: vec![DEFAULT_INCLUDE.to_owned()],
            exclude: Vec::new(),
            strict: false,
        }
    }
}

/// A problem with one file that did not stop the run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: PathBuf,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct Extraction {
    pub root: PathBuf,
    /// Sorted by qualified name, byte-wise.
    pub classes: Vec<ClassUnit>,
    pub sources: BTreeMap<PathBuf, SourceFile>,
    pub diagnostics: Vec<Diagnostic>,
}

fn build_globset(patterns: &[String]) -> Result<GlobSet, ExtractError> {
    let mut builder = GlobSetBuilder::new();
    for p in patterns {
        builder.add(Glob::new(p)?);
    }
    Ok(builder.build()?)
}

/// Path relative to `root` with `/` separators, used for glob matching and reports.
pub fn relative_path(root: &Path, path: &Path) -> String {
    match path.strip_prefix(root) {
        Ok(rel) => rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/"),
        Err(_) => path.to_string_lossy().into_owned(),
    }
}

/// Walks `root`, parses every matching file and returns all classes sorted by
/// qualified name. Per-file failures become diagnostics unless `strict` is set.
pub fn extract_classes(root: &Path, opts: &ExtractOptions) -> Result<Extraction, ExtractError> {
    if !root.is_dir() {
        return Err(ExtractError::RootMissing(root.to_path_buf()));
    }
    let include = if opts.include.is_empty() {
        build_globset(&[DEFAULT_INCLUDE.to_owned()])?
    } else {
        build_globset(&opts.include)?
    };
    let exclude = build_globset(&opts.exclude)?;

    let mut files = Vec::new();
    let mut diagnostics = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = match entry {
            Ok(e) => e,
            Err(e) => {
                let path = e.path().map(Path::to_path_buf).unwrap_or_else(|| root.to_path_buf());
                diagnostics.push(Diagnostic {
                    path,
                    message: e.to_string(),
                });
                continue;
            }
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = relative_path(root, entry.path());
        if include.is_match(&rel) && !exclude.is_match(&rel) {
            files.push(entry.into_path());
        }
    }

    let parsed: Vec<Result<(SourceFile, Vec<ClassUnit>), ExtractError>> = files
        .par_iter()
        .map(|path| {
            let src = load_source(path)?;
            let classes = parse_source(&src)?;
            Ok((src, classes))
        })
        .collect();

    let mut classes = Vec::new();
    let mut sources = BTreeMap::new();
    let mut failures = Vec::new();
    for (path, result) in files.into_iter().zip(parsed) {
        match result {
            Ok((src, mut cs)) => {
                classes.append(&mut cs);
                sources.insert(path, src);
            }
            Err(e) => failures.push(Diagnostic {
                path,
                message: e.to_string(),
            }),
        }
    }
    if opts.strict && !failures.is_empty() {
        return Err(ExtractError::Strict {
            count: failures.len(),
            first: failures[0].message.clone(),
        });
    }
    diagnostics.extend(failures);

    classes.sort_by(|a, b| {
        a.qualified_name
            .as_bytes()
            .cmp(b.qualified_name.as_bytes())
            .then_with(|| a.file.cmp(&b.file))
            .then_with(|| a.span.cmp(&b.span))
    });
    let mut unique: Vec<ClassUnit> = Vec::with_capacity(classes.len());
    for c in classes {
        match unique.last() {
            Some(prev) if prev.qualified_name == c.qualified_name => diagnostics.push(Diagnostic {
                path: c.file.clone(),
                message: format!(
                    "duplicate qualified name {} (first declared in {} at line {}); later declaration at line {} ignored",
                    c.qualified_name,
                    relative_path(root, &prev.file),
                    prev.span.start_line,
                    c.span.start_line
                ),
            }),
            _ => unique.push(c),
        }
    }

    Ok(Extraction {
        root: root.to_path_buf(),
        classes: unique,
        sources,
        diagnostics,
    })
}
