#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn corpus_dir() -> PathBuf {
    fixtures_dir().join("corpus")
}

#[derive(Debug, Clone, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub qualified_name: String,
    pub kind: String,
    pub nesting_depth: usize,
    pub nom: usize,
    pub noa: usize,
    pub loc_physical: usize,
    pub loc_sloc: usize,
}

#[derive(Debug, Deserialize)]
struct Manifest {
    classes: Vec<ManifestEntry>,
}

/// Hand-counted expectations for the fixture corpus, keyed by qualified name.
pub fn manifest() -> BTreeMap<String, ManifestEntry> {
    let text = std::fs::read_to_string(fixtures_dir().join("corpus_manifest.json")).unwrap();
    let m: Manifest = serde_json::from_str(&text).unwrap();
    m.classes.into_iter().map(|e| (e.qualified_name.clone(), e)).collect()
}

/// Location of the JFreeChart 1.0.5 `source` tree.
///
/// `JFREECHART_SRC` wins; otherwise `tests/data/jfreechart-1.0.5/source` is used
/// when it exists.
pub fn jfreechart_root() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os("JFREECHART_SRC") {
        let p = PathBuf::from(p);
        return p.is_dir().then_some(p);
    }
    let vendored = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/jfreechart-1.0.5/source");
    vendored.is_dir().then_some(vendored)
}

/// Counts every element in an XML document, failing on malformed input.
pub fn xml_element_counts(text: &str) -> Result<BTreeMap<String, usize>, String> {
    use quick_xml::events::Event;
    let mut reader = quick_xml::Reader::from_str(text);
    let mut counts = BTreeMap::new();
    let mut depth = 0i64;
    loop {
        match reader.read_event().map_err(|e| e.to_string())? {
            Event::Start(e) => {
                depth += 1;
                *counts.entry(String::from_utf8_lossy(e.name().as_ref()).into_owned()).or_insert(0) += 1;
            }
            Event::Empty(e) => {
                *counts.entry(String::from_utf8_lossy(e.name().as_ref()).into_owned()).or_insert(0) += 1;
            }
            Event::End(_) => depth -= 1,
            Event::Eof => break,
            _ => {}
        }
    }
    if depth != 0 {
        return Err(format!("unclosed elements: {depth}"));
    }
    Ok(counts)
}

/// Values of every `fill` attribute in an SVG document.
pub fn fill_colors(text: &str) -> Vec<String> {
    use quick_xml::events::Event;
    let mut reader = quick_xml::Reader::from_str(text);
    let mut fills = Vec::new();
    loop {
        match reader.read_event().unwrap() {
            Event::Start(e) | Event::Empty(e) => {
                for a in e.attributes() {
                    let a = a.unwrap();
                    if a.key.as_ref() == b"fill" {
                        fills.push(a.unescape_value().unwrap().into_owned());
                    }
                }
            }
            Event::Eof => break,
            _ => {}
        }
    }
    fills
}

/// Text content of every `<text>` element, in document order.
pub fn text_contents(svg: &str) -> Vec<String> {
    use quick_xml::events::Event;
    let mut reader = quick_xml::Reader::from_str(svg);
    let mut out = Vec::new();
    let mut in_text = false;
    loop {
        match reader.read_event().unwrap() {
            Event::Start(e) if e.name().as_ref() == b"text" => in_text = true,
            Event::Text(t) if in_text => out.push(t.unescape().unwrap().into_owned()),
            Event::End(e) if e.name().as_ref() == b"text" => in_text = false,
            Event::Eof => break,
            _ => {}
        }
    }
    out
}
