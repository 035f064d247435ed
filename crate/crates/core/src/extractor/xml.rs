//! Structure XML: a srcML-like view of the extracted classes.
//!
//! ```xml
//! <?xml version="1.0" encoding="UTF-8"?>
//! <project>
//!   <file path="p/A.java" lines="12">
//!     <class name="A" qualified_name="p.A" kind="class" start_line="3" end_line="12" depth="0">
//!       <member kind="method" name="m" start_line="5" end_line="7"/>
//!     </class>
//!   </file>
//! </project>
//! ```
//!
//! Files appear in path order, classes in input order within their file.
//! Paths are relative to the analysis root with `/` separators.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::walk::relative_path;
use super::{ClassKind, ClassUnit, ExtractError, MemberKind, SourceFile, Span};

pub fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Renders the structure document for `classes`.
pub fn export_xml(classes: &[ClassUnit], sources: &BTreeMap<PathBuf, SourceFile>, root: &Path) -> String {
    let mut by_file: BTreeMap<String, (&Path, Vec<&ClassUnit>)> = BTreeMap::new();
    for c in classes {
        by_file
            .entry(relative_path(root, &c.file))
            .or_insert_with(|| (c.file.as_path(), Vec::new()))
            .1
            .push(c);
    }

    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<project>\n");
    for (rel, (path, units)) in &by_file {
        let _ = write!(out, "  <file path=\"{}\"", escape_attr(rel));
        if let Some(src) = sources.get(*path) {
            let _ = write!(out, " lines=\"{}\"", src.line_count);
        }
        out.push_str(">\n");
        for c in units {
            let _ = write!(
                out,
                "    <class name=\"{}\" qualified_name=\"{}\" kind=\"{}\" start_line=\"{}\" end_line=\"{}\" depth=\"{}\"",
                escape_attr(&c.simple_name),
                escape_attr(&c.qualified_name),
                c.kind,
                c.span.start_line,
                c.span.end_line,
                c.nesting_depth
            );
            if c.members.is_empty() {
                out.push_str("/>\n");
                continue;
            }
            out.push_str(">\n");
            for m in &c.members {
                let _ = writeln!(
                    out,
                    "      <member kind=\"{}\" name=\"{}\" start_line=\"{}\" end_line=\"{}\"/>",
                    m.kind.as_str(),
                    escape_attr(&m.name),
                    m.span.start_line,
                    m.span.end_line
                );
            }
            out.push_str("    </class>\n");
        }
        out.push_str("  </file>\n");
    }
    out.push_str("</project>\n");
    out
}

/// One class element read back from a structure document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmlClass {
    pub file: String,
    pub name: String,
    pub qualified_name: String,
    pub kind: ClassKind,
    pub span: Span,
    pub depth: usize,
    pub members: Vec<(MemberKind, String, Span)>,
}

fn xml_err(msg: impl Into<String>) -> ExtractError {
    ExtractError::Xml(msg.into())
}

fn attrs(e: &BytesStart<'_>) -> Result<BTreeMap<String, String>, ExtractError> {
    let mut map = BTreeMap::new();
    for a in e.attributes() {
        let a = a.map_err(|e| xml_err(e.to_string()))?;
        let key = String::from_utf8_lossy(a.key.as_ref()).into_owned();
        let value = a.unescape_value().map_err(|e| xml_err(e.to_string()))?.into_owned();
        map.insert(key, value);
    }
    Ok(map)
}

fn take<'m>(map: &'m BTreeMap<String, String>, key: &str) -> Result<&'m str, ExtractError> {
    map.get(key).map(String::as_str).ok_or_else(|| xml_err(format!("missing attribute {key}")))
}

fn take_num(map: &BTreeMap<String, String>, key: &str) -> Result<usize, ExtractError> {
    take(map, key)?.parse().map_err(|_| xml_err(format!("attribute {key} is not a number")))
}

fn take_span(map: &BTreeMap<String, String>) -> Result<Span, ExtractError> {
    let start = take_num(map, "start_line")?;
    let end = take_num(map, "end_line")?;
    if start > end {
        return Err(xml_err(format!("inverted span {start}..{end}")));
    }
    Ok(Span::new(start, end))
}

fn member_kind(s: &str) -> Option<MemberKind> {
    Some(match s {
        "method" => MemberKind::Method,
        "constructor" => MemberKind::Constructor,
        "field_declarator" => MemberKind::FieldDeclarator,
        "enum_constant" => MemberKind::EnumConstant,
        "nested_type" => MemberKind::NestedType,
        "initializer" => MemberKind::Initializer,
        _ => return None,
    })
}

/// Parses a document produced by [`export_xml`].
pub fn read_xml(text: &str) -> Result<Vec<XmlClass>, ExtractError> {
    let mut reader = Reader::from_str(text);
    reader.trim_text(true);
    let mut classes = Vec::new();
    let mut file: Option<String> = None;
    let mut current: Option<XmlClass> = None;
    loop {
        let event = reader.read_event().map_err(|e| xml_err(e.to_string()))?;
        let (e, empty) = match &event {
            Event::Start(e) => (e, false),
            Event::Empty(e) => (e, true),
            Event::End(e) => {
                match e.name().as_ref() {
                    b"class" => classes.extend(current.take()),
                    b"file" => file = None,
                    _ => {}
                }
                continue;
            }
            Event::Eof => break,
            _ => continue,
        };
        match e.name().as_ref() {
            b"project" => {}
            b"file" => file = Some(take(&attrs(e)?, "path")?.to_owned()),
            b"class" => {
                let a = attrs(e)?;
                let kind_text = take(&a, "kind")?;
                let class = XmlClass {
                    file: file.clone().ok_or_else(|| xml_err("class outside file"))?,
                    name: take(&a, "name")?.to_owned(),
                    qualified_name: take(&a, "qualified_name")?.to_owned(),
                    kind: ClassKind::parse(kind_text).ok_or_else(|| xml_err(format!("unknown class kind {kind_text}")))?,
                    span: take_span(&a)?,
                    depth: take_num(&a, "depth")?,
                    members: Vec::new(),
                };
                if empty {
                    classes.push(class);
                } else {
                    current = Some(class);
                }
            }
            b"member" => {
                let a = attrs(e)?;
                let kind_text = take(&a, "kind")?;
                let kind = member_kind(kind_text).ok_or_else(|| xml_err(format!("unknown member kind {kind_text}")))?;
                let member = (kind, take(&a, "name")?.to_owned(), take_span(&a)?);
                current.as_mut().ok_or_else(|| xml_err("member outside class"))?.members.push(member);
            }
            other => return Err(xml_err(format!("unexpected element {}", String::from_utf8_lossy(other)))),
        }
    }
    Ok(classes)
}
