//! Lexical-structural Java parser.
//!
//! Works on the token stream with precomputed brace matching. Only type
//! declarations and member headers are recognized; bodies and initializers are
//! skipped except for a scan that picks up local type declarations.
//! Anonymous class bodies are never entered as types, so their members are
//! invisible to the enclosing class.

use std::path::Path;

use super::lexer::{lex, Token, TokenKind};
use super::{ClassKind, ClassUnit, ExtractError, Member, MemberKind, SourceFile, Span};

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "sealed",
];

/// Upper bound on tokens examined when deciding whether `<` opens a type argument list.
const GENERIC_LOOKAHEAD: usize = 512;

/// Parses every named type declaration in `src`, in source (pre-)order.
pub fn parse_source(src: &SourceFile) -> Result<Vec<ClassUnit>, ExtractError> {
    let lexed = lex(&src.text, src.line_count);
    let matching = match_braces(&lexed.tokens, &src.path)?;
    let mut parser = Parser {
        toks: &lexed.tokens,
        matching,
        path: &src.path,
        package: String::new(),
        out: Vec::new(),
    };
    parser.parse_compilation_unit();
    Ok(parser.out)
}

/// For every `{` token index, the index of its matching `}`.
fn match_braces(toks: &[Token<'_>], path: &Path) -> Result<Vec<usize>, ExtractError> {
    let mut matching = vec![usize::MAX; toks.len()];
    let mut stack = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        if t.is_punct('{') {
            stack.push(i);
        } else if t.is_punct('}') {
            let open = stack.pop().ok_or_else(|| ExtractError::Parse {
                path: path.to_path_buf(),
                line: t.line,
                message: "closing brace without matching opener".into(),
            })?;
            matching[open] = i;
        }
    }
    if let Some(&open) = stack.last() {
        return Err(ExtractError::Parse {
            path: path.to_path_buf(),
            line: toks[open].line,
            message: format!("unbalanced braces: {} opener(s) never closed", stack.len()),
        });
    }
    Ok(matching)
}

/// Enclosing type context for members and nested declarations.
struct Owner<'s> {
    slot: usize,
    simple_name: &'s str,
    qualified_name: &'s str,
    depth: usize,
}

struct Parser<'t, 'a> {
    toks: &'t [Token<'a>],
    matching: Vec<usize>,
    path: &'t Path,
    package: String,
    out: Vec<ClassUnit>,
}

impl<'a> Parser<'_, 'a> {
    fn tok(&self, i: usize) -> Option<&Token<'a>> {
        self.toks.get(i)
    }

    fn is_punct(&self, i: usize, c: char) -> bool {
        self.tok(i).is_some_and(|t| t.is_punct(c))
    }

    fn is_ident(&self, i: usize, word: &str) -> bool {
        self.tok(i).is_some_and(|t| t.is_ident(word))
    }

    fn is_any_ident(&self, i: usize) -> bool {
        self.tok(i).is_some_and(|t| t.kind == TokenKind::Ident)
    }

    fn line(&self, i: usize) -> usize {
        self.toks[i].line
    }

    fn parse_compilation_unit(&mut self) {
        let end = self.toks.len();
        let mut i = 0;
        while i < end {
            if self.is_ident(i, "package") {
                let stop = self.find_punct(i + 1, end, ';');
                self.package = self.toks[i + 1..stop]
                    .iter()
                    .filter(|t| t.kind == TokenKind::Ident || t.is_punct('.'))
                    .map(|t| t.text)
                    .collect();
                i = stop + 1;
                continue;
            }
            if self.is_ident(i, "import") {
                i = self.find_punct(i + 1, end, ';') + 1;
                continue;
            }
            let j = self.skip_modifiers(i, end);
            if let Some((kind, kw)) = self.type_keyword(j) {
                i = self.parse_type(kind, kw, None) + 1;
            } else if self.is_punct(j, '{') {
                i = self.matching[j] + 1;
            } else {
                i = j.max(i + 1);
            }
        }
    }

    /// First index in `[from, end)` holding punct `c`, or `end`.
    fn find_punct(&self, from: usize, end: usize, c: char) -> usize {
        (from..end).find(|&k| self.is_punct(k, c)).unwrap_or(end)
    }

    /// Skips annotations and modifier keywords starting at `i`.
    fn skip_modifiers(&self, mut i: usize, end: usize) -> usize {
        while i < end {
            if self.is_punct(i, '@') && !self.is_ident(i + 1, "interface") {
                i = self.skip_annotation(i, end);
            } else if self.tok(i).is_some_and(|t| t.kind == TokenKind::Ident && MODIFIERS.contains(&t.text)) {
                i += 1;
            } else if self.is_ident(i, "non") && self.is_punct(i + 1, '-') && self.is_ident(i + 2, "sealed") {
                i += 3;
            } else {
                break;
            }
        }
        i
    }

    /// `i` is at `@`; returns the index after the annotation.
    fn skip_annotation(&self, i: usize, end: usize) -> usize {
        let mut k = i + 1;
        while k < end && self.is_any_ident(k) {
            k += 1;
            if self.is_punct(k, '.') && self.is_any_ident(k + 1) {
                k += 1;
            } else {
                break;
            }
        }
        if self.is_punct(k, '(') {
            k = self.skip_parens(k, end);
        }
        k
    }

    /// `i` is at `(`; returns the index after the matching `)`.
    fn skip_parens(&self, i: usize, end: usize) -> usize {
        let mut depth = 0usize;
        let mut k = i;
        while k < end {
            let t = &self.toks[k];
            if t.is_punct('(') {
                depth += 1;
            } else if t.is_punct(')') {
                depth -= 1;
                if depth == 0 {
                    return k + 1;
                }
            } else if t.is_punct('{') {
                k = self.matching[k];
            } else if t.is_punct('}') {
                // ran into the enclosing block
                return k;
            }
            k += 1;
        }
        end
    }

    /// If `<` at `i` opens a type argument/parameter list, the index after its closing `>`.
    fn skip_generic(&self, i: usize, end: usize) -> Option<usize> {
        let mut depth = 0usize;
        let limit = end.min(i + GENERIC_LOOKAHEAD);
        let mut k = i;
        while k < limit {
            let t = &self.toks[k];
            match t.kind {
                TokenKind::Punct('<') => depth += 1,
                TokenKind::Punct('>') => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(k + 1);
                    }
                }
                TokenKind::Ident => {}
                TokenKind::Punct('.' | ',' | '?' | '&' | '[' | ']') => {}
                TokenKind::Punct('@') => {
                    k = self.skip_annotation(k, limit);
                    continue;
                }
                _ => return None,
            }
            k += 1;
        }
        None
    }

    /// Recognizes a type declaration keyword at `j`.
    ///
    /// Returns the kind and the index of the identifier naming the type's
    /// keyword (`class`, `interface`, `enum`, `record`).
    fn type_keyword(&self, j: usize) -> Option<(ClassKind, usize)> {
        let t = self.tok(j)?;
        if t.is_punct('@') && self.is_ident(j + 1, "interface") && self.is_any_ident(j + 2) {
            return Some((ClassKind::Interface, j + 1));
        }
        if t.kind != TokenKind::Ident || j > 0 && self.is_punct(j - 1, '.') {
            return None;
        }
        let named = self.is_any_ident(j + 1);
        match t.text {
            "class" if named => Some((ClassKind::Class, j)),
            "interface" if named => Some((ClassKind::Interface, j)),
            "enum" if named && (self.is_punct(j + 2, '{') || self.is_ident(j + 2, "implements")) => {
                Some((ClassKind::Enum, j))
            }
            "record" if named && (self.is_punct(j + 2, '(') || self.is_punct(j + 2, '<')) => {
                Some((ClassKind::Class, j))
            }
            _ => None,
        }
    }

    /// Parses the type whose keyword is at `kw`. Returns the index of its closing brace.
    fn parse_type(&mut self, kind: ClassKind, kw: usize, owner: Option<&Owner<'_>>) -> usize {
        let end = self.toks.len();
        let name_idx = kw + 1;
        let simple_name = self.toks[name_idx].text.to_owned();

        let mut k = name_idx + 1;
        while k < end && !self.is_punct(k, '{') {
            if self.is_punct(k, '(') {
                k = self.skip_parens(k, end);
            } else if self.is_punct(k, ';') || self.is_punct(k, '}') {
                // declaration without a body; not a usable type
                return k;
            } else {
                k += 1;
            }
        }
        if k >= end {
            return end - 1;
        }
        let open = k;
        let close = self.matching[open];

        let qualified_name = match owner {
            Some(o) => format!("{}.{}", o.qualified_name, simple_name),
            None if self.package.is_empty() => simple_name.clone(),
            None => format!("{}.{}", self.package, simple_name),
        };
        let depth = owner.map_or(0, |o| o.depth + 1);
        let span = Span::new(self.line(kw), self.line(close));

        if let Some(o) = owner {
            self.out[o.slot].members.push(Member {
                kind: MemberKind::NestedType,
                name: simple_name.clone(),
                span,
            });
        }

        let slot = self.out.len();
        self.out.push(ClassUnit {
            file: self.path.to_path_buf(),
            simple_name: simple_name.clone(),
            qualified_name: qualified_name.clone(),
            kind,
            span,
            nesting_depth: depth,
            members: Vec::new(),
        });

        let me = Owner {
            slot,
            simple_name: &simple_name,
            qualified_name: &qualified_name,
            depth,
        };
        self.parse_body(open + 1, close, kind, &me);
        close
    }

    fn push_member(&mut self, owner: &Owner<'_>, kind: MemberKind, name: &str, from: usize, to: usize) {
        let span = Span::new(self.line(from), self.toks[to].end_line);
        self.out[owner.slot].members.push(Member {
            kind,
            name: name.to_owned(),
            span,
        });
    }

    /// Parses members in the token range `[start, close)` of a type body.
    fn parse_body(&mut self, start: usize, close: usize, kind: ClassKind, owner: &Owner<'_>) {
        let mut i = start;
        if kind == ClassKind::Enum {
            i = self.parse_enum_constants(i, close, owner);
        }
        while i < close {
            if self.is_punct(i, ';') {
                i += 1;
                continue;
            }
            let decl_start = i;
            let j = self.skip_modifiers(i, close);
            if j >= close {
                break;
            }
            if self.is_punct(j, '{') {
                let end = self.matching[j];
                self.push_member(owner, MemberKind::Initializer, "", decl_start, end);
                self.scan_local_types(j + 1, end, owner);
                i = end + 1;
                continue;
            }
            if let Some((nested_kind, kw)) = self.type_keyword(j) {
                i = self.parse_type(nested_kind, kw, Some(owner)) + 1;
                continue;
            }
            i = self.parse_member(decl_start, j, close, owner);
        }
    }

    /// Enum constants up to the `;` (or closing brace) ending the constant list.
    fn parse_enum_constants(&mut self, mut i: usize, close: usize, owner: &Owner<'_>) -> usize {
        loop {
            let decl_start = i;
            i = self.skip_modifiers(i, close);
            if i >= close {
                return close;
            }
            if self.is_punct(i, ';') {
                return i + 1;
            }
            if !self.is_any_ident(i) {
                return decl_start;
            }
            let name = self.toks[i].text;
            let mut last = i;
            i += 1;
            if self.is_punct(i, '(') {
                i = self.skip_parens(i, close);
                last = i - 1;
            }
            if self.is_punct(i, '{') {
                // constant-specific class body is anonymous
                let end = self.matching[i];
                self.scan_local_types(i + 1, end, owner);
                last = end;
                i = end + 1;
            }
            self.push_member(owner, MemberKind::EnumConstant, name, decl_start, last);
            if self.is_punct(i, ',') {
                i += 1;
            } else if self.is_punct(i, ';') {
                return i + 1;
            } else {
                return i;
            }
        }
    }

    /// Parses one method, constructor or field declaration whose modifiers end at `j`.
    /// Returns the index after the declaration.
    fn parse_member(&mut self, decl_start: usize, j: usize, close: usize, owner: &Owner<'_>) -> usize {
        let mut head = j;
        if self.is_punct(head, '<') {
            head = self.skip_generic(head, close).unwrap_or(head + 1);
        }

        let mut k = head;
        while k < close {
            let t = &self.toks[k];
            match t.kind {
                TokenKind::Punct('<') => {
                    k = self.skip_generic(k, close).unwrap_or(k + 1);
                    continue;
                }
                TokenKind::Punct('@') => {
                    k = self.skip_annotation(k, close);
                    continue;
                }
                TokenKind::Punct('(') => return self.parse_method(decl_start, head, k, close, owner),
                TokenKind::Punct('=' | ';' | ',') => return self.parse_field(decl_start, head, close, owner),
                TokenKind::Punct('{') => {
                    // compact record constructor: `[modifiers] Name {`
                    let end = self.matching[k];
                    let is_ctor = k == head + 1 && self.toks[head].text == owner.simple_name;
                    let kind = if is_ctor { MemberKind::Constructor } else { MemberKind::Initializer };
                    let name = if is_ctor { owner.simple_name } else { "" };
                    self.push_member(owner, kind, name, decl_start, end);
                    self.scan_local_types(k + 1, end, owner);
                    return end + 1;
                }
                _ => k += 1,
            }
        }
        close
    }

    fn parse_method(&mut self, decl_start: usize, head: usize, paren: usize, close: usize, owner: &Owner<'_>) -> usize {
        let name_idx = paren.saturating_sub(1).max(head);
        let name = self.toks[name_idx].text;
        let has_return_type = name_idx > head;
        let kind = if !has_return_type && name == owner.simple_name {
            MemberKind::Constructor
        } else {
            MemberKind::Method
        };

        let mut k = self.skip_parens(paren, close);
        while k < close {
            if self.is_punct(k, ';') {
                self.push_member(owner, kind, name, decl_start, k);
                return k + 1;
            }
            if self.is_ident(k, "default") {
                // annotation element default value, may contain `{...}`
                let end = self.skip_to_semicolon(k, close);
                self.push_member(owner, kind, name, decl_start, end.min(close - 1));
                return end + 1;
            }
            if self.is_punct(k, '{') {
                let end = self.matching[k];
                self.push_member(owner, kind, name, decl_start, end);
                self.scan_local_types(k + 1, end, owner);
                return end + 1;
            }
            k += 1;
        }
        self.push_member(owner, kind, name, decl_start, close - 1);
        close
    }

    /// Index of the `;` ending a statement that starts at `from`, skipping nested braces.
    fn skip_to_semicolon(&self, from: usize, close: usize) -> usize {
        let mut k = from;
        while k < close {
            if self.is_punct(k, ';') {
                return k;
            }
            if self.is_punct(k, '{') {
                k = self.matching[k];
            }
            k += 1;
        }
        close
    }

    /// Field declaration starting at `head` (after modifiers). One member per declarator.
    fn parse_field(&mut self, decl_start: usize, head: usize, close: usize, owner: &Owner<'_>) -> usize {
        let mut names: Vec<&'a str> = Vec::new();
        let mut last_ident: Option<&'a str> = None;
        let mut in_initializer = false;
        let mut initializer_from = None;
        let mut paren = 0usize;
        let mut bracket = 0usize;
        let mut k = head;
        let end = loop {
            if k >= close {
                break close - 1;
            }
            let t = self.toks[k];
            match t.kind {
                TokenKind::Punct('{') => {
                    k = self.matching[k] + 1;
                    continue;
                }
                TokenKind::Punct('<') => {
                    if let Some(after) = self.skip_generic(k, close) {
                        k = after;
                        continue;
                    }
                }
                TokenKind::Punct('@') if !in_initializer => {
                    k = self.skip_annotation(k, close);
                    continue;
                }
                TokenKind::Punct('(') => paren += 1,
                TokenKind::Punct(')') => paren = paren.saturating_sub(1),
                TokenKind::Punct('[') => bracket += 1,
                TokenKind::Punct(']') => bracket = bracket.saturating_sub(1),
                TokenKind::Punct('=') if paren == 0 && bracket == 0 && !in_initializer => {
                    in_initializer = true;
                    initializer_from.get_or_insert(k + 1);
                }
                TokenKind::Punct(',' | ';') if paren == 0 && bracket == 0 => {
                    if let Some(n) = last_ident.take() {
                        names.push(n);
                    }
                    in_initializer = false;
                    if t.is_punct(';') {
                        break k;
                    }
                }
                TokenKind::Ident if !in_initializer => last_ident = Some(t.text),
                _ => {}
            }
            k += 1;
        };
        if let Some(n) = last_ident.take() {
            names.push(n);
        }
        for name in names {
            self.push_member(owner, MemberKind::FieldDeclarator, name, decl_start, end);
        }
        if let Some(from) = initializer_from {
            self.scan_local_types(from, end, owner);
        }
        end + 1
    }

    /// Finds local type declarations anywhere in `[start, end)` of a code body.
    fn scan_local_types(&mut self, start: usize, end: usize, owner: &Owner<'_>) {
        let mut k = start;
        while k < end {
            if let Some((kind, kw)) = self.type_keyword(k) {
                if kw == k {
                    k = self.parse_type(kind, kw, Some(owner)) + 1;
                    continue;
                }
            }
            k += 1;
        }
    }
}
