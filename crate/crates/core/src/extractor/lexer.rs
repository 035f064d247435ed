//! Java tokenizer.
//!
//! Produces only what the structural parser needs: identifiers, single-character
//! punctuation, and opaque literal tokens. Comments are discarded, and the
//! contents of string, text-block and character literals never surface as
//! punctuation, so braces inside them cannot affect matching.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Punct(char),
    /// String, text block or character literal.
    Literal,
    Number,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    /// 1-based line of the first character.
    pub line: usize,
    /// 1-based line of the last character (differs from `line` only for text blocks).
    pub end_line: usize,
}

impl Token<'_> {
    pub fn is_punct(&self, c: char) -> bool {
        self.kind == TokenKind::Punct(c)
    }

    pub fn is_ident(&self, word: &str) -> bool {
        self.kind == TokenKind::Ident && self.text == word
    }
}

/// Result of lexing one file.
#[derive(Debug, Clone)]
pub struct Lexed<'a> {
    pub tokens: Vec<Token<'a>>,
    /// `code_lines[i]` is true when line `i + 1` holds at least one token.
    pub code_lines: Vec<bool>,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.text[self.pos..].chars().nth(n)
    }

    fn starts_with(&self, s: &str) -> bool {
        self.text[self.pos..].starts_with(s)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    fn eat_while(&mut self, mut pred: impl FnMut(char) -> bool) {
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            self.bump();
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Tokenizes normalized (LF-only) Java text with `line_count` physical lines.
pub fn lex(text: &str, line_count: usize) -> Lexed<'_> {
    let mut cur = Cursor { text, pos: 0, line: 1 };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if cur.starts_with("//") {
            cur.eat_while(|c| c != '\n');
            continue;
        }
        if cur.starts_with("/*") {
            cur.bump();
            cur.bump();
            while cur.peek().is_some() && !cur.starts_with("*/") {
                cur.bump();
            }
            // unterminated comments run to end of file
            cur.bump();
            cur.bump();
            continue;
        }

        let start = cur.pos;
        let line = cur.line;
        let kind = if cur.starts_with("\"\"\"") {
            lex_text_block(&mut cur);
            TokenKind::Literal
        } else if c == '"' || c == '\'' {
            lex_quoted(&mut cur, c);
            TokenKind::Literal
        } else if is_ident_start(c) {
            cur.eat_while(is_ident_part);
            TokenKind::Ident
        } else if c.is_ascii_digit() || (c == '.' && cur.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
            lex_number(&mut cur);
            TokenKind::Number
        } else {
            cur.bump();
            TokenKind::Punct(c)
        };
        tokens.push(Token {
            kind,
            text: &text[start..cur.pos],
            line,
            end_line: cur.line,
        });
    }

    let mut code_lines = vec![false; line_count];
    for tok in &tokens {
        for l in tok.line..=tok.end_line {
            if let Some(slot) = code_lines.get_mut(l - 1) {
                *slot = true;
            }
        }
    }
    Lexed { tokens, code_lines }
}

/// String or char literal. A raw newline terminates an unclosed literal.
fn lex_quoted(cur: &mut Cursor<'_>, quote: char) {
    cur.bump();
    while let Some(c) = cur.peek() {
        match c {
            '\\' => {
                cur.bump();
                if cur.peek() != Some('\n') {
                    cur.bump();
                }
            }
            '\n' => return,
            _ if c == quote => {
                cur.bump();
                return;
            }
            _ => {
                cur.bump();
            }
        }
    }
}

fn lex_text_block(cur: &mut Cursor<'_>) {
    for _ in 0..3 {
        cur.bump();
    }
    while cur.peek().is_some() {
        if cur.starts_with("\\") {
            cur.bump();
            cur.bump();
        } else if cur.starts_with("\"\"\"") {
            for _ in 0..3 {
                cur.bump();
            }
            return;
        } else {
            cur.bump();
        }
    }
}

fn lex_number(cur: &mut Cursor<'_>) {
    let mut prev = '\0';
    while let Some(c) = cur.peek() {
        let exponent_sign = (c == '+' || c == '-') && matches!(prev, 'e' | 'E' | 'p' | 'P');
        if c.is_alphanumeric() || c == '_' || c == '.' || exponent_sign {
            prev = c;
            cur.bump();
        } else {
            break;
        }
    }
}
