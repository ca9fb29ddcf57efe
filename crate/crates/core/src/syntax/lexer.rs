//! Tokenizer. Whitespace and line breaks only separate tokens.

use std::fmt;

use thiserror::Error;

use crate::ident::{is_identifier_lexeme, KEYWORDS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    Lexical,
    Syntactic,
    KeywordMisuse,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::Lexical => "lexical",
            DiagnosticKind::Syntactic => "syntactic",
            DiagnosticKind::KeywordMisuse => "keyword-misuse",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}:{}: {kind}: {message}", span.line, span.column)]
pub struct ParseDiagnostic {
    pub span: SourceSpan,
    pub kind: DiagnosticKind,
    pub message: String,
    /// Set when the input ended before the phrase was complete.
    pub at_end: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Keyword(&'static str),
    Number(String),
    Word(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Dot,
    Assign,
    Arrow,
    Less,
    Equal,
    Plus,
    Minus,
    Star,
    Slash,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Keyword(k) => format!("keyword `{k}`"),
            TokenKind::Number(n) => format!("number `{n}`"),
            TokenKind::Word(w) => format!("word '{w}'"),
            TokenKind::Eof => "end of input".to_string(),
            other => format!("`{}`", other.punct()),
        }
    }

    fn punct(&self) -> &'static str {
        match self {
            TokenKind::LParen => "(",
            TokenKind::RParen => ")",
            TokenKind::LBracket => "[",
            TokenKind::RBracket => "]",
            TokenKind::Comma => ",",
            TokenKind::Semi => ";",
            TokenKind::Dot => ".",
            TokenKind::Assign => ":=",
            TokenKind::Arrow => "<=",
            TokenKind::Less => "<",
            TokenKind::Equal => "=",
            TokenKind::Plus => "+",
            TokenKind::Minus => "-",
            TokenKind::Star => "*",
            TokenKind::Slash => "/",
            _ => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

/// Keywords that must be followed by a name being bound or called.
const BINDERS: &[&str] = &["let", "set", "proc", "fun", "call", "yoke"];

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    let mut lexer = Lexer { text, pos: 0, line: 1, column: 1 };
    let mut tokens = Vec::new();
    loop {
        let tok = lexer.next_token()?;
        let done = tok.kind == TokenKind::Eof;
        tokens.push(tok);
        if done {
            break;
        }
    }
    check_binders(&tokens)?;
    Ok(tokens)
}

fn check_binders(tokens: &[Token]) -> Result<(), ParseDiagnostic> {
    for (i, pair) in tokens.windows(2).enumerate() {
        let TokenKind::Keyword(binder) = pair[0].kind else { continue };
        if !BINDERS.contains(&binder) {
            continue;
        }
        // `end proc`, `end fun` and `and fun` close a declaration
        let closing = i > 0 && matches!(tokens[i - 1].kind, TokenKind::Keyword("end" | "and"));
        if closing {
            continue;
        }
        if let TokenKind::Keyword(kw) = pair[1].kind {
            return Err(ParseDiagnostic {
                span: pair[1].span,
                kind: DiagnosticKind::KeywordMisuse,
                message: format!("keyword `{kw}` cannot be used as an identifier"),
                at_end: false,
            });
        }
    }
    Ok(())
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.text[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, start: (usize, usize, usize), message: String, at_end: bool) -> ParseDiagnostic {
        ParseDiagnostic {
            span: SourceSpan { start: start.0, end: self.pos, line: start.1, column: start.2 },
            kind: DiagnosticKind::Lexical,
            message,
            at_end,
        }
    }

    fn next_token(&mut self) -> Result<Token, ParseDiagnostic> {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
        let start = (self.pos, self.line, self.column);
        let Some(c) = self.bump() else {
            return Ok(self.token(TokenKind::Eof, start));
        };
        let kind = match c {
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '[' => TokenKind::LBracket,
            ']' => TokenKind::RBracket,
            ',' => TokenKind::Comma,
            ';' => TokenKind::Semi,
            '.' => TokenKind::Dot,
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '=' => TokenKind::Equal,
            '<' if self.peek() == Some('=') => {
                self.bump();
                TokenKind::Arrow
            }
            '<' => TokenKind::Less,
            ':' if self.peek() == Some('=') => {
                self.bump();
                TokenKind::Assign
            }
            '\'' => {
                let body_start = self.pos;
                loop {
                    match self.peek() {
                        Some('\'') => break,
                        Some(_) => {
                            self.bump();
                        }
                        None => return Err(self.error(start, "unterminated word literal".into(), true)),
                    }
                }
                let payload = self.text[body_start..self.pos].to_string();
                self.bump();
                TokenKind::Word(payload)
            }
            c if c.is_ascii_digit() => {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.bump();
                    }
                }
                TokenKind::Number(self.text[start.0..self.pos].to_string())
            }
            c if c.is_ascii_alphabetic() => {
                loop {
                    match self.peek() {
                        Some(c) if c.is_ascii_alphanumeric() => {
                            self.bump();
                        }
                        Some('-') if self.peek_at(1).is_some_and(|c| c.is_ascii_alphanumeric()) => {
                            self.bump();
                        }
                        _ => break,
                    }
                }
                let lexeme = &self.text[start.0..self.pos];
                debug_assert!(is_identifier_lexeme(lexeme));
                match KEYWORDS.iter().find(|k| **k == lexeme) {
                    Some(k) => TokenKind::Keyword(k),
                    None => TokenKind::Ident(lexeme.to_string()),
                }
            }
            other => return Err(self.error(start, format!("illegal character `{other}`"), false)),
        };
        Ok(self.token(kind, start))
    }

    fn token(&self, kind: TokenKind, start: (usize, usize, usize)) -> Token {
        Token { kind, span: SourceSpan { start: start.0, end: self.pos, line: start.1, column: start.2 } }
    }
}
