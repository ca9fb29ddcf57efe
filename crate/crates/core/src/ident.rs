use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Reserved words. None of them may be used as an identifier.
pub const KEYWORDS: &[&str] = &[
    // data expressions
    "true", "false", "and", "or", "not", "glue", "list", "push", "on", "ee", "top", "pop",
    "array", "add-to-arr", "new", "change-arr", "at", "by", "arr", "record", "of-value",
    "add-attr", "to", "rec", "remove-attr", "from", "change-rec", "if", "then", "else", "fi",
    // transfer expressions
    "sum", "max", "small-number", "increasing", "all-list", "all-array", "value",
    // type expressions
    "boolean", "number", "word", "list-type", "array-type", "record-type", "as",
    "expand-record-type", "replace-transfer-in", "with",
    // declarations, procedures, instructions, programs
    "let", "be", "tel", "set", "tes", "empty-ap", "empty-fp", "proc", "val", "ref", "end",
    "begin", "multiproc", "fun", "endfun", "return", "yoke", "skip", "call", "if-error",
    "while", "do", "od", "begin-program", "end-program",
    // colloquial spellings
    "set-record", "add-atr", "record-of", "expand-record", "array-of", "set-type",
    "all-of-array", "get-from-array", "get-from-record", "string",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

/// A variable, type-constant, procedure or record-attribute name: ASCII
/// letters, digits and `-`, starting with a letter, never a keyword.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identifier(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentifierError {
    #[error("`{0}` is not a well-formed identifier")]
    Malformed(String),
    #[error("keyword `{0}` cannot be used as an identifier")]
    Keyword(String),
}

pub(crate) fn is_identifier_lexeme(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    let bytes = s.as_bytes();
    bytes.iter().enumerate().all(|(i, &b)| match b {
        b'-' => bytes.get(i + 1).is_some_and(|n| n.is_ascii_alphanumeric()),
        _ => b.is_ascii_alphanumeric(),
    })
}

impl Identifier {
    pub fn new(name: &str) -> Result<Self, IdentifierError> {
        if !is_identifier_lexeme(name) {
            return Err(IdentifierError::Malformed(name.to_string()));
        }
        if is_keyword(name) {
            return Err(IdentifierError::Keyword(name.to_string()));
        }
        Ok(Identifier(name.into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Identifier {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for tests and examples; panics on an invalid name.
pub fn ide(name: &str) -> Identifier {
    Identifier::new(name).unwrap_or_else(|e| panic!("{e}"))
}
