//! Abstract errors: the words that evaluation produces instead of a value
//! and that instructions load into a state's error register.

use std::borrow::Cow;
use std::fmt;

/// A nonempty error word such as `division-by-zero`. Never equal to `OK`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractError(Cow<'static, str>);

macro_rules! catalogue {
    ($($name:ident => $word:literal),* $(,)?) => {
        impl AbstractError {
            $(pub const $name: AbstractError = AbstractError(Cow::Borrowed($word));)*

            /// Every word the interpreter itself can produce.
            pub const CATALOGUE: &'static [AbstractError] = &[$(AbstractError::$name),*];
        }
    };
}

catalogue! {
    DIVISION_BY_ZERO => "division-by-zero",
    OVERFLOW => "overflow",
    NUMBER_EXPECTED => "number-expected",
    WORD_EXPECTED => "word-expected",
    BOOLEAN_EXPECTED => "Boolean-expected",
    LIST_EXPECTED => "list-expected",
    ARRAY_EXPECTED => "array-expected",
    RECORD_EXPECTED => "record-expected",
    INDEX_OUT_OF_RANGE => "index-out-of-range",
    ATTRIBUTE_NOT_PRESENT => "attribute-not-present",
    ATTRIBUTE_ALREADY_PRESENT => "attribute-already-present",
    IDENTIFIER_NOT_DECLARED => "identifier-not-declared",
    IDENTIFIER_NOT_FREE => "identifier-not-free",
    VARIABLE_NOT_INITIALIZED => "variable-not-initialized",
    TYPE_NOT_DEFINED => "type-not-defined",
    NOT_A_RECORD_TYPE => "not-a-record-type",
    NO_COHERENCE => "no-coherence",
    A_YOKE_EXPECTED => "a-yoke-expected",
    YOKE_NOT_SATISFIED => "yoke-not-satisfied",
    PARAMETER_TYPE_MISMATCH => "parameter-type-mismatch",
    PARAMETER_LIST_MISMATCH => "parameter-list-mismatch",
    PROCEDURE_NOT_DECLARED => "procedure-not-declared",
    RETURN_TYPE_MISMATCH => "return-type-mismatch",
    EMPTY_LIST => "empty-list",
}

impl AbstractError {
    /// Builds an error from an arbitrary word. Returns `None` for the empty
    /// word and for `OK`, which marks a clean register.
    pub fn new(word: impl Into<String>) -> Option<Self> {
        let word = word.into();
        if word.is_empty() || word == "OK" {
            return None;
        }
        Some(AbstractError(Cow::Owned(word)))
    }

    pub fn word(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AbstractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for AbstractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}'", self.0)
    }
}
