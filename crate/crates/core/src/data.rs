//! Data, bodies and composites, together with the clan, coherence and
//! size predicates over them.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ident::Identifier;
use crate::number::Number;

/// Runtime data. Arrays are indexed `1..=len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Data {
    Boolean(bool),
    Number(Number),
    Word(String),
    List(Vec<Data>),
    Array(Vec<Data>),
    Record(BTreeMap<Identifier, Data>),
}

/// Structural descriptor of a datum.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Body {
    Boolean,
    Number,
    Word,
    List(Box<Body>),
    Array(Box<Body>),
    Record(BTreeMap<Identifier, Body>),
}

impl Body {
    pub fn list_of(element: Body) -> Body {
        Body::List(Box::new(element))
    }

    pub fn array_of(element: Body) -> Body {
        Body::Array(Box::new(element))
    }

    pub fn record<I: IntoIterator<Item = (Identifier, Body)>>(attrs: I) -> Body {
        Body::Record(attrs.into_iter().collect())
    }

    pub fn is_record(&self) -> bool {
        matches!(self, Body::Record(_))
    }
}

/// Does `dat` belong to the clan of `bod`?
///
/// Empty lists and arrays belong to every collection body of their kind.
/// Record data must carry exactly the attributes of the record body.
pub fn clan_bo_member(dat: &Data, bod: &Body) -> bool {
    match (dat, bod) {
        (Data::Boolean(_), Body::Boolean) | (Data::Number(_), Body::Number) | (Data::Word(_), Body::Word) => true,
        (Data::List(items), Body::List(el)) | (Data::Array(items), Body::Array(el)) => {
            items.iter().all(|d| clan_bo_member(d, el))
        }
        (Data::Record(fields), Body::Record(attrs)) => {
            fields.len() == attrs.len()
                && fields
                    .iter()
                    .all(|(k, d)| attrs.get(k).is_some_and(|b| clan_bo_member(d, b)))
        }
        _ => false,
    }
}

/// Bodies are coherent when equal, or when both are record bodies and the
/// attribute map of one is a sub-map of the other's.
pub fn coherent(b1: &Body, b2: &Body) -> bool {
    if b1 == b2 {
        return true;
    }
    match (b1, b2) {
        (Body::Record(a), Body::Record(b)) => is_submap(a, b) || is_submap(b, a),
        _ => false,
    }
}

fn is_submap(small: &BTreeMap<Identifier, Body>, big: &BTreeMap<Identifier, Body>) -> bool {
    small.iter().all(|(k, b)| big.get(k) == Some(b))
}

/// Size bounds for executable data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Limits {
    max_digits: u64,
    max_word_length: usize,
    max_collection_size: usize,
    small_number_digits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("limit `{0}` must be strictly positive")]
pub struct LimitsError(pub &'static str);

impl Default for Limits {
    fn default() -> Self {
        Limits { max_digits: 20, max_word_length: 10_000, max_collection_size: 100_000, small_number_digits: 6 }
    }
}

impl Limits {
    pub fn new(max_digits: u64, max_word_length: usize, max_collection_size: usize) -> Result<Self, LimitsError> {
        Limits::default()
            .with_max_digits(max_digits)?
            .with_max_word_length(max_word_length)?
            .with_max_collection_size(max_collection_size)
    }

    pub fn with_max_digits(self, n: u64) -> Result<Self, LimitsError> {
        if n == 0 {
            return Err(LimitsError("max-digits"));
        }
        Ok(Limits { max_digits: n, ..self })
    }

    pub fn with_max_word_length(self, n: usize) -> Result<Self, LimitsError> {
        if n == 0 {
            return Err(LimitsError("max-word-length"));
        }
        Ok(Limits { max_word_length: n, ..self })
    }

    pub fn with_max_collection_size(self, n: usize) -> Result<Self, LimitsError> {
        if n == 0 {
            return Err(LimitsError("max-collection-size"));
        }
        Ok(Limits { max_collection_size: n, ..self })
    }

    /// `small-number` holds for numbers whose absolute value is below `10^n`.
    pub fn with_small_number_digits(self, n: u64) -> Result<Self, LimitsError> {
        if n == 0 {
            return Err(LimitsError("small-number-digits"));
        }
        Ok(Limits { small_number_digits: n, ..self })
    }

    pub fn max_digits(&self) -> u64 {
        self.max_digits
    }

    pub fn max_word_length(&self) -> usize {
        self.max_word_length
    }

    pub fn max_collection_size(&self) -> usize {
        self.max_collection_size
    }

    pub fn small_number_digits(&self) -> u64 {
        self.small_number_digits
    }
}

/// Top-level size check; elements were checked when they were built.
pub fn oversized(dat: &Data, lim: &Limits) -> bool {
    match dat {
        Data::Boolean(_) => false,
        Data::Number(n) => n.digit_count() > lim.max_digits,
        Data::Word(w) => w.chars().count() > lim.max_word_length,
        Data::List(items) | Data::Array(items) => items.len() > lim.max_collection_size,
        Data::Record(fields) => fields.len() > lim.max_collection_size,
    }
}

/// A datum paired with a body it belongs to.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Composite {
    data: Data,
    body: Body,
}

impl Composite {
    /// Pairs `data` with `body` if the data is in the body's clan.
    pub fn new(data: Data, body: Body) -> Option<Self> {
        clan_bo_member(&data, &body).then_some(Composite { data, body })
    }

    /// Caller guarantees clan membership.
    pub(crate) fn new_unchecked(data: Data, body: Body) -> Self {
        debug_assert!(clan_bo_member(&data, &body), "{data:?} is not in the clan of {body:?}");
        Composite { data, body }
    }

    pub fn boolean(b: bool) -> Self {
        Composite { data: Data::Boolean(b), body: Body::Boolean }
    }

    pub fn number(n: impl Into<Number>) -> Self {
        Composite { data: Data::Number(n.into()), body: Body::Number }
    }

    pub fn word(w: impl Into<String>) -> Self {
        Composite { data: Data::Word(w.into()), body: Body::Word }
    }

    pub fn data(&self) -> &Data {
        &self.data
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn into_parts(self) -> (Data, Body) {
        (self.data, self.body)
    }

    /// `Some(b)` for `(tt, Boolean)` and `(ff, Boolean)`.
    pub fn as_boolean(&self) -> Option<bool> {
        match (&self.data, &self.body) {
            (Data::Boolean(b), Body::Boolean) => Some(*b),
            _ => None,
        }
    }
}

impl fmt::Display for Data {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn seq(f: &mut fmt::Formatter<'_>, head: &str, items: &[Data]) -> fmt::Result {
            write!(f, "{head}[")?;
            for (i, d) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{d}")?;
            }
            f.write_str("]")
        }
        match self {
            Data::Boolean(true) => f.write_str("tt"),
            Data::Boolean(false) => f.write_str("ff"),
            Data::Number(n) => write!(f, "{n}"),
            Data::Word(w) => write!(f, "'{w}'"),
            Data::List(items) => seq(f, "list", items),
            Data::Array(items) => seq(f, "array", items),
            Data::Record(fields) => {
                f.write_str("record{")?;
                for (i, (k, d)) in fields.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}: {d}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Boolean => f.write_str("Boolean"),
            Body::Number => f.write_str("number"),
            Body::Word => f.write_str("word"),
            Body::List(el) => write!(f, "list-of {el}"),
            Body::Array(el) => write!(f, "array-of {el}"),
            Body::Record(attrs) => {
                f.write_str("record{")?;
                for (i, (k, b)) in attrs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}: {b}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Display for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.data, self.body)
    }
}

macro_rules! debug_via_display {
    ($($t:ty),*) => {$(
        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    )*};
}
debug_via_display!(Data, Body, Composite);
