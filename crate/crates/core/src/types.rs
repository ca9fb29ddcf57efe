//! Transfers, types and values.

use std::fmt;
use std::sync::Arc;

use crate::data::{clan_bo_member, Body, Composite, Data};
use crate::error::AbstractError;

pub type TransferResult = Result<Composite, AbstractError>;

type TransferFn = dyn Fn(&Composite) -> TransferResult + Send + Sync;

/// A function from composites to composites or errors.
///
/// Transfers carry the canonical text of the transfer expression they were
/// built from. Two transfers are equal when that text is equal.
#[derive(Clone)]
pub struct Transfer {
    func: Arc<TransferFn>,
    label: Arc<str>,
}

impl Transfer {
    pub fn new<F>(label: impl Into<Arc<str>>, func: F) -> Self
    where
        F: Fn(&Composite) -> TransferResult + Send + Sync + 'static,
    {
        Transfer { func: Arc::new(func), label: label.into() }
    }

    /// `TT`: yields `(tt, Boolean)` for every composite.
    pub fn always_true() -> Self {
        Transfer::new("true", |_| Ok(Composite::boolean(true)))
    }

    /// Applies the transfer; an error argument is returned unchanged.
    pub fn apply(&self, x: TransferResult) -> TransferResult {
        match x {
            Ok(com) => (self.func)(&com),
            Err(e) => Err(e),
        }
    }

    pub fn call(&self, com: &Composite) -> TransferResult {
        (self.func)(com)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

pub fn apply_transfer(tra: &Transfer, x: TransferResult) -> TransferResult {
    tra.apply(x)
}

impl PartialEq for Transfer {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.func, &other.func) || self.label == other.label
    }
}

impl Eq for Transfer {}

impl fmt::Debug for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transfer({})", self.label)
    }
}

impl fmt::Display for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// A body paired with a transfer. Whether the transfer is a yoke is only
/// checked where the type is used.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LangType {
    pub body: Body,
    pub transfer: Transfer,
}

impl LangType {
    pub fn new(body: Body, transfer: Transfer) -> Self {
        LangType { body, transfer }
    }

    /// The type with the given body and the always-satisfied transfer.
    pub fn plain(body: Body) -> Self {
        LangType { body, transfer: Transfer::always_true() }
    }
}

impl fmt::Display for LangType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with {}", self.body, self.transfer)
    }
}

/// Is `com` in the clan of `typ`? The transfer must yield exactly
/// `(tt, Boolean)`; errors and other composites count as failure.
pub fn clan_ty_member(com: &Composite, typ: &LangType) -> bool {
    com.body() == &typ.body
        && clan_bo_member(com.data(), &typ.body)
        && typ.transfer.call(com).is_ok_and(|r| r.as_boolean() == Some(true))
}

/// Typed data bound to a variable. `content == None` is the pseudo-data Ω
/// of a declared but not yet assigned variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Value {
    content: Option<Data>,
    ty: LangType,
}

impl Value {
    pub fn pseudo(ty: LangType) -> Self {
        Value { content: None, ty }
    }

    /// The value `((dat, bod), tra)`.
    pub fn new(com: Composite, transfer: Transfer) -> Self {
        let (data, body) = com.into_parts();
        Value { content: Some(data), ty: LangType { body, transfer } }
    }

    pub fn content(&self) -> Option<&Data> {
        self.content.as_ref()
    }

    pub fn ty(&self) -> &LangType {
        &self.ty
    }

    pub fn body(&self) -> &Body {
        &self.ty.body
    }

    pub fn transfer(&self) -> &Transfer {
        &self.ty.transfer
    }

    pub fn is_pseudo(&self) -> bool {
        self.content.is_none()
    }

    /// The composite, or `None` for Ω.
    pub fn composite(&self) -> Option<Composite> {
        self.content.as_ref().map(|d| Composite::new_unchecked(d.clone(), self.ty.body.clone()))
    }

    pub fn with_transfer(self, transfer: Transfer) -> Self {
        Value { content: self.content, ty: LangType { body: self.ty.body, transfer } }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.content {
            Some(d) => write!(f, "({}, {}) with {}", d, self.ty.body, self.ty.transfer),
            None => write!(f, "(Ω, {}) with {}", self.ty.body, self.ty.transfer),
        }
    }
}
