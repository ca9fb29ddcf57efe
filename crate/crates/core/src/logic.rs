//! McCarthy's lazy three-valued propositional calculus.
//!
//! `Ee` stands for an error or a computation that never returns. The
//! connectives evaluate left to right: once the left argument decides the
//! result, the right one is never looked at, and an `Ee` on the left
//! always wins.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bool3 {
    Tt,
    Ff,
    Ee,
}

impl Bool3 {
    pub const ALL: [Bool3; 3] = [Bool3::Tt, Bool3::Ff, Bool3::Ee];

    pub fn from_bool(b: bool) -> Self {
        if b {
            Bool3::Tt
        } else {
            Bool3::Ff
        }
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            Bool3::Tt => Some(true),
            Bool3::Ff => Some(false),
            Bool3::Ee => None,
        }
    }
}

pub fn and_m(a: Bool3, b: Bool3) -> Bool3 {
    and_then_m(a, || b)
}

pub fn or_m(a: Bool3, b: Bool3) -> Bool3 {
    or_else_m(a, || b)
}

pub fn not_m(a: Bool3) -> Bool3 {
    match a {
        Bool3::Tt => Bool3::Ff,
        Bool3::Ff => Bool3::Tt,
        Bool3::Ee => Bool3::Ee,
    }
}

pub fn implies_m(a: Bool3, b: Bool3) -> Bool3 {
    or_m(not_m(a), b)
}

/// Lazy conjunction: `b` is only forced when `a` is `Tt`.
pub fn and_then_m(a: Bool3, b: impl FnOnce() -> Bool3) -> Bool3 {
    match a {
        Bool3::Tt => b(),
        Bool3::Ff => Bool3::Ff,
        Bool3::Ee => Bool3::Ee,
    }
}

/// Lazy disjunction: `b` is only forced when `a` is `Ff`.
pub fn or_else_m(a: Bool3, b: impl FnOnce() -> Bool3) -> Bool3 {
    match a {
        Bool3::Tt => Bool3::Tt,
        Bool3::Ff => b(),
        Bool3::Ee => Bool3::Ee,
    }
}

impl fmt::Display for Bool3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bool3::Tt => "tt",
            Bool3::Ff => "ff",
            Bool3::Ee => "ee",
        })
    }
}
