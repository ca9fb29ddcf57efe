//! Restoring colloquial forms to concrete syntax.
//!
//! Each function here takes the pieces of one colloquial phrase, already
//! parsed, and builds the concrete tree it stands for. Parenthesis
//! restoration happens in the parser itself through operator priorities.

use crate::ident::Identifier;

use super::ast::{BinOp, DatExp, TraExp, TypExp};

/// `array [e1, …, en]` unfolds to `add-to-arr … add-to-arr array e1 ee new e2 ee … new en ee`.
pub fn array_literal(items: Vec<DatExp>) -> Option<DatExp> {
    let mut iter = items.into_iter();
    let first = DatExp::Array(Box::new(iter.next()?));
    Some(append_to_array(first, iter))
}

/// `add-to-arr a new [e1, …, en] ee` appends the elements left to right.
pub fn append_to_array(array: DatExp, items: impl IntoIterator<Item = DatExp>) -> DatExp {
    items
        .into_iter()
        .fold(array, |acc, e| DatExp::AddToArr { array: Box::new(acc), elem: Box::new(e) })
}

/// `change-arr a by i1 <= e1, …, in <= en ee` nests one `change-arr` per
/// update, the first update innermost.
pub fn change_array(array: DatExp, updates: Vec<(DatExp, DatExp)>) -> DatExp {
    updates.into_iter().fold(array, |acc, (i, e)| DatExp::ChangeArr {
        array: Box::new(acc),
        index: Box::new(i),
        elem: Box::new(e),
    })
}

/// `record f1 <= e1, …, fn <= en ee` starts from `record f1 of-value e1 ee`
/// and adds the remaining attributes one by one.
pub fn record_literal(fields: Vec<(Identifier, DatExp)>) -> Option<DatExp> {
    let mut iter = fields.into_iter();
    let (attr, value) = iter.next()?;
    let first = DatExp::Record { attr, value: Box::new(value) };
    Some(iter.fold(first, |acc, (attr, value)| DatExp::AddAttr {
        attr,
        value: Box::new(value),
        record: Box::new(acc),
    }))
}

/// One attribute of a colloquial record type: `name as ty [with yoke]`.
pub struct AttributeSpec {
    pub name: Identifier,
    pub ty: TypExp,
    pub yoke: Option<TraExp>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftError {
    pub attribute: Identifier,
    pub construct: &'static str,
}

/// Builds `record-type a1 as t1 ee` extended by `expand-record-type` for
/// every further attribute. Attribute yokes are rewritten to act on the
/// record and joined with `and` into one `replace-transfer-in`.
pub fn record_type(attrs: Vec<AttributeSpec>) -> Result<Option<TypExp>, LiftError> {
    let mut iter = attrs.into_iter();
    let Some(first) = iter.next() else { return Ok(None) };
    let mut yokes = Vec::new();
    if let Some(y) = first.yoke {
        yokes.push(lift_yoke(&first.name, &y)?);
    }
    let mut ty = TypExp::RecordType { attr: first.name, ty: Box::new(first.ty) };
    for spec in iter {
        if let Some(y) = spec.yoke {
            yokes.push(lift_yoke(&spec.name, &y)?);
        }
        ty = TypExp::ExpandRecordType { base: Box::new(ty), attr: spec.name, ty: Box::new(spec.ty) };
    }
    let mut yokes = yokes.into_iter();
    if let Some(first) = yokes.next() {
        let joined = yokes.fold(first, |acc, y| TraExp::binary(BinOp::And, acc, y));
        ty = TypExp::ReplaceTransferIn { ty: Box::new(ty), transfer: Box::new(joined) };
    }
    Ok(Some(ty))
}

/// Rewrites a yoke about an attribute's composite into a yoke about the
/// enclosing record by replacing `value` with `record.attr`. Selections
/// that consume the current composite implicitly have no such rewrite.
pub fn lift_yoke(attr: &Identifier, yoke: &TraExp) -> Result<TraExp, LiftError> {
    let err = |construct| LiftError { attribute: attr.clone(), construct };
    let lift = |t: &TraExp| lift_yoke(attr, t).map(Box::new);
    Ok(match yoke {
        TraExp::Value => TraExp::RecordAttr(attr.clone()),
        TraExp::Num(_) | TraExp::Wor(_) | TraExp::True | TraExp::False => yoke.clone(),
        TraExp::Binary(op, l, r) => TraExp::Binary(*op, lift(l)?, lift(r)?),
        TraExp::Glue(l, r) => TraExp::Glue(lift(l)?, lift(r)?),
        TraExp::Not(t) => TraExp::Not(lift(t)?),
        TraExp::Sum(t) => TraExp::Sum(lift(t)?),
        TraExp::Max(t) => TraExp::Max(lift(t)?),
        TraExp::SmallNumber(t) => TraExp::SmallNumber(lift(t)?),
        TraExp::Increasing(t) => TraExp::Increasing(lift(t)?),
        TraExp::AllList(_) => return Err(err("all-list")),
        TraExp::AllArray(_) => return Err(err("all-array")),
        TraExp::Top => return Err(err("top")),
        TraExp::ArrayIndex(_) => return Err(err("array[...]")),
        TraExp::RecordAttr(_) => return Err(err("record.attribute")),
    })
}
