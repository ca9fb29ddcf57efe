//! Operations on composites shared by data and transfer expressions.
//! Each one checks bodies first, then its own guards, then the size of
//! the result.

use num_bigint::BigInt;

use crate::data::{oversized, Body, Composite, Data, Limits};
use crate::error::AbstractError;
use crate::ident::Identifier;
use crate::number::Number;
use crate::syntax::ast::BinOp;

use super::Den;

pub(super) fn sized(com: Composite, limits: &Limits) -> Den {
    if oversized(com.data(), limits) {
        Err(AbstractError::OVERFLOW)
    } else {
        Ok(com)
    }
}

pub(super) fn number(com: &Composite) -> Result<&Number, AbstractError> {
    match com.data() {
        Data::Number(n) => Ok(n),
        _ => Err(AbstractError::NUMBER_EXPECTED),
    }
}

pub(super) fn boolean(com: &Composite) -> Result<bool, AbstractError> {
    com.as_boolean().ok_or(AbstractError::BOOLEAN_EXPECTED)
}

pub(super) fn word(com: &Composite) -> Result<&str, AbstractError> {
    match com.data() {
        Data::Word(w) => Ok(w),
        _ => Err(AbstractError::WORD_EXPECTED),
    }
}

/// Arithmetic and comparison; `and`/`or` are handled lazily by callers.
pub(super) fn binary(op: BinOp, a: &Composite, b: &Composite, limits: &Limits) -> Den {
    match op {
        BinOp::Equal => Ok(Composite::boolean(a == b)),
        BinOp::Less => Ok(Composite::boolean(number(a)? < number(b)?)),
        BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div => {
            let (x, y) = (number(a)?, number(b)?);
            let r = match op {
                BinOp::Add => x.add(y),
                BinOp::Sub => x.sub(y),
                BinOp::Mul => x.mul(y),
                _ => {
                    if y.is_zero() {
                        return Err(AbstractError::DIVISION_BY_ZERO);
                    }
                    x.div(y, limits.max_digits()).ok_or(AbstractError::OVERFLOW)?
                }
            };
            sized(Composite::number(r), limits)
        }
        BinOp::And | BinOp::Or => unreachable!("connectives are evaluated lazily"),
    }
}

pub(super) fn glue(a: &Composite, b: &Composite, limits: &Limits) -> Den {
    let joined = format!("{}{}", word(a)?, word(b)?);
    sized(Composite::word(joined), limits)
}

fn list_parts(com: &Composite) -> Result<(&[Data], &Body), AbstractError> {
    match (com.data(), com.body()) {
        (Data::List(items), Body::List(elem)) => Ok((items.as_slice(), elem.as_ref())),
        _ => Err(AbstractError::LIST_EXPECTED),
    }
}

fn array_parts(com: &Composite) -> Result<(&[Data], &Body), AbstractError> {
    match (com.data(), com.body()) {
        (Data::Array(items), Body::Array(elem)) => Ok((items.as_slice(), elem.as_ref())),
        _ => Err(AbstractError::ARRAY_EXPECTED),
    }
}

pub(super) fn record_parts(
    com: &Composite,
) -> Result<(&std::collections::BTreeMap<Identifier, Data>, &std::collections::BTreeMap<Identifier, Body>), AbstractError>
{
    match (com.data(), com.body()) {
        (Data::Record(fields), Body::Record(attrs)) => Ok((fields, attrs)),
        _ => Err(AbstractError::RECORD_EXPECTED),
    }
}

pub(super) fn list_elements(com: &Composite) -> Result<Vec<Composite>, AbstractError> {
    let (items, elem) = list_parts(com)?;
    Ok(items.iter().map(|d| Composite::new_unchecked(d.clone(), elem.clone())).collect())
}

pub(super) fn array_elements(com: &Composite) -> Result<Vec<Composite>, AbstractError> {
    let (items, elem) = array_parts(com)?;
    Ok(items.iter().map(|d| Composite::new_unchecked(d.clone(), elem.clone())).collect())
}

pub(super) fn singleton_list(e: Composite) -> Composite {
    let (d, b) = e.into_parts();
    Composite::new_unchecked(Data::List(vec![d]), Body::list_of(b))
}

pub(super) fn singleton_array(e: Composite) -> Composite {
    let (d, b) = e.into_parts();
    Composite::new_unchecked(Data::Array(vec![d]), Body::array_of(b))
}

/// Puts `e` on top of `list`.
pub(super) fn push(e: Composite, list: &Composite, limits: &Limits) -> Den {
    let (items, elem) = list_parts(list)?;
    if e.body() != elem {
        return Err(AbstractError::NO_COHERENCE);
    }
    let mut new_items = Vec::with_capacity(items.len() + 1);
    new_items.push(e.into_parts().0);
    new_items.extend(items.iter().cloned());
    sized(Composite::new_unchecked(Data::List(new_items), list.body().clone()), limits)
}

pub(super) fn top(list: &Composite) -> Den {
    let (items, elem) = list_parts(list)?;
    let first = items.first().ok_or(AbstractError::EMPTY_LIST)?;
    Ok(Composite::new_unchecked(first.clone(), elem.clone()))
}

pub(super) fn pop(list: &Composite) -> Den {
    let (items, _) = list_parts(list)?;
    if items.is_empty() {
        return Err(AbstractError::EMPTY_LIST);
    }
    Ok(Composite::new_unchecked(Data::List(items[1..].to_vec()), list.body().clone()))
}

pub(super) fn add_to_array(array: &Composite, e: Composite, limits: &Limits) -> Den {
    let (items, elem) = array_parts(array)?;
    if e.body() != elem {
        return Err(AbstractError::NO_COHERENCE);
    }
    let mut new_items = items.to_vec();
    new_items.push(e.into_parts().0);
    sized(Composite::new_unchecked(Data::Array(new_items), array.body().clone()), limits)
}

/// Converts an index composite to a position in `0..len`.
fn position(index: &Composite, len: usize) -> Result<usize, AbstractError> {
    let n = number(index)?;
    n.to_i64()
        .and_then(|i| usize::try_from(i).ok())
        .filter(|i| (1..=len).contains(i))
        .map(|i| i - 1)
        .ok_or(AbstractError::INDEX_OUT_OF_RANGE)
}

pub(super) fn change_array(array: &Composite, index: &Composite, e: Composite) -> Den {
    let (items, elem) = array_parts(array)?;
    let i = position(index, items.len())?;
    if e.body() != elem {
        return Err(AbstractError::NO_COHERENCE);
    }
    let mut new_items = items.to_vec();
    new_items[i] = e.into_parts().0;
    Ok(Composite::new_unchecked(Data::Array(new_items), array.body().clone()))
}

pub(super) fn array_at(array: &Composite, index: &Composite) -> Den {
    let (items, elem) = array_parts(array)?;
    let i = position(index, items.len())?;
    Ok(Composite::new_unchecked(items[i].clone(), elem.clone()))
}

pub(super) fn singleton_record(attr: &Identifier, value: Composite) -> Composite {
    let (d, b) = value.into_parts();
    Composite::new_unchecked(
        Data::Record([(attr.clone(), d)].into_iter().collect()),
        Body::record([(attr.clone(), b)]),
    )
}

pub(super) fn add_attribute(record: &Composite, attr: &Identifier, value: Composite, limits: &Limits) -> Den {
    let (fields, attrs) = record_parts(record)?;
    if fields.contains_key(attr) {
        return Err(AbstractError::ATTRIBUTE_ALREADY_PRESENT);
    }
    let (d, b) = value.into_parts();
    let mut fields = fields.clone();
    let mut attrs = attrs.clone();
    fields.insert(attr.clone(), d);
    attrs.insert(attr.clone(), b);
    sized(Composite::new_unchecked(Data::Record(fields), Body::Record(attrs)), limits)
}

pub(super) fn record_at(record: &Composite, attr: &Identifier) -> Den {
    let (fields, attrs) = record_parts(record)?;
    match (fields.get(attr), attrs.get(attr)) {
        (Some(d), Some(b)) => Ok(Composite::new_unchecked(d.clone(), b.clone())),
        _ => Err(AbstractError::ATTRIBUTE_NOT_PRESENT),
    }
}

pub(super) fn remove_attribute(record: &Composite, attr: &Identifier) -> Den {
    let (fields, attrs) = record_parts(record)?;
    if !fields.contains_key(attr) {
        return Err(AbstractError::ATTRIBUTE_NOT_PRESENT);
    }
    let mut fields = fields.clone();
    let mut attrs = attrs.clone();
    fields.remove(attr);
    attrs.remove(attr);
    Ok(Composite::new_unchecked(Data::Record(fields), Body::Record(attrs)))
}

/// Replaces an attribute's data; the new value must have the old body.
pub(super) fn change_record(record: &Composite, attr: &Identifier, value: Composite) -> Den {
    let (fields, attrs) = record_parts(record)?;
    let Some(body) = attrs.get(attr) else {
        return Err(AbstractError::ATTRIBUTE_NOT_PRESENT);
    };
    if value.body() != body {
        return Err(AbstractError::NO_COHERENCE);
    }
    let mut fields = fields.clone();
    fields.insert(attr.clone(), value.into_parts().0);
    Ok(Composite::new_unchecked(Data::Record(fields), record.body().clone()))
}

/// The numbers of a nonempty list or array of numbers.
fn numbers(com: &Composite) -> Result<Vec<Number>, AbstractError> {
    let (items, elem) = match list_parts(com).or_else(|_| array_parts(com)) {
        Ok(parts) => parts,
        Err(_) => return Err(AbstractError::ARRAY_EXPECTED),
    };
    if *elem != Body::Number {
        return Err(AbstractError::NUMBER_EXPECTED);
    }
    if items.is_empty() {
        return Err(AbstractError::EMPTY_LIST);
    }
    Ok(items
        .iter()
        .map(|d| match d {
            Data::Number(n) => n.clone(),
            _ => unreachable!("element body is number"),
        })
        .collect())
}

pub(super) fn sum(com: &Composite, limits: &Limits) -> Den {
    let total = numbers(com)?.iter().fold(Number::zero(), |acc, n| acc.add(n));
    sized(Composite::number(total), limits)
}

pub(super) fn max(com: &Composite) -> Den {
    let best = numbers(com)?.into_iter().max().expect("nonempty");
    Ok(Composite::number(best))
}

pub(super) fn small_number(com: &Composite, limits: &Limits) -> Den {
    let n = number(com)?;
    let bound = Number::from_parts(num_traits::pow(BigInt::from(10u8), limits.small_number_digits() as usize), 0);
    Ok(Composite::boolean(n.abs() < bound))
}

pub(super) fn increasing(com: &Composite) -> Den {
    let (items, elem) = array_parts(com)?;
    if *elem != Body::Number {
        return Err(AbstractError::NUMBER_EXPECTED);
    }
    let ok = items.windows(2).all(|w| match (&w[0], &w[1]) {
        (Data::Number(a), Data::Number(b)) => a < b,
        _ => false,
    });
    Ok(Composite::boolean(ok))
}
