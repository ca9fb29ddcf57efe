//! Transfer expressions denote functions on the current composite.

use std::sync::Arc;

use crate::data::{Composite, Limits};
use crate::error::AbstractError;
use crate::state::State;
use crate::syntax::ast::{BinOp, TraExp};
use crate::syntax::printer::print_transfer_exp;
use crate::types::{Transfer, TransferResult};

use super::{ops, Interpreter};

impl Interpreter {
    /// The transfer denoted by `tre`, labelled with its canonical text.
    pub fn eval_transfer_exp(&self, tre: &TraExp, sta: &State) -> Result<Transfer, AbstractError> {
        if let Some(e) = sta.error() {
            return Err(e.clone());
        }
        Ok(transfer_of(tre, self.limits.clone()))
    }
}

pub(super) fn transfer_of(tre: &TraExp, limits: Limits) -> Transfer {
    if *tre == TraExp::True {
        return Transfer::always_true();
    }
    let tree = Arc::new(tre.clone());
    Transfer::new(print_transfer_exp(tre), move |com| apply(&tree, com, &limits))
}

/// Checks that `r` is a Boolean composite, as demanded of a yoke.
fn yoke_result(r: TransferResult) -> Result<bool, AbstractError> {
    r?.as_boolean().ok_or(AbstractError::A_YOKE_EXPECTED)
}

/// Applies `tre` to every element in order. The first error or
/// non-Boolean result ends the scan.
fn all(tre: &TraExp, elements: Vec<Composite>, lim: &Limits) -> TransferResult {
    let mut every = true;
    for e in &elements {
        every &= yoke_result(apply(tre, e, lim))?;
    }
    Ok(Composite::boolean(every))
}

fn apply(tre: &TraExp, com: &Composite, lim: &Limits) -> TransferResult {
    match tre {
        TraExp::Num(n) => ops::sized(Composite::number(n.clone()), lim),
        TraExp::Wor(w) => ops::sized(Composite::word(w.clone()), lim),
        TraExp::True => Ok(Composite::boolean(true)),
        TraExp::False => Ok(Composite::boolean(false)),
        TraExp::Binary(op @ (BinOp::And | BinOp::Or), l, r) => {
            let a = ops::boolean(&apply(l, com, lim)?)?;
            if a != (*op == BinOp::And) {
                return Ok(Composite::boolean(a));
            }
            ops::boolean(&apply(r, com, lim)?).map(Composite::boolean)
        }
        TraExp::Binary(op, l, r) => {
            let a = apply(l, com, lim)?;
            let b = apply(r, com, lim)?;
            ops::binary(*op, &a, &b, lim)
        }
        TraExp::Not(x) => ops::boolean(&apply(x, com, lim)?).map(|b| Composite::boolean(!b)),
        TraExp::Glue(l, r) => {
            let a = apply(l, com, lim)?;
            let b = apply(r, com, lim)?;
            ops::glue(&a, &b, lim)
        }
        TraExp::Sum(x) => ops::sum(&apply(x, com, lim)?, lim),
        TraExp::Max(x) => ops::max(&apply(x, com, lim)?),
        TraExp::SmallNumber(x) => ops::small_number(&apply(x, com, lim)?, lim),
        TraExp::Increasing(x) => ops::increasing(&apply(x, com, lim)?),
        TraExp::AllList(x) => all(x, ops::list_elements(com)?, lim),
        TraExp::AllArray(x) => all(x, ops::array_elements(com)?, lim),
        TraExp::Top => ops::top(com),
        TraExp::ArrayIndex(x) => {
            ops::array_elements(com)?;
            let i = apply(x, com, lim)?;
            ops::array_at(com, &i)
        }
        TraExp::RecordAttr(a) => ops::record_at(com, a),
        TraExp::Value => Ok(com.clone()),
    }
}
