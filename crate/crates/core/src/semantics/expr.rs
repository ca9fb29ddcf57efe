//! Data expressions.
//!
//! Operands are evaluated left to right and the first error wins. An
//! error already in the state's register is returned before anything else.

use crate::data::Composite;
use crate::error::AbstractError;
use crate::state::State;
use crate::syntax::ast::{BinOp, DatExp};

use super::{ops, Den, Eval, Fuel, Interpreter};

/// Stops evaluation at the first abstract error, keeping fuel exhaustion
/// as the outer result.
macro_rules! den {
    ($e:expr) => {
        match $e? {
            Ok(c) => c,
            Err(err) => return Ok(Err(err)),
        }
    };
}
pub(super) use den;

impl Interpreter {
    pub fn eval_data_exp(&self, dae: &DatExp, sta: &State, fuel: &mut Fuel) -> Eval<Den> {
        if let Some(e) = sta.error() {
            return Ok(Err(e.clone()));
        }
        self.dat(dae, sta, fuel)
    }

    fn dat(&self, dae: &DatExp, sta: &State, fuel: &mut Fuel) -> Eval<Den> {
        let lim = &self.limits;
        Ok(match dae {
            DatExp::True => Ok(Composite::boolean(true)),
            DatExp::False => Ok(Composite::boolean(false)),
            DatExp::Num(n) => ops::sized(Composite::number(n.clone()), lim),
            DatExp::Wor(w) => ops::sized(Composite::word(w.clone()), lim),
            DatExp::Var(ide) => match sta.lookup_variable(ide.as_str()) {
                None => Err(AbstractError::IDENTIFIER_NOT_DECLARED),
                Some(v) => v.composite().ok_or(AbstractError::VARIABLE_NOT_INITIALIZED),
            },
            DatExp::Binary(op @ (BinOp::And | BinOp::Or), l, r) => {
                let a = den!(self.dat(l, sta, fuel));
                let a = match ops::boolean(&a) {
                    Ok(b) => b,
                    Err(e) => return Ok(Err(e)),
                };
                // the left operand decides unless it is tt for `and`, ff for `or`
                if a != (*op == BinOp::And) {
                    return Ok(Ok(Composite::boolean(a)));
                }
                let b = den!(self.dat(r, sta, fuel));
                ops::boolean(&b).map(Composite::boolean)
            }
            DatExp::Binary(op, l, r) => {
                let a = den!(self.dat(l, sta, fuel));
                let b = den!(self.dat(r, sta, fuel));
                ops::binary(*op, &a, &b, lim)
            }
            DatExp::Not(x) => {
                let a = den!(self.dat(x, sta, fuel));
                ops::boolean(&a).map(|b| Composite::boolean(!b))
            }
            DatExp::Glue(l, r) => {
                let a = den!(self.dat(l, sta, fuel));
                let b = den!(self.dat(r, sta, fuel));
                ops::glue(&a, &b, lim)
            }
            DatExp::List(x) => Ok(ops::singleton_list(den!(self.dat(x, sta, fuel)))),
            DatExp::Push { elem, list } => {
                let e = den!(self.dat(elem, sta, fuel));
                let l = den!(self.dat(list, sta, fuel));
                ops::push(e, &l, lim)
            }
            DatExp::Top(x) => ops::top(&den!(self.dat(x, sta, fuel))),
            DatExp::Pop(x) => ops::pop(&den!(self.dat(x, sta, fuel))),
            DatExp::Array(x) => Ok(ops::singleton_array(den!(self.dat(x, sta, fuel)))),
            DatExp::AddToArr { array, elem } => {
                let a = den!(self.dat(array, sta, fuel));
                let e = den!(self.dat(elem, sta, fuel));
                ops::add_to_array(&a, e, lim)
            }
            DatExp::ChangeArr { array, index, elem } => {
                let a = den!(self.dat(array, sta, fuel));
                let i = den!(self.dat(index, sta, fuel));
                let e = den!(self.dat(elem, sta, fuel));
                ops::change_array(&a, &i, e)
            }
            DatExp::ArrAt { array, index } => {
                let a = den!(self.dat(array, sta, fuel));
                let i = den!(self.dat(index, sta, fuel));
                ops::array_at(&a, &i)
            }
            DatExp::Record { attr, value } => Ok(ops::singleton_record(attr, den!(self.dat(value, sta, fuel)))),
            DatExp::AddAttr { attr, value, record } => {
                let v = den!(self.dat(value, sta, fuel));
                let r = den!(self.dat(record, sta, fuel));
                ops::add_attribute(&r, attr, v, lim)
            }
            DatExp::RecAt { record, attr } => ops::record_at(&den!(self.dat(record, sta, fuel)), attr),
            DatExp::RemoveAttr { attr, record } => ops::remove_attribute(&den!(self.dat(record, sta, fuel)), attr),
            DatExp::ChangeRec { record, attr, value } => {
                let r = den!(self.dat(record, sta, fuel));
                let v = den!(self.dat(value, sta, fuel));
                ops::change_record(&r, attr, v)
            }
            DatExp::If { cond, then, otherwise } => {
                let c = den!(self.dat(cond, sta, fuel));
                match ops::boolean(&c) {
                    Ok(true) => return self.dat(then, sta, fuel),
                    Ok(false) => return self.dat(otherwise, sta, fuel),
                    Err(e) => Err(e),
                }
            }
            DatExp::Call { name, args } => return self.call_functional_procedure(name, &args.to_vec(), sta, fuel),
        })
    }
}
