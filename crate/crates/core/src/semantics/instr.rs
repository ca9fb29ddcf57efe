//! Instructions, declarations, preambles and programs.
//!
//! Every instruction except `if-error` leaves a state that carries an
//! error untouched.

use crate::data::{coherent, Composite};
use crate::error::AbstractError;
use crate::ident::Identifier;
use crate::state::State;
use crate::syntax::ast::{Instruction, Preamble, Program, TypDef, VarDec};
use crate::types::{Transfer, Value};

use super::{ops, Eval, Fuel, Interpreter};

/// The checks a new composite must pass against a variable's transfer:
/// the transfer must succeed and yield `(tt, Boolean)`.
fn check_yoke(transfer: &Transfer, com: &Composite) -> Result<(), AbstractError> {
    match transfer.call(com)?.as_boolean() {
        None => Err(AbstractError::A_YOKE_EXPECTED),
        Some(false) => Err(AbstractError::YOKE_NOT_SATISFIED),
        Some(true) => Ok(()),
    }
}

impl Interpreter {
    pub fn exec_instruction(&self, ins: &Instruction, sta: State, fuel: &mut Fuel) -> Eval<State> {
        if !matches!(ins, Instruction::IfError { .. } | Instruction::Seq(..)) {
            if sta.is_error() {
                return Ok(sta);
            }
            if let Some(trace) = &self.tracer {
                trace(ins, &sta);
            }
        }
        match ins {
            Instruction::Assign { target, expr } => {
                if sta.lookup_variable(target.as_str()).is_none() {
                    return Ok(sta.load_error(AbstractError::IDENTIFIER_NOT_DECLARED));
                }
                match self.eval_data_exp(expr, &sta, fuel)? {
                    Err(e) => Ok(sta.load_error(e)),
                    Ok(com) => Ok(self.assign_composite(sta, target, com)),
                }
            }
            Instruction::Yoke { target, transfer } => {
                let Some(old) = sta.lookup_variable(target.as_str()).cloned() else {
                    return Ok(sta.load_error(AbstractError::IDENTIFIER_NOT_DECLARED));
                };
                let tra = match self.eval_transfer_exp(transfer, &sta) {
                    Ok(t) => t,
                    Err(e) => return Ok(sta.load_error(e)),
                };
                if let Some(com) = old.composite() {
                    if let Err(e) = check_yoke(&tra, &com) {
                        return Ok(sta.load_error(e));
                    }
                }
                Ok(sta.bind_variable(target.clone(), old.with_transfer(tra)))
            }
            Instruction::Skip => Ok(sta),
            Instruction::Call { name, refs, vals } => {
                self.call_imperative_procedure(name, &refs.to_vec(), &vals.to_vec(), sta, fuel)
            }
            Instruction::If { cond, then, otherwise } => match self.guard(cond, &sta, fuel)? {
                Err(e) => Ok(sta.load_error(e)),
                Ok(true) => self.exec_instruction(then, sta, fuel),
                Ok(false) => self.exec_instruction(otherwise, sta, fuel),
            },
            Instruction::IfError { error, handler } => {
                let Some(current) = sta.error().cloned() else {
                    return Ok(sta);
                };
                let cleared = sta.clone().clear_error();
                match self.eval_data_exp(error, &cleared, fuel)? {
                    Err(e) => Ok(sta.load_error(e)),
                    Ok(com) => match ops::word(&com) {
                        Err(e) => Ok(sta.load_error(e)),
                        Ok(w) if w == current.word() => {
                            if let Some(trace) = &self.tracer {
                                trace(ins, &cleared);
                            }
                            self.exec_instruction(handler, cleared, fuel)
                        }
                        Ok(_) => Ok(sta),
                    },
                }
            }
            Instruction::While { cond, body } => {
                let mut sta = sta;
                loop {
                    if sta.is_error() {
                        return Ok(sta);
                    }
                    match self.guard(cond, &sta, fuel)? {
                        Err(e) => return Ok(sta.load_error(e)),
                        Ok(false) => return Ok(sta),
                        Ok(true) => {
                            fuel.tick()?;
                            sta = self.exec_instruction(body, sta, fuel)?;
                        }
                    }
                }
            }
            Instruction::Seq(a, b) => {
                let sta = self.exec_instruction(a, sta, fuel)?;
                self.exec_instruction(b, sta, fuel)
            }
        }
    }

    fn guard(&self, cond: &crate::syntax::ast::DatExp, sta: &State, fuel: &mut Fuel) -> Eval<Result<bool, AbstractError>> {
        Ok(self.eval_data_exp(cond, sta, fuel)?.and_then(|c| ops::boolean(&c)))
    }

    /// Binds an already evaluated composite to a declared variable: the
    /// variable's own transfer must accept it, its body must be coherent
    /// with the former one, and the transfer stays as it was.
    pub(super) fn assign_composite(&self, sta: State, ide: &Identifier, com: Composite) -> State {
        let Some(old) = sta.lookup_variable(ide.as_str()) else {
            return sta.load_error(AbstractError::IDENTIFIER_NOT_DECLARED);
        };
        let transfer = old.transfer().clone();
        let verdict = match transfer.call(&com) {
            Err(e) => Err(e),
            Ok(_) if !coherent(com.body(), old.body()) => Err(AbstractError::NO_COHERENCE),
            Ok(r) => match r.as_boolean() {
                None => Err(AbstractError::A_YOKE_EXPECTED),
                Some(false) => Err(AbstractError::YOKE_NOT_SATISFIED),
                Some(true) => Ok(()),
            },
        };
        match verdict {
            Err(e) => sta.load_error(e),
            Ok(()) => sta.bind_variable(ide.clone(), Value::new(com, transfer)),
        }
    }

    pub fn exec_variable_declaration(&self, vde: &VarDec, sta: State) -> State {
        if sta.is_error() {
            return sta;
        }
        match vde {
            VarDec::Let { name, ty } => {
                if sta.lookup_variable(name.as_str()).is_some() {
                    return sta.load_error(AbstractError::IDENTIFIER_NOT_FREE);
                }
                match self.eval_type_exp(ty, &sta) {
                    Err(e) => sta.load_error(e),
                    Ok(typ) => sta.bind_variable(name.clone(), Value::pseudo(typ)),
                }
            }
            VarDec::Seq(a, b) => {
                let sta = self.exec_variable_declaration(a, sta);
                self.exec_variable_declaration(b, sta)
            }
        }
    }

    pub fn exec_type_definition(&self, tde: &TypDef, sta: State) -> State {
        if sta.is_error() {
            return sta;
        }
        match tde {
            TypDef::Set { name, ty } => {
                if sta.lookup_type(name.as_str()).is_some() {
                    return sta.load_error(AbstractError::IDENTIFIER_NOT_FREE);
                }
                match self.eval_type_exp(ty, &sta) {
                    Err(e) => sta.load_error(e),
                    Ok(typ) => {
                        let mut sta = sta;
                        sta.env.bind_type(name.clone(), typ);
                        sta
                    }
                }
            }
            TypDef::Seq(a, b) => {
                let sta = self.exec_type_definition(a, sta);
                self.exec_type_definition(b, sta)
            }
        }
    }

    pub fn exec_preamble(&self, pam: &Preamble, sta: State) -> State {
        if sta.is_error() {
            return sta;
        }
        match pam {
            Preamble::Proc(d) => self.declare_procedures(std::slice::from_ref(d), sta),
            Preamble::Multi(m) => self.declare_procedures(&m.procs, sta),
            Preamble::Fun(f) => self.declare_function(f, sta),
            Preamble::TypDef(t) => self.exec_type_definition(t, sta),
            Preamble::VarDec(v) => self.exec_variable_declaration(v, sta),
            Preamble::Skip => sta,
            Preamble::Seq(a, b) => {
                let sta = self.exec_preamble(a, sta);
                self.exec_preamble(b, sta)
            }
        }
    }

    /// The preamble, if any, followed by the instruction.
    pub fn run_program(&self, prg: &Program, sta: State, fuel: &mut Fuel) -> Eval<State> {
        let sta = match &prg.preamble {
            Some(pam) => self.exec_preamble(pam, sta),
            None => sta,
        };
        self.exec_instruction(&prg.body, sta, fuel)
    }
}
