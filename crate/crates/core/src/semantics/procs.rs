//! Procedure declarations and calls.
//!
//! A procedure sees only its formal parameters, its own locals, and the
//! types and procedures that existed when it was declared. The caller's
//! environment comes back unchanged; only reference actuals are updated.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::AbstractError;
use crate::ident::Identifier;
use crate::state::{Env, FunctionalProc, ImperativeProc, Procedure, State};
use crate::syntax::ast::{FunProcDec, ImpProcDec, TypExp};
use crate::types::{clan_ty_member, Value};

use super::expr::den;
use super::{Den, Eval, Fuel, Interpreter};

/// Whether an actual parameter is passed by reference. A reference actual
/// may still be uninitialized; a value actual may not.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Ref,
    Val,
}

impl Interpreter {
    /// Binds a group of imperative procedures. Every member's closure sees
    /// the whole group, so members may call each other.
    pub fn declare_procedures(&self, group: &[ImpProcDec], sta: State) -> State {
        if sta.is_error() {
            return sta;
        }
        let mut names = BTreeSet::new();
        for d in group {
            if sta.lookup_procedure(d.name.as_str()).is_some() || !names.insert(d.name.as_str()) {
                return sta.load_error(AbstractError::IDENTIFIER_NOT_FREE);
            }
        }
        let shared: Arc<[ImpProcDec]> = group.into();
        let env = sta.env.clone();
        let mut sta = sta;
        for (index, d) in group.iter().enumerate() {
            let proc = ImperativeProc { group: shared.clone(), index, env: env.clone() };
            sta.env.bind_procedure(d.name.clone(), Procedure::Imperative(proc));
        }
        sta
    }

    pub fn declare_function(&self, decl: &FunProcDec, sta: State) -> State {
        if sta.is_error() {
            return sta;
        }
        if sta.lookup_procedure(decl.name().as_str()).is_some() {
            return sta.load_error(AbstractError::IDENTIFIER_NOT_FREE);
        }
        let proc = FunctionalProc { decl: Arc::new(decl.clone()), env: sta.env.clone() };
        let mut sta = sta;
        sta.env.bind_procedure(decl.name().clone(), Procedure::Functional(proc));
        sta
    }

    /// Copies the actuals' values into a fresh local valuation, checking
    /// each against its formal's type.
    fn bind_parameters(
        &self,
        local: State,
        global: &State,
        groups: &[(&[(Identifier, TypExp)], &[Identifier], Mode)],
    ) -> Result<State, AbstractError> {
        let mut seen = BTreeSet::new();
        for (formals, actuals, _) in groups {
            if formals.len() != actuals.len() {
                return Err(AbstractError::PARAMETER_LIST_MISMATCH);
            }
            if formals.iter().any(|(f, _)| !seen.insert(f.as_str())) {
                return Err(AbstractError::IDENTIFIER_NOT_FREE);
            }
        }
        let mut local = local;
        for (formals, actuals, mode) in groups {
            for ((formal, tex), actual) in formals.iter().zip(actuals.iter()) {
                let val = global.lookup_variable(actual.as_str()).ok_or(AbstractError::IDENTIFIER_NOT_DECLARED)?;
                let typ = self.eval_type_exp(tex, &local)?;
                let bound = match val.composite() {
                    None if *mode == Mode::Val => return Err(AbstractError::VARIABLE_NOT_INITIALIZED),
                    None if val.body() == &typ.body => Value::pseudo(typ),
                    None => return Err(AbstractError::PARAMETER_TYPE_MISMATCH),
                    Some(com) if clan_ty_member(&com, &typ) => Value::new(com, typ.transfer),
                    Some(_) => return Err(AbstractError::PARAMETER_TYPE_MISMATCH),
                };
                local = local.bind_variable(formal.clone(), bound);
            }
        }
        Ok(local)
    }

    pub fn call_imperative_procedure(
        &self,
        name: &Identifier,
        refs: &[Identifier],
        vals: &[Identifier],
        sta: State,
        fuel: &mut Fuel,
    ) -> Eval<State> {
        if sta.is_error() {
            return Ok(sta);
        }
        let Some(Procedure::Imperative(proc)) = sta.lookup_procedure(name.as_str()).cloned() else {
            return Ok(sta.load_error(AbstractError::PROCEDURE_NOT_DECLARED));
        };
        let decl = proc.decl();
        let (ref_formals, val_formals) = (decl.refs.to_vec(), decl.vals.to_vec());
        let local = State::with_env(nest_group(&proc));
        let groups = [(ref_formals.as_slice(), refs, Mode::Ref), (val_formals.as_slice(), vals, Mode::Val)];
        let local = match self.bind_parameters(local, &sta, &groups) {
            Ok(l) => l,
            Err(e) => return Ok(sta.load_error(e)),
        };
        fuel.tick()?;
        let done = self.run_program(&decl.body, local, fuel)?;
        if let Some(e) = done.error() {
            return Ok(sta.load_error(e.clone()));
        }
        let mut sta = sta;
        for ((formal, _), actual) in ref_formals.iter().zip(refs) {
            if let Some(com) = done.lookup_variable(formal.as_str()).and_then(Value::composite) {
                sta = self.assign_composite(sta, actual, com);
                if sta.is_error() {
                    break;
                }
            }
        }
        Ok(sta)
    }

    /// Calls a functional procedure. The caller's state is only read.
    pub fn call_functional_procedure(
        &self,
        name: &Identifier,
        args: &[Identifier],
        sta: &State,
        fuel: &mut Fuel,
    ) -> Eval<Den> {
        if let Some(e) = sta.error() {
            return Ok(Err(e.clone()));
        }
        let Some(Procedure::Functional(proc)) = sta.lookup_procedure(name.as_str()).cloned() else {
            return Ok(Err(AbstractError::PROCEDURE_NOT_DECLARED));
        };
        let mut env = proc.env.clone();
        env.bind_procedure(name.clone(), Procedure::Functional(proc.clone()));
        let formals = proc.decl.params().to_vec();
        let local = match self.bind_parameters(State::with_env(env), sta, &[(formals.as_slice(), args, Mode::Val)]) {
            Ok(l) => l,
            Err(e) => return Ok(Err(e)),
        };
        fuel.tick()?;
        match proc.decl.as_ref() {
            FunProcDec::Expr { result, .. } => self.eval_data_exp(result, &local, fuel),
            FunProcDec::Body { body, result, ty, .. } => {
                let done = self.run_program(body, local, fuel)?;
                let com = den!(self.eval_data_exp(result, &done, fuel));
                let typ = match self.eval_type_exp(ty, &done) {
                    Ok(t) => t,
                    Err(e) => return Ok(Err(e)),
                };
                if clan_ty_member(&com, &typ) {
                    Ok(Ok(com))
                } else {
                    Ok(Err(AbstractError::RETURN_TYPE_MISMATCH))
                }
            }
        }
    }
}

/// The declaration-time environment with the procedure's whole group
/// nested in.
fn nest_group(proc: &ImperativeProc) -> Env {
    let mut env = proc.env.clone();
    for (index, d) in proc.group.iter().enumerate() {
        let member = ImperativeProc { group: proc.group.clone(), index, env: proc.env.clone() };
        env.bind_procedure(d.name.clone(), Procedure::Imperative(member));
    }
    env
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Composite;
    use crate::syntax::parser::parse_program;

    fn run(text: &str) -> State {
        let p = parse_program(text).unwrap();
        Interpreter::default().run_program(&p, State::new(), &mut Fuel::limited(100_000)).unwrap()
    }

    fn num(sta: &State, x: &str) -> Option<Composite> {
        sta.lookup_variable(x).and_then(Value::composite)
    }

    #[test]
    fn reference_parameter_is_copied_back() {
        let sta = run(
            "begin-program
               proc one (val ref x as number) begin-program x := 1 end-program end proc ;
               let a be number tel ;
               call one (ref a val)
             end-program",
        );
        assert!(!sta.is_error(), "{:?}", sta.error());
        assert_eq!(num(&sta, "a"), Some(Composite::number(1)));
    }

    #[test]
    fn swap() {
        let sta = run(
            "begin-program
               proc swap (val ref x, y as number) begin-program
                 let t be number tel ; t := x ; x := y ; y := t
               end-program end proc ;
               let a be number tel ; let b be number tel ;
               a := 1 ; b := 2 ; call swap (ref a, b val)
             end-program",
        );
        assert_eq!(num(&sta, "a"), Some(Composite::number(2)));
        assert_eq!(num(&sta, "b"), Some(Composite::number(1)));
        assert!(sta.lookup_variable("t").is_none());
    }

    #[test]
    fn value_parameters_do_not_escape() {
        let sta = run(
            "begin-program
               proc p (val x as number ref) begin-program x := 99 end-program end proc ;
               let a be number tel ; a := 1 ; call p (ref val a)
             end-program",
        );
        assert_eq!(num(&sta, "a"), Some(Composite::number(1)));
    }

    #[test]
    fn call_errors() {
        let err = |t: &str| run(t).error().cloned();
        assert_eq!(err("begin-program call q (ref val) end-program"), Some(AbstractError::PROCEDURE_NOT_DECLARED));
        assert_eq!(
            err("begin-program proc p (val x as number ref) begin-program skip end-program end proc ; call p (ref val) end-program"),
            Some(AbstractError::PARAMETER_LIST_MISMATCH)
        );
        assert_eq!(
            err("begin-program proc p (val x as number ref) begin-program skip end-program end proc ; let w be word tel ; w := 'a' ; call p (ref val w) end-program"),
            Some(AbstractError::PARAMETER_TYPE_MISMATCH)
        );
        assert_eq!(
            err("begin-program proc p (val x as number ref) begin-program skip end-program end proc ; let a be number tel ; call p (ref val a) end-program"),
            Some(AbstractError::VARIABLE_NOT_INITIALIZED)
        );
        assert_eq!(
            err("begin-program proc p (val x as number ref) begin-program skip end-program end proc ; call p (ref val a) end-program"),
            Some(AbstractError::IDENTIFIER_NOT_DECLARED)
        );
        assert_eq!(
            err("begin-program proc p (val ref) begin-program skip end-program end proc ; proc p (val ref) begin-program skip end-program end proc ; skip end-program"),
            Some(AbstractError::IDENTIFIER_NOT_FREE)
        );
    }

    #[test]
    fn body_error_leaves_caller_values() {
        let sta = run(
            "begin-program
               proc p (val ref x as number) begin-program x := 5 ; x := 1 / 0 end-program end proc ;
               let a be number tel ; a := 1 ; call p (ref a val)
             end-program",
        );
        assert_eq!(sta.error(), Some(&AbstractError::DIVISION_BY_ZERO));
        assert_eq!(num(&sta, "a"), Some(Composite::number(1)));
    }

    #[test]
    fn procedures_see_only_declaration_time_environment() {
        let sta = run(
            "begin-program
               proc p (val ref) begin-program let x be t tel ; skip end-program end proc ;
               set t as number tes ;
               call p (ref val)
             end-program",
        );
        assert_eq!(sta.error(), Some(&AbstractError::TYPE_NOT_DEFINED));
    }

    #[test]
    fn recursive_procedure() {
        let sta = run(
            "begin-program
               proc down (val ref n as number) begin-program
                 if 0 < n then n := n - 1 ; call down (ref n val) else skip fi
               end-program end proc ;
               let a be number tel ; a := 5 ; call down (ref a val)
             end-program",
        );
        assert_eq!(num(&sta, "a"), Some(Composite::number(0)));
    }

    #[test]
    fn multiprocedure_parity() {
        let text = |n: i64| {
            format!(
                "begin-program
                   begin multiproc
                     proc even (val n as number ref r as boolean) begin-program
                       let m be number tel ;
                       if n = 0 then r := true else m := n - 1 ; call odd (ref r val m) fi
                     end-program end proc
                     proc odd (val n as number ref r as boolean) begin-program
                       let m be number tel ;
                       if n = 0 then r := false else m := n - 1 ; call even (ref r val m) fi
                     end-program end proc
                   end multiproc ;
                   let k be number tel ; let r be boolean tel ;
                   k := {n} ; r := false ; call even (ref r val k)
                 end-program"
            )
        };
        for n in 0..7 {
            let sta = run(&text(n));
            assert!(!sta.is_error(), "{:?}", sta.error());
            assert_eq!(num(&sta, "r"), Some(Composite::boolean(n % 2 == 0)), "n = {n}");
        }
    }

    #[test]
    fn functional_procedures() {
        let sta = run(
            "begin-program
               fun inc (n as number) n + 1 endfun ;
               let x be number tel ; let y be number tel ;
               x := 5 ; y := inc(x)
             end-program",
        );
        assert_eq!(num(&sta, "y"), Some(Composite::number(6)));

        let sta = run(
            "begin-program
               fun fact (n as number) begin-program
                 let m be number tel ; let r be number tel ;
                 if n = 0 then r := 1 else m := n - 1 ; r := n * fact(m) fi
               end-program return r as number
               end fun ;
               let x be number tel ; let y be number tel ;
               x := 6 ; y := fact(x)
             end-program",
        );
        assert!(!sta.is_error(), "{:?}", sta.error());
        assert_eq!(num(&sta, "y"), Some(Composite::number(720)));

        let sta = run(
            "begin-program
               fun f (n as number) begin-program skip end-program return n as word end fun ;
               let x be number tel ; x := 1 ; x := f(x)
             end-program",
        );
        assert_eq!(sta.error(), Some(&AbstractError::RETURN_TYPE_MISMATCH));
    }

    #[test]
    fn functional_call_leaves_state_alone() {
        let sta = run(
            "begin-program
               fun g (n as number) begin-program let k be number tel ; k := n end-program return k as number end fun ;
               let x be number tel ; x := 3
             end-program",
        );
        let before = sta.clone();
        let e = crate::syntax::parser::parse_data_exp("g(x)").unwrap();
        let r = Interpreter::default().eval_data_exp(&e, &sta, &mut Fuel::unlimited()).unwrap();
        assert_eq!(r, Ok(Composite::number(3)));
        assert_eq!(sta, before);
    }
}
