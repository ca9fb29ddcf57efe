//! States: environments, valuations and the error register.
//!
//! States are persistent. Every update returns a new state and leaves the
//! original untouched; the maps are shared until one side changes them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AbstractError;
use crate::ident::Identifier;
use crate::syntax::ast::{FunProcDec, ImpProcDec};
use crate::types::{LangType, Value};

/// The error register: either `OK` or one abstract error.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Register {
    #[default]
    Ok,
    Error(AbstractError),
}

impl Register {
    pub fn error(&self) -> Option<&AbstractError> {
        match self {
            Register::Ok => None,
            Register::Error(e) => Some(e),
        }
    }
}

impl fmt::Display for Register {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Register::Ok => f.write_str("OK"),
            Register::Error(e) => write!(f, "{e}"),
        }
    }
}

/// An imperative procedure: its declaration group and the environment in
/// force when the group was declared. The group itself is not part of that
/// environment; it is nested in afresh at every call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImperativeProc {
    pub group: Arc<[ImpProcDec]>,
    pub index: usize,
    pub env: Env,
}

impl ImperativeProc {
    pub fn decl(&self) -> &ImpProcDec {
        &self.group[self.index]
    }
}

/// A functional procedure and its declaration-time environment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalProc {
    pub decl: Arc<FunProcDec>,
    pub env: Env,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Procedure {
    Imperative(ImperativeProc),
    Functional(FunctionalProc),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    types: Arc<BTreeMap<Identifier, LangType>>,
    procs: Arc<BTreeMap<Identifier, Procedure>>,
}

impl Env {
    pub fn lookup_type(&self, ide: &str) -> Option<&LangType> {
        self.types.get(ide)
    }

    pub fn lookup_procedure(&self, ide: &str) -> Option<&Procedure> {
        self.procs.get(ide)
    }

    pub fn bind_type(&mut self, ide: Identifier, typ: LangType) {
        Arc::make_mut(&mut self.types).insert(ide, typ);
    }

    pub fn bind_procedure(&mut self, ide: Identifier, proc: Procedure) {
        Arc::make_mut(&mut self.procs).insert(ide, proc);
    }

    pub fn types(&self) -> impl Iterator<Item = (&Identifier, &LangType)> {
        self.types.iter()
    }

    pub fn procedures(&self) -> impl Iterator<Item = (&Identifier, &Procedure)> {
        self.procs.iter()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Store {
    valuation: Arc<BTreeMap<Identifier, Value>>,
    register: Register,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct State {
    pub env: Env,
    pub store: Store,
}

impl State {
    /// Empty environments, empty valuation, register `OK`.
    pub fn new() -> Self {
        State::default()
    }

    /// A state with the given environment and nothing else.
    pub fn with_env(env: Env) -> Self {
        State { env, store: Store::default() }
    }

    pub fn register(&self) -> &Register {
        &self.store.register
    }

    pub fn error(&self) -> Option<&AbstractError> {
        self.store.register.error()
    }

    pub fn is_error(&self) -> bool {
        self.error().is_some()
    }

    /// `sta ◄ e`: the register now holds `e`.
    pub fn load_error(mut self, e: AbstractError) -> State {
        self.store.register = Register::Error(e);
        self
    }

    pub fn clear_error(mut self) -> State {
        self.store.register = Register::Ok;
        self
    }

    pub fn bind_variable(mut self, ide: Identifier, val: Value) -> State {
        Arc::make_mut(&mut self.store.valuation).insert(ide, val);
        self
    }

    pub fn lookup_variable(&self, ide: &str) -> Option<&Value> {
        self.store.valuation.get(ide)
    }

    pub fn lookup_type(&self, ide: &str) -> Option<&LangType> {
        self.env.lookup_type(ide)
    }

    pub fn lookup_procedure(&self, ide: &str) -> Option<&Procedure> {
        self.env.lookup_procedure(ide)
    }

    /// Bindings sorted by identifier.
    pub fn valuation(&self) -> impl Iterator<Item = (&Identifier, &Value)> {
        self.store.valuation.iter()
    }
}

pub fn load_error(sta: State, e: AbstractError) -> State {
    sta.load_error(e)
}

pub fn is_error(sta: &State) -> bool {
    sta.is_error()
}

pub fn bind_variable(sta: State, ide: Identifier, val: Value) -> State {
    sta.bind_variable(ide, val)
}
