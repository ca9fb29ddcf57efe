//! The denotational evaluator.
//!
//! Expressions denote functions from states to composites or errors;
//! instructions, declarations and programs denote state transformations.
//! Nontermination is modelled by [`Fuel`]: running out is a separate
//! outcome and never an abstract error.

mod expr;
mod instr;
mod ops;
mod procs;
mod transfer;
mod typexp;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::data::{Composite, Limits};
use crate::error::AbstractError;
use crate::state::State;
use crate::syntax::ast::Instruction;

/// The value of a data expression in a state.
pub type Den = Result<Composite, AbstractError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("fuel exhausted")]
pub struct FuelExhausted;

/// Either a result or the report that the step budget ran out.
pub type Eval<T> = Result<T, FuelExhausted>;

/// A step budget. One step is spent per loop iteration and per procedure
/// call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel {
    remaining: Option<u64>,
    consumed: u64,
}

impl Fuel {
    pub fn unlimited() -> Self {
        Fuel { remaining: None, consumed: 0 }
    }

    pub fn limited(steps: u64) -> Self {
        Fuel { remaining: Some(steps), consumed: 0 }
    }

    pub fn remaining(&self) -> Option<u64> {
        self.remaining
    }

    /// Steps spent so far.
    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn tick(&mut self) -> Eval<()> {
        match &mut self.remaining {
            Some(0) => return Err(FuelExhausted),
            Some(n) => *n -= 1,
            None => {}
        }
        self.consumed += 1;
        Ok(())
    }
}

impl fmt::Display for Fuel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.remaining {
            Some(n) => write!(f, "{n} steps left"),
            None => f.write_str("unlimited"),
        }
    }
}

/// Called before every instruction other than a sequence is executed.
pub type Tracer = Arc<dyn Fn(&Instruction, &State) + Send + Sync>;

/// Evaluation context: the size limits and an optional tracer.
#[derive(Clone, Default)]
pub struct Interpreter {
    limits: Limits,
    tracer: Option<Tracer>,
}

impl fmt::Debug for Interpreter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Interpreter")
            .field("limits", &self.limits)
            .field("traced", &self.tracer.is_some())
            .finish()
    }
}

impl Interpreter {
    pub fn new(limits: Limits) -> Self {
        Interpreter { limits, tracer: None }
    }

    pub fn with_tracer(mut self, tracer: Tracer) -> Self {
        self.tracer = Some(tracer);
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }
}
