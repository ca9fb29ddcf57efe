//! Lingua: a parser, restorer and denotational evaluator.

pub mod data;
pub mod error;
pub mod ident;
pub mod logic;
pub mod number;
pub mod semantics;
pub mod state;
pub mod syntax;
pub mod types;

pub use data::{clan_bo_member, coherent, oversized, Body, Composite, Data, Limits};
pub use error::AbstractError;
pub use ident::Identifier;
pub use logic::Bool3;
pub use number::Number;
pub use semantics::{Den, Eval, Fuel, FuelExhausted, Interpreter, Tracer};
pub use state::{Register, State};
pub use types::{apply_transfer, clan_ty_member, LangType, Transfer, Value};
