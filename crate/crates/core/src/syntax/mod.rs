//! Lexer, parser, restoring function, printer and tree dumps.

pub mod ast;
pub mod dump;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod restore;

pub use ast::*;
pub use dump::{ast_dump, DumpFormat};
pub use lexer::{tokenize, DiagnosticKind, ParseDiagnostic, SourceSpan, Token, TokenKind};
pub use parser::{
    parse_data_exp, parse_instruction, parse_program, parse_program_with_coverage, parse_submission,
    parse_transfer_exp, parse_type_exp, restore_expression, Submission,
};
pub use printer::{
    print_concrete, print_data_exp, print_instruction, print_program, print_transfer_exp, print_type_exp,
};
