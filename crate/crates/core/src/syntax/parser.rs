//! Recursive-descent parser for concrete and colloquial syntax.
//!
//! The accepted language is the union of both. Colloquial phrases are
//! restored while parsing, so the result is always a concrete tree.
//! Unparenthesized binary operators are grouped left to right using the
//! priorities, tightest first: `not`, `* /`, `+ -`, `glue`, `< =`, `and`,
//! `or`. Postfix selections `.[i]` and `.(f)` bind tighter than all of them.

use std::collections::BTreeSet;

use crate::ident::Identifier;
use crate::number::Number;

use super::ast::*;
use super::lexer::{tokenize, DiagnosticKind, ParseDiagnostic, Token, TokenKind};
use super::restore::{self, AttributeSpec};

pub fn parse_program(text: &str) -> Result<Program, ParseDiagnostic> {
    parse_program_with_coverage(text).map(|(p, _)| p)
}

/// Parses a program and reports every grammar clause used to build it.
pub fn parse_program_with_coverage(text: &str) -> Result<(Program, BTreeSet<Clause>), ParseDiagnostic> {
    let mut p = Parser::new(text)?;
    let prog = p.program()?;
    p.finish()?;
    Ok((prog, p.coverage))
}

pub fn parse_data_exp(text: &str) -> Result<DatExp, ParseDiagnostic> {
    let mut p = Parser::new(text)?;
    let e = p.dat_exp()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_transfer_exp(text: &str) -> Result<TraExp, ParseDiagnostic> {
    let mut p = Parser::new(text)?;
    let e = p.tra_exp()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_type_exp(text: &str) -> Result<TypExp, ParseDiagnostic> {
    let mut p = Parser::new(text)?;
    let e = p.typ_exp()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_instruction(text: &str) -> Result<Instruction, ParseDiagnostic> {
    let mut p = Parser::new(text)?;
    let e = p.instruction()?;
    p.finish()?;
    Ok(e)
}

/// Restores a colloquial data expression to its concrete tree.
pub fn restore_expression(text: &str) -> Result<DatExp, ParseDiagnostic> {
    parse_data_exp(text)
}

/// One interactive submission: declarations, an instruction, or both in
/// that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submission {
    pub preamble: Option<Preamble>,
    pub instruction: Option<Instruction>,
}

pub fn parse_submission(text: &str) -> Result<Submission, ParseDiagnostic> {
    let mut p = Parser::new(text)?;
    let start = p.peek().span;
    let items = p.program_items()?;
    p.finish()?;
    let (preamble, rest) = p.split_items(items, start)?;
    let instruction = (!rest.is_empty()).then(|| p.ins_list(rest));
    Ok(Submission { preamble, instruction })
}

/// `;`-separated elements of a program before they are split into the
/// preamble and the instruction.
enum Item {
    Let(Identifier, TypExp),
    Set(Identifier, TypExp),
    Proc(ImpProcDec),
    Multi(MultiProcDec),
    Fun(FunProcDec),
    Skip,
    Ins(Instruction, Token),
}

impl Item {
    fn declares(&self) -> bool {
        !matches!(self, Item::Skip | Item::Ins(..))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Infix {
    Bin(BinOp),
    Glue,
}

fn infix(kind: &TokenKind) -> Option<(Infix, u8)> {
    Some(match kind {
        TokenKind::Keyword("or") => (Infix::Bin(BinOp::Or), 1),
        TokenKind::Keyword("and") => (Infix::Bin(BinOp::And), 2),
        TokenKind::Less => (Infix::Bin(BinOp::Less), 3),
        TokenKind::Equal => (Infix::Bin(BinOp::Equal), 3),
        TokenKind::Keyword("glue") => (Infix::Glue, 4),
        TokenKind::Plus => (Infix::Bin(BinOp::Add), 5),
        TokenKind::Minus => (Infix::Bin(BinOp::Sub), 5),
        TokenKind::Star => (Infix::Bin(BinOp::Mul), 6),
        TokenKind::Slash => (Infix::Bin(BinOp::Div), 6),
        _ => return None,
    })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    coverage: BTreeSet<Clause>,
}

type PResult<T> = Result<T, ParseDiagnostic>;

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser { tokens: tokenize(text)?, pos: 0, coverage: BTreeSet::new() })
    }

    // ---- token plumbing ----

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_kind(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    fn peek_nth(&self, n: usize) -> &TokenKind {
        let i = (self.pos + n).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek_kind(), TokenKind::Keyword(k) if *k == kw)
    }

    fn at_any_keyword(&self, kws: &[&str]) -> bool {
        matches!(self.peek_kind(), TokenKind::Keyword(k) if kws.contains(k))
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.at_keyword(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    fn error_at(&self, tok: &Token, kind: DiagnosticKind, message: String) -> ParseDiagnostic {
        ParseDiagnostic { span: tok.span, kind, message, at_end: tok.kind == TokenKind::Eof }
    }

    fn unexpected(&self, expected: &str) -> ParseDiagnostic {
        let tok = self.peek();
        self.error_at(tok, DiagnosticKind::Syntactic, format!("expected {expected}, found {}", tok.kind.describe()))
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> PResult<()> {
        if self.eat(&kind) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{what}`")))
        }
    }

    fn identifier(&mut self) -> PResult<Identifier> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Ident(name) => {
                self.advance();
                Identifier::new(name).map_err(|e| self.error_at(&tok, DiagnosticKind::Lexical, e.to_string()))
            }
            TokenKind::Keyword(kw) => Err(self.error_at(
                &tok,
                DiagnosticKind::KeywordMisuse,
                format!("keyword `{kw}` cannot be used as an identifier"),
            )),
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn finish(&self) -> PResult<()> {
        if *self.peek_kind() == TokenKind::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn mark(&mut self, c: Clause) {
        self.coverage.insert(c);
    }

    fn dat(&mut self, e: DatExp) -> DatExp {
        self.mark(e.clause());
        e
    }

    fn tra(&mut self, e: TraExp) -> TraExp {
        self.mark(e.clause());
        e
    }

    fn typ(&mut self, e: TypExp) -> TypExp {
        self.mark(e.clause());
        e
    }

    fn ins(&mut self, e: Instruction) -> Instruction {
        self.mark(e.clause());
        e
    }

    fn number_literal(&mut self, negative: bool) -> PResult<Number> {
        let tok = self.advance();
        let TokenKind::Number(lexeme) = &tok.kind else { unreachable!("caller checked for a number") };
        let text = if negative { format!("-{lexeme}") } else { lexeme.clone() };
        text.parse().map_err(|e: crate::number::ParseNumberError| {
            self.error_at(&tok, DiagnosticKind::Lexical, e.to_string())
        })
    }

    /// `-` directly before a number literal negates it.
    fn negative_literal(&mut self) -> PResult<Number> {
        self.advance();
        if matches!(self.peek_kind(), TokenKind::Number(_)) {
            self.number_literal(true)
        } else {
            Err(self.unexpected("a number literal after unary `-`"))
        }
    }

    /// Stops a binary-operator loop before `and fun`, which closes a
    /// functional-procedure declaration.
    fn closes_function(&self) -> bool {
        self.at_keyword("and") && matches!(self.peek_nth(1), TokenKind::Keyword("fun"))
    }

    // ---- data expressions ----

    fn dat_exp(&mut self) -> PResult<DatExp> {
        self.dat_binary(1)
    }

    fn dat_binary(&mut self, min_prec: u8) -> PResult<DatExp> {
        let mut lhs = self.dat_unary()?;
        while let Some((op, prec)) = infix(self.peek_kind()) {
            if prec < min_prec || self.closes_function() {
                break;
            }
            self.advance();
            let rhs = self.dat_binary(prec + 1)?;
            lhs = self.dat(match op {
                Infix::Bin(op) => DatExp::binary(op, lhs, rhs),
                Infix::Glue => DatExp::Glue(Box::new(lhs), Box::new(rhs)),
            });
        }
        Ok(lhs)
    }

    fn dat_unary(&mut self) -> PResult<DatExp> {
        if self.eat_keyword("not") {
            let e = self.dat_unary()?;
            return Ok(self.dat(DatExp::Not(Box::new(e))));
        }
        let mut e = self.dat_primary()?;
        while *self.peek_kind() == TokenKind::Dot {
            self.advance();
            if self.eat(&TokenKind::LBracket) {
                let index = self.dat_exp()?;
                self.expect(TokenKind::RBracket, "]")?;
                e = self.dat(DatExp::ArrAt { array: Box::new(e), index: Box::new(index) });
            } else if self.eat(&TokenKind::LParen) {
                let attr = self.identifier()?;
                self.expect(TokenKind::RParen, ")")?;
                e = self.dat(DatExp::RecAt { record: Box::new(e), attr });
            } else {
                return Err(self.unexpected("`[` or `(` after `.`"));
            }
        }
        Ok(e)
    }

    fn dat_list(&mut self, close: TokenKind, what: &str) -> PResult<Vec<DatExp>> {
        let mut items = vec![self.dat_exp()?];
        while self.eat(&TokenKind::Comma) {
            items.push(self.dat_exp()?);
        }
        self.expect(close, what)?;
        Ok(items)
    }

    fn dat_primary(&mut self) -> PResult<DatExp> {
        let tok = self.peek().clone();
        let e = match &tok.kind {
            TokenKind::Number(_) => DatExp::Num(self.number_literal(false)?),
            TokenKind::Minus => DatExp::Num(self.negative_literal()?),
            TokenKind::Word(w) => {
                self.advance();
                DatExp::Wor(w.clone())
            }
            TokenKind::Ident(_) => {
                let name = self.identifier()?;
                if self.eat(&TokenKind::LParen) {
                    let args = self.act_params(&[])?;
                    self.expect(TokenKind::RParen, ")")?;
                    DatExp::Call { name, args }
                } else {
                    DatExp::Var(name)
                }
            }
            TokenKind::LParen => {
                self.advance();
                let e = self.dat_exp()?;
                self.expect(TokenKind::RParen, ")")?;
                return Ok(e);
            }
            TokenKind::Keyword(kw) => {
                let kw = *kw;
                self.advance();
                self.dat_keyword(kw, &tok)?
            }
            _ => return Err(self.unexpected("a data expression")),
        };
        Ok(self.dat(e))
    }

    fn dat_keyword(&mut self, kw: &'static str, tok: &Token) -> PResult<DatExp> {
        let b = Box::new;
        Ok(match kw {
            "true" => DatExp::True,
            "false" => DatExp::False,
            "list" => {
                let e = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::List(b(e))
            }
            "push" => {
                let elem = self.dat_exp()?;
                self.expect_keyword("on")?;
                let list = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::Push { elem: b(elem), list: b(list) }
            }
            "top" | "pop" => {
                self.expect(TokenKind::LParen, "(")?;
                let e = self.dat_exp()?;
                self.expect(TokenKind::RParen, ")")?;
                if kw == "top" {
                    DatExp::Top(b(e))
                } else {
                    DatExp::Pop(b(e))
                }
            }
            "array" => {
                if self.eat(&TokenKind::LBracket) {
                    let items = self.dat_list(TokenKind::RBracket, "]")?;
                    return Ok(self.unfolded(restore::array_literal(items).expect("nonempty")));
                }
                let e = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::Array(b(e))
            }
            "add-to-arr" => {
                let array = self.dat_exp()?;
                self.expect_keyword("new")?;
                if self.eat(&TokenKind::LBracket) {
                    let items = self.dat_list(TokenKind::RBracket, "]")?;
                    self.expect_keyword("ee")?;
                    return Ok(self.unfolded(restore::append_to_array(array, items)));
                }
                let elem = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::AddToArr { array: b(array), elem: b(elem) }
            }
            "change-arr" => {
                let array = self.dat_exp()?;
                if self.eat_keyword("by") {
                    let mut updates = Vec::new();
                    loop {
                        let index = self.dat_exp()?;
                        self.expect(TokenKind::Arrow, "<=")?;
                        let elem = self.dat_exp()?;
                        updates.push((index, elem));
                        if !self.eat(&TokenKind::Comma) {
                            break;
                        }
                    }
                    self.expect_keyword("ee")?;
                    return Ok(self.unfolded(restore::change_array(array, updates)));
                }
                self.expect_keyword("at")?;
                let index = self.dat_exp()?;
                self.expect_keyword("by")?;
                let elem = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::ChangeArr { array: b(array), index: b(index), elem: b(elem) }
            }
            "arr" => {
                let array = self.dat_exp()?;
                self.expect_keyword("at")?;
                let index = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::ArrAt { array: b(array), index: b(index) }
            }
            "record" | "set-record" => {
                let attr = self.identifier()?;
                if self.eat(&TokenKind::Arrow) {
                    let mut fields = vec![(attr, self.dat_exp()?)];
                    while self.eat(&TokenKind::Comma) {
                        let attr = self.identifier()?;
                        self.expect(TokenKind::Arrow, "<=")?;
                        fields.push((attr, self.dat_exp()?));
                    }
                    self.expect_keyword("ee")?;
                    return Ok(self.unfolded(restore::record_literal(fields).expect("nonempty")));
                }
                self.expect_keyword("of-value")?;
                let value = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::Record { attr, value: b(value) }
            }
            "add-attr" | "add-atr" => {
                let attr = self.identifier()?;
                self.expect_keyword("of-value")?;
                let value = self.dat_exp()?;
                self.expect_keyword("to")?;
                let record = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::AddAttr { attr, value: b(value), record: b(record) }
            }
            "rec" => {
                let record = self.dat_exp()?;
                self.expect_keyword("at")?;
                let attr = self.identifier()?;
                self.expect_keyword("ee")?;
                DatExp::RecAt { record: b(record), attr }
            }
            "remove-attr" => {
                let attr = self.identifier()?;
                self.expect_keyword("from")?;
                let record = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::RemoveAttr { attr, record: b(record) }
            }
            "change-rec" => {
                let record = self.dat_exp()?;
                self.expect_keyword("at")?;
                let attr = self.identifier()?;
                self.expect_keyword("by")?;
                let value = self.dat_exp()?;
                self.expect_keyword("ee")?;
                DatExp::ChangeRec { record: b(record), attr, value: b(value) }
            }
            "if" => {
                let cond = self.dat_exp()?;
                self.expect_keyword("then")?;
                let then = self.dat_exp()?;
                self.expect_keyword("else")?;
                let otherwise = self.dat_exp()?;
                self.expect_keyword("fi")?;
                DatExp::If { cond: b(cond), then: b(then), otherwise: b(otherwise) }
            }
            _ => {
                return Err(self.error_at(
                    tok,
                    DiagnosticKind::Syntactic,
                    format!("expected a data expression, found keyword `{kw}`"),
                ))
            }
        })
    }

    /// Marks every clause of a tree produced by unfolding a colloquialism.
    fn unfolded(&mut self, e: DatExp) -> DatExp {
        let mut stack = vec![&e];
        let mut seen = Vec::new();
        while let Some(node) = stack.pop() {
            seen.push(node.clause());
            match node {
                DatExp::Array(x) | DatExp::Record { value: x, .. } => stack.push(x),
                DatExp::AddToArr { array, .. } | DatExp::ChangeArr { array, .. } => stack.push(array),
                DatExp::AddAttr { record, .. } => stack.push(record),
                _ => {}
            }
        }
        self.coverage.extend(seen);
        e
    }

    // ---- transfer expressions ----

    fn tra_exp(&mut self) -> PResult<TraExp> {
        self.tra_binary(1)
    }

    fn tra_binary(&mut self, min_prec: u8) -> PResult<TraExp> {
        let mut lhs = self.tra_unary()?;
        while let Some((op, prec)) = infix(self.peek_kind()) {
            if prec < min_prec || self.closes_function() {
                break;
            }
            if let Infix::Bin(op) = op {
                if !op.in_transfers() {
                    let tok = self.peek().clone();
                    return Err(self.error_at(
                        &tok,
                        DiagnosticKind::Syntactic,
                        format!("operator `{}` is not available in transfer expressions", op.symbol()),
                    ));
                }
            }
            self.advance();
            let rhs = self.tra_binary(prec + 1)?;
            lhs = self.tra(match op {
                Infix::Bin(op) => TraExp::binary(op, lhs, rhs),
                Infix::Glue => TraExp::Glue(Box::new(lhs), Box::new(rhs)),
            });
        }
        Ok(lhs)
    }

    fn tra_unary(&mut self) -> PResult<TraExp> {
        if self.eat_keyword("not") {
            let e = self.tra_unary()?;
            return Ok(self.tra(TraExp::Not(Box::new(e))));
        }
        self.tra_primary()
    }

    fn tra_primary(&mut self) -> PResult<TraExp> {
        let tok = self.peek().clone();
        let b = Box::new;
        let e = match &tok.kind {
            TokenKind::Number(_) => TraExp::Num(self.number_literal(false)?),
            TokenKind::Minus => TraExp::Num(self.negative_literal()?),
            TokenKind::Word(w) => {
                self.advance();
                TraExp::Wor(w.clone())
            }
            TokenKind::LParen => {
                self.advance();
                let e = self.tra_exp()?;
                self.expect(TokenKind::RParen, ")")?;
                return Ok(e);
            }
            TokenKind::Keyword(kw) => {
                let kw = *kw;
                self.advance();
                match kw {
                    "true" => TraExp::True,
                    "false" => TraExp::False,
                    "value" => TraExp::Value,
                    "top" => TraExp::Top,
                    "sum" | "max" | "small-number" | "increasing" => {
                        // a bare `small-number` applies to the current composite
                        let arg = if self.eat(&TokenKind::LParen) {
                            let e = self.tra_exp()?;
                            self.expect(TokenKind::RParen, ")")?;
                            e
                        } else {
                            self.mark(Clause::TraValue);
                            TraExp::Value
                        };
                        match kw {
                            "sum" => TraExp::Sum(b(arg)),
                            "max" => TraExp::Max(b(arg)),
                            "small-number" => TraExp::SmallNumber(b(arg)),
                            _ => TraExp::Increasing(b(arg)),
                        }
                    }
                    "all-list" | "all-array" | "all-of-array" => {
                        let e = self.tra_exp()?;
                        self.expect_keyword("ee")?;
                        if kw == "all-list" {
                            TraExp::AllList(b(e))
                        } else {
                            TraExp::AllArray(b(e))
                        }
                    }
                    "array" => {
                        self.eat(&TokenKind::Dot);
                        self.expect(TokenKind::LBracket, "[")?;
                        let e = self.tra_exp()?;
                        self.expect(TokenKind::RBracket, "]")?;
                        TraExp::ArrayIndex(b(e))
                    }
                    "get-from-array" => {
                        let e = self.tra_exp()?;
                        self.expect_keyword("ee")?;
                        TraExp::ArrayIndex(b(e))
                    }
                    "record" => {
                        self.expect(TokenKind::Dot, ".")?;
                        TraExp::RecordAttr(self.identifier()?)
                    }
                    "get-from-record" => {
                        let attr = self.identifier()?;
                        self.expect_keyword("ee")?;
                        TraExp::RecordAttr(attr)
                    }
                    _ => {
                        return Err(self.error_at(
                            &tok,
                            DiagnosticKind::Syntactic,
                            format!("expected a transfer expression, found keyword `{kw}`"),
                        ))
                    }
                }
            }
            TokenKind::Ident(name) => {
                return Err(self.error_at(
                    &tok,
                    DiagnosticKind::Syntactic,
                    format!("transfer expressions cannot refer to variable `{name}`; use `value` or a selection"),
                ))
            }
            _ => return Err(self.unexpected("a transfer expression")),
        };
        Ok(self.tra(e))
    }

    // ---- type expressions ----

    fn typ_exp(&mut self) -> PResult<TypExp> {
        let mut ty = self.typ_core()?;
        while self.eat_keyword("with") {
            let transfer = self.tra_exp()?;
            ty = self.typ(TypExp::ReplaceTransferIn { ty: Box::new(ty), transfer: Box::new(transfer) });
        }
        Ok(ty)
    }

    fn typ_core(&mut self) -> PResult<TypExp> {
        let tok = self.peek().clone();
        let b = Box::new;
        let e = match &tok.kind {
            TokenKind::Ident(_) => TypExp::Named(self.identifier()?),
            TokenKind::Keyword(kw) => {
                let kw = *kw;
                self.advance();
                match kw {
                    "boolean" => TypExp::Boolean,
                    "number" => TypExp::Number,
                    "word" | "string" => TypExp::Word,
                    "list-type" => {
                        let t = self.typ_exp()?;
                        self.expect_keyword("ee")?;
                        TypExp::ListType(b(t))
                    }
                    "array-type" | "array-of" => {
                        let t = self.typ_exp()?;
                        self.expect_keyword("ee")?;
                        TypExp::ArrayType(b(t))
                    }
                    "record-type" | "record-of" => return self.record_type(),
                    "expand-record-type" | "expand-record" => {
                        let base = self.typ_exp()?;
                        self.expect_keyword("at")?;
                        let attr = self.identifier()?;
                        self.expect_keyword("by")?;
                        let t = self.typ_exp()?;
                        self.expect_keyword("ee")?;
                        TypExp::ExpandRecordType { base: b(base), attr, ty: b(t) }
                    }
                    "replace-transfer-in" => {
                        let t = self.typ_exp()?;
                        self.expect_keyword("by")?;
                        let tr = self.tra_exp()?;
                        self.expect_keyword("ee")?;
                        TypExp::ReplaceTransferIn { ty: b(t), transfer: Box::new(tr) }
                    }
                    "set-type" => {
                        let t = self.typ_core()?;
                        let ty = if self.eat_keyword("with") {
                            let tr = self.tra_exp()?;
                            TypExp::ReplaceTransferIn { ty: b(t), transfer: Box::new(tr) }
                        } else {
                            t
                        };
                        self.expect_keyword("ee")?;
                        ty
                    }
                    _ => {
                        return Err(self.error_at(
                            &tok,
                            DiagnosticKind::Syntactic,
                            format!("expected a type expression, found keyword `{kw}`"),
                        ))
                    }
                }
            }
            _ => return Err(self.unexpected("a type expression")),
        };
        Ok(self.typ(e))
    }

    /// After `record-type`: either the concrete single attribute
    /// `ide as tex ee` or a colloquial list `ide as tex [with tre], … ee`.
    fn record_type(&mut self) -> PResult<TypExp> {
        let mut attrs = Vec::new();
        loop {
            let name = self.identifier()?;
            self.expect_keyword("as")?;
            let ty = self.typ_core()?;
            let yoke = if self.eat_keyword("with") { Some(self.tra_exp()?) } else { None };
            attrs.push(AttributeSpec { name, ty, yoke });
            if !self.eat(&TokenKind::Comma) {
                break;
            }
        }
        let end = self.peek().clone();
        self.expect_keyword("ee")?;
        let ty = restore::record_type(attrs)
            .map_err(|e| {
                self.error_at(
                    &end,
                    DiagnosticKind::Syntactic,
                    format!(
                        "the yoke of attribute `{}` uses `{}`, which cannot be restated as a yoke of the record",
                        e.attribute, e.construct
                    ),
                )
            })?
            .expect("at least one attribute");
        let mut stack = vec![&ty];
        let mut seen = Vec::new();
        while let Some(t) = stack.pop() {
            seen.push(t.clause());
            match t {
                TypExp::ExpandRecordType { base, .. } | TypExp::ReplaceTransferIn { ty: base, .. } => stack.push(base),
                _ => {}
            }
        }
        self.coverage.extend(seen);
        Ok(ty)
    }

    // ---- parameters ----

    /// Actual parameters up to one of `stops` or `)`. An empty list is
    /// read as `empty-ap`.
    fn act_params(&mut self, stops: &[&str]) -> PResult<ActParams> {
        if *self.peek_kind() == TokenKind::RParen || self.at_any_keyword(stops) {
            self.mark(Clause::ActEmpty);
            return Ok(ActParams::Empty);
        }
        let mut items = Vec::new();
        loop {
            if self.eat_keyword("empty-ap") {
                self.mark(Clause::ActEmpty);
                items.push(ActParams::Empty);
            } else {
                self.mark(Clause::ActOne);
                items.push(ActParams::One(self.identifier()?));
            }
            if !self.eat(&TokenKind::Comma) {
                break;
            }
        }
        Ok(self.nest_act(items))
    }

    fn nest_act(&mut self, mut items: Vec<ActParams>) -> ActParams {
        let mut acc = items.pop().expect("nonempty");
        while let Some(item) = items.pop() {
            self.mark(Clause::ActSeq);
            acc = ActParams::Seq(Box::new(item), Box::new(acc));
        }
        acc
    }

    /// Formal parameters up to `ref` or `)`. Names may share a type
    /// (`x, y as t`) and groups may follow each other without a comma.
    fn for_params(&mut self) -> PResult<ForParams> {
        let stop = |p: &Self| *p.peek_kind() == TokenKind::RParen || p.at_keyword("ref");
        if stop(self) {
            self.mark(Clause::ForEmpty);
            return Ok(ForParams::Empty);
        }
        let mut items = Vec::new();
        loop {
            if self.eat_keyword("empty-fp") {
                self.mark(Clause::ForEmpty);
                items.push(ForParams::Empty);
            } else {
                let mut names = vec![self.identifier()?];
                while *self.peek_kind() == TokenKind::Comma && matches!(self.peek_nth(1), TokenKind::Ident(_)) {
                    self.advance();
                    names.push(self.identifier()?);
                }
                self.expect_keyword("as")?;
                let ty = self.typ_exp()?;
                for name in names {
                    self.mark(Clause::ForOne);
                    items.push(ForParams::One(name, ty.clone()));
                }
            }
            if self.eat(&TokenKind::Comma) {
                continue;
            }
            if stop(self) {
                break;
            }
            if !matches!(self.peek_kind(), TokenKind::Ident(_) | TokenKind::Keyword("empty-fp")) {
                return Err(self.unexpected("`,`, `ref` or `)`"));
            }
        }
        let mut acc = items.pop().expect("nonempty");
        while let Some(item) = items.pop() {
            self.mark(Clause::ForSeq);
            acc = ForParams::Seq(Box::new(item), Box::new(acc));
        }
        Ok(acc)
    }

    // ---- procedures ----

    /// After `proc`.
    fn proc_dec(&mut self) -> PResult<ImpProcDec> {
        let name = self.identifier()?;
        self.expect(TokenKind::LParen, "(")?;
        self.expect_keyword("val")?;
        let vals = self.for_params()?;
        self.expect_keyword("ref")?;
        let refs = self.for_params()?;
        self.expect(TokenKind::RParen, ")")?;
        let body = self.program()?;
        self.expect_keyword("end")?;
        self.expect_keyword("proc")?;
        self.mark(Clause::ImpProc);
        Ok(ImpProcDec { name, vals, refs, body })
    }

    /// After `begin multiproc`.
    fn multi_proc_dec(&mut self) -> PResult<MultiProcDec> {
        let mut procs = Vec::new();
        loop {
            self.expect_keyword("proc")?;
            procs.push(self.proc_dec()?);
            self.eat(&TokenKind::Semi);
            if self.at_keyword("end") {
                break;
            }
        }
        self.expect_keyword("end")?;
        self.expect_keyword("multiproc")?;
        self.mark(Clause::MultiProc);
        Ok(MultiProcDec { procs })
    }

    /// After `fun`.
    fn fun_dec(&mut self) -> PResult<FunProcDec> {
        let name = self.identifier()?;
        self.expect(TokenKind::LParen, "(")?;
        let params = self.for_params()?;
        self.expect(TokenKind::RParen, ")")?;
        if self.at_keyword("begin-program") {
            let body = self.program()?;
            self.expect_keyword("return")?;
            let result = self.dat_exp()?;
            self.expect_keyword("as")?;
            let ty = self.typ_exp()?;
            self.end_fun()?;
            self.mark(Clause::FunBody);
            Ok(FunProcDec::Body { name, params, body, result, ty })
        } else {
            let result = self.dat_exp()?;
            self.end_fun()?;
            self.mark(Clause::FunExpr);
            Ok(FunProcDec::Expr { name, params, result })
        }
    }

    /// `endfun`, `end fun`, or the variant spelling `and fun`.
    fn end_fun(&mut self) -> PResult<()> {
        if self.eat_keyword("endfun") {
            return Ok(());
        }
        if self.at_any_keyword(&["end", "and"]) && matches!(self.peek_nth(1), TokenKind::Keyword("fun")) {
            self.advance();
            self.advance();
            return Ok(());
        }
        Err(self.unexpected("`end fun`"))
    }

    // ---- instructions ----

    fn instruction(&mut self) -> PResult<Instruction> {
        let first = self.instruction_atom()?;
        if self.eat(&TokenKind::Semi) {
            let rest = self.instruction()?;
            return Ok(self.ins(Instruction::seq(first, rest)));
        }
        Ok(first)
    }

    fn instruction_atom(&mut self) -> PResult<Instruction> {
        let tok = self.peek().clone();
        let b = Box::new;
        let ins = match &tok.kind {
            TokenKind::Ident(_) => {
                let target = self.identifier()?;
                self.expect(TokenKind::Assign, ":=")?;
                let expr = self.dat_exp()?;
                Instruction::Assign { target, expr }
            }
            TokenKind::Keyword(kw) => {
                let kw = *kw;
                match kw {
                    "yoke" => {
                        self.advance();
                        let target = self.identifier()?;
                        self.expect(TokenKind::Assign, ":=")?;
                        let transfer = self.tra_exp()?;
                        Instruction::Yoke { target, transfer }
                    }
                    "skip" => {
                        self.advance();
                        Instruction::Skip
                    }
                    "call" => {
                        self.advance();
                        let name = self.identifier()?;
                        self.expect(TokenKind::LParen, "(")?;
                        self.expect_keyword("ref")?;
                        let refs = self.act_params(&["val"])?;
                        self.expect_keyword("val")?;
                        let vals = self.act_params(&[])?;
                        self.expect(TokenKind::RParen, ")")?;
                        Instruction::Call { name, refs, vals }
                    }
                    "if" => {
                        self.advance();
                        let cond = self.dat_exp()?;
                        self.expect_keyword("then")?;
                        let then = self.instruction()?;
                        self.expect_keyword("else")?;
                        let otherwise = self.instruction()?;
                        self.expect_keyword("fi")?;
                        Instruction::If { cond, then: b(then), otherwise: b(otherwise) }
                    }
                    "if-error" => {
                        self.advance();
                        let error = self.dat_exp()?;
                        self.expect_keyword("then")?;
                        let handler = self.instruction()?;
                        self.expect_keyword("fi")?;
                        Instruction::IfError { error, handler: b(handler) }
                    }
                    "while" => {
                        self.advance();
                        let cond = self.dat_exp()?;
                        self.expect_keyword("do")?;
                        let body = self.instruction()?;
                        self.expect_keyword("od")?;
                        Instruction::While { cond, body: b(body) }
                    }
                    _ => return Err(self.unexpected("an instruction")),
                }
            }
            _ => return Err(self.unexpected("an instruction")),
        };
        Ok(self.ins(ins))
    }

    // ---- preambles and programs ----

    fn program(&mut self) -> PResult<Program> {
        self.expect_keyword("begin-program")?;
        let start = self.peek().span;
        let items = self.program_items()?;
        let (preamble, rest) = self.split_items(items, start)?;
        if rest.is_empty() {
            let tok = self.peek().clone();
            return Err(self.error_at(
                &tok,
                DiagnosticKind::Syntactic,
                "a program must end with an instruction after its declarations".into(),
            ));
        }
        let body = self.ins_list(rest);
        self.expect_keyword("end-program")?;
        self.mark(if preamble.is_some() { Clause::PrgWithPreamble } else { Clause::PrgPlain });
        Ok(Program { preamble: preamble.map(Box::new), body })
    }

    fn program_items(&mut self) -> PResult<Vec<Item>> {
        let mut items = Vec::new();
        loop {
            items.push(self.program_item()?);
            if !self.eat(&TokenKind::Semi) {
                break;
            }
        }
        Ok(items)
    }

    fn program_item(&mut self) -> PResult<Item> {
        let tok = self.peek().clone();
        Ok(match &tok.kind {
            TokenKind::Keyword("let") => {
                self.advance();
                let name = self.identifier()?;
                self.expect_keyword("be")?;
                let ty = self.typ_exp()?;
                self.expect_keyword("tel")?;
                Item::Let(name, ty)
            }
            TokenKind::Keyword("set") => {
                self.advance();
                let name = self.identifier()?;
                self.expect_keyword("as")?;
                let ty = self.typ_exp()?;
                self.expect_keyword("tes")?;
                Item::Set(name, ty)
            }
            TokenKind::Keyword("proc") => {
                self.advance();
                Item::Proc(self.proc_dec()?)
            }
            TokenKind::Keyword("begin") => {
                self.advance();
                self.expect_keyword("multiproc")?;
                Item::Multi(self.multi_proc_dec()?)
            }
            TokenKind::Keyword("fun") => {
                self.advance();
                Item::Fun(self.fun_dec()?)
            }
            TokenKind::Keyword("skip") => {
                self.advance();
                Item::Skip
            }
            _ => Item::Ins(self.instruction_atom()?, tok),
        })
    }

    /// Everything up to the last declaration forms the preamble; the rest
    /// is the instruction. Consecutive `let`s form one variable
    /// declaration and consecutive `set`s one type definition.
    fn split_items(
        &mut self,
        mut items: Vec<Item>,
        _start: super::lexer::SourceSpan,
    ) -> PResult<(Option<Preamble>, Vec<Item>)> {
        let Some(last_decl) = items.iter().rposition(Item::declares) else {
            return Ok((None, items));
        };
        let rest = items.split_off(last_decl + 1);
        let mut parts: Vec<Preamble> = Vec::new();
        let mut lets: Vec<VarDec> = Vec::new();
        let mut sets: Vec<TypDef> = Vec::new();
        for item in items {
            if !matches!(item, Item::Let(..)) && !lets.is_empty() {
                parts.push(self.var_group(std::mem::take(&mut lets)));
            }
            if !matches!(item, Item::Set(..)) && !sets.is_empty() {
                parts.push(self.def_group(std::mem::take(&mut sets)));
            }
            match item {
                Item::Let(name, ty) => {
                    self.mark(Clause::VarLet);
                    lets.push(VarDec::Let { name, ty });
                }
                Item::Set(name, ty) => {
                    self.mark(Clause::DefSet);
                    sets.push(TypDef::Set { name, ty });
                }
                Item::Proc(p) => parts.push(Preamble::Proc(p)),
                Item::Multi(m) => parts.push(Preamble::Multi(m)),
                Item::Fun(f) => parts.push(Preamble::Fun(f)),
                Item::Skip => parts.push(Preamble::Skip),
                Item::Ins(_, tok) => {
                    return Err(self.error_at(
                        &tok,
                        DiagnosticKind::Syntactic,
                        "declarations must precede all instructions of a program".into(),
                    ))
                }
            }
        }
        if !lets.is_empty() {
            parts.push(self.var_group(lets));
        }
        if !sets.is_empty() {
            parts.push(self.def_group(sets));
        }
        for p in &parts {
            self.mark(p.clause());
        }
        let mut acc = parts.pop().expect("at least one declaration");
        while let Some(p) = parts.pop() {
            self.mark(Clause::PreSeq);
            acc = Preamble::Seq(Box::new(p), Box::new(acc));
        }
        Ok((Some(acc), rest))
    }

    fn var_group(&mut self, mut lets: Vec<VarDec>) -> Preamble {
        let mut acc = lets.pop().expect("nonempty");
        while let Some(l) = lets.pop() {
            self.mark(Clause::VarSeq);
            acc = VarDec::Seq(Box::new(l), Box::new(acc));
        }
        Preamble::VarDec(acc)
    }

    fn def_group(&mut self, mut sets: Vec<TypDef>) -> Preamble {
        let mut acc = sets.pop().expect("nonempty");
        while let Some(s) = sets.pop() {
            self.mark(Clause::DefSeq);
            acc = TypDef::Seq(Box::new(s), Box::new(acc));
        }
        Preamble::TypDef(acc)
    }

    fn ins_list(&mut self, items: Vec<Item>) -> Instruction {
        let atoms: Vec<Instruction> = items
            .into_iter()
            .map(|i| match i {
                Item::Ins(ins, _) => ins,
                Item::Skip => {
                    self.mark(Clause::InsSkip);
                    Instruction::Skip
                }
                _ => unreachable!("declarations end before the instruction"),
            })
            .collect();
        if atoms.len() > 1 {
            self.mark(Clause::InsSeq);
        }
        Instruction::from_list(atoms)
    }
}
