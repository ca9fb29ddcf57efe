//! Canonical concrete-syntax printer.
//!
//! Binary operators are always parenthesized, so the output never relies
//! on priorities. Expressions print on one line; programs are laid out one
//! `;`-separated item per line.

use std::fmt::Write;

use super::ast::*;

pub fn print_concrete(ast: &Ast) -> String {
    let mut p = Printer::default();
    match ast {
        Ast::DatExp(e) => p.dat(e),
        Ast::TraExp(e) => p.tra(e),
        Ast::TypExp(e) => p.typ(e),
        Ast::VarDec(v) => p.var_dec(v),
        Ast::TypDef(t) => p.typ_def(t),
        Ast::ActParams(a) => p.act(a),
        Ast::ForParams(f) => p.fpar(f),
        Ast::ImpProcDec(d) => p.proc_dec(d),
        Ast::MultiProcDec(m) => p.multi(m),
        Ast::FunProcDec(f) => p.fun(f),
        Ast::Instruction(i) => p.ins(i),
        Ast::Preamble(pre) => p.preamble(pre),
        Ast::Program(prg) => p.program(prg),
    }
    p.out
}

pub fn print_program(prg: &Program) -> String {
    let mut p = Printer::default();
    p.program(prg);
    p.out.push('\n');
    p.out
}

pub fn print_data_exp(e: &DatExp) -> String {
    let mut p = Printer::default();
    p.dat(e);
    p.out
}

pub fn print_transfer_exp(e: &TraExp) -> String {
    let mut p = Printer::default();
    p.tra(e);
    p.out
}

pub fn print_type_exp(e: &TypExp) -> String {
    let mut p = Printer::default();
    p.typ(e);
    p.out
}

pub fn print_instruction(i: &Instruction) -> String {
    let mut p = Printer::default();
    p.ins(i);
    p.out
}

#[derive(Default)]
struct Printer {
    out: String,
    indent: usize,
}

impl Printer {
    fn w(&mut self, s: &str) {
        self.out.push_str(s);
    }

    fn newline(&mut self) {
        self.out.push('\n');
        for _ in 0..self.indent {
            self.out.push_str("  ");
        }
    }

    // ---- data expressions ----

    /// An operand of an operator that binds tighter than `glue`.
    fn dat_tight(&mut self, e: &DatExp) {
        if matches!(e, DatExp::Glue(..)) {
            self.w("(");
            self.dat(e);
            self.w(")");
        } else {
            self.dat(e);
        }
    }

    fn dat(&mut self, e: &DatExp) {
        match e {
            DatExp::True => self.w("true"),
            DatExp::False => self.w("false"),
            DatExp::Num(n) => {
                let _ = write!(self.out, "{n}");
            }
            DatExp::Wor(s) => {
                let _ = write!(self.out, "'{s}'");
            }
            DatExp::Var(i) => self.w(i.as_str()),
            DatExp::Binary(op, l, r) => {
                let tight = matches!(op, BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div);
                self.w("(");
                if tight { self.dat_tight(l) } else { self.dat(l) }
                let _ = write!(self.out, " {} ", op.symbol());
                if tight { self.dat_tight(r) } else { self.dat(r) }
                self.w(")");
            }
            DatExp::Not(x) => {
                self.w("(not ");
                self.dat_tight(x);
                self.w(")");
            }
            DatExp::Glue(l, r) => {
                self.dat(l);
                self.w(" glue ");
                self.dat_tight(r);
            }
            DatExp::List(x) => {
                self.w("list ");
                self.dat(x);
                self.w(" ee");
            }
            DatExp::Push { elem, list } => {
                self.w("push ");
                self.dat(elem);
                self.w(" on ");
                self.dat(list);
                self.w(" ee");
            }
            DatExp::Top(x) => {
                self.w("top (");
                self.dat(x);
                self.w(")");
            }
            DatExp::Pop(x) => {
                self.w("pop (");
                self.dat(x);
                self.w(")");
            }
            DatExp::Array(x) => {
                self.w("array ");
                self.dat(x);
                self.w(" ee");
            }
            DatExp::AddToArr { array, elem } => {
                self.w("add-to-arr ");
                self.dat(array);
                self.w(" new ");
                self.dat(elem);
                self.w(" ee");
            }
            DatExp::ChangeArr { array, index, elem } => {
                self.w("change-arr ");
                self.dat(array);
                self.w(" at ");
                self.dat(index);
                self.w(" by ");
                self.dat(elem);
                self.w(" ee");
            }
            DatExp::ArrAt { array, index } => {
                self.w("arr ");
                self.dat(array);
                self.w(" at ");
                self.dat(index);
                self.w(" ee");
            }
            DatExp::Record { attr, value } => {
                let _ = write!(self.out, "record {attr} of-value ");
                self.dat(value);
                self.w(" ee");
            }
            DatExp::AddAttr { attr, value, record } => {
                let _ = write!(self.out, "add-attr {attr} of-value ");
                self.dat(value);
                self.w(" to ");
                self.dat(record);
                self.w(" ee");
            }
            DatExp::RecAt { record, attr } => {
                self.w("rec ");
                self.dat(record);
                let _ = write!(self.out, " at {attr} ee");
            }
            DatExp::RemoveAttr { attr, record } => {
                let _ = write!(self.out, "remove-attr {attr} from ");
                self.dat(record);
                self.w(" ee");
            }
            DatExp::ChangeRec { record, attr, value } => {
                self.w("change-rec ");
                self.dat(record);
                let _ = write!(self.out, " at {attr} by ");
                self.dat(value);
                self.w(" ee");
            }
            DatExp::If { cond, then, otherwise } => {
                self.w("if ");
                self.dat(cond);
                self.w(" then ");
                self.dat(then);
                self.w(" else ");
                self.dat(otherwise);
                self.w(" fi");
            }
            DatExp::Call { name, args } => {
                let _ = write!(self.out, "{name}(");
                self.act(args);
                self.w(")");
            }
        }
    }

    // ---- transfer expressions ----

    fn tra_tight(&mut self, e: &TraExp) {
        if matches!(e, TraExp::Glue(..)) {
            self.w("(");
            self.tra(e);
            self.w(")");
        } else {
            self.tra(e);
        }
    }

    fn tra_call(&mut self, name: &str, x: &TraExp) {
        let _ = write!(self.out, "{name} (");
        self.tra(x);
        self.w(")");
    }

    fn tra(&mut self, e: &TraExp) {
        match e {
            TraExp::Num(n) => {
                let _ = write!(self.out, "{n}");
            }
            TraExp::Wor(s) => {
                let _ = write!(self.out, "'{s}'");
            }
            TraExp::True => self.w("true"),
            TraExp::False => self.w("false"),
            TraExp::Binary(op, l, r) => {
                let tight = matches!(op, BinOp::Add | BinOp::Div);
                self.w("(");
                if tight { self.tra_tight(l) } else { self.tra(l) }
                let _ = write!(self.out, " {} ", op.symbol());
                if tight { self.tra_tight(r) } else { self.tra(r) }
                self.w(")");
            }
            TraExp::Not(x) => {
                self.w("(not ");
                self.tra_tight(x);
                self.w(")");
            }
            TraExp::Glue(l, r) => {
                self.tra(l);
                self.w(" glue ");
                self.tra_tight(r);
            }
            TraExp::Sum(x) => self.tra_call("sum", x),
            TraExp::Max(x) => self.tra_call("max", x),
            TraExp::SmallNumber(x) => self.tra_call("small-number", x),
            TraExp::Increasing(x) => self.tra_call("increasing", x),
            TraExp::AllList(x) => {
                self.w("all-list ");
                self.tra(x);
                self.w(" ee");
            }
            TraExp::AllArray(x) => {
                self.w("all-array ");
                self.tra(x);
                self.w(" ee");
            }
            TraExp::Top => self.w("top"),
            TraExp::ArrayIndex(x) => {
                self.w("array[");
                self.tra(x);
                self.w("]");
            }
            TraExp::RecordAttr(a) => {
                let _ = write!(self.out, "record.{a}");
            }
            TraExp::Value => self.w("value"),
        }
    }

    // ---- type expressions ----

    fn typ(&mut self, e: &TypExp) {
        match e {
            TypExp::Boolean => self.w("boolean"),
            TypExp::Number => self.w("number"),
            TypExp::Word => self.w("word"),
            TypExp::Named(i) => self.w(i.as_str()),
            TypExp::ListType(t) => {
                self.w("list-type ");
                self.typ(t);
                self.w(" ee");
            }
            TypExp::ArrayType(t) => {
                self.w("array-type ");
                self.typ(t);
                self.w(" ee");
            }
            TypExp::RecordType { attr, ty } => {
                let _ = write!(self.out, "record-type {attr} as ");
                self.typ(ty);
                self.w(" ee");
            }
            TypExp::ExpandRecordType { base, attr, ty } => {
                self.w("expand-record-type ");
                self.typ(base);
                let _ = write!(self.out, " at {attr} by ");
                self.typ(ty);
                self.w(" ee");
            }
            TypExp::ReplaceTransferIn { ty, transfer } => {
                self.w("replace-transfer-in ");
                self.typ(ty);
                self.w(" by ");
                self.tra(transfer);
                self.w(" ee");
            }
        }
    }

    // ---- declarations ----

    fn var_dec(&mut self, v: &VarDec) {
        match v {
            VarDec::Let { name, ty } => {
                let _ = write!(self.out, "let {name} be ");
                self.typ(ty);
                self.w(" tel");
            }
            VarDec::Seq(a, b) => {
                self.var_dec(a);
                self.w(" ;");
                self.newline();
                self.var_dec(b);
            }
        }
    }

    fn typ_def(&mut self, t: &TypDef) {
        match t {
            TypDef::Set { name, ty } => {
                let _ = write!(self.out, "set {name} as ");
                self.typ(ty);
                self.w(" tes");
            }
            TypDef::Seq(a, b) => {
                self.typ_def(a);
                self.w(" ;");
                self.newline();
                self.typ_def(b);
            }
        }
    }

    fn act(&mut self, a: &ActParams) {
        match a {
            ActParams::Empty => self.w("empty-ap"),
            ActParams::One(i) => self.w(i.as_str()),
            ActParams::Seq(x, y) => {
                self.act(x);
                self.w(", ");
                self.act(y);
            }
        }
    }

    fn fpar(&mut self, f: &ForParams) {
        match f {
            ForParams::Empty => self.w("empty-fp"),
            ForParams::One(i, t) => {
                let _ = write!(self.out, "{i} as ");
                self.typ(t);
            }
            ForParams::Seq(x, y) => {
                self.fpar(x);
                self.w(", ");
                self.fpar(y);
            }
        }
    }

    fn proc_dec(&mut self, d: &ImpProcDec) {
        let _ = write!(self.out, "proc {} (val ", d.name);
        self.fpar(&d.vals);
        self.w(" ref ");
        self.fpar(&d.refs);
        self.w(")");
        self.indent += 1;
        self.newline();
        self.program(&d.body);
        self.indent -= 1;
        self.newline();
        self.w("end proc");
    }

    fn multi(&mut self, m: &MultiProcDec) {
        self.w("begin multiproc");
        self.indent += 1;
        for d in &m.procs {
            self.newline();
            self.proc_dec(d);
        }
        self.indent -= 1;
        self.newline();
        self.w("end multiproc");
    }

    fn fun(&mut self, f: &FunProcDec) {
        match f {
            FunProcDec::Expr { name, params, result } => {
                let _ = write!(self.out, "fun {name} (");
                self.fpar(params);
                self.w(") ");
                self.dat(result);
                self.w(" endfun");
            }
            FunProcDec::Body { name, params, body, result, ty } => {
                let _ = write!(self.out, "fun {name} (");
                self.fpar(params);
                self.w(")");
                self.indent += 1;
                self.newline();
                self.program(body);
                self.newline();
                self.w("return ");
                self.dat(result);
                self.w(" as ");
                self.typ(ty);
                self.indent -= 1;
                self.newline();
                self.w("end fun");
            }
        }
    }

    // ---- instructions and programs ----

    fn ins(&mut self, i: &Instruction) {
        match i {
            Instruction::Assign { target, expr } => {
                let _ = write!(self.out, "{target} := ");
                self.dat(expr);
            }
            Instruction::Yoke { target, transfer } => {
                let _ = write!(self.out, "yoke {target} := ");
                self.tra(transfer);
            }
            Instruction::Skip => self.w("skip"),
            Instruction::Call { name, refs, vals } => {
                let _ = write!(self.out, "call {name} (ref ");
                self.act(refs);
                self.w(" val ");
                self.act(vals);
                self.w(")");
            }
            Instruction::If { cond, then, otherwise } => {
                self.w("if ");
                self.dat(cond);
                self.w(" then ");
                self.ins(then);
                self.w(" else ");
                self.ins(otherwise);
                self.w(" fi");
            }
            Instruction::IfError { error, handler } => {
                self.w("if-error ");
                self.dat(error);
                self.w(" then ");
                self.ins(handler);
                self.w(" fi");
            }
            Instruction::While { cond, body } => {
                self.w("while ");
                self.dat(cond);
                self.w(" do ");
                self.ins(body);
                self.w(" od");
            }
            Instruction::Seq(a, b) => {
                self.ins(a);
                self.w(" ; ");
                self.ins(b);
            }
        }
    }

    /// A program-level instruction: the top sequence goes one item per line.
    fn body(&mut self, i: &Instruction) {
        match i {
            Instruction::Seq(a, b) => {
                self.ins(a);
                self.w(" ;");
                self.newline();
                self.body(b);
            }
            other => self.ins(other),
        }
    }

    fn preamble(&mut self, p: &Preamble) {
        match p {
            Preamble::Proc(d) => self.proc_dec(d),
            Preamble::Multi(m) => self.multi(m),
            Preamble::Fun(f) => self.fun(f),
            Preamble::TypDef(t) => self.typ_def(t),
            Preamble::VarDec(v) => self.var_dec(v),
            Preamble::Skip => self.w("skip"),
            Preamble::Seq(a, b) => {
                self.preamble(a);
                self.w(" ;");
                self.newline();
                self.preamble(b);
            }
        }
    }

    fn program(&mut self, prg: &Program) {
        self.w("begin-program");
        self.indent += 1;
        self.newline();
        if let Some(pre) = &prg.preamble {
            self.preamble(pre);
            self.w(" ;");
            self.newline();
        }
        self.body(&prg.body);
        self.indent -= 1;
        self.newline();
        self.w("end-program");
    }
}
