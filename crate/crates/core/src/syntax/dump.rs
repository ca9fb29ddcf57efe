//! Deterministic tree dumps for inspection and tooling.
//!
//! Every node is tagged with its grammar clause. JSON objects carry the
//! full clause name under `clause`; s-expressions use the clause name
//! without its sort as the head, so `skip` dumps as `(skip)`.

use serde_json::{json, Map, Value as Json};

use super::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpFormat {
    Json,
    Sexpr,
}

pub fn ast_dump(ast: &Ast, format: DumpFormat) -> String {
    let node = to_node(ast);
    match format {
        DumpFormat::Json => serde_json::to_string_pretty(&node.to_json()).expect("tree serializes"),
        DumpFormat::Sexpr => {
            let mut out = String::new();
            node.write_sexpr(&mut out);
            out
        }
    }
}

#[derive(Debug, Clone)]
struct Node {
    clause: &'static str,
    fields: Vec<(&'static str, Field)>,
}

#[derive(Debug, Clone)]
enum Field {
    Node(Node),
    Nodes(Vec<Node>),
    Name(String),
    Literal(String),
}

impl Node {
    fn new(clause: &'static str) -> Self {
        Node { clause, fields: Vec::new() }
    }

    fn node(mut self, key: &'static str, n: Node) -> Self {
        self.fields.push((key, Field::Node(n)));
        self
    }

    fn name(mut self, key: &'static str, n: impl ToString) -> Self {
        self.fields.push((key, Field::Name(n.to_string())));
        self
    }

    fn literal(mut self, key: &'static str, l: impl ToString) -> Self {
        self.fields.push((key, Field::Literal(l.to_string())));
        self
    }

    fn to_json(&self) -> Json {
        let mut map = Map::new();
        map.insert("clause".into(), json!(self.clause));
        for (key, field) in &self.fields {
            let v = match field {
                Field::Node(n) => n.to_json(),
                Field::Nodes(ns) => Json::Array(ns.iter().map(Node::to_json).collect()),
                Field::Name(s) | Field::Literal(s) => json!(s),
            };
            map.insert((*key).into(), v);
        }
        Json::Object(map)
    }

    fn write_sexpr(&self, out: &mut String) {
        out.push('(');
        out.push_str(self.clause.split_once('.').map_or(self.clause, |(_, c)| c));
        for (_, field) in &self.fields {
            out.push(' ');
            match field {
                Field::Node(n) => n.write_sexpr(out),
                Field::Nodes(ns) => {
                    out.push('(');
                    for (i, n) in ns.iter().enumerate() {
                        if i > 0 {
                            out.push(' ');
                        }
                        n.write_sexpr(out);
                    }
                    out.push(')');
                }
                Field::Name(s) => out.push_str(s),
                Field::Literal(s) => out.push_str(&format!("{s:?}")),
            }
        }
        out.push(')');
    }
}

fn to_node(ast: &Ast) -> Node {
    match ast {
        Ast::DatExp(e) => dat(e),
        Ast::TraExp(e) => tra(e),
        Ast::TypExp(e) => typ(e),
        Ast::VarDec(v) => var_dec(v),
        Ast::TypDef(t) => typ_def(t),
        Ast::ActParams(a) => act(a),
        Ast::ForParams(f) => fpar(f),
        Ast::ImpProcDec(d) => proc_dec(d),
        Ast::MultiProcDec(m) => multi(m),
        Ast::FunProcDec(f) => fun(f),
        Ast::Instruction(i) => ins(i),
        Ast::Preamble(p) => preamble(p),
        Ast::Program(p) => program(p),
    }
}

fn dat(e: &DatExp) -> Node {
    let n = Node::new(e.clause().name());
    match e {
        DatExp::True | DatExp::False => n,
        DatExp::Num(x) => n.literal("num", x),
        DatExp::Wor(w) => n.literal("wor", w),
        DatExp::Var(i) => n.name("identifier", i),
        DatExp::Binary(_, l, r) | DatExp::Glue(l, r) => n.node("left", dat(l)).node("right", dat(r)),
        DatExp::Not(x) | DatExp::List(x) | DatExp::Top(x) | DatExp::Pop(x) | DatExp::Array(x) => {
            n.node("operand", dat(x))
        }
        DatExp::Push { elem, list } => n.node("element", dat(elem)).node("list", dat(list)),
        DatExp::AddToArr { array, elem } => n.node("array", dat(array)).node("element", dat(elem)),
        DatExp::ChangeArr { array, index, elem } => {
            n.node("array", dat(array)).node("index", dat(index)).node("element", dat(elem))
        }
        DatExp::ArrAt { array, index } => n.node("array", dat(array)).node("index", dat(index)),
        DatExp::Record { attr, value } => n.name("attribute", attr).node("value", dat(value)),
        DatExp::AddAttr { attr, value, record } => {
            n.name("attribute", attr).node("value", dat(value)).node("record", dat(record))
        }
        DatExp::RecAt { record, attr } => n.node("record", dat(record)).name("attribute", attr),
        DatExp::RemoveAttr { attr, record } => n.name("attribute", attr).node("record", dat(record)),
        DatExp::ChangeRec { record, attr, value } => {
            n.node("record", dat(record)).name("attribute", attr).node("value", dat(value))
        }
        DatExp::If { cond, then, otherwise } => {
            n.node("condition", dat(cond)).node("then", dat(then)).node("else", dat(otherwise))
        }
        DatExp::Call { name, args } => n.name("procedure", name).node("arguments", act(args)),
    }
}

fn tra(e: &TraExp) -> Node {
    let n = Node::new(e.clause().name());
    match e {
        TraExp::True | TraExp::False | TraExp::Top | TraExp::Value => n,
        TraExp::Num(x) => n.literal("num", x),
        TraExp::Wor(w) => n.literal("wor", w),
        TraExp::Binary(_, l, r) | TraExp::Glue(l, r) => n.node("left", tra(l)).node("right", tra(r)),
        TraExp::Not(x)
        | TraExp::Sum(x)
        | TraExp::Max(x)
        | TraExp::SmallNumber(x)
        | TraExp::Increasing(x)
        | TraExp::AllList(x)
        | TraExp::AllArray(x)
        | TraExp::ArrayIndex(x) => n.node("operand", tra(x)),
        TraExp::RecordAttr(a) => n.name("attribute", a),
    }
}

fn typ(e: &TypExp) -> Node {
    let n = Node::new(e.clause().name());
    match e {
        TypExp::Boolean | TypExp::Number | TypExp::Word => n,
        TypExp::Named(i) => n.name("identifier", i),
        TypExp::ListType(t) | TypExp::ArrayType(t) => n.node("element", typ(t)),
        TypExp::RecordType { attr, ty } => n.name("attribute", attr).node("type", typ(ty)),
        TypExp::ExpandRecordType { base, attr, ty } => {
            n.node("base", typ(base)).name("attribute", attr).node("type", typ(ty))
        }
        TypExp::ReplaceTransferIn { ty, transfer } => n.node("type", typ(ty)).node("transfer", tra(transfer)),
    }
}

fn var_dec(v: &VarDec) -> Node {
    match v {
        VarDec::Let { name, ty } => Node::new(Clause::VarLet.name()).name("identifier", name).node("type", typ(ty)),
        VarDec::Seq(a, b) => Node::new(Clause::VarSeq.name()).node("first", var_dec(a)).node("second", var_dec(b)),
    }
}

fn typ_def(t: &TypDef) -> Node {
    match t {
        TypDef::Set { name, ty } => Node::new(Clause::DefSet.name()).name("identifier", name).node("type", typ(ty)),
        TypDef::Seq(a, b) => Node::new(Clause::DefSeq.name()).node("first", typ_def(a)).node("second", typ_def(b)),
    }
}

fn act(a: &ActParams) -> Node {
    match a {
        ActParams::Empty => Node::new(Clause::ActEmpty.name()),
        ActParams::One(i) => Node::new(Clause::ActOne.name()).name("identifier", i),
        ActParams::Seq(x, y) => Node::new(Clause::ActSeq.name()).node("first", act(x)).node("second", act(y)),
    }
}

fn fpar(f: &ForParams) -> Node {
    match f {
        ForParams::Empty => Node::new(Clause::ForEmpty.name()),
        ForParams::One(i, t) => Node::new(Clause::ForOne.name()).name("identifier", i).node("type", typ(t)),
        ForParams::Seq(x, y) => Node::new(Clause::ForSeq.name()).node("first", fpar(x)).node("second", fpar(y)),
    }
}

fn proc_dec(d: &ImpProcDec) -> Node {
    Node::new(Clause::ImpProc.name())
        .name("identifier", &d.name)
        .node("val", fpar(&d.vals))
        .node("ref", fpar(&d.refs))
        .node("body", program(&d.body))
}

fn multi(m: &MultiProcDec) -> Node {
    let mut n = Node::new(Clause::MultiProc.name());
    n.fields.push(("procedures", Field::Nodes(m.procs.iter().map(proc_dec).collect())));
    n
}

fn fun(f: &FunProcDec) -> Node {
    match f {
        FunProcDec::Expr { name, params, result } => Node::new(Clause::FunExpr.name())
            .name("identifier", name)
            .node("parameters", fpar(params))
            .node("result", dat(result)),
        FunProcDec::Body { name, params, body, result, ty } => Node::new(Clause::FunBody.name())
            .name("identifier", name)
            .node("parameters", fpar(params))
            .node("body", program(body))
            .node("result", dat(result))
            .node("type", typ(ty)),
    }
}

fn ins(i: &Instruction) -> Node {
    let n = Node::new(i.clause().name());
    match i {
        Instruction::Assign { target, expr } => n.name("identifier", target).node("expression", dat(expr)),
        Instruction::Yoke { target, transfer } => n.name("identifier", target).node("transfer", tra(transfer)),
        Instruction::Skip => n,
        Instruction::Call { name, refs, vals } => n.name("procedure", name).node("ref", act(refs)).node("val", act(vals)),
        Instruction::If { cond, then, otherwise } => {
            n.node("condition", dat(cond)).node("then", ins(then)).node("else", ins(otherwise))
        }
        Instruction::IfError { error, handler } => n.node("error", dat(error)).node("then", ins(handler)),
        Instruction::While { cond, body } => n.node("condition", dat(cond)).node("body", ins(body)),
        Instruction::Seq(a, b) => n.node("first", ins(a)).node("second", ins(b)),
    }
}

fn preamble(p: &Preamble) -> Node {
    let n = Node::new(p.clause().name());
    match p {
        Preamble::Proc(d) => n.node("declaration", proc_dec(d)),
        Preamble::Multi(m) => n.node("declaration", multi(m)),
        Preamble::Fun(f) => n.node("declaration", fun(f)),
        Preamble::TypDef(t) => n.node("definition", typ_def(t)),
        Preamble::VarDec(v) => n.node("declaration", var_dec(v)),
        Preamble::Skip => n,
        Preamble::Seq(a, b) => n.node("first", preamble(a)).node("second", preamble(b)),
    }
}

fn program(p: &Program) -> Node {
    match &p.preamble {
        None => Node::new(Clause::PrgPlain.name()).node("instruction", ins(&p.body)),
        Some(pre) => Node::new(Clause::PrgWithPreamble.name())
            .node("preamble", preamble(pre))
            .node("instruction", ins(&p.body)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::parse_program;

    #[test]
    fn skip_sexpr() {
        assert_eq!(ast_dump(&Ast::Instruction(Instruction::Skip), DumpFormat::Sexpr), "(skip)");
    }

    #[test]
    fn dumps_ignore_whitespace() {
        let a = parse_program("begin-program let x be number tel ; x := 3 end-program").unwrap();
        let b = parse_program("begin-program\n  let x be number tel;\n\n  x:=3\nend-program").unwrap();
        for f in [DumpFormat::Json, DumpFormat::Sexpr] {
            assert_eq!(ast_dump(&a.clone().into(), f), ast_dump(&b.clone().into(), f));
        }
        assert_eq!(
            ast_dump(&a.into(), DumpFormat::Sexpr),
            "(preamble-instruction (variable-declaration (let x (number))) (assign x (num \"3\")))"
        );
    }

    #[test]
    fn json_carries_clause_names() {
        let p = parse_program("begin-program skip end-program").unwrap();
        let v: Json = serde_json::from_str(&ast_dump(&p.into(), DumpFormat::Json)).unwrap();
        assert_eq!(v["clause"], "Program.instruction");
        assert_eq!(v["instruction"]["clause"], "Instruction.skip");
    }
}
