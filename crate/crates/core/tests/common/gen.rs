//! Generators of canonical abstract syntax trees and of runnable
//! procedure programs.

use lingua::syntax::*;
use lingua::{Identifier, Number};
use num_bigint::BigInt;
use proptest::prelude::*;

const NAMES: &[&str] = &["x", "y", "total", "acc2", "n", "measurement-data", "k1"];
const ATTRS: &[&str] = &["price", "vat", "a", "b"];

pub fn ident() -> impl Strategy<Value = Identifier> {
    prop::sample::select(NAMES).prop_map(lingua::ident::ide)
}

pub fn attr() -> impl Strategy<Value = Identifier> {
    prop::sample::select(ATTRS).prop_map(lingua::ident::ide)
}

pub fn number() -> impl Strategy<Value = Number> {
    (-1_000_000i64..1_000_000, 0i64..4).prop_map(|(c, s)| Number::from_parts(BigInt::from(c), s))
}

pub fn word() -> impl Strategy<Value = String> {
    "[a-z0-9 ]{0,6}"
}

fn binop() -> impl Strategy<Value = BinOp> {
    prop::sample::select(&[
        BinOp::And,
        BinOp::Or,
        BinOp::Less,
        BinOp::Equal,
        BinOp::Add,
        BinOp::Sub,
        BinOp::Mul,
        BinOp::Div,
    ][..])
}

fn transfer_binop() -> impl Strategy<Value = BinOp> {
    binop().prop_filter("transfer operator", |op| op.in_transfers())
}

pub fn act_params() -> impl Strategy<Value = ActParams> {
    prop::collection::vec(ident(), 0..3).prop_map(ActParams::from_list)
}

pub fn dat_exp() -> impl Strategy<Value = DatExp> {
    let leaf = prop_oneof![
        Just(DatExp::True),
        Just(DatExp::False),
        number().prop_map(DatExp::Num),
        word().prop_map(DatExp::Wor),
        ident().prop_map(DatExp::Var),
        (ident(), act_params()).prop_map(|(name, args)| DatExp::Call { name, args }),
    ];
    leaf.prop_recursive(4, 24, 3, |e| {
        let b = |e: DatExp| Box::new(e);
        prop_oneof![
            (binop(), e.clone(), e.clone()).prop_map(move |(op, l, r)| DatExp::Binary(op, b(l), b(r))),
            e.clone().prop_map(move |x| DatExp::Not(b(x))),
            (e.clone(), e.clone()).prop_map(move |(l, r)| DatExp::Glue(b(l), b(r))),
            e.clone().prop_map(move |x| DatExp::List(b(x))),
            (e.clone(), e.clone()).prop_map(move |(x, l)| DatExp::Push { elem: b(x), list: b(l) }),
            e.clone().prop_map(move |x| DatExp::Top(b(x))),
            e.clone().prop_map(move |x| DatExp::Pop(b(x))),
            e.clone().prop_map(move |x| DatExp::Array(b(x))),
            (e.clone(), e.clone()).prop_map(move |(a, x)| DatExp::AddToArr { array: b(a), elem: b(x) }),
            (e.clone(), e.clone(), e.clone())
                .prop_map(move |(a, i, x)| DatExp::ChangeArr { array: b(a), index: b(i), elem: b(x) }),
            (e.clone(), e.clone()).prop_map(move |(a, i)| DatExp::ArrAt { array: b(a), index: b(i) }),
            (attr(), e.clone()).prop_map(move |(attr, v)| DatExp::Record { attr, value: b(v) }),
            (attr(), e.clone(), e.clone())
                .prop_map(move |(attr, v, r)| DatExp::AddAttr { attr, value: b(v), record: b(r) }),
            (e.clone(), attr()).prop_map(move |(r, attr)| DatExp::RecAt { record: b(r), attr }),
            (attr(), e.clone()).prop_map(move |(attr, r)| DatExp::RemoveAttr { attr, record: b(r) }),
            (e.clone(), attr(), e.clone())
                .prop_map(move |(r, attr, v)| DatExp::ChangeRec { record: b(r), attr, value: b(v) }),
            (e.clone(), e.clone(), e.clone())
                .prop_map(move |(c, t, o)| DatExp::If { cond: b(c), then: b(t), otherwise: b(o) }),
        ]
    })
}

pub fn tra_exp() -> impl Strategy<Value = TraExp> {
    let leaf = prop_oneof![
        number().prop_map(TraExp::Num),
        word().prop_map(TraExp::Wor),
        Just(TraExp::True),
        Just(TraExp::False),
        Just(TraExp::Top),
        Just(TraExp::Value),
        attr().prop_map(TraExp::RecordAttr),
    ];
    leaf.prop_recursive(4, 20, 2, |t| {
        let b = |t: TraExp| Box::new(t);
        prop_oneof![
            (transfer_binop(), t.clone(), t.clone()).prop_map(move |(op, l, r)| TraExp::Binary(op, b(l), b(r))),
            t.clone().prop_map(move |x| TraExp::Not(b(x))),
            (t.clone(), t.clone()).prop_map(move |(l, r)| TraExp::Glue(b(l), b(r))),
            t.clone().prop_map(move |x| TraExp::Sum(b(x))),
            t.clone().prop_map(move |x| TraExp::Max(b(x))),
            t.clone().prop_map(move |x| TraExp::SmallNumber(b(x))),
            t.clone().prop_map(move |x| TraExp::Increasing(b(x))),
            t.clone().prop_map(move |x| TraExp::AllList(b(x))),
            t.clone().prop_map(move |x| TraExp::AllArray(b(x))),
            t.clone().prop_map(move |x| TraExp::ArrayIndex(b(x))),
        ]
    })
}

pub fn typ_exp() -> impl Strategy<Value = TypExp> {
    let leaf = prop_oneof![
        Just(TypExp::Boolean),
        Just(TypExp::Number),
        Just(TypExp::Word),
        ident().prop_map(TypExp::Named),
    ];
    leaf.prop_recursive(3, 10, 2, |t| {
        let b = |t: TypExp| Box::new(t);
        prop_oneof![
            t.clone().prop_map(move |x| TypExp::ListType(b(x))),
            t.clone().prop_map(move |x| TypExp::ArrayType(b(x))),
            (attr(), t.clone()).prop_map(move |(attr, ty)| TypExp::RecordType { attr, ty: b(ty) }),
            (t.clone(), attr(), t.clone())
                .prop_map(move |(base, attr, ty)| TypExp::ExpandRecordType { base: b(base), attr, ty: b(ty) }),
            (t.clone(), tra_exp())
                .prop_map(move |(ty, tr)| TypExp::ReplaceTransferIn { ty: b(ty), transfer: Box::new(tr) }),
        ]
    })
}

pub fn for_params() -> impl Strategy<Value = ForParams> {
    prop::collection::vec((ident(), typ_exp()), 0..3).prop_map(ForParams::from_list)
}

/// A right-nested sequence whose left elements are never sequences.
fn seq_of(items: Vec<Instruction>) -> Instruction {
    let mut iter = items.into_iter().rev();
    let last = iter.next().unwrap_or(Instruction::Skip);
    iter.fold(last, |acc, i| Instruction::seq(i, acc))
}

pub fn instruction() -> impl Strategy<Value = Instruction> {
    let leaf = prop_oneof![
        (ident(), dat_exp()).prop_map(|(target, expr)| Instruction::Assign { target, expr }),
        (ident(), tra_exp()).prop_map(|(target, transfer)| Instruction::Yoke { target, transfer }),
        Just(Instruction::Skip),
        (ident(), act_params(), act_params()).prop_map(|(name, refs, vals)| Instruction::Call { name, refs, vals }),
    ];
    leaf.prop_recursive(3, 12, 3, |i| {
        let b = |i: Instruction| Box::new(i);
        prop_oneof![
            (dat_exp(), i.clone(), i.clone())
                .prop_map(move |(cond, t, o)| Instruction::If { cond, then: b(t), otherwise: b(o) }),
            (dat_exp(), i.clone()).prop_map(move |(error, h)| Instruction::IfError { error, handler: b(h) }),
            (dat_exp(), i.clone()).prop_map(move |(cond, body)| Instruction::While { cond, body: b(body) }),
            prop::collection::vec(i.clone(), 2..4).prop_map(|is| {
                // flatten so that no sequence sits on the left of another
                let mut flat = Vec::new();
                for x in is {
                    flatten(x, &mut flat);
                }
                seq_of(flat)
            }),
        ]
    })
}

fn flatten(i: Instruction, out: &mut Vec<Instruction>) {
    match i {
        Instruction::Seq(a, b) => {
            flatten(*a, out);
            flatten(*b, out);
        }
        other => out.push(other),
    }
}

/// One element of a preamble before grouping.
#[derive(Debug, Clone)]
enum PreItem {
    Let(Identifier, TypExp),
    Set(Identifier, TypExp),
    Proc(ImpProcDec),
    Multi(MultiProcDec),
    Fun(FunProcDec),
    Skip,
}

fn var_group(items: Vec<(Identifier, TypExp)>) -> VarDec {
    let mut iter = items.into_iter().rev().map(|(name, ty)| VarDec::Let { name, ty });
    let last = iter.next().expect("nonempty group");
    iter.fold(last, |acc, v| VarDec::Seq(Box::new(v), Box::new(acc)))
}

fn def_group(items: Vec<(Identifier, TypExp)>) -> TypDef {
    let mut iter = items.into_iter().rev().map(|(name, ty)| TypDef::Set { name, ty });
    let last = iter.next().expect("nonempty group");
    iter.fold(last, |acc, v| TypDef::Seq(Box::new(v), Box::new(acc)))
}

/// Groups consecutive declarations the way the parser does and nests the
/// result to the right.
fn preamble_of(items: Vec<PreItem>) -> Preamble {
    let mut parts: Vec<Preamble> = Vec::new();
    let mut lets = Vec::new();
    let mut sets = Vec::new();
    let flush = |lets: &mut Vec<_>, sets: &mut Vec<_>, parts: &mut Vec<Preamble>| {
        if !lets.is_empty() {
            parts.push(Preamble::VarDec(var_group(std::mem::take(lets))));
        }
        if !sets.is_empty() {
            parts.push(Preamble::TypDef(def_group(std::mem::take(sets))));
        }
    };
    for item in items {
        match item {
            PreItem::Let(i, t) => {
                if !sets.is_empty() {
                    flush(&mut lets, &mut sets, &mut parts);
                }
                lets.push((i, t));
            }
            PreItem::Set(i, t) => {
                if !lets.is_empty() {
                    flush(&mut lets, &mut sets, &mut parts);
                }
                sets.push((i, t));
            }
            other => {
                flush(&mut lets, &mut sets, &mut parts);
                parts.push(match other {
                    PreItem::Proc(d) => Preamble::Proc(d),
                    PreItem::Multi(m) => Preamble::Multi(m),
                    PreItem::Fun(f) => Preamble::Fun(f),
                    _ => Preamble::Skip,
                });
            }
        }
    }
    flush(&mut lets, &mut sets, &mut parts);
    let mut iter = parts.into_iter().rev();
    let last = iter.next().expect("nonempty preamble");
    iter.fold(last, |acc, p| Preamble::Seq(Box::new(p), Box::new(acc)))
}

fn declaring_item(depth: u32) -> BoxedStrategy<PreItem> {
    let simple = prop_oneof![
        (ident(), typ_exp()).prop_map(|(i, t)| PreItem::Let(i, t)),
        (ident(), typ_exp()).prop_map(|(i, t)| PreItem::Set(i, t)),
        (ident(), for_params(), dat_exp()).prop_map(|(name, params, result)| PreItem::Fun(FunProcDec::Expr {
            name,
            params,
            result
        })),
    ];
    if depth == 0 {
        return simple.boxed();
    }
    prop_oneof![
        4 => simple,
        1 => imp_proc(depth - 1).prop_map(PreItem::Proc),
        1 => prop::collection::vec(imp_proc(depth - 1), 1..3).prop_map(|procs| PreItem::Multi(MultiProcDec { procs })),
        1 => (ident(), for_params(), program_at(depth - 1), dat_exp(), typ_exp()).prop_map(
            |(name, params, body, result, ty)| PreItem::Fun(FunProcDec::Body { name, params, body, result, ty })
        ),
    ]
    .boxed()
}

fn imp_proc(depth: u32) -> impl Strategy<Value = ImpProcDec> {
    (ident(), for_params(), for_params(), program_at(depth))
        .prop_map(|(name, vals, refs, body)| ImpProcDec { name, vals, refs, body })
}

fn program_at(depth: u32) -> BoxedStrategy<Program> {
    let items = prop::collection::vec(
        prop_oneof![4 => declaring_item(depth), 1 => Just(PreItem::Skip)],
        0..4,
    );
    let last = prop::option::of(declaring_item(depth));
    (items, last, instruction())
        .prop_map(|(mut items, last, body)| {
            // a preamble always ends with a declaration
            while matches!(items.last(), Some(PreItem::Skip)) {
                items.pop();
            }
            items.extend(last);
            let preamble = (!items.is_empty()).then(|| Box::new(preamble_of(items)));
            Program { preamble, body }
        })
        .boxed()
}

/// Programs in canonical form: what the parser produces from any text.
pub fn program() -> BoxedStrategy<Program> {
    program_at(2)
}

// ---- runnable programs for the procedure frame law ----

/// A program declaring a few procedures and number variables, and a call
/// to run on the state the program leaves.
#[derive(Debug, Clone)]
pub struct FrameCase {
    pub setup: String,
    pub call: String,
    pub refs: Vec<String>,
}

const VARS: &[&str] = &["a", "b", "c", "d", "w"];

fn arith(formals: Vec<&'static str>) -> BoxedStrategy<String> {
    let mut leaves: Vec<BoxedStrategy<String>> = vec![(0i64..20).prop_map(|n| n.to_string()).boxed()];
    if !formals.is_empty() {
        leaves.push(prop::sample::select(formals).prop_map(str::to_string).boxed());
    }
    let leaf = prop::strategy::Union::new(leaves);
    leaf.prop_recursive(2, 6, 2, |e| {
        (e.clone(), prop::sample::select(&["+", "-", "*", "/"][..]), e).prop_map(|(l, op, r)| format!("({l} {op} {r})"))
    })
    .boxed()
}

fn proc_text(name: &'static str, vals: &[&'static str], refs: &[&'static str]) -> BoxedStrategy<String> {
    let all: Vec<&str> = vals.iter().chain(refs.iter()).copied().collect();
    let targets: Vec<&str> = if all.is_empty() { vec!["loc"] } else { all.clone() };
    let mut visible = all.clone();
    visible.push("loc");
    let assigns = prop::collection::vec((prop::sample::select(targets), arith(visible.clone())), 0..4);
    let vals_text = if vals.is_empty() { String::new() } else { format!("{} as number", vals.join(", ")) };
    let refs_text = if refs.is_empty() { String::new() } else { format!("{} as number", refs.join(", ")) };
    (assigns, any::<bool>())
        .prop_map(move |(assigns, local_decls)| {
            let mut body = String::from("let loc be number tel ; ");
            if local_decls {
                body.push_str("set tloc as number tes ; proc inner (val ref) begin-program skip end-program end proc ; ");
            }
            body.push_str("loc := 1");
            for (t, e) in assigns {
                body.push_str(&format!(" ; {t} := {e}"));
            }
            format!(
                "proc {name} (val {vals_text} ref {refs_text}) begin-program {body} end-program end proc"
            )
        })
        .boxed()
}

/// Actuals for a formal list of length `n`, usually of the right length.
fn actuals(n: usize) -> impl Strategy<Value = Vec<&'static str>> {
    let names = prop_oneof![19 => prop::sample::select(&VARS[..VARS.len() - 1]), 1 => Just("w")];
    prop_oneof![
        9 => prop::collection::vec(names.clone(), n..=n),
        1 => prop::collection::vec(names, 0..3),
    ]
}

pub fn frame_case() -> impl Strategy<Value = FrameCase> {
    let procs = (
        proc_text("p0", &["u"], &["r"]),
        proc_text("p1", &[], &["r", "s"]),
        proc_text("p2", &["u", "v"], &[]),
    );
    let inits = prop::collection::vec(prop::option::weighted(0.9, -5i64..30), VARS.len() - 1);
    // (name, number of refs, number of vals)
    let signature = prop_oneof![
        3 => Just(("p0", 1, 1)),
        3 => Just(("p1", 2, 0)),
        3 => Just(("p2", 0, 2)),
        1 => Just(("nothing", 1, 0)),
    ];
    let call = signature.prop_flat_map(|(name, r, v)| (Just(name), actuals(r), actuals(v)));
    (procs, inits, call).prop_map(|((p0, p1, p2), inits, (name, refs, vals))| {
        let mut setup = format!("begin-program {p0} ; {p1} ; {p2} ; ");
        for v in &VARS[..VARS.len() - 1] {
            setup.push_str(&format!("let {v} be number tel ; "));
        }
        setup.push_str("let w be word tel ; w := 'text'");
        for (v, init) in VARS.iter().zip(inits) {
            if let Some(n) = init {
                setup.push_str(&format!(" ; {v} := {n}"));
            }
        }
        setup.push_str(" end-program");
        let call = format!("call {name} (ref {} val {})", refs.join(", "), vals.join(", "));
        FrameCase { setup, call, refs: refs.iter().map(|s| s.to_string()).collect() }
    })
}
