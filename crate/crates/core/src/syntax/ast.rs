//! Abstract syntax of the concrete grammar.
//!
//! Every node corresponds to exactly one grammar clause. Colloquial forms
//! never appear here: the parser restores them while building the tree.
//! Binary sequences (`;` and parameter `,`) are right-nested.

use crate::ident::Identifier;
use crate::number::Number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    And,
    Or,
    Less,
    Equal,
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "and",
            BinOp::Or => "or",
            BinOp::Less => "<",
            BinOp::Equal => "=",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    /// Operators admitted in transfer expressions.
    pub fn in_transfers(self) -> bool {
        !matches!(self, BinOp::Sub | BinOp::Mul)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatExp {
    True,
    False,
    Num(Number),
    Wor(String),
    Var(Identifier),
    Binary(BinOp, Box<DatExp>, Box<DatExp>),
    Not(Box<DatExp>),
    Glue(Box<DatExp>, Box<DatExp>),
    List(Box<DatExp>),
    Push { elem: Box<DatExp>, list: Box<DatExp> },
    Top(Box<DatExp>),
    Pop(Box<DatExp>),
    Array(Box<DatExp>),
    AddToArr { array: Box<DatExp>, elem: Box<DatExp> },
    ChangeArr { array: Box<DatExp>, index: Box<DatExp>, elem: Box<DatExp> },
    ArrAt { array: Box<DatExp>, index: Box<DatExp> },
    Record { attr: Identifier, value: Box<DatExp> },
    AddAttr { attr: Identifier, value: Box<DatExp>, record: Box<DatExp> },
    RecAt { record: Box<DatExp>, attr: Identifier },
    RemoveAttr { attr: Identifier, record: Box<DatExp> },
    ChangeRec { record: Box<DatExp>, attr: Identifier, value: Box<DatExp> },
    If { cond: Box<DatExp>, then: Box<DatExp>, otherwise: Box<DatExp> },
    Call { name: Identifier, args: ActParams },
}

impl DatExp {
    pub fn binary(op: BinOp, l: DatExp, r: DatExp) -> DatExp {
        DatExp::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn num(v: i64) -> DatExp {
        DatExp::Num(v.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraExp {
    Num(Number),
    Wor(String),
    True,
    False,
    /// Only the operators for which [`BinOp::in_transfers`] holds.
    Binary(BinOp, Box<TraExp>, Box<TraExp>),
    Not(Box<TraExp>),
    Glue(Box<TraExp>, Box<TraExp>),
    Sum(Box<TraExp>),
    Max(Box<TraExp>),
    SmallNumber(Box<TraExp>),
    Increasing(Box<TraExp>),
    AllList(Box<TraExp>),
    AllArray(Box<TraExp>),
    Top,
    ArrayIndex(Box<TraExp>),
    RecordAttr(Identifier),
    Value,
}

impl TraExp {
    pub fn binary(op: BinOp, l: TraExp, r: TraExp) -> TraExp {
        TraExp::Binary(op, Box::new(l), Box::new(r))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypExp {
    Boolean,
    Number,
    Word,
    Named(Identifier),
    ListType(Box<TypExp>),
    ArrayType(Box<TypExp>),
    RecordType { attr: Identifier, ty: Box<TypExp> },
    ExpandRecordType { base: Box<TypExp>, attr: Identifier, ty: Box<TypExp> },
    ReplaceTransferIn { ty: Box<TypExp>, transfer: Box<TraExp> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarDec {
    Let { name: Identifier, ty: TypExp },
    Seq(Box<VarDec>, Box<VarDec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypDef {
    Set { name: Identifier, ty: TypExp },
    Seq(Box<TypDef>, Box<TypDef>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActParams {
    Empty,
    One(Identifier),
    Seq(Box<ActParams>, Box<ActParams>),
}

impl ActParams {
    /// Right-nested list of the given identifiers.
    pub fn from_list(items: Vec<Identifier>) -> ActParams {
        let mut iter = items.into_iter().rev();
        let Some(last) = iter.next() else { return ActParams::Empty };
        iter.fold(ActParams::One(last), |acc, i| ActParams::Seq(Box::new(ActParams::One(i)), Box::new(acc)))
    }

    pub fn to_vec(&self) -> Vec<Identifier> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Identifier>) {
        match self {
            ActParams::Empty => {}
            ActParams::One(i) => out.push(i.clone()),
            ActParams::Seq(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForParams {
    Empty,
    One(Identifier, TypExp),
    Seq(Box<ForParams>, Box<ForParams>),
}

impl ForParams {
    pub fn from_list(items: Vec<(Identifier, TypExp)>) -> ForParams {
        let mut iter = items.into_iter().rev();
        let Some((i, t)) = iter.next() else { return ForParams::Empty };
        iter.fold(ForParams::One(i, t), |acc, (i, t)| ForParams::Seq(Box::new(ForParams::One(i, t)), Box::new(acc)))
    }

    pub fn to_vec(&self) -> Vec<(Identifier, TypExp)> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<(Identifier, TypExp)>) {
        match self {
            ForParams::Empty => {}
            ForParams::One(i, t) => out.push((i.clone(), t.clone())),
            ForParams::Seq(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }
}

/// `proc name (val vals ref refs) body end proc`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpProcDec {
    pub name: Identifier,
    pub vals: ForParams,
    pub refs: ForParams,
    pub body: Program,
}

/// A nonempty group of mutually recursive imperative procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiProcDec {
    pub procs: Vec<ImpProcDec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunProcDec {
    /// `fun name (params) result endfun`
    Expr { name: Identifier, params: ForParams, result: DatExp },
    /// `fun name (params) body return result as ty end fun`
    Body { name: Identifier, params: ForParams, body: Program, result: DatExp, ty: TypExp },
}

impl FunProcDec {
    pub fn name(&self) -> &Identifier {
        match self {
            FunProcDec::Expr { name, .. } | FunProcDec::Body { name, .. } => name,
        }
    }

    pub fn params(&self) -> &ForParams {
        match self {
            FunProcDec::Expr { params, .. } | FunProcDec::Body { params, .. } => params,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instruction {
    Assign { target: Identifier, expr: DatExp },
    Yoke { target: Identifier, transfer: TraExp },
    Skip,
    Call { name: Identifier, refs: ActParams, vals: ActParams },
    If { cond: DatExp, then: Box<Instruction>, otherwise: Box<Instruction> },
    IfError { error: DatExp, handler: Box<Instruction> },
    While { cond: DatExp, body: Box<Instruction> },
    Seq(Box<Instruction>, Box<Instruction>),
}

impl Instruction {
    pub fn seq(a: Instruction, b: Instruction) -> Instruction {
        Instruction::Seq(Box::new(a), Box::new(b))
    }

    /// Right-nested sequence; `Skip` when empty.
    pub fn from_list(items: Vec<Instruction>) -> Instruction {
        let mut iter = items.into_iter().rev();
        let Some(last) = iter.next() else { return Instruction::Skip };
        iter.fold(last, |acc, i| Instruction::seq(i, acc))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preamble {
    Proc(ImpProcDec),
    Multi(MultiProcDec),
    Fun(FunProcDec),
    TypDef(TypDef),
    VarDec(VarDec),
    Skip,
    Seq(Box<Preamble>, Box<Preamble>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub preamble: Option<Box<Preamble>>,
    pub body: Instruction,
}

/// A node of any sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    DatExp(DatExp),
    TraExp(TraExp),
    TypExp(TypExp),
    VarDec(VarDec),
    TypDef(TypDef),
    ActParams(ActParams),
    ForParams(ForParams),
    ImpProcDec(ImpProcDec),
    MultiProcDec(MultiProcDec),
    FunProcDec(FunProcDec),
    Instruction(Instruction),
    Preamble(Preamble),
    Program(Program),
}

macro_rules! ast_from {
    ($($v:ident),*) => {$(
        impl From<$v> for Ast {
            fn from(x: $v) -> Ast { Ast::$v(x) }
        }
    )*};
}
ast_from!(DatExp, TraExp, TypExp, VarDec, TypDef, ActParams, ForParams, ImpProcDec, MultiProcDec, FunProcDec, Instruction, Preamble, Program);

macro_rules! clauses {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// One tag per grammar clause, named `Sort.clause`.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Clause { $($variant),* }

        impl Clause {
            pub const ALL: &'static [Clause] = &[$(Clause::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(Clause::$variant => $name),* }
            }
        }
    };
}

clauses! {
    DatTrue => "DatExp.true",
    DatFalse => "DatExp.false",
    DatNum => "DatExp.num",
    DatWor => "DatExp.wor",
    DatIdentifier => "DatExp.identifier",
    DatAnd => "DatExp.and",
    DatOr => "DatExp.or",
    DatNot => "DatExp.not",
    DatLess => "DatExp.less",
    DatEqual => "DatExp.equal",
    DatAdd => "DatExp.add",
    DatSub => "DatExp.subtract",
    DatMul => "DatExp.multiply",
    DatDiv => "DatExp.divide",
    DatGlue => "DatExp.glue",
    DatList => "DatExp.list",
    DatPush => "DatExp.push",
    DatTop => "DatExp.top",
    DatPop => "DatExp.pop",
    DatArray => "DatExp.array",
    DatAddToArr => "DatExp.add-to-arr",
    DatChangeArr => "DatExp.change-arr",
    DatArrAt => "DatExp.arr-at",
    DatRecord => "DatExp.record",
    DatAddAttr => "DatExp.add-attr",
    DatRecAt => "DatExp.rec-at",
    DatRemoveAttr => "DatExp.remove-attr",
    DatChangeRec => "DatExp.change-rec",
    DatIf => "DatExp.if",
    DatCall => "DatExp.call",
    TraNum => "TraExp.num",
    TraWor => "TraExp.wor",
    TraAdd => "TraExp.add",
    TraDiv => "TraExp.divide",
    TraSum => "TraExp.sum",
    TraMax => "TraExp.max",
    TraGlue => "TraExp.glue",
    TraTrue => "TraExp.true",
    TraFalse => "TraExp.false",
    TraEqual => "TraExp.equal",
    TraLess => "TraExp.less",
    TraSmallNumber => "TraExp.small-number",
    TraIncreasing => "TraExp.increasing",
    TraAnd => "TraExp.and",
    TraOr => "TraExp.or",
    TraNot => "TraExp.not",
    TraAllList => "TraExp.all-list",
    TraAllArray => "TraExp.all-array",
    TraTop => "TraExp.top",
    TraArrayIndex => "TraExp.array-index",
    TraRecordAttr => "TraExp.record-attr",
    TraValue => "TraExp.value",
    TypBoolean => "TypExp.boolean",
    TypNumber => "TypExp.number",
    TypWord => "TypExp.word",
    TypIdentifier => "TypExp.identifier",
    TypListType => "TypExp.list-type",
    TypArrayType => "TypExp.array-type",
    TypRecordType => "TypExp.record-type",
    TypExpandRecordType => "TypExp.expand-record-type",
    TypReplaceTransferIn => "TypExp.replace-transfer-in",
    VarLet => "VarDec.let",
    VarSeq => "VarDec.seq",
    DefSet => "TypDef.set",
    DefSeq => "TypDef.seq",
    ActEmpty => "ActParameters.empty-ap",
    ActOne => "ActParameters.identifier",
    ActSeq => "ActParameters.seq",
    ForEmpty => "ForParameters.empty-fp",
    ForOne => "ForParameters.identifier-as",
    ForSeq => "ForParameters.seq",
    ImpProc => "ImpProcDec.proc",
    MultiProc => "MultiProcDec.multiproc",
    FunExpr => "FunProcDec.expression",
    FunBody => "FunProcDec.program",
    InsAssign => "Instruction.assign",
    InsYoke => "Instruction.yoke",
    InsSkip => "Instruction.skip",
    InsCall => "Instruction.call",
    InsIf => "Instruction.if",
    InsIfError => "Instruction.if-error",
    InsWhile => "Instruction.while",
    InsSeq => "Instruction.seq",
    PreProc => "Preamble.proc",
    PreMulti => "Preamble.multiproc",
    PreFun => "Preamble.fun",
    PreTypDef => "Preamble.type-definition",
    PreVarDec => "Preamble.variable-declaration",
    PreSkip => "Preamble.skip",
    PreSeq => "Preamble.seq",
    PrgPlain => "Program.instruction",
    PrgWithPreamble => "Program.preamble-instruction",
}

impl DatExp {
    pub fn clause(&self) -> Clause {
        match self {
            DatExp::True => Clause::DatTrue,
            DatExp::False => Clause::DatFalse,
            DatExp::Num(_) => Clause::DatNum,
            DatExp::Wor(_) => Clause::DatWor,
            DatExp::Var(_) => Clause::DatIdentifier,
            DatExp::Binary(op, ..) => match op {
                BinOp::And => Clause::DatAnd,
                BinOp::Or => Clause::DatOr,
                BinOp::Less => Clause::DatLess,
                BinOp::Equal => Clause::DatEqual,
                BinOp::Add => Clause::DatAdd,
                BinOp::Sub => Clause::DatSub,
                BinOp::Mul => Clause::DatMul,
                BinOp::Div => Clause::DatDiv,
            },
            DatExp::Not(_) => Clause::DatNot,
            DatExp::Glue(..) => Clause::DatGlue,
            DatExp::List(_) => Clause::DatList,
            DatExp::Push { .. } => Clause::DatPush,
            DatExp::Top(_) => Clause::DatTop,
            DatExp::Pop(_) => Clause::DatPop,
            DatExp::Array(_) => Clause::DatArray,
            DatExp::AddToArr { .. } => Clause::DatAddToArr,
            DatExp::ChangeArr { .. } => Clause::DatChangeArr,
            DatExp::ArrAt { .. } => Clause::DatArrAt,
            DatExp::Record { .. } => Clause::DatRecord,
            DatExp::AddAttr { .. } => Clause::DatAddAttr,
            DatExp::RecAt { .. } => Clause::DatRecAt,
            DatExp::RemoveAttr { .. } => Clause::DatRemoveAttr,
            DatExp::ChangeRec { .. } => Clause::DatChangeRec,
            DatExp::If { .. } => Clause::DatIf,
            DatExp::Call { .. } => Clause::DatCall,
        }
    }
}

impl TraExp {
    pub fn clause(&self) -> Clause {
        match self {
            TraExp::Num(_) => Clause::TraNum,
            TraExp::Wor(_) => Clause::TraWor,
            TraExp::True => Clause::TraTrue,
            TraExp::False => Clause::TraFalse,
            TraExp::Binary(op, ..) => match op {
                BinOp::Add => Clause::TraAdd,
                BinOp::Div => Clause::TraDiv,
                BinOp::Equal => Clause::TraEqual,
                BinOp::Less => Clause::TraLess,
                BinOp::And => Clause::TraAnd,
                BinOp::Or => Clause::TraOr,
                BinOp::Sub | BinOp::Mul => unreachable!("`{}` is not a transfer operator", op.symbol()),
            },
            TraExp::Not(_) => Clause::TraNot,
            TraExp::Glue(..) => Clause::TraGlue,
            TraExp::Sum(_) => Clause::TraSum,
            TraExp::Max(_) => Clause::TraMax,
            TraExp::SmallNumber(_) => Clause::TraSmallNumber,
            TraExp::Increasing(_) => Clause::TraIncreasing,
            TraExp::AllList(_) => Clause::TraAllList,
            TraExp::AllArray(_) => Clause::TraAllArray,
            TraExp::Top => Clause::TraTop,
            TraExp::ArrayIndex(_) => Clause::TraArrayIndex,
            TraExp::RecordAttr(_) => Clause::TraRecordAttr,
            TraExp::Value => Clause::TraValue,
        }
    }
}

impl TypExp {
    pub fn clause(&self) -> Clause {
        match self {
            TypExp::Boolean => Clause::TypBoolean,
            TypExp::Number => Clause::TypNumber,
            TypExp::Word => Clause::TypWord,
            TypExp::Named(_) => Clause::TypIdentifier,
            TypExp::ListType(_) => Clause::TypListType,
            TypExp::ArrayType(_) => Clause::TypArrayType,
            TypExp::RecordType { .. } => Clause::TypRecordType,
            TypExp::ExpandRecordType { .. } => Clause::TypExpandRecordType,
            TypExp::ReplaceTransferIn { .. } => Clause::TypReplaceTransferIn,
        }
    }
}

impl Instruction {
    pub fn clause(&self) -> Clause {
        match self {
            Instruction::Assign { .. } => Clause::InsAssign,
            Instruction::Yoke { .. } => Clause::InsYoke,
            Instruction::Skip => Clause::InsSkip,
            Instruction::Call { .. } => Clause::InsCall,
            Instruction::If { .. } => Clause::InsIf,
            Instruction::IfError { .. } => Clause::InsIfError,
            Instruction::While { .. } => Clause::InsWhile,
            Instruction::Seq(..) => Clause::InsSeq,
        }
    }
}

impl Preamble {
    pub fn clause(&self) -> Clause {
        match self {
            Preamble::Proc(_) => Clause::PreProc,
            Preamble::Multi(_) => Clause::PreMulti,
            Preamble::Fun(_) => Clause::PreFun,
            Preamble::TypDef(_) => Clause::PreTypDef,
            Preamble::VarDec(_) => Clause::PreVarDec,
            Preamble::Skip => Clause::PreSkip,
            Preamble::Seq(..) => Clause::PreSeq,
        }
    }
}
