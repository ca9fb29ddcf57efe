//! One check per acceptance criterion. Each returns a short summary on
//! success and the first discrepancy on failure.

use std::collections::BTreeSet;

use lingua::logic::{and_m, not_m, or_m, Bool3};
use lingua::syntax::{
    parse_instruction, parse_program, parse_program_with_coverage, parse_transfer_exp, parse_type_exp,
    print_data_exp, print_program, restore_expression, Clause,
};
use lingua::{
    AbstractError, Body, Composite, Fuel, FuelExhausted, Interpreter, LangType, State,
};
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use super::{composite_of, corpus, error_of, eval, gen, run};

pub type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

// ---- 1. three-valued logic ----

pub fn mccarthy() -> Outcome {
    use Bool3::{Ee, Ff, Tt};
    // the tables exactly as printed, rows are the left argument
    let or_table = [[Tt, Tt, Tt], [Tt, Ff, Ee], [Ee, Ee, Ee]];
    let and_table = [[Tt, Ff, Ee], [Ff, Ff, Ff], [Ee, Ee, Ee]];
    let not_table = [Ff, Tt, Ee];
    let all = [Tt, Ff, Ee];
    let mut checks = 0;
    for (i, a) in all.into_iter().enumerate() {
        ensure(not_m(a) == not_table[i], || format!("not-m {a}"))?;
        checks += 1;
        for (j, b) in all.into_iter().enumerate() {
            ensure(or_m(a, b) == or_table[i][j], || format!("{a} or-m {b}"))?;
            ensure(and_m(a, b) == and_table[i][j], || format!("{a} and-m {b}"))?;
            checks += 2;
            ensure(not_m(or_m(a, b)) == and_m(not_m(a), not_m(b)), || format!("De Morgan or at ({a}, {b})"))?;
            ensure(not_m(and_m(a, b)) == or_m(not_m(a), not_m(b)), || format!("De Morgan and at ({a}, {b})"))?;
            checks += 2;
            for c in all {
                ensure(or_m(or_m(a, b), c) == or_m(a, or_m(b, c)), || format!("or-m associativity ({a}, {b}, {c})"))?;
                ensure(and_m(and_m(a, b), c) == and_m(a, and_m(b, c)), || {
                    format!("and-m associativity ({a}, {b}, {c})")
                })?;
                ensure(and_m(a, or_m(b, c)) == or_m(and_m(a, b), and_m(a, c)), || {
                    format!("and-m over or-m ({a}, {b}, {c})")
                })?;
                ensure(or_m(a, and_m(b, c)) == and_m(or_m(a, b), or_m(a, c)), || {
                    format!("or-m over and-m ({a}, {b}, {c})")
                })?;
                checks += 4;
            }
        }
    }
    ensure(and_m(Ff, Ee) == Ff && and_m(Ee, Ff) == Ee, || "and-m commutativity counterexample".into())?;
    let lhs = and_m(or_m(Tt, Ee), Ff);
    let rhs = or_m(and_m(Tt, Ff), and_m(Ee, Ff));
    ensure(lhs == Ff && rhs == Ee, || "left distributivity counterexample".into())?;
    checks += 2;
    Ok(format!("{checks} identities"))
}

// ---- 2. paper examples ----

fn expect_den(text: &str, want: Result<Composite, AbstractError>) -> Result<(), String> {
    let got = eval(text);
    ensure(got == want, || format!("{text}: got {got:?}, want {want:?}"))
}

fn expect_error(program: &str, word: &str) -> Result<(), String> {
    let got = error_of(program).map(|e| e.word().to_string());
    ensure(got.as_deref() == Some(word), || format!("expected `{word}`, got {got:?} from {program}"))
}

pub fn paper_golden() -> Outcome {
    expect_den("(1 + (1 + 0))", Ok(Composite::number(2)))?;
    expect_den("((1 + (1 + 0)) < 0)", Ok(Composite::boolean(false)))?;
    expect_den("(1 / 0)", Err(AbstractError::DIVISION_BY_ZERO))?;

    let interp = Interpreter::default();
    let all_list = interp.eval_transfer_exp(&parse_transfer_exp("all-list true ee").unwrap(), &State::new()).unwrap();
    let got = all_list.call(&Composite::number(3)).map_err(|e| e.word().to_string());
    ensure(got == Err("list-expected".into()), || format!("all-list on a number: {got:?}"))?;

    let yoke = interp
        .eval_transfer_exp(&parse_transfer_exp("record.price + record.vat < 1000").unwrap(), &State::new())
        .unwrap();
    let bill = composite_of(
        &run("begin-program let r be record-type price as number ee tel ; r := record price <= 800, vat <= 100 ee end-program"),
        "r",
    )
    .ok_or("price record not built")?;
    ensure(yoke.call(&bill) == Ok(Composite::boolean(true)), || "800 + 100 < 1000 should hold".into())?;

    let typ = interp.eval_type_exp(&parse_type_exp("record-type a as number ee").unwrap(), &State::new());
    let want = LangType::plain(Body::record([(lingua::ident::ide("a"), Body::Number)]));
    ensure(typ.as_ref() == Ok(&want), || format!("one-attribute record type: {typ:?}"))?;

    expect_error("begin-program x := 1 end-program", "identifier-not-declared")?;
    expect_error("begin-program let x be number tel ; x := 'one' end-program", "no-coherence")?;
    expect_error("begin-program let x be number with value + 1 tel ; x := 1 end-program", "a-yoke-expected")?;
    expect_error("begin-program let x be number with value < 10 tel ; x := 10 end-program", "yoke-not-satisfied")?;
    Ok("12 examples".into())
}

// ---- 3. restoration ----

/// The colloquial text, the concrete text from the paper, and the
/// canonical print both must reach.
pub const RESTORATIONS: &[(&str, &str, &str)] = &[
    (
        "array [x, x+y, 3*y]",
        "add-to-arr add-to-arr array x ee new x+y ee new 3*y ee",
        "add-to-arr add-to-arr array x ee new (x + y) ee new (3 * y) ee",
    ),
    ("measurement-data.[x+1]", "arr measurement-data at x+1 ee", "arr measurement-data at (x + 1) ee"),
    (
        "measurement-data.[x+1].[y-1]",
        "arr arr measurement-data at x+1 ee at y-1 ee",
        "arr arr measurement-data at (x + 1) ee at y-1 ee",
    ),
    (
        "measurement-data.[x + 1].[y - 1]",
        "arr arr measurement-data at x + 1 ee at y - 1 ee",
        "arr arr measurement-data at (x + 1) ee at (y - 1) ee",
    ),
    (
        "change-arr measurement-data by s <= x, s+1 <= x+y, 3*p <= z - 1 ee",
        "change-arr change-arr change-arr measurement-data at s by x ee at s+1 by x+y ee at 3*p by z - 1 ee",
        "change-arr change-arr change-arr measurement-data at s by x ee at (s + 1) by (x + y) ee at (3 * p) by (z - 1) ee",
    ),
    (
        "add-to-arr measurement-data new [x, x + y, 3*y] ee",
        "add-to-arr add-to-arr add-to-arr measurement-data new x ee new x + y ee new 3*y ee",
        "add-to-arr add-to-arr add-to-arr measurement-data new x ee new (x + y) ee new (3 * y) ee",
    ),
    // the paper prints `x * z` in the result, a slip for `x * y`
    ("x + y + z + x * y", "((x + y) + z) + (x * y)", "(((x + y) + z) + (x * y))"),
];

pub fn restoration() -> Outcome {
    for (colloquial, concrete, canonical) in RESTORATIONS {
        let restored = restore_expression(colloquial).map(|e| print_data_exp(&e)).map_err(|d| d.to_string())?;
        let paper = restore_expression(concrete).map(|e| print_data_exp(&e)).map_err(|d| d.to_string())?;
        ensure(restored == paper, || format!("`{colloquial}` restores to `{restored}`, paper form prints `{paper}`"))?;
        ensure(restored == *canonical, || format!("`{colloquial}` restores to `{restored}`, expected `{canonical}`"))?;
    }
    Ok(format!("{} examples", RESTORATIONS.len()))
}

// ---- 4. round trip ----

pub fn round_trip(cases: u32) -> Outcome {
    runner(cases)
        .run(&gen::program(), |prg| {
            let text = print_program(&prg);
            let back = parse_program(&text).map_err(|d| TestCaseError::fail(format!("{d}\n{text}")))?;
            if back != prg {
                return Err(TestCaseError::fail(format!("tree changed after printing:\n{text}")));
            }
            let again = print_program(&back);
            if again != text {
                return Err(TestCaseError::fail(format!("restore not idempotent:\n{text}\n{again}")));
            }
            Ok(())
        })
        .map(|()| format!("{cases} programs"))
        .map_err(|e| e.to_string())
}

// ---- 5. grammar coverage ----

pub fn coverage() -> Outcome {
    let mut seen = BTreeSet::new();
    let files = corpus();
    for (name, text) in &files {
        let (_, clauses) = parse_program_with_coverage(text).map_err(|d| format!("{name}:{d}"))?;
        seen.extend(clauses);
    }
    let missing: Vec<_> = Clause::ALL.iter().filter(|c| !seen.contains(c)).map(|c| c.name()).collect();
    ensure(missing.is_empty(), || format!("clauses never parsed: {}", missing.join(", ")))?;
    Ok(format!("{} clauses over {} files", Clause::ALL.len(), files.len()))
}

// ---- 6. interpreter programs ----

pub const FACTORIAL: &str = "begin-program
  fun fact (n as number)
    begin-program
      let m be number tel ;
      let r be number tel ;
      if n = 0 then r := 1 else m := n - 1 ; r := n * fact(m) fi
    end-program
    return r as number
  end fun ;
  let x be number tel ;
  let y be number tel ;
  x := 6 ;
  y := fact(x)
end-program";

pub fn parity_program(n: i64) -> String {
    format!(
        "begin-program
  begin multiproc
    proc even (val n as number ref r as boolean)
      begin-program
        let m be number tel ;
        if n = 0 then r := true else m := n - 1 ; call odd (ref r val m) fi
      end-program
    end proc
    proc odd (val n as number ref r as boolean)
      begin-program
        let m be number tel ;
        if n = 0 then r := false else m := n - 1 ; call even (ref r val m) fi
      end-program
    end proc
  end multiproc ;
  let k be number tel ;
  let r be boolean tel ;
  k := {n} ;
  call even (ref r val k)
end-program"
    )
}

pub const SWAP: &str = "begin-program
  proc swap (val ref x, y as number)
    begin-program
      let t be number tel ;
      t := x ; x := y ; y := t
    end-program
  end proc ;
  let a be number tel ;
  let b be number tel ;
  a := 3 ;
  b := 8 ;
  call swap (ref a, b val)
end-program";

pub const YOKE_REJECTS: &str = "begin-program
  let x be number tel ;
  x := 4 ;
  yoke x := value < 5 ;
  x := 7
end-program";

pub fn interpreter_programs() -> Outcome {
    let num = Composite::number;
    let sta = run(FACTORIAL);
    ensure(!sta.is_error() && composite_of(&sta, "y") == Some(num(720)), || format!("fact(6): {sta:?}"))?;
    for n in 0..=6 {
        let sta = run(&parity_program(n));
        let want = Some(Composite::boolean(n % 2 == 0));
        ensure(!sta.is_error() && composite_of(&sta, "r") == want, || format!("parity of {n}: {:?}", sta.error()))?;
    }
    let sta = run(SWAP);
    ensure(composite_of(&sta, "a") == Some(num(8)) && composite_of(&sta, "b") == Some(num(3)), || "swap".into())?;
    ensure(sta.lookup_variable("t").is_none() && !sta.is_error(), || "swap leaked its local".into())?;
    let sta = run(YOKE_REJECTS);
    ensure(sta.error() == Some(&AbstractError::YOKE_NOT_SATISFIED), || format!("yoke: {:?}", sta.error()))?;
    ensure(composite_of(&sta, "x") == Some(num(4)), || "rejected composite was stored".into())?;
    let label = sta.lookup_variable("x").map(|v| v.transfer().label().to_string());
    ensure(label.as_deref() == Some("(value < 5)"), || format!("yoke label {label:?}"))?;
    Ok("factorial, parity 0..6, swap, yoke".into())
}

// ---- 7. transparency ----

pub const TRANSPARENT: &[(&str, &str)] = &[
    ("assign", "a := 1"),
    ("yoke", "yoke a := value < 100"),
    ("skip", "skip"),
    ("call", "call swap (ref a, b val)"),
    ("if", "if true then a := 2 else b := 2 fi"),
    ("while", "while true do skip od"),
    ("seq", "a := 5 ; b := 6"),
];

pub fn transparency() -> Outcome {
    let base = run(SWAP);
    let interp = Interpreter::default();
    let mut checked = 0;
    for err in AbstractError::CATALOGUE {
        let word = err.word();
        let sta = base.clone().load_error(err.clone());
        for (kind, text) in TRANSPARENT {
            let ins = parse_instruction(text).map_err(|d| d.to_string())?;
            let out = interp.exec_instruction(&ins, sta.clone(), &mut Fuel::limited(0));
            ensure(out.as_ref() == Ok(&sta), || format!("{kind} changed a state carrying `{word}`"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} instruction/error pairs"))
}

// ---- 8. frame law ----

pub fn frame_law(cases: u32) -> Outcome {
    let interp = Interpreter::default();
    let errors = std::cell::Cell::new(0u32);
    runner(cases)
        .run(&gen::frame_case(), |case| {
            let before = run(&case.setup);
            if before.is_error() {
                return Err(TestCaseError::fail(format!("setup failed: {:?}", before.error())));
            }
            let call = parse_instruction(&case.call).map_err(|d| TestCaseError::fail(d.to_string()))?;
            let after = interp
                .exec_instruction(&call, before.clone(), &mut Fuel::limited(10_000))
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            if after.is_error() {
                errors.set(errors.get() + 1);
            }
            if after.env != before.env {
                return Err(TestCaseError::fail(format!("environment changed by {}", case.call)));
            }
            let names = |s: &State| s.valuation().map(|(k, _)| k.to_string()).collect::<Vec<_>>();
            if names(&after) != names(&before) {
                return Err(TestCaseError::fail(format!("variables added or removed by {}", case.call)));
            }
            for (ide, val) in before.valuation() {
                if !case.refs.iter().any(|r| r == ide.as_str()) && after.lookup_variable(ide.as_str()) != Some(val) {
                    return Err(TestCaseError::fail(format!("{ide} changed by {}", case.call)));
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{cases} calls, {} ending in an error", errors.get()))
}

// ---- 9. fuel determinism ----

pub fn fuel_determinism() -> Outcome {
    let interp = Interpreter::default();
    let mut total = 0;
    for (name, text) in corpus() {
        let prg = parse_program(&text).map_err(|d| format!("{name}:{d}"))?;
        let mut free = Fuel::unlimited();
        let reference = interp.run_program(&prg, State::new(), &mut free).map_err(|e| format!("{name}: {e}"))?;
        let minimal = free.consumed();
        for extra in [0, 1] {
            let got = interp.run_program(&prg, State::new(), &mut Fuel::limited(minimal + extra));
            ensure(got.as_ref() == Ok(&reference), || format!("{name} differs with fuel {}", minimal + extra))?;
        }
        if minimal > 0 {
            let short = interp.run_program(&prg, State::new(), &mut Fuel::limited(minimal - 1));
            ensure(short == Err(FuelExhausted), || format!("{name} finished with fuel {}", minimal - 1))?;
        }
        total += minimal;
    }
    Ok(format!("{total} steps across the corpus"))
}
