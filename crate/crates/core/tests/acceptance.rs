//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::time::{Duration, Instant};

use common::criteria::{self, Outcome};

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Option<Duration>,
    check: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "three-valued logic tables and laws", budget: Some(Duration::from_secs(1)), check: criteria::mccarthy },
    Criterion { id: 2, title: "paper golden examples", budget: None, check: criteria::paper_golden },
    Criterion { id: 3, title: "restoration golden examples", budget: None, check: criteria::restoration },
    Criterion { id: 4, title: "print/parse round trip", budget: Some(Duration::from_secs(30)), check: || criteria::round_trip(1000) },
    Criterion { id: 5, title: "grammar coverage", budget: None, check: criteria::coverage },
    Criterion { id: 6, title: "interpreter programs", budget: Some(Duration::from_secs(4)), check: criteria::interpreter_programs },
    Criterion { id: 7, title: "error-state transparency", budget: None, check: criteria::transparency },
    Criterion { id: 8, title: "procedure frame law", budget: None, check: || criteria::frame_law(100) },
    Criterion { id: 9, title: "fuel determinism", budget: None, check: criteria::fuel_determinism },
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(budget)) if elapsed > budget => Err(format!("took {elapsed:?}, budget {budget:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {}: {detail} ({elapsed:.2?})", c.id, c.title),
            Err(why) => {
                println!("FAIL {} {}: {why}", c.id, c.title);
                failed.push(c.id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
