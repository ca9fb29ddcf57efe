#![allow(dead_code)]

pub mod criteria;
pub mod gen;

use std::path::PathBuf;

use lingua::syntax::{parse_data_exp, parse_program};
use lingua::{AbstractError, Composite, Den, Fuel, Interpreter, State};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("corpus")
}

/// Every corpus program as (file name, text), sorted by name.
pub fn corpus() -> Vec<(String, String)> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("corpus entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "lng"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&p).expect("readable corpus file");
            (name, text)
        })
        .collect()
}

pub fn run(text: &str) -> State {
    run_with(text, &mut Fuel::unlimited())
}

pub fn run_with(text: &str, fuel: &mut Fuel) -> State {
    let p = parse_program(text).unwrap_or_else(|d| panic!("{d}\n{text}"));
    Interpreter::default().run_program(&p, State::new(), fuel).expect("terminates")
}

pub fn eval(text: &str) -> Den {
    let e = parse_data_exp(text).unwrap_or_else(|d| panic!("{d}"));
    Interpreter::default().eval_data_exp(&e, &State::new(), &mut Fuel::unlimited()).expect("terminates")
}

pub fn error_of(text: &str) -> Option<AbstractError> {
    run(text).error().cloned()
}

pub fn composite_of(sta: &State, var: &str) -> Option<Composite> {
    sta.lookup_variable(var).and_then(|v| v.composite())
}
