//! The `lingua` command: run, check, restore and dump programs, or work
//! interactively in a REPL.

use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use lingua::syntax::{ast_dump, parse_program, parse_submission, print_instruction, print_program, Ast, DumpFormat};
use lingua::{Fuel, Interpreter, Limits, State};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR_STATE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_FUEL: i32 = 3;
pub const EXIT_IO: i32 = 4;

const DEFAULT_FUEL: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "lingua", version, about = "Run and inspect Lingua programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a program on the empty state and report the final valuation
    Run {
        file: PathBuf,
        #[command(flatten)]
        config: RunArgs,
    },
    /// Parse a program and report diagnostics only
    Check { file: PathBuf },
    /// Print the concrete form of a program
    Restore { file: PathBuf },
    /// Dump the abstract syntax tree
    Ast {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "sexpr")]
        format: Format,
    },
    /// Interactive session against a persistent state
    Repl {
        #[command(flatten)]
        config: RunArgs,
    },
}

#[derive(Debug, Clone, Parser)]
pub struct RunArgs {
    /// Step budget for loops and calls, or `unlimited`
    #[arg(long, value_parser = parse_fuel)]
    pub fuel: Option<FuelSetting>,
    /// Maximal number of digits in a number
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_digits: Option<u64>,
    /// Print every executed instruction on standard error
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Sexpr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuelSetting {
    Limited(u64),
    Unlimited,
}

impl FuelSetting {
    fn fuel(self) -> Fuel {
        match self {
            FuelSetting::Limited(n) => Fuel::limited(n),
            FuelSetting::Unlimited => Fuel::unlimited(),
        }
    }
}

pub fn parse_fuel(s: &str) -> Result<FuelSetting, String> {
    if s == "unlimited" {
        return Ok(FuelSetting::Unlimited);
    }
    s.parse().map(FuelSetting::Limited).map_err(|_| format!("expected a step count or `unlimited`, got `{s}`"))
}

/// The effective run settings after defaults and `LINGUA_FUEL`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub fuel: FuelSetting,
    pub limits: Limits,
    pub trace: bool,
}

impl RunConfig {
    pub fn resolve(args: &RunArgs, env_fuel: Option<&str>) -> Result<RunConfig, String> {
        let fuel = match (args.fuel, env_fuel) {
            (Some(f), _) => f,
            (None, Some(s)) => parse_fuel(s.trim()).map_err(|e| format!("LINGUA_FUEL: {e}"))?,
            (None, None) => FuelSetting::Limited(DEFAULT_FUEL),
        };
        let mut limits = Limits::default();
        if let Some(n) = args.max_digits {
            limits = limits.with_max_digits(n).map_err(|e| e.to_string())?;
        }
        Ok(RunConfig { fuel, limits, trace: args.trace })
    }

    fn interpreter(&self) -> Interpreter {
        let interp = Interpreter::new(self.limits.clone());
        if !self.trace {
            return interp;
        }
        interp.with_tracer(Arc::new(|ins, _| {
            let text = print_instruction(ins);
            eprintln!("trace: {}", text.lines().next().unwrap_or_default());
        }))
    }
}

/// Runs one command and returns its exit status.
pub fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let env_fuel = std::env::var("LINGUA_FUEL").ok();
    let resolve = |args: &RunArgs, err: &mut dyn Write| match RunConfig::resolve(args, env_fuel.as_deref()) {
        Ok(c) => Some(c),
        Err(e) => {
            let _ = writeln!(err, "lingua: {e}");
            None
        }
    };
    match cli.command {
        Command::Run { file, config } => match resolve(&config, err) {
            Some(config) => cmd_run(&file, &config, out, err),
            None => EXIT_IO,
        },
        Command::Check { file } => cmd_check(&file, err),
        Command::Restore { file } => cmd_restore(&file, out, err),
        Command::Ast { file, format } => cmd_ast(&file, format, out, err),
        Command::Repl { config } => match resolve(&config, err) {
            Some(config) => repl(&config, &mut io::stdin().lock(), out),
            None => EXIT_IO,
        },
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<lingua::syntax::Program, i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(err, "{}: {e}", path.display());
        EXIT_IO
    })?;
    parse_program(&text).map_err(|d| {
        let _ = writeln!(err, "{}:{d}", path.display());
        EXIT_PARSE
    })
}

/// One line per variable, sorted by name, then the register.
pub fn report(sta: &State) -> String {
    let mut s = String::new();
    for (ide, val) in sta.valuation() {
        s.push_str(&format!("{ide} = {val}\n"));
    }
    s.push_str(&format!("register: {}\n", sta.register()));
    s
}

pub fn cmd_run(path: &Path, config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let program = match load(path, err) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let mut fuel = config.fuel.fuel();
    match config.interpreter().run_program(&program, State::new(), &mut fuel) {
        Err(e) => {
            let _ = writeln!(err, "{}: {e} after {} steps", path.display(), fuel.consumed());
            EXIT_FUEL
        }
        Ok(sta) => {
            let _ = out.write_all(report(&sta).as_bytes());
            if sta.is_error() {
                EXIT_ERROR_STATE
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn cmd_check(path: &Path, err: &mut dyn Write) -> i32 {
    match load(path, err) {
        Ok(_) => EXIT_OK,
        Err(code) => code,
    }
}

pub fn cmd_restore(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match load(path, err) {
        Ok(p) => {
            let _ = out.write_all(print_program(&p).as_bytes());
            EXIT_OK
        }
        Err(code) => code,
    }
}

pub fn cmd_ast(path: &Path, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let format = match format {
        Format::Json => DumpFormat::Json,
        Format::Sexpr => DumpFormat::Sexpr,
    };
    match load(path, err) {
        Ok(p) => {
            let _ = writeln!(out, "{}", ast_dump(&Ast::Program(p), format));
            EXIT_OK
        }
        Err(code) => code,
    }
}

const REPL_HELP: &str = "\
Enter declarations and instructions separated by `;`.
  :state   show the valuation and the register
  :ok      reset the register to OK
  :help    show this help
  :quit    leave the session";

/// Reads submissions from `input` until `:quit` or end of input. A
/// submission that stops in the middle of a construct continues on the
/// next line.
pub fn repl(config: &RunConfig, input: &mut dyn BufRead, out: &mut dyn Write) -> i32 {
    let interp = config.interpreter();
    let mut sta = State::new();
    let mut pending = String::new();
    loop {
        let _ = write!(out, "{}", if pending.is_empty() { "lingua> " } else { "   ...> " });
        let _ = out.flush();
        let mut line = String::new();
        match input.read_line(&mut line) {
            Ok(0) => return EXIT_OK,
            Ok(_) => {}
            Err(e) => {
                let _ = writeln!(out, "error: {e}");
                return EXIT_IO;
            }
        }
        if pending.is_empty() {
            match line.trim() {
                "" => continue,
                ":quit" | ":q" => return EXIT_OK,
                ":help" | ":h" => {
                    let _ = writeln!(out, "{REPL_HELP}");
                    continue;
                }
                ":state" => {
                    let _ = write!(out, "{}", report(&sta));
                    continue;
                }
                ":ok" => {
                    sta = sta.clear_error();
                    let _ = writeln!(out, "register: OK");
                    continue;
                }
                cmd if cmd.starts_with(':') => {
                    let _ = writeln!(out, "unknown command `{cmd}`; try :help");
                    continue;
                }
                _ => {}
            }
        }
        pending.push_str(&line);
        let submission = match parse_submission(&pending) {
            Ok(s) => s,
            Err(d) if d.at_end && !line.trim().is_empty() => continue,
            Err(d) => {
                let _ = writeln!(out, "<input>:{d}");
                pending.clear();
                continue;
            }
        };
        pending.clear();
        let mut fuel = config.fuel.fuel();
        let mut next = sta.clone();
        if let Some(pam) = &submission.preamble {
            next = interp.exec_preamble(pam, next);
        }
        if let Some(ins) = &submission.instruction {
            match interp.exec_instruction(ins, next, &mut fuel) {
                Ok(s) => next = s,
                Err(e) => {
                    let _ = writeln!(out, "{e} after {} steps; state unchanged", fuel.consumed());
                    continue;
                }
            }
        }
        if let Some(e) = next.error() {
            let _ = writeln!(out, "error: {e}");
        }
        sta = next;
    }
}
