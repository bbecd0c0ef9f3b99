//! The `p1moduli` command line.

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::DEFAULT_FACTOR_BITS;
use crate::conic::{find_point_bounded, hasse_solvable_bounded};
use crate::construct::{gen_counterexample, hyperelliptic_branch_analysis, CounterexampleSpec, DEFAULT_MAX_RETRIES};
use crate::decide::{analyze, DecideOptions, Outcome};
use crate::divisor::pgl2_equivalent;
use crate::error::{Error, Result};
use crate::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "p1moduli", version, about = "Fields of moduli of divisors on the projective line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Compact single-line JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Bit size above which integers are not factored.
    #[arg(long = "factor-bound", global = true, default_value_t = DEFAULT_FACTOR_BITS)]
    pub factor_bound: u64,
    /// Append wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct InputArg {
    /// JSON payload file; `-` or absent reads stdin.
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a divisor descends to its field of moduli.
    Analyze(InputArg),
    /// Search for a Möbius map between two divisors: `{"first": D1, "second": D2}`.
    Equivalence(InputArg),
    /// Local solvability and a point of a ternary form: `{"form": [6 rationals]}`.
    Conic(InputArg),
    /// Generate a divisor that is not defined over its field of moduli.
    #[command(allow_negative_numbers = true)]
    Counterexample {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-retries", default_value_t = DEFAULT_MAX_RETRIES)]
        max_retries: usize,
    },
    /// Analyze a hyperelliptic curve by its branch divisor:
    /// `{"branch": D, "odd_infinity": bool}`.
    Hyperelliptic(InputArg),
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

fn read_input(arg: &InputArg) -> Result<Value> {
    let text = match arg.input.as_deref() {
        None | Some("-") => std::io::read_to_string(std::io::stdin())
            .map_err(|e| Error::Schema { path: "<stdin>".into(), message: e.to_string() })?,
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Schema { path: path.to_string(), message: e.to_string() })?,
    };
    parse_payload(&text)
}

pub fn parse_payload(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Schema {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn exit_for(e: &Error) -> i32 {
    if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_INPUT
    }
}

/// Runs one command on an already-parsed payload.
pub fn dispatch(cmd: &Command, payload: Option<&Value>, factor_bits: u64) -> Result<(Value, i32)> {
    let opts = DecideOptions { factor_bits };
    let need = || payload.ok_or_else(|| Error::Schema { path: String::new(), message: "missing payload".into() });
    match cmd {
        Command::Analyze(_) => {
            let d = json::divisor_from_json(need()?, "")?;
            let v = analyze(&d, &opts)?.verdict;
            let code = if v.outcome == Outcome::UnsupportedBase { EXIT_UNSUPPORTED } else { EXIT_OK };
            let mut out = json::verdict_to_json(&v);
            out["tower"] = json::tower_to_json(d.tower());
            Ok((out, code))
        }
        Command::Equivalence(_) => {
            let p = need()?;
            let d1 = json::divisor_from_json(p.get("first").unwrap_or(&Value::Null), "first")?;
            let d2 = json::divisor_from_json(p.get("second").unwrap_or(&Value::Null), "second")?;
            let w = pgl2_equivalent(&d1, &d2)?;
            Ok((json!({"equivalent": w.is_some(), "witness": w.as_ref().map(json::mobius_to_json)}), EXIT_OK))
        }
        Command::Conic(_) => {
            let p = need()?;
            let f = json::form_from_json(p.get("form").unwrap_or(&Value::Null), "form")?;
            if !f.is_nonsingular() {
                return Err(Error::SingularForm);
            }
            let r = hasse_solvable_bounded(&f, factor_bits)?;
            let pt = if r.solvable { find_point_bounded(&f, factor_bits)? } else { None };
            Ok((json::hasse_to_json(&r, pt.as_ref()), EXIT_OK))
        }
        Command::Counterexample { a, b, n, seed, max_retries } => {
            let spec = CounterexampleSpec { a: *a, b: *b, n: *n, seed: *seed };
            let (data, v) = gen_counterexample(&spec, *max_retries)?;
            let out = json!({
                "divisor": json::divisor_to_json(&data.d),
                "verdict": json::verdict_to_json(&v),
                "cover": json::cover_to_json(&data),
            });
            Ok((out, EXIT_OK))
        }
        Command::Hyperelliptic(_) => {
            let p = need()?;
            let d = json::divisor_from_json(p.get("branch").unwrap_or(&Value::Null), "branch")?;
            let odd = match p.get("odd_infinity") {
                None => false,
                Some(Value::Bool(b)) => *b,
                Some(_) => return Err(Error::Schema { path: "odd_infinity".into(), message: "expected a boolean".into() }),
            };
            let r = hyperelliptic_branch_analysis(&d, odd)?;
            let code = if r.verdict.outcome == Outcome::UnsupportedBase { EXIT_UNSUPPORTED } else { EXIT_OK };
            Ok((json::hyperelliptic_to_json(&r), code))
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("serializable");
    s.push('\n');
    s
}

pub fn execute(cli: &Cli) -> Output {
    let start = Instant::now();
    let input = match &cli.command {
        Command::Analyze(a) | Command::Equivalence(a) | Command::Conic(a) | Command::Hyperelliptic(a) => Some(a),
        Command::Counterexample { .. } => None,
    };
    let result = input
        .map(read_input)
        .transpose()
        .and_then(|payload| dispatch(&cli.command, payload.as_ref(), cli.factor_bound));
    let (mut value, code) = match result {
        Ok(r) => r,
        Err(e) => (json::error_to_json(&e), exit_for(&e)),
    };
    if cli.timings {
        value["timings"] = json!({"total_ms": start.elapsed().as_secs_f64() * 1e3});
    }
    Output { code, stdout: render(&value, cli.pretty) }
}

/// Parses arguments and runs; usage errors exit with the input-error code.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            Output { code, stdout: e.render().to_string() }
        }
    }
}
