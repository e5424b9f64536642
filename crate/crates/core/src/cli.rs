//! The `tlknot` command-line front end.
//!
//! Every command is a pure function of its arguments returning a
//! [`CommandOutcome`]; the binary only forwards streams and the exit code.

use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::braid::BraidWord;
use crate::bracket::{self, Evaluator};
use crate::error::Error;
use crate::fibrep::{self, ModelParams, RightEnd};
use crate::laurent::LaurentPoly;
use crate::tl;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `n` accepted by `verify --module tl`.
pub const TL_VERIFY_CAP: usize = 7;
/// Largest `n` accepted by `dims`.
pub const DIMS_CAP: usize = 80;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        Self { exit_code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { exit_code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }

    fn checked(pass: bool, stdout: String) -> Self {
        Self { exit_code: if pass { EXIT_OK } else { EXIT_CHECK_FAILED }, stdout, stderr: String::new() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "tlknot", version, about = "Bracket and Jones polynomials of braid closures; Fibonacci-model braid matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kauffman bracket of a braid closure.
    Bracket {
        #[command(flatten)]
        braid: BraidArgs,
        /// Print the writhe-normalized invariant instead of the bracket.
        #[arg(long)]
        normalized: bool,
    },
    /// Jones polynomial of a braid closure.
    Jones {
        #[command(flatten)]
        braid: BraidArgs,
    },
    /// Evaluate the bracket at A = e^{i theta}.
    Eval {
        #[command(flatten)]
        braid: BraidArgs,
        /// Phase theta, e.g. 0.3, pi/4 or 3pi/5.
        #[arg(long, value_parser = parse_phase)]
        phase: f64,
        #[arg(long)]
        normalized: bool,
    },
    /// Matrix of a Temperley-Lieb or braid generator on Fibonacci sequences.
    FibMatrix {
        /// Sequence length (the algebra is TL_{n+2}).
        #[arg(long)]
        n: usize,
        /// Generator index; negative values select the inverse braid generator.
        #[arg(long = "gen", allow_negative_numbers = true)]
        generator: i32,
        /// Emit the braid generator rho(s_i) instead of U_i.
        #[arg(long)]
        braid: bool,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        json: bool,
    },
    /// Relation report for the Fibonacci model.
    FibVerify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        json: bool,
    },
    /// Relation suite for the diagram algebra (exact) or the Fibonacci model.
    Verify {
        #[arg(long, value_enum)]
        module: VerifyModule,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        json: bool,
    },
    /// Table of process-space dimensions f_{n+1}.
    Dims {
        #[arg(long)]
        max: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct BraidArgs {
    #[arg(long)]
    strands: usize,
    /// Signed generator indices, e.g. "1 -2 1".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    word: String,
    /// Force the state-sum evaluator.
    #[arg(long, conflicts_with = "both")]
    oracle: bool,
    /// Run both evaluators and report agreement.
    #[arg(long)]
    both: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Sign of the loop value: + for phi, - for -phi.
    #[arg(long = "delta-sign", default_value = "+", action = ArgAction::Set, allow_hyphen_values = true, value_parser = parse_sign)]
    delta_sign: bool,
    /// Explicit loop value, overriding the sign.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Phase of A, e.g. 3pi/5.
    #[arg(long, value_parser = parse_phase, allow_hyphen_values = true)]
    phase: Option<f64>,
    /// Use the literal right-end rule (U_{n+1}|...P*> = 0).
    #[arg(long)]
    literal_right_end: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyModule {
    Tl,
    Fib,
}

fn parse_sign(s: &str) -> Result<bool, String> {
    match s {
        "+" | "plus" => Ok(false),
        "-" | "minus" => Ok(true),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

/// Parses decimal radians or forms like `pi`, `-pi/4`, `3pi/5`, `2*pi`.
pub fn parse_phase(s: &str) -> Result<f64, String> {
    let text = s.trim();
    let Some(at) = text.find("pi") else {
        return text.parse::<f64>().map_err(|_| format!("invalid phase {s:?}"));
    };
    let head = text[..at].trim_end_matches('*');
    let tail = &text[at + 2..];
    let coeff = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| format!("invalid phase {s:?}"))?,
    };
    let denom = match tail {
        "" => 1.0,
        t => t
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(|| format!("invalid phase {s:?}"))?,
    };
    Ok(coeff * PI / denom)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandOutcome::ok(text)
                }
                _ => CommandOutcome { exit_code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match cli.command {
        Command::Bracket { braid, normalized } => cmd_bracket(&braid, normalized),
        Command::Jones { braid } => cmd_jones(&braid),
        Command::Eval { braid, phase, normalized } => cmd_eval(&braid, phase, normalized),
        Command::FibMatrix { n, generator, braid, model, json } => {
            cmd_fib_matrix(n, generator, braid, &model, json)
        }
        Command::FibVerify { n, tol, model, json } => cmd_fib_verify(n, tol, &model, json),
        Command::Verify { module: VerifyModule::Fib, n, tol, model, json } => {
            cmd_fib_verify(n, tol, &model, json)
        }
        Command::Verify { module: VerifyModule::Tl, n, json, .. } => cmd_tl_verify(n, json),
        Command::Dims { max, json } => cmd_dims(max, json),
    }
}

fn parse_braid(args: &BraidArgs) -> Result<BraidWord, CommandOutcome> {
    BraidWord::parse(&args.word, args.strands).map_err(CommandOutcome::usage)
}

fn evaluate(b: &BraidWord, evaluator: Evaluator, normalized: bool) -> Result<LaurentPoly, Error> {
    if normalized {
        bracket::normalized_bracket_with(b, evaluator)
    } else {
        evaluator.bracket(b)
    }
}

fn evaluator_name(e: Evaluator) -> &'static str {
    match e {
        Evaluator::TemperleyLieb => "temperley-lieb",
        Evaluator::StateSum => "state-sum",
    }
}

/// Runs the selected evaluator(s); `Err` carries a finished outcome.
fn computed(
    args: &BraidArgs,
    b: &BraidWord,
    normalized: bool,
) -> Result<(LaurentPoly, Option<LaurentPoly>), CommandOutcome> {
    let primary = if args.oracle { Evaluator::StateSum } else { Evaluator::TemperleyLieb };
    let value = evaluate(b, primary, normalized).map_err(CommandOutcome::usage)?;
    let other = if args.both {
        Some(evaluate(b, Evaluator::StateSum, normalized).map_err(CommandOutcome::usage)?)
    } else {
        None
    };
    Ok((value, other))
}

fn cmd_bracket(args: &BraidArgs, normalized: bool) -> CommandOutcome {
    let b = match parse_braid(args) {
        Ok(b) => b,
        Err(o) => return o,
    };
    let (value, oracle) = match computed(args, &b, normalized) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let evaluator = if args.oracle { Evaluator::StateSum } else { Evaluator::TemperleyLieb };
    let quantity = if normalized { "normalized" } else { "bracket" };
    render_polys(args, &b, quantity, "A", &value, oracle.as_ref(), evaluator, |p| p.to_string(), |p| {
        json!(p)
    })
}

fn cmd_jones(args: &BraidArgs) -> CommandOutcome {
    let b = match parse_braid(args) {
        Ok(b) => b,
        Err(o) => return o,
    };
    let (value, oracle) = match computed(args, &b, true) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let evaluator = if args.oracle { Evaluator::StateSum } else { Evaluator::TemperleyLieb };
    render_polys(
        args,
        &b,
        "jones",
        "q = t^(1/4)",
        &value,
        oracle.as_ref(),
        evaluator,
        |p| p.jones_substitute().to_string(),
        |p| json!(p.jones_substitute()),
    )
}

#[allow(clippy::too_many_arguments)]
fn render_polys(
    args: &BraidArgs,
    b: &BraidWord,
    quantity: &str,
    variable: &str,
    value: &LaurentPoly,
    oracle: Option<&LaurentPoly>,
    evaluator: Evaluator,
    text: impl Fn(&LaurentPoly) -> String,
    to_json: impl Fn(&LaurentPoly) -> serde_json::Value,
) -> CommandOutcome {
    match oracle {
        None if args.json => CommandOutcome::ok(format!(
            "{}\n",
            json!({
                "braid": b,
                "quantity": quantity,
                "variable": variable,
                "evaluator": evaluator_name(evaluator),
                "polynomial": to_json(value),
            })
        )),
        None => CommandOutcome::ok(format!("{}\n", text(value))),
        Some(oracle) => {
            let agree = oracle == value;
            let out = if args.json {
                format!(
                    "{}\n",
                    json!({
                        "braid": b,
                        "quantity": quantity,
                        "variable": variable,
                        "temperley-lieb": to_json(value),
                        "state-sum": to_json(oracle),
                        "agree": agree,
                    })
                )
            } else {
                format!("temperley-lieb: {}\nstate-sum: {}\nagree: {agree}\n", text(value), text(oracle))
            };
            CommandOutcome::checked(agree, out)
        }
    }
}

fn cmd_eval(args: &BraidArgs, phase: f64, normalized: bool) -> CommandOutcome {
    let b = match parse_braid(args) {
        Ok(b) => b,
        Err(o) => return o,
    };
    let (value, oracle) = match computed(args, &b, normalized) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let z = value.eval(phase);
    let agree = oracle.as_ref().map(|o| o == &value);
    let out = if args.json {
        let mut doc = json!({"braid": b, "phase": phase, "value": [clean(z.re), clean(z.im)]});
        if let Some(agree) = agree {
            doc["agree"] = json!(agree);
        }
        format!("{doc}\n")
    } else {
        let mut s = format!("{}\n", format_complex(z.re, z.im));
        if let Some(agree) = agree {
            let _ = writeln!(s, "agree: {agree}");
        }
        s
    };
    CommandOutcome::checked(agree.unwrap_or(true), out)
}

fn resolve_model(model: &ModelArgs) -> Result<ModelParams, Error> {
    match (model.delta, model.phase) {
        (Some(delta), phase) => ModelParams::new(delta, phase.unwrap_or(3.0 * PI / 5.0)),
        (None, Some(phase)) => {
            let sign = if model.delta_sign { -1.0 } else { 1.0 };
            ModelParams::new(sign * fibrep::phi(), phase)
        }
        (None, None) => Ok(ModelParams::fibonacci(model.delta_sign)),
    }
}

fn right_end(model: &ModelArgs) -> RightEnd {
    if model.literal_right_end {
        RightEnd::Literal
    } else {
        RightEnd::Uniform
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < 5e-13 {
        0.0
    } else {
        x
    }
}

fn format_complex(re: f64, im: f64) -> String {
    format!("{:.12}{:+.12}i", clean(re), clean(im))
}

fn cmd_fib_matrix(n: usize, generator: i32, braid: bool, model: &ModelArgs, json: bool) -> CommandOutcome {
    let params = match resolve_model(model) {
        Ok(p) => p,
        Err(e) => return CommandOutcome::usage(e),
    };
    if generator < 0 && !braid {
        return CommandOutcome::usage("negative generator indices require --braid");
    }
    let m = if braid {
        if model.literal_right_end {
            return CommandOutcome::usage("--literal-right-end applies to U_i only");
        }
        fibrep::braid_generator_matrix(n, generator, &params)
    } else {
        fibrep::tl_generator_matrix_with(n, generator as usize, &params, right_end(model))
    };
    let m = match m {
        Ok(m) => m,
        Err(e) => return CommandOutcome::usage(e),
    };
    let basis: Vec<String> = match fibrep::FibBasis::new(n) {
        Ok(b) => b.sequences().iter().map(|s| s.to_string()).collect(),
        Err(e) => return CommandOutcome::usage(e),
    };
    if json {
        let rows: Vec<Vec<[f64; 2]>> = m
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| [clean(re), clean(im)]).collect())
            .collect();
        let doc = json!({
            "n": n,
            "generator": generator,
            "braid": braid,
            "delta": params.delta,
            "phase": params.a_phase,
            "basis": basis,
            "entries": rows,
        });
        return CommandOutcome::ok(format!("{doc}\n"));
    }
    let name = match (braid, generator < 0) {
        (true, true) => format!("rho(s_{}^-1)", -generator),
        (true, false) => format!("rho(s_{generator})"),
        (false, _) => format!("U_{generator}"),
    };
    let mut out = format!("# {name} on sequences of length {n}, dim {}\n# basis: {}\n", m.dim(), basis.join(" "));
    for row in m.entries.row_iter() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| if braid { format_complex(z.re, z.im) } else { format!("{:.12}", clean(z.re)) })
            .collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    CommandOutcome::ok(out)
}

fn cmd_fib_verify(n: usize, tol: f64, model: &ModelArgs, json: bool) -> CommandOutcome {
    let params = match resolve_model(model) {
        Ok(p) => p,
        Err(e) => return CommandOutcome::usage(e),
    };
    let report = match fibrep::verify_model_with(n, &params, tol, right_end(model)) {
        Ok(r) => r,
        Err(e) => return CommandOutcome::usage(e),
    };
    let out = if json {
        format!("{}\n", serde_json::to_string(&report).expect("report serializes"))
    } else {
        report.to_string()
    };
    CommandOutcome::checked(report.all_pass(), out)
}

fn cmd_tl_verify(n: usize, json: bool) -> CommandOutcome {
    if n == 0 || n > TL_VERIFY_CAP {
        return CommandOutcome::usage(Error::OutOfRange { what: "n", value: n, min: 1, max: TL_VERIFY_CAP });
    }
    let checks = match tl::verify_relations(n) {
        Ok(c) => c,
        Err(e) => return CommandOutcome::usage(e),
    };
    let pass = checks.iter().all(|c| c.failures == 0);
    let out = if json {
        format!("{}\n", json!({"n": n, "checks": checks, "pass": pass}))
    } else {
        let mut s = format!("Temperley-Lieb diagram algebra TL_{n} (exact)\n");
        for c in &checks {
            let _ = writeln!(
                s,
                "{:<28} {:>8} checked {:>6} failed  {}",
                c.relation,
                c.checked,
                c.failures,
                if c.failures == 0 { "pass" } else { "FAIL" }
            );
        }
        s
    };
    CommandOutcome::checked(pass, out)
}

fn cmd_dims(max: usize, json: bool) -> CommandOutcome {
    if max == 0 || max > DIMS_CAP {
        return CommandOutcome::usage(Error::OutOfRange { what: "max", value: max, min: 1, max: DIMS_CAP });
    }
    if json {
        let rows: Vec<_> = (1..=max).map(|n| json!({"n": n, "dim": fibrep::fib_dim(n)})).collect();
        return CommandOutcome::ok(format!("{}\n", json!(rows)));
    }
    let mut s = String::from("n dim\n");
    for n in 1..=max {
        let _ = writeln!(s, "{n} {}", fibrep::fib_dim(n));
    }
    CommandOutcome::ok(s)
}
