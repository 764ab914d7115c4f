//! `cl2` command-line calculator.
//!
//! Exit codes: 0 success, 1 parse error, 2 domain error (including a failed
//! `--verify` check), 3 usage error.

mod args;
mod commands;

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use cl2::textio::SCHEMA_VERSION;
use cl2::{RootMode, Tolerances};
use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Map, Value};

use args::{Cli, Command, ModeArg};
use commands::{Ctx, Outcome, RootsArgs};

const EXIT_USAGE: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    ExitCode::from(run(&cli))
}

fn usage(message: &str) -> u8 {
    let _ = writeln!(io::stderr(), "error: {message}");
    EXIT_USAGE
}

fn run(cli: &Cli) -> u8 {
    let g = &cli.global;
    let tol = match g.tol {
        None => Tolerances::default(),
        Some(t) => match Tolerances::default().with_tau_class(t) {
            Ok(tol) => tol,
            Err(e) => return usage(&e.to_string()),
        },
    };
    let ctx = Ctx { tol, verify: g.verify };

    if !g.stdin {
        if let Some(name) = missing_positional(&cli.command) {
            return usage(&format!("missing <{name}> (or pass --stdin)"));
        }
        let (name, input, outcome) = dispatch(&cli.command, None, &ctx);
        return emit(name, input, outcome, g.json, None);
    }

    let mut worst = 0;
    for (index, line) in io::stdin().lock().lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => return usage(&format!("cannot read standard input: {e}")),
        };
        if line.trim().is_empty() {
            continue;
        }
        let (name, input, outcome) = dispatch(&cli.command, Some(&line), &ctx);
        worst = worst.max(emit(name, input, outcome, g.json, Some(index + 1)));
    }
    worst
}

fn missing_positional(command: &Command) -> Option<&'static str> {
    match command {
        Command::Classify { expr }
        | Command::Eval { expr }
        | Command::Exp { expr }
        | Command::Pow { expr, .. }
        | Command::Roots { expr, .. } => expr.is_none().then_some("EXPR"),
        Command::Verify { a, w, .. } => match (a, w) {
            (None, _) => Some("A"),
            (_, None) => Some("W"),
            _ => None,
        },
    }
}

/// Runs one command. `line` replaces the positional expression in batch mode.
fn dispatch(command: &Command, line: Option<&str>, ctx: &Ctx) -> (&'static str, Value, Outcome) {
    let pick = |positional: &Option<String>| line.or(positional.as_deref()).unwrap_or_default().to_string();
    match command {
        Command::Classify { expr } => {
            let e = pick(expr);
            ("classify", json!({"expr": e}), commands::classify_cmd(&e, ctx))
        }
        Command::Eval { expr } => {
            let e = pick(expr);
            ("eval", json!({"expr": e}), commands::eval(&e, ctx))
        }
        Command::Exp { expr } => {
            let e = pick(expr);
            ("exp", json!({"expr": e}), commands::exp_cmd(&e, ctx))
        }
        Command::Pow { n, expr } => {
            let e = pick(expr);
            ("pow", json!({"n": n, "expr": e}), commands::pow_cmd(*n, &e, ctx))
        }
        Command::Roots {
            n,
            expr,
            mode,
            eps,
            strict_empty,
        } => {
            let e = pick(expr);
            let (mode, mode_name) = match mode {
                ModeArg::Paper => (RootMode::PaperFaithful, "paper"),
                ModeArg::Complete => (RootMode::Complete, "complete"),
            };
            let mut input = json!({"n": n, "expr": e, "mode": mode_name});
            if let Some(eps) = eps {
                input["eps"] = Value::from(eps.as_str());
            }
            let a = RootsArgs {
                n: *n,
                expr: &e,
                mode,
                eps: eps.as_deref(),
                strict_empty: *strict_empty,
            };
            ("roots", input, commands::roots_cmd(&a, ctx))
        }
        Command::Verify { n, a, w } => {
            let (a, w) = match line {
                Some(l) => match l.split_once(';') {
                    Some((a, w)) => (a.trim().to_string(), w.trim().to_string()),
                    None => (l.to_string(), String::new()),
                },
                None => (pick(a), pick(w)),
            };
            let input = json!({"n": n, "a": a, "w": w});
            ("verify", input, commands::verify_cmd(*n, &a, &w, ctx))
        }
    }
}

fn emit(command: &str, input: Value, outcome: Outcome, as_json: bool, line: Option<usize>) -> u8 {
    let prefix = line.map(|l| format!("line {l}: ")).unwrap_or_default();
    match outcome {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if as_json {
                let mut doc = Map::new();
                doc.insert("v".into(), Value::from(SCHEMA_VERSION));
                doc.insert("command".into(), Value::from(command));
                doc.insert("input".into(), input);
                doc.insert("result".into(), out.result);
                doc.extend(out.extra);
                let _ = writeln!(stdout, "{}", Value::Object(doc));
            } else {
                let _ = write!(stdout, "{}", out.text);
            }
            let _ = stdout.flush();
            if out.code != 0 {
                let _ = writeln!(io::stderr(), "{prefix}error: oracle check failed");
            }
            out.code
        }
        Err(f) => {
            let _ = writeln!(io::stderr(), "{prefix}error: {}", f.message);
            f.code
        }
    }
}
