use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cl2", version, about = "Calculator for the Clifford algebra Cl2")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Print one JSON document per result (schema cl2/1)
    #[arg(long, global = true)]
    pub json: bool,

    /// Relative classification tolerance
    #[arg(long, global = true, value_name = "FLOAT")]
    pub tol: Option<f64>,

    /// Re-check every reported result with the brute-force oracles
    #[arg(long, global = true)]
    pub verify: bool,

    /// Read one expression per line from standard input instead of the
    /// positional expression (verify: `<a> ; <w>` per line)
    #[arg(long, global = true)]
    pub stdin: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sector label, quadratic invariants and polar form
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Evaluate an expression
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Closed-form exponential
    Exp {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Integer power by De Moivre's formula
    Pow {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// All nth roots
    Roots {
        n: i64,
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Complete)]
        mode: ModeArg,
        /// Instantiate root families at this unit vector
        #[arg(long, allow_hyphen_values = true, value_name = "EXPR")]
        eps: Option<String>,
        /// Treat an empty root set as an error
        #[arg(long)]
        strict_empty: bool,
    },
    /// Check w^n = a with the oracle
    Verify {
        n: u64,
        #[arg(allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(allow_hyphen_values = true)]
        w: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Paper,
    Complete,
}
