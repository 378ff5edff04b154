//! `cuntz`: command-line access to the word algebra of `O_n`.
//!
//! Exit codes: 0 affirmative, 1 negative verdict or failed property,
//! 2 undecided, 3 usage or parse error.

mod commands;
mod search;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cuntz_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "cuntz",
    version,
    about = "Exact computations in the Cuntz algebra O_n"
)]
pub struct Cli {
    /// Number of generators.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: u32,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the normal form of an expression.
    Normalize { expr: String },
    /// Multiply expressions left to right.
    Mul {
        #[arg(required = true, num_args = 2..)]
        exprs: Vec<String>,
    },
    /// Print the adjoint.
    Adjoint { expr: String },
    /// Exit 0 if the two expressions are equal, 1 otherwise.
    Eq { left: String, right: String },
    /// Exit 0 if the expression is unitary.
    Unitary { expr: String },
    /// Membership in F, F<k>, D or phi<k> (the range of phi^k).
    Member {
        expr: String,
        #[arg(long = "in", value_name = "TARGET")]
        target: String,
        /// Level for the targets `Fk` and `phik`.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Apply lambda_u to an expression.
    Lambda {
        #[arg(long)]
        u: String,
        x: String,
    },
    /// Decide whether lambda_w maps the core UHF algebra into itself.
    PreservesUhf {
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Print the gauge cocycles z~_1, ..., z~_k.
    Cocycles {
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Build the labelled graph E_w.
    Graph {
        #[arg(long)]
        w: String,
        /// Write a Graphviz file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Self-intertwiner check or basis of the bounded intertwiner space.
    Intertwiner {
        #[arg(long)]
        u: String,
        #[arg(long, conflicts_with = "level")]
        check: Option<String>,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Build u phi(v) or v u from a self-intertwiner v of lambda_u.
    Perturb {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value_t = OrderArg::Left)]
        order: OrderArg,
    },
    /// Do lambda_v and lambda_w agree on F_n^1, ..., F_n^depth?
    Agree {
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Check every stated property of the built-in constants u_cp, v_cp, w_cp.
    #[command(alias = "verify-paper")]
    VerifyConstants,
    /// Intertwiner spaces of permutation unitaries of level k in O_2.
    Search {
        #[arg(long)]
        k: usize,
        /// Sample this many permutations instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MethodArg {
    Auto,
    Graph,
    Cocycle,
    Direct,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OrderArg {
    Left,
    #[value(name = "shift_right", alias = "shift-right")]
    ShiftRight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Yes = 0,
    No = 1,
    Undecided = 2,
    Usage = 3,
}

impl Exit {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Exit::Yes
        } else {
            Exit::No
        }
    }
}

/// Input problems exit with 3; failed mathematical preconditions with 1.
fn exit_for(e: &Error) -> Exit {
    match e {
        Error::Parse { .. }
        | Error::Schema(_)
        | Error::UnknownConstant(_)
        | Error::InvalidContext(_)
        | Error::LetterOutOfRange { .. }
        | Error::ContextMismatch { .. } => Exit::Usage,
        Error::Unsupported(_) => Exit::Undecided,
        _ => Exit::No,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Usage as u8 } else { 0 });
        }
    };
    let mut out = std::io::stdout().lock();
    match commands::run(&cli, &mut out) {
        Ok(code) => ExitCode::from(code as u8),
        Err(commands::CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e) as u8)
        }
        Err(commands::CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(Exit::Usage as u8)
        }
        Err(commands::CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(Exit::Usage as u8)
        }
    }
}
