use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use hocoh_cli::{execute, text, CliError, Command, Invocation};
use serde_json::json;

/// Higher-order cohomology H_q^p(Γ, Σ, V) of finite permutation groups.
#[derive(Parser)]
#[command(name = "hocoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Verb,
    /// Problem file (JSON).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    #[arg(long, global = true)]
    q_max: Option<usize>,
    #[arg(long, global = true)]
    p_max: Option<usize>,
    /// Recompute with the reversed generator order and the alternate oracles.
    #[arg(long, global = true)]
    recheck: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print a human-readable summary to stdout.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Group, Σ and module summary.
    Info,
    /// dim J_q and N(q) = dim J_q/J_{q+1}.
    Ideals,
    /// Grid of dim H_q^p with cross-checks.
    Cohom {
        #[arg(long)]
        module: Option<String>,
    },
    /// H_q^1 through Hom_A(J_q, V).
    H1 {
        #[arg(long)]
        module: Option<String>,
    },
    /// Long exact sequence of each layer, with maps.
    LesCheck {
        #[arg(long)]
        module: Option<String>,
    },
    /// Every structural check on the problem file.
    Verify,
    /// Built-in instances with known answers.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, module) = match cli.command {
        Verb::Info => (Command::Info, None),
        Verb::Ideals => (Command::Ideals, None),
        Verb::Cohom { module } => (Command::Cohom, module),
        Verb::H1 { module } => (Command::H1, module),
        Verb::LesCheck { module } => (Command::LesCheck, module),
        Verb::Verify => (Command::Verify, None),
        Verb::Selftest => (Command::Selftest, None),
    };
    let inv = Invocation {
        command,
        spec: cli.spec,
        q_max: cli.q_max,
        p_max: cli.p_max,
        recheck: cli.recheck,
        module,
    };
    let start = Instant::now();
    let report = match execute(&inv) {
        Ok(r) => r,
        Err(e) => return fail(&inv, &e),
    };
    let mut value = report.value;
    value["timing"] = json!({ "elapsed_ms": start.elapsed().as_millis() as u64 });
    let rendered = serde_json::to_string_pretty(&value).expect("report serializes") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(source) = std::fs::write(path, &rendered) {
                return fail(&inv, &CliError::Io { path: path.clone(), source });
            }
        }
        None if !cli.text => emit(&rendered),
        None => {}
    }
    if cli.text {
        emit(&text::render(&value));
    }
    ExitCode::from(if report.pass { 0 } else { 1 })
}

fn fail(inv: &Invocation, e: &CliError) -> ExitCode {
    match (e, &inv.spec) {
        (CliError::Json { .. }, Some(path)) => eprintln!("error: {}: {e}", path.display()),
        _ => eprintln!("error: {e}"),
    }
    ExitCode::from(e.exit_code() as u8)
}

fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|()| out.flush());
}
