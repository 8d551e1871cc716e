//! The `settype` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::kernel::{check_proof, Theory};
use crate::oracle::{run_suite, Bounds};
use crate::set_theory::try_bootstrap;
use crate::syntax::{parse_theory_file, print_sequent, read_proof, write_proof, write_theory_file, JudgmentFile};
use crate::typecheck::prove;

/// Environment variable naming an alternative theory file.
pub const THEORY_ENV: &str = "SETTYPE_THEORY";

#[derive(Parser, Debug)]
#[command(name = "settype", version, about = "Proof-producing dependent type checking over set theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prove the goal of a judgment file.
    Check {
        file: PathBuf,
        /// Write the kernel proof here.
        #[arg(long, value_name = "PATH")]
        emit_proof: Option<PathBuf>,
    },
    /// Re-check a serialized proof.
    Verify {
        path: PathBuf,
        /// `bootstrap` or a theory file; defaults to $SETTYPE_THEORY, then `bootstrap`.
        #[arg(long)]
        theory: Option<String>,
    },
    /// Search for counterexamples to the set-only lemma schemas.
    Oracle {
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
        #[arg(long, default_value_t = 4)]
        max_card: usize,
    },
    /// Parse a judgment file and print it back.
    Print {
        file: PathBuf,
        /// Beta-normalize every term first.
        #[arg(long)]
        normal_form: bool,
    },
    /// Print the built-in theory as a theory file that `verify --theory` can load
    Theory,
}

/// Outcome of a command: exit code plus the reason tag for the result line.
struct Outcome {
    code: i32,
    reason: Option<String>,
}

impl Outcome {
    fn ok() -> Outcome {
        Outcome { code: 0, reason: None }
    }

    fn fail(code: i32, reason: &str) -> Outcome {
        Outcome {
            code,
            reason: Some(reason.to_string()),
        }
    }
}

/// Run with `args` (including the program name). Returns the exit code:
/// 0 on success, 1 when a check fails, 2 for usage, I/O or parse errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    let dump = matches!(cli.command, Command::Theory);
    let outcome = dispatch(cli.command, out, err);
    if dump && outcome.code == 0 {
        return 0;
    }
    let _ = match &outcome.reason {
        None => writeln!(out, "RESULT: ok"),
        Some(r) => writeln!(out, "RESULT: fail reason={r}"),
    };
    outcome.code
}

fn read(path: &Path, err: &mut dyn Write) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
        Outcome::fail(2, "IoError")
    })
}

fn theory_from(spec: Option<&str>, err: &mut dyn Write) -> Result<Theory, Outcome> {
    let from_env = std::env::var(THEORY_ENV).ok();
    let spec = spec.map(str::to_string).or(from_env);
    match spec.as_deref() {
        None | Some("bootstrap") => try_bootstrap().map_err(|e| {
            let _ = writeln!(err, "error: bootstrap theory failed: {e}");
            Outcome::fail(2, "TheoryError")
        }),
        Some(path) => {
            let src = read(Path::new(path), err)?;
            parse_theory_file(&src).map_err(|e| {
                let _ = writeln!(err, "error: {path}:{e}");
                Outcome::fail(2, e.reason())
            })
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let r = match cmd {
        Command::Check { file, emit_proof } => check_cmd(&file, emit_proof.as_deref(), out, err),
        Command::Verify { path, theory } => verify_cmd(&path, theory.as_deref(), out, err),
        Command::Oracle { max_rank, max_card } => oracle_cmd(Bounds { max_rank, max_card }, out, err),
        Command::Print { file, normal_form } => print_cmd(&file, normal_form, out, err),
        Command::Theory => theory_from(None, err).map(|t| {
            let _ = write!(out, "{}", write_theory_file(&t));
            Outcome::ok()
        }),
    };
    r.unwrap_or_else(|o| o)
}

fn judgment_file(file: &Path, theory: &Theory, err: &mut dyn Write) -> Result<JudgmentFile, Outcome> {
    let src = read(file, err)?;
    JudgmentFile::parse(&src, theory).map_err(|e| {
        let _ = writeln!(err, "error: {}:{e}", file.display());
        Outcome::fail(2, e.reason())
    })
}

fn check_cmd(file: &Path, emit: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, Outcome> {
    let theory = theory_from(None, err)?;
    let parsed = judgment_file(file, &theory, err)?;
    let judgment = parsed.judgment().expect("validated by the parser");
    let proof = match prove(&theory, &judgment) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return Ok(Outcome::fail(1, e.reason()));
        }
    };
    if let Err(e) = check_proof(&proof, &theory) {
        let _ = writeln!(err, "error: the kernel rejected the generated proof: {e}");
        return Ok(Outcome::fail(1, "KernelRejected"));
    }
    let _ = writeln!(out, "proved {}", print_sequent(&judgment.sequent()));
    let _ = writeln!(
        out,
        "{} proof steps, {} theorem instances",
        proof.node_count(),
        proof.theorems_used().len()
    );
    if let Some(path) = emit {
        if let Err(e) = std::fs::write(path, write_proof(&proof)) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return Ok(Outcome::fail(2, "IoError"));
        }
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(Outcome::ok())
}

fn verify_cmd(path: &Path, theory: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, Outcome> {
    let theory = theory_from(theory, err)?;
    let src = read(path, err)?;
    let tree = read_proof(&src, theory.signature()).map_err(|e| {
        let _ = writeln!(err, "error: {}:{e}", path.display());
        Outcome::fail(2, e.reason())
    })?;
    match check_proof(&tree, &theory) {
        Ok(thm) => {
            let _ = writeln!(out, "verified {}", print_sequent(thm.sequent()));
            Ok(Outcome::ok())
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Ok(Outcome::fail(1, "ProofRejected"))
        }
    }
}

fn oracle_cmd(bounds: Bounds, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, Outcome> {
    let theory = theory_from(None, err)?;
    let report = run_suite(&theory, bounds);
    let _ = writeln!(out, "{report}");
    if report.passed() {
        Ok(Outcome::ok())
    } else {
        Ok(Outcome::fail(1, "OracleMismatch"))
    }
}

fn print_cmd(file: &Path, normal: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, Outcome> {
    let theory = theory_from(None, err)?;
    let parsed = judgment_file(file, &theory, err)?;
    let shown = if normal { parsed.normalized() } else { parsed };
    let _ = write!(out, "{}", shown.print());
    Ok(Outcome::ok())
}
