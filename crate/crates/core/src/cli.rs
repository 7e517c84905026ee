//! The `cybe` command-line tool.
//!
//! Exit codes: `0` success / every check passed, `1` a check failed (the
//! witness is printed), `2` usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::catalog;
use crate::io::{parse, serialize, Document};
use crate::lie::Tensor2;
use crate::manin::{coisotropy_check, dual_basis_reconstruct, expand, lagrangian_complement_check, w_basis, SeriesTensor};
use crate::poly::RatFun;
use crate::scalars::{parse_rational, Rational};
use crate::sheaf::{geometric_r, CurveKind};
use crate::verify::{run_check, Check, Verdict};

#[derive(Parser, Debug)]
#[command(name = "cybe", version, about = "Exact r-matrices on singular cubic curves and Yang–Baxter checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the geometric r-matrix of the canonical simple sheaf.
    Compute {
        #[arg(long, value_enum)]
        curve: Curve,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form r-matrices.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check an identity on a tensor document.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        identity: Identity,
        /// Evaluation point `x,y` for the non-degeneracy check.
        #[arg(long, default_value = "1,2")]
        at: String,
    },
    /// Expand a tensor in |x| < |y| up to x^order.
    Expand {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild a series from its W-space and compare (Manin round trip).
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        /// Expansion order when the input is a tensor.
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Decide whether two tensor documents are equal.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Emit {
        name: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Curve {
    Nodal,
    Cuspidal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Identity {
    Cybe,
    Gcybe,
    Skew,
    Nondeg,
}

/// A failure mapped to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Runs the tool on `args` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run_with(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// Runs the tool on the process arguments with standard streams.
pub fn run() -> i32 {
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run_with(std::env::args_os(), &mut out, &mut err)
}

fn emit(doc: &Document, path: Option<&Path>, out: &mut dyn Write) -> Result<(), InputError> {
    let text = serialize(doc);
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read(path: &Path) -> Result<Document, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(parse(&text)?)
}

fn read_tensor(path: &Path) -> Result<Tensor2<RatFun>, InputError> {
    match read(path)? {
        Document::Tensor2(t) => Ok(t),
        d => Err(InputError(format!("{}: expected a tensor2 document, found {}", path.display(), d.kind()))),
    }
}

fn report(verdicts: &[Verdict], out: &mut dyn Write) -> Result<i32, InputError> {
    for v in verdicts {
        match (&v.witness, v.pass) {
            (_, true) => writeln!(out, "{}: pass", v.identity)?,
            (Some(w), false) => {
                let idx: Vec<String> = w.indices.iter().map(ToString::to_string).collect();
                writeln!(out, "{}: FAIL at [{}]: {}", v.identity, idx.join(", "), w.value)?
            }
            (None, false) => writeln!(out, "{}: FAIL", v.identity)?,
        }
    }
    Ok(if verdicts.iter().all(|v| v.pass) { 0 } else { 1 })
}

fn parse_point(s: &str) -> Result<(Rational, Rational), InputError> {
    let (a, b) = s.split_once(',').ok_or_else(|| InputError(format!("expected x,y, got {s:?}")))?;
    Ok((parse_rational(a.trim())?, parse_rational(b.trim())?))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, InputError> {
    match cmd {
        Command::Compute { curve, n, out: path } => {
            let curve = match curve {
                Curve::Nodal => CurveKind::Nodal,
                Curve::Cuspidal => CurveKind::Cuspidal,
            };
            emit(&Document::Tensor2(geometric_r(n, curve)?), path.as_deref(), out)?;
            Ok(0)
        }
        Command::Catalog { action: CatalogAction::List } => {
            for (name, about) in catalog::NAMES {
                writeln!(out, "{name:<14} {about}")?;
            }
            Ok(0)
        }
        Command::Catalog { action: CatalogAction::Emit { name, n, out: path } } => {
            emit(&Document::Tensor2(catalog::entry(&name, n)?.tensor), path.as_deref(), out)?;
            Ok(0)
        }
        Command::Verify { input, identity, at } => {
            let r = read_tensor(&input)?;
            let check = match identity {
                Identity::Cybe => Check::Cybe,
                Identity::Gcybe => Check::Gcybe,
                Identity::Skew => Check::Skew,
                Identity::Nondeg => {
                    let (p, q) = parse_point(&at)?;
                    Check::Nondegenerate(p, q)
                }
            };
            report(&[run_check(&r, &check)?], out)
        }
        Command::Expand { input, order, out: path } => {
            let s = expand(&read_tensor(&input)?, order)?;
            emit(&Document::Series(s), path.as_deref(), out)?;
            Ok(0)
        }
        Command::Reconstruct { input, order } => {
            let s: SeriesTensor = match read(&input)? {
                Document::Series(s) => s,
                Document::Tensor2(t) => expand(&t, order)?,
                d => return Err(InputError(format!("expected a series or tensor2 document, found {}", d.kind()))),
            };
            let w = w_basis(&s);
            let verdict = |identity: &str, pass: bool| Verdict { identity: identity.into(), pass, witness: None };
            let round_trip = dual_basis_reconstruct(&w).map(|r| r == s).unwrap_or(false);
            report(
                &[
                    verdict("coisotropic", coisotropy_check(&w)),
                    verdict("lagrangian-complement", lagrangian_complement_check(&w)),
                    verdict("dual-basis-round-trip", round_trip),
                ],
                out,
            )
        }
        Command::Compare { a, b } => {
            let equal = match (read(&a)?, read(&b)?) {
                (Document::Tensor2(x), Document::Tensor2(y)) => x.n() == y.n() && x.minus(&y).is_zero(),
                (Document::Tensor3(x), Document::Tensor3(y)) => x.n() == y.n() && x.minus(&y).is_zero(),
                (x, y) => return Err(InputError(format!("cannot compare {} with {}", x.kind(), y.kind()))),
            };
            writeln!(out, "{}", if equal { "equal" } else { "different" })?;
            Ok(if equal { 0 } else { 1 })
        }
    }
}
