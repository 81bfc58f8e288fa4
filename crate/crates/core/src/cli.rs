//! Command-line front end. [`run`] parses arguments, dispatches and returns
//! the process exit status: 0 on success (or "equivalent"), 1 for
//! "not equivalent" or a failing self-check, 2 on errors.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::brieskorn::{classify_pair, BrieskornError, BrieskornPoly, ParseError};
use crate::checks::{run_all, SelfCheckBounds, SuiteReport};
use crate::fibers::{beta_closed, beta_recursive, FiberError, FiberQuery, Target};
use crate::laurent::LaurentError;
use crate::recovery::{recover, RecoveryError};
use crate::table::{generate_table, TableBounds, TableError, TableRecord};
use crate::zeta::{default_order, modified_zeta, plain_zeta, ZetaError, ZetaKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Modified,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "brieskorn", version, about = "Arc-analytic invariants of real Brieskorn polynomials")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "plain")]
    pub format: Format,
    /// Worker threads (default: all available)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normalized form of a polynomial
    Normalize {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Decide arc-analytic equivalence (exit 0 equivalent, 1 not)
    Classify {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Virtual Poincaré polynomial of the fiber f = TARGET, by both engines
    Fiber {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(allow_hyphen_values = true, value_parser = parse_target)]
        target: Target,
    },
    /// Realized zeta coefficients up to the truncation order
    Zeta {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum, default_value = "modified")]
        kind: KindArg,
        /// Truncation order (default: twice the largest exponent)
        #[arg(long)]
        order: Option<u32>,
    },
    /// Recover the signs at exponents in K from the modified zeta function
    Recover {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Classification table of all normalized singular polynomials in bounds
    Table {
        #[arg(long, default_value_t = 1)]
        min_d: usize,
        #[arg(long, default_value_t = 2)]
        max_d: usize,
        #[arg(long, default_value_t = 2)]
        min_exp: u32,
        #[arg(long, default_value_t = 4)]
        max_exp: u32,
        /// Truncation order (default: twice max-exp)
        #[arg(long)]
        order: Option<u32>,
    },
    /// Run every cross-validation sweep
    Selfcheck {
        #[arg(long, default_value_t = 3)]
        max_d: usize,
        #[arg(long, default_value_t = 8)]
        max_exp: u32,
        #[arg(long, default_value_t = 16)]
        order: u32,
    },
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.trim()
        .parse::<i64>()
        .ok()
        .and_then(Target::from_value)
        .ok_or_else(|| format!("target must be -1, 0 or 1, got {s:?}"))
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot parse {input:?}: {source}\n  {input}\n  {caret}")]
    Parse { input: String, caret: String, source: ParseError },
    #[error(transparent)]
    Brieskorn(#[from] BrieskornError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Recovery(#[from] RecoveryError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("engines disagree: closed form {closed}, recursion {recursive}")]
    EngineDisagreement { closed: String, recursive: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn parse_poly(input: &str) -> Result<BrieskornPoly, CliError> {
    BrieskornPoly::parse(input).map_err(|source| CliError::Parse {
        input: input.to_string(),
        caret: format!("{}^", " ".repeat(source.position.min(input.len()))),
        source,
    })
}

fn check_order(order: u32) -> Result<u32, CliError> {
    if order == 0 {
        return Err(CliError::Invalid("order must be at least 1".into()));
    }
    Ok(order)
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut (dyn Write + Send) = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(CliError::Invalid("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, out, err)),
            Err(e) => Err(CliError::Invalid(e.to_string())),
        },
        None => dispatch(&cli, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Normalize { poly } => {
            let n = parse_poly(poly)?.normalize().to_string();
            match fmt {
                Format::Plain => writeln!(out, "{n}")?,
                Format::Json => writeln!(out, "{}", json!({ "input": poly, "normalized": n }))?,
                Format::Csv => writeln!(out, "input,normalized\n{poly},{n}")?,
            }
            Ok(0)
        }
        Command::Classify { f, g } => {
            let (pf, pg) = (parse_poly(f)?, parse_poly(g)?);
            let v = classify_pair(&pf, &pg)?;
            let (nf, ng) = (pf.normalize().to_string(), pg.normalize().to_string());
            match fmt {
                Format::Plain => writeln!(out, "{v}")?,
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "f": nf, "g": ng, "equivalent": v.equivalent, "reason": v.reason })
                )?,
                Format::Csv => {
                    writeln!(out, "f,g,equivalent,reason")?;
                    let reason = v.to_string();
                    let reason = reason.split_once(": ").map_or("", |(_, r)| r);
                    writeln!(out, "{nf},{ng},{},{reason}", v.equivalent)?;
                }
            }
            Ok(if v.equivalent { 0 } else { 1 })
        }
        Command::Fiber { poly, target } => {
            let f = parse_poly(poly)?;
            let q = FiberQuery::of(&f, *target);
            let closed = beta_closed(&q);
            let recursive = beta_recursive(&q)?;
            if closed != recursive {
                return Err(CliError::EngineDisagreement {
                    closed: closed.to_string(),
                    recursive: recursive.to_string(),
                });
            }
            let chi = closed.euler_characteristic()?;
            match fmt {
                Format::Plain => {
                    writeln!(out, "closed:    {closed}")?;
                    writeln!(out, "recursive: {recursive}")?;
                    writeln!(out, "chi_c:     {chi}")?;
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "polynomial": f.to_string(),
                        "target": target.value(),
                        "beta": closed,
                        "beta_text": closed.to_string(),
                        "engines_agree": true,
                        "euler_characteristic": chi,
                    })
                )?,
                Format::Csv => {
                    writeln!(out, "polynomial,target,beta,euler_characteristic")?;
                    writeln!(out, "{f},{},{closed},{chi}", target.value())?;
                }
            }
            Ok(0)
        }
        Command::Zeta { poly, kind, order } => {
            let f = parse_poly(poly)?.normalize();
            let order = check_order(order.unwrap_or_else(|| default_order(&f)))?;
            let z = match kind {
                KindArg::Modified => modified_zeta(&f, order)?,
                KindArg::Plain => plain_zeta(&f, order)?,
            };
            match fmt {
                Format::Plain => {
                    let label = if z.kind() == ZetaKind::Modified { "modified" } else { "plain" };
                    writeln!(out, "{label} zeta of {f}, order {order}")?;
                    for (i, c) in z.coeffs().iter().enumerate() {
                        writeln!(out, "{}: {c}", i + 1)?;
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string(&z)?)?,
                Format::Csv => write!(out, "{}", z.to_csv())?,
            }
            Ok(0)
        }
        Command::Recover { poly, order } => {
            let f = parse_poly(poly)?.normalize();
            let order = check_order(order.unwrap_or_else(|| default_order(&f)))?;
            let rec = recover(&f.exponents(), &modified_zeta(&f, order)?)?;
            match fmt {
                Format::Plain => {
                    if rec.is_empty() {
                        writeln!(out, "K is empty: no sign is an invariant")?;
                    }
                    for s in &rec.steps {
                        writeln!(
                            out,
                            "k={}: sigma+={} sigma-={} pi={} rho={} ({} branch)",
                            s.k, s.sigma_plus, s.sigma_minus, s.pi, s.rho, s.branch
                        )?;
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string(&rec)?)?,
                Format::Csv => {
                    writeln!(out, "k,sigma_plus,sigma_minus,pi,rho,branch")?;
                    for s in &rec.steps {
                        writeln!(
                            out,
                            "{},{},{},{},{},{}",
                            s.k, s.sigma_plus, s.sigma_minus, s.pi, s.rho, s.branch
                        )?;
                    }
                }
            }
            Ok(0)
        }
        Command::Table { min_d, max_d, min_exp, max_exp, order } => {
            let bounds = TableBounds::new(*min_d, *max_d, *min_exp, *max_exp);
            if let Some(n) = order {
                check_order(*n)?;
            }
            if fmt == Format::Csv {
                writeln!(out, "{}", TableRecord::csv_header())?;
            }
            let summary = generate_table(bounds, *order, |r| match fmt {
                Format::Plain => {
                    let tag = if r.polynomial == r.representative { "" } else { "  ~ " };
                    let rep = if tag.is_empty() { "" } else { r.representative.as_str() };
                    writeln!(out, "{}{tag}{rep}", r.polynomial)
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string(r)?),
                Format::Csv => writeln!(out, "{}", r.to_csv_row()),
            })?;
            let line = format!(
                "{} polynomials, {} classes, {} zeta comparisons",
                summary.polynomials, summary.classes, summary.zeta_comparisons
            );
            match fmt {
                Format::Plain => writeln!(out, "{line}")?,
                _ => writeln!(err, "{line}")?,
            }
            Ok(0)
        }
        Command::Selfcheck { max_d, max_exp, order } => {
            if *max_d == 0 || *max_exp < 2 {
                return Err(CliError::Invalid("need max-d >= 1 and max-exp >= 2".into()));
            }
            let bounds = SelfCheckBounds {
                max_d: *max_d,
                max_exp: *max_exp,
                order: check_order(*order)?,
                ..SelfCheckBounds::default()
            };
            let reports = run_all(&bounds);
            write_reports(&reports, fmt, out)?;
            Ok(selfcheck_status(&reports))
        }
    }
}

/// 0 when every suite passed, 1 otherwise.
pub fn selfcheck_status(reports: &[SuiteReport]) -> i32 {
    if reports.iter().all(SuiteReport::passed) {
        0
    } else {
        1
    }
}

fn write_reports(reports: &[SuiteReport], fmt: Format, out: &mut (dyn Write + Send)) -> Result<(), CliError> {
    match fmt {
        Format::Plain => {
            for r in reports {
                writeln!(out, "{r}")?;
                for s in &r.samples {
                    writeln!(out, "    {s}")?;
                }
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            writeln!(out, "{} suites, {failed} failed", reports.len())?;
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(reports)?)?,
        Format::Csv => {
            writeln!(out, "suite,checked,failures,passed")?;
            for r in reports {
                writeln!(out, "{},{},{},{}", r.name, r.checked, r.failures, r.passed())?;
            }
        }
    }
    Ok(())
}
