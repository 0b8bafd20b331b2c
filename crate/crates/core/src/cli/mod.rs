//! The `spinrep` command-line tool.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict or failed
//! verification, 2 usage, parse, I/O and domain errors, 3 inconclusive.

pub mod repfile;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::construct::build_chain;
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::meataxe::{chop, is_equivalent, is_irreducible, Verdict, DEFAULT_RNG_SEED};
use crate::recipe::SignChoice;
use crate::spin::{
    associate, check_complemma, check_delta, check_relations, twist_to_hat, Cover, Representation,
    VerificationReport,
};
pub use repfile::{Format, RepFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "spinrep",
    version,
    about = "Basic spin representations of the double covers of Sₙ"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Relations,
    Delta,
    Complemma,
    Irreducible,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a basic spin representation of S̃ₙ.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long = "char")]
        characteristic: i64,
        /// Sign for the extension producing S̃ₘ, as M:plus or M:minus.
        #[arg(long = "sign-at", value_parser = parse_sign_at)]
        sign_at: Vec<(usize, SignChoice)>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check relations, condition Δ, the complement lemma and irreducibility.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Level::All)]
        level: Level,
        #[arg(long, default_value_t = DEFAULT_RNG_SEED)]
        rng_seed: u64,
    },
    /// Composition factors, written next to the input as <stem>.factorK.<ext>.
    Chop {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RNG_SEED)]
        rng_seed: u64,
    },
    /// Multiply every generator by ω, giving an Ŝₙ representation.
    Twist {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Defaults to the input's format.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Negate every generator.
    Associate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Exit 0 if the two irreducible representations are equivalent, 1 if not.
    Equivalent {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

fn parse_sign_at(s: &str) -> std::result::Result<(usize, SignChoice), String> {
    let (m, sign) = s
        .split_once(':')
        .ok_or_else(|| format!("expected M:plus or M:minus, got '{s}'"))?;
    let m = m.parse().map_err(|_| format!("bad position '{m}'"))?;
    let sign = sign.parse().map_err(|e: Error| e.to_string())?;
    Ok((m, sign))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
        Error::InternalChainMismatch(_) => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("output failed: {e}"))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Build {
            n,
            characteristic,
            sign_at,
            out: path,
            format,
        } => {
            if characteristic < 0 {
                return Err(Error::InvalidField(format!("characteristic {characteristic}")));
            }
            let signs: BTreeMap<usize, SignChoice> = sign_at.into_iter().collect();
            let r = build_chain(n, characteristic as u64, &signs)?;
            let mut report = check_relations(&r);
            report.extend(check_delta(&r));
            match &path {
                Some(p) => repfile::write(p, &r, format)?,
                None => write!(out, "{}", repfile::serialize(&r, format)).map_err(io)?,
            }
            if let Some(bad) = report.failures().next() {
                writeln!(out, "internal verification failed: {bad}").map_err(io)?;
                return Ok(EXIT_NEGATIVE);
            }
            if let Some(p) = &path {
                writeln!(
                    out,
                    "wrote {} (degree {}, {})",
                    p.display(),
                    r.degree(),
                    r.field().name()
                )
                .map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            input,
            level,
            rng_seed,
        } => {
            let (r, _) = repfile::read(&input)?;
            verify(&r, level, rng_seed, out)
        }
        Command::Chop { input, rng_seed } => {
            let (r, format) = repfile::read(&input)?;
            let report = chop(&r, rng_seed)?;
            for (k, factor) in report.factors.iter().enumerate() {
                let path = factor_path(&input, k, format);
                repfile::write(&path, &factor.rep, format)?;
                writeln!(
                    out,
                    "factor {k}: degree {}, delta {}, written to {}",
                    factor.degree,
                    if factor.delta_pass { "ok" } else { "FAIL" },
                    path.display()
                )
                .map_err(io)?;
            }
            for i in 0..report.factors.len() {
                for j in i + 1..report.factors.len() {
                    let word = if report.equivalent[i][j] {
                        "equivalent"
                    } else {
                        "non-equivalent"
                    };
                    writeln!(out, "factors {i} and {j}: {word}").map_err(io)?;
                }
            }
            let all_delta = report.factors.iter().all(|f| f.delta_pass);
            Ok(if all_delta { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Twist {
            input,
            out: path,
            format,
        } => {
            let (r, detected) = repfile::read(&input)?;
            let twisted = twist_to_hat(&r)?;
            repfile::write(&path, &twisted, format.unwrap_or(detected))?;
            writeln!(out, "wrote {}", path.display()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Associate {
            input,
            out: path,
            format,
        } => {
            let (r, detected) = repfile::read(&input)?;
            repfile::write(&path, &associate(&r), format.unwrap_or(detected))?;
            writeln!(out, "wrote {}", path.display()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Equivalent { a, b } => {
            let (a, _) = repfile::read(&a)?;
            let (b, _) = repfile::read(&b)?;
            let (a, b) = over_common_field(&a, &b)?;
            if is_equivalent(&a, &b)? {
                writeln!(out, "equivalent").map_err(io)?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "not equivalent").map_err(io)?;
                Ok(EXIT_NEGATIVE)
            }
        }
    }
}

fn factor_path(input: &Path, k: usize, format: Format) -> PathBuf {
    let stem = input
        .file_stem()
        .map_or_else(|| "rep".into(), |s| s.to_string_lossy().into_owned());
    input.with_file_name(format!("{stem}.factor{k}.{}", format.extension()))
}

/// Both representations over one field, when either field embeds in the other
/// or both are towers over ℚ.
fn over_common_field(a: &Representation, b: &Representation) -> Result<(Representation, Representation)> {
    if a.field() == b.field() {
        return Ok((a.clone(), b.clone()));
    }
    let mut candidates = vec![a.field().clone(), b.field().clone()];
    if let (FieldDescriptor::RationalTower(_), Some(tb)) = (a.field(), b.field().tower()) {
        candidates.push(a.field().extended_for(tb.radicals()));
    }
    for f in candidates {
        if let (Ok(x), Ok(y)) = (a.base_change(&f), b.base_change(&f)) {
            return Ok((x, y));
        }
    }
    Err(Error::FieldMismatch)
}

fn print_report(report: &VerificationReport, out: &mut dyn Write) -> Result<()> {
    for check in &report.checks {
        writeln!(out, "{check}").map_err(io)?;
    }
    Ok(())
}

fn verify(r: &Representation, level: Level, rng_seed: u64, out: &mut dyn Write) -> Result<i32> {
    writeln!(
        out,
        "{} cover, n = {}, degree {}, {}",
        r.cover(),
        r.n(),
        r.degree(),
        r.field().name()
    )
    .map_err(io)?;
    let mut report = VerificationReport::default();
    if matches!(level, Level::Relations | Level::All) {
        report.extend(check_relations(r));
    }
    if matches!(level, Level::Delta | Level::All) {
        report.extend(check_delta(r));
    }
    match level {
        Level::Complemma => report.extend(check_complemma(r, r.n())?),
        Level::All if r.cover() == Cover::Tilde => report.extend(check_complemma(r, r.n())?),
        Level::All => writeln!(out, "complemma: skipped for the hat cover").map_err(io)?,
        _ => {}
    }
    print_report(&report, out)?;
    let mut ok = report.passed();
    if matches!(level, Level::Irreducible | Level::All) {
        match is_irreducible(r, rng_seed)? {
            Verdict::Irreducible => writeln!(out, "irreducible: ok").map_err(io)?,
            Verdict::Reducible(sub) => {
                ok = false;
                writeln!(
                    out,
                    "irreducible: FAIL (invariant subspace of dimension {})",
                    sub.dim()
                )
                .map_err(io)?;
            }
        }
    }
    let failures = report.failures().count();
    writeln!(
        out,
        "{}: {} checks, {failures} failed",
        if ok { "PASS" } else { "FAIL" },
        report.checks.len()
    )
    .map_err(io)?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}
