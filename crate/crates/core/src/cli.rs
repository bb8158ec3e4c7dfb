//! Command-line front end: `gen`, `certify` and `report`.
//!
//! Output is one JSON object `{"header": ..., "payload": ...}`. The header holds
//! run metadata (tool, version, thread count); the payload depends only on the
//! configuration. Exit codes: 0 success, 1 failed certificate, 2 invalid input.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::certify::{certify_qc, certify_qc_with_finite_factor, check_generation, escape_report, Certificate, EscapeReport};
use crate::circle::{parse_rational, UnitRational};
use crate::duality::Complexity;
use crate::error::{Error, Result};
use crate::groups::{default_primes, Element, GroupDesc};
use crate::nonabelian::{FiniteFactor, FiniteGroup};
use crate::sequences::{
    fan, profinite_sequence, pushforward, solenoid_sequence, torus_sequence, with_finite_factor, QuotientMap, SeqSpec,
    SuperSeq,
};

pub const THREADS_ENV: &str = "QCDENSE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "qcdense", version, about = "Certified qc-dense sequences in compact abelian groups")]
struct Cli {
    /// Worker threads for the certificate sweep (overrides QCDENSE_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a truncated sequence.
    Gen(SeqArgs),
    /// Certify qc-density or generation up to a complexity bound.
    Certify(CertifyArgs),
    /// Escape counts of the profinite sequence outside W_n.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GroupKind {
    Torus,
    Profinite,
    Solenoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Qc,
    Generation,
}

#[derive(Args, Debug)]
struct SeqArgs {
    #[arg(long, value_enum, default_value_t = GroupKind::Torus)]
    group: GroupKind,
    /// Number of circle terms phi(1/(2n)).
    #[arg(long = "N", default_value_t = 100)]
    n: u64,
    /// Deepest block of the profinite sequence.
    #[arg(long = "n-max", default_value_t = 2)]
    n_max: usize,
    /// Cap on m within each block (default: the full range m <= k_{n+1}).
    #[arg(long = "m-cap")]
    m_cap: Option<u64>,
    /// Strictly increasing primes, comma separated (default: primes below 100).
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Use this finite set instead of the generator (repeatable): a circle
    /// point a/b, a solenoid point pi(a/b, 0), or an integer point of H.
    #[arg(long = "singleton")]
    points: Vec<String>,
    /// Replace a solenoid sequence by its image under pi(r, h) -> phi(r).
    #[arg(long = "push-to-torus")]
    push_to_torus: bool,
    /// Fan of this many copies of the sequence.
    #[arg(long, default_value_t = 1)]
    copies: usize,
    /// Product with a finite group: a built-in name (A5, S3, Q8, SL23, C6, ...)
    /// or a JSON file.
    #[arg(long = "finite-factor")]
    finite_factor: Option<String>,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    seq: SeqArgs,
    #[arg(long, default_value_t = 100)]
    bound: u64,
    #[arg(long, value_enum, default_value_t = Mode::Qc)]
    mode: Mode,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[command(flatten)]
    seq: SeqArgs,
    /// Report only this level n (default: every level up to n_max + 1).
    #[arg(long)]
    wn: Option<usize>,
}

/// Result of one invocation: exit code and the text for stdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Serialize)]
struct Header<'a> {
    tool: &'a str,
    version: &'a str,
    command: &'a str,
    threads: usize,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    header: Header<'a>,
    payload: &'a T,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ReportPayload<'a> {
    sequence: &'a SeqSpec,
    reports: Vec<EscapeReport>,
}

fn error_outcome(kind: &str, message: String) -> Outcome {
    let body = serde_json::json!({ "error": ErrorBody { kind, message } });
    Outcome {
        code: 2,
        stdout: format!("{body}\n"),
    }
}

fn thread_count(flag: Option<usize>) -> Result<usize> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{THREADS_ENV}={v:?} is not a count")))?,
            Err(_) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        },
    };
    if n == 0 {
        return Err(Error::InvalidArgument("thread count must be at least 1".into()));
    }
    Ok(n)
}

fn load_finite(spec: &str) -> Result<FiniteGroup> {
    match FiniteGroup::builtin(spec) {
        Ok(g) => Ok(g),
        Err(builtin_err) => {
            let path = std::path::Path::new(spec);
            if path.exists() {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {spec}: {e}")))?;
                FiniteGroup::from_json(&text)
            } else {
                Err(builtin_err)
            }
        }
    }
}

fn parse_point(kind: GroupKind, s: &str) -> Result<Element> {
    Ok(match kind {
        GroupKind::Torus => Element::Torus(s.parse::<UnitRational>()?),
        GroupKind::Solenoid => Element::solenoid_real(parse_rational(s)?),
        GroupKind::Profinite => {
            Element::int_point(s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))?)
        }
    })
}

/// The abelian sequence described by the arguments (fans included, finite factor excluded).
fn build_base(args: &SeqArgs) -> Result<SuperSeq> {
    let primes = args.primes.clone().unwrap_or_else(default_primes);
    let one = if !args.points.is_empty() {
        let group = match args.group {
            GroupKind::Torus => GroupDesc::Torus,
            GroupKind::Profinite => GroupDesc::profinite(primes)?,
            GroupKind::Solenoid => GroupDesc::solenoid(primes)?,
        };
        let points = args
            .points
            .iter()
            .map(|p| parse_point(args.group, p))
            .collect::<Result<Vec<_>>>()?;
        SuperSeq::explicit(group, points)?
    } else {
        match args.group {
            GroupKind::Torus => torus_sequence(args.n)?,
            GroupKind::Profinite => profinite_sequence(&primes, args.n_max, args.m_cap)?,
            GroupKind::Solenoid => solenoid_sequence(&primes, args.n_max, args.n, args.m_cap)?,
        }
    };
    let one = if args.push_to_torus {
        pushforward(&one, QuotientMap::SolenoidToTorus)?
    } else {
        one
    };
    match args.copies {
        0 => Err(Error::InvalidArgument("copies must be at least 1".into())),
        1 => Ok(one),
        k => fan(vec![one; k]),
    }
}

fn render<T: Serialize>(command: &str, threads: usize, payload: &T, out: &Option<PathBuf>) -> Result<String> {
    let envelope = Envelope {
        header: Header {
            tool: "qcdense",
            version: env!("CARGO_PKG_VERSION"),
            command,
            threads,
        },
        payload,
    };
    let mut text = serde_json::to_string(&envelope).map_err(|e| Error::InvariantViolated(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn certify(args: &CertifyArgs) -> Result<Certificate> {
    let bound = Complexity::new(args.bound)?;
    let base = build_base(&args.seq)?;
    match (&args.seq.finite_factor, args.mode) {
        (Some(f), Mode::Qc) => certify_qc_with_finite_factor(&base, &load_finite(f)?, bound),
        (Some(f), Mode::Generation) => {
            let factor = FiniteFactor::new(load_finite(f)?)?;
            check_generation(&with_finite_factor(&base, &factor), bound)
        }
        (None, Mode::Qc) => certify_qc(&base, bound),
        (None, Mode::Generation) => check_generation(&base, bound),
    }
}

fn report(args: &ReportArgs) -> Result<(SuperSeq, Vec<EscapeReport>)> {
    if args.seq.group != GroupKind::Profinite || !args.seq.points.is_empty() || args.seq.copies != 1 {
        return Err(Error::InvalidArgument("report needs the profinite generator".into()));
    }
    let seq = build_base(&args.seq)?;
    let levels: Vec<usize> = match args.wn {
        Some(n) => vec![n],
        None => {
            let primes = seq.group().primes().map(|p| p.len()).unwrap_or(0);
            (0..=(args.seq.n_max + 1).min(primes)).collect()
        }
    };
    let reports = levels
        .into_iter()
        .map(|n| escape_report(&seq, n))
        .collect::<Result<Vec<_>>>()?;
    Ok((seq, reports))
}

fn execute(cli: Cli) -> Result<Outcome> {
    let threads = thread_count(cli.threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Gen(args) => {
            let base = build_base(args)?;
            let seq = match &args.finite_factor {
                Some(f) => with_finite_factor(&base, &FiniteFactor::new(load_finite(f)?)?),
                None => base,
            };
            Ok(Outcome {
                code: 0,
                stdout: render("gen", threads, &seq, &args.out)?,
            })
        }
        Command::Certify(args) => {
            let cert = certify(args)?;
            Ok(Outcome {
                code: if cert.is_certified() { 0 } else { 1 },
                stdout: render("certify", threads, &cert, &args.seq.out)?,
            })
        }
        Command::Report(args) => {
            let (seq, reports) = report(args)?;
            let payload = ReportPayload {
                sequence: seq.spec(),
                reports,
            };
            Ok(Outcome {
                code: 0,
                stdout: render("report", threads, &payload, &args.seq.out)?,
            })
        }
    })
}

/// Runs the tool on the given arguments (the first is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                },
                _ => error_outcome("usage", e.to_string()),
            };
        }
    };
    match execute(cli) {
        Ok(outcome) => outcome,
        Err(e) => error_outcome(e.kind(), e.to_string()),
    }
}
