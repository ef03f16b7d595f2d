//! `a4`: counting tables, series identities, SSL/CSL construction and the
//! verification suite.
//!
//! Exit status: 0 success, 1 verification mismatch or I/O failure, 2 usage
//! error, 3 domain error (zero, non-primitive or non-admissible input).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use a4_core::counting::{check_soc_identity, check_ssl_identity, f_soc, f_ssl};
use a4_core::geometry::{csl_of, ssl_of, GeometryError};
use a4_core::icosian::{enumerate_by_trace_norm, Icosian};
use a4_core::oracles::{verify_all, SuiteReport};
use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "a4", version, about = "Similar sublattices and coincidence rotations of A4")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads for the oracles (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Ssl,
    Soc,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Profile {
    Smoke,
    Default,
    Deep,
}

const MAX_INDEX: u64 = 1_000_000_000_000_000;

#[derive(Subcommand, Debug)]
enum Command {
    /// f_ssl(n) (SSLs of index n²) or f_soc(n) (coincidence rotations of index n, divided by 120).
    Count {
        kind: Kind,
        #[arg(value_parser = clap::value_parser!(u64).range(1..=MAX_INDEX))]
        n: u64,
    },
    /// Coefficients 1..=max of D_SSL or D_SOC, checked against the zeta-function identity.
    Series {
        kind: Kind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        max: u64,
    },
    /// Coincidence site lattice of the rotation given by an icosian.
    Csl {
        /// Eight integer coordinates in the Z-basis of the icosian ring, comma separated.
        #[arg(value_parser = parse_icosian, allow_hyphen_values = true)]
        q: Icosian,
    },
    /// Similar sublattice p L p~ for an icosian p.
    Ssl {
        #[arg(value_parser = parse_icosian, allow_hyphen_values = true)]
        q: Icosian,
    },
    /// All icosians q with nr(q) + nr(q)' = T.
    EnumerateIcosians {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=40))]
        trace_norm: i64,
    },
    /// Compare closed forms with the brute-force oracles.
    Verify {
        #[arg(long, value_enum, default_value_t = Profile::Default)]
        profile: Profile,
    },
}

fn parse_icosian(s: &str) -> Result<Icosian, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 8 {
        return Err(format!("expected 8 comma-separated integers, got {}", parts.len()));
    }
    let mut c = [0i128; 8];
    for (slot, p) in c.iter_mut().zip(&parts) {
        let v: i128 = p.parse().map_err(|_| format!("'{p}' is not an integer"))?;
        if v.unsigned_abs() > 1 << 20 {
            return Err(format!("coordinate {v} is out of range (|x| <= 2^20)"));
        }
        *slot = v;
    }
    Ok(Icosian::from_z_coords(c))
}

enum Failure {
    Mismatch(String),
    Domain(String),
    Io(anyhow::Error),
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Domain(e.to_string())
    }
}

struct Output {
    text: String,
    json: serde_json::Value,
}

fn count(kind: Kind, n: u64) -> Output {
    match kind {
        Kind::Ssl => {
            let v = f_ssl(n);
            Output {
                text: format!("{v}\n"),
                json: json!({ "kind": "ssl", "n": n, "value": v.to_string().parse::<u128>().ok() }),
            }
        }
        Kind::Soc => {
            let v = f_soc(n);
            let rotations = &v * 120u32;
            Output {
                text: format!("{v} (rotations: {rotations})\n"),
                json: json!({
                    "kind": "soc",
                    "n": n,
                    "value": v.to_string().parse::<u128>().ok(),
                    "rotations": rotations.to_string().parse::<u128>().ok(),
                }),
            }
        }
    }
}

fn series(kind: Kind, max: u64) -> Result<Output, Failure> {
    let (name, f): (&str, fn(u64) -> _) = match kind {
        Kind::Ssl => ("f_SSL", f_ssl),
        Kind::Soc => ("f_SOC", f_soc),
    };
    let identity = match kind {
        Kind::Ssl => check_ssl_identity(max.min(300)),
        Kind::Soc => check_soc_identity(max.min(20_000)),
    };
    if let Err(e) = identity {
        return Err(Failure::Mismatch(format!("series identity fails: {e}")));
    }
    let coeffs: Vec<String> = (1..=max).map(|n| f(n).to_string()).collect();
    let width = coeffs.iter().map(String::len).max().unwrap_or(1);
    let iw = max.to_string().len();
    let mut text = String::new();
    for (n, c) in (1..=max).zip(&coeffs) {
        let _ = writeln!(text, "{n:>iw$}  {c:>width$}");
    }
    let nums: Vec<u128> = coeffs.iter().map(|c| c.parse().expect("fits u128")).collect();
    Ok(Output {
        text,
        json: json!({ "name": name, "N": max, "coeffs": nums }),
    })
}

fn csl(q: &Icosian) -> Result<Output, Failure> {
    let r = csl_of(q)?;
    let mut text = format!("q = {}\nSigma = {}\nalpha = {}\nCSL basis (HNF, L-coordinates):\n", q.quat(), r.sigma, r.extension.alpha);
    for row in r.csl.hnf_i64() {
        let _ = writeln!(text, "  {row:?}");
    }
    text.push_str("rotation:\n");
    for row in r.rotation.to_strings() {
        let _ = writeln!(text, "  [{}]", row.join(", "));
    }
    Ok(Output {
        text,
        json: serde_json::to_value(&r).expect("serializable"),
    })
}

fn ssl(q: &Icosian) -> Result<Output, Failure> {
    let s = ssl_of(q)?;
    let m = q.nr().norm();
    let mut text = format!("p = {}\nindex = {} = {m}^2\nL-primitive = {}\nSSL basis (HNF, L-coordinates):\n", q.quat(), s.index, s.is_l_primitive());
    for row in s.hnf_i64() {
        let _ = writeln!(text, "  {row:?}");
    }
    Ok(Output {
        text,
        json: json!({
            "q": q.z_coords(),
            "index": s.index,
            "m": m,
            "l_primitive": s.is_l_primitive(),
            "hnf": s.hnf_i64(),
        }),
    })
}

fn enumerate(t: i64) -> Output {
    let qs = enumerate_by_trace_norm(t);
    let mut text = format!("{} icosians with trace norm {t}\n", qs.len());
    let mut items = Vec::with_capacity(qs.len());
    for q in &qs {
        let _ = writeln!(text, "{:?}  {}  nr = {}", q.z_coords(), q.quat(), q.nr());
        items.push(json!({ "z": q.z_coords(), "quat": q.quat().to_string(), "nr": q.nr().to_string() }));
    }
    Output {
        text,
        json: json!({ "trace_norm": t, "count": qs.len(), "icosians": items }),
    }
}

fn verify(profile: Profile, seed: u64) -> (Output, bool) {
    let (m, n, k) = match profile {
        Profile::Smoke => (5, 2, 10),
        Profile::Default => (11, 5, 100),
        Profile::Deep => (12, 6, 1000),
    };
    let report: SuiteReport = verify_all(m, n, k, seed);
    let mut text = String::new();
    for r in &report.reports {
        let _ = writeln!(text, "{}", r.summary_line());
    }
    let _ = writeln!(text, "{}", if report.all_match { "all checks passed" } else { "MISMATCH" });
    let ok = report.all_match;
    (
        Output {
            text,
            json: serde_json::to_value(&report).expect("serializable"),
        },
        ok,
    )
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Text => out.text.clone(),
        Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Io),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
            .context("configuring worker threads")
            .map_err(Failure::Io)?;
    }
    let out = match &cli.command {
        Command::Count { kind, n } => count(*kind, *n),
        Command::Series { kind, max } => series(*kind, *max)?,
        Command::Csl { q } => csl(q)?,
        Command::Ssl { q } => ssl(q)?,
        Command::EnumerateIcosians { trace_norm } => enumerate(*trace_norm),
        Command::Verify { profile } => {
            let (out, ok) = verify(*profile, cli.seed);
            emit(cli, &out)?;
            return if ok { Ok(()) } else { Err(Failure::Mismatch("verification failed".into())) };
        }
    };
    emit(cli, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
