//! Command-line front end for the determinant verification library.
//!
//! Exit codes: 0 when nothing unexpectedly mismatched (skips and documented
//! discrepancies included), 1 when a checked identity failed or `--strict`
//! promoted a documented discrepancy, 2 for usage and domain errors.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use legmat_core::classnum;
use legmat_core::gallery;
use legmat_core::harness::{self, ScanConfig, Status, Theorem, VerificationRecord};
use legmat_core::{Error, FieldSpec};

#[derive(Parser)]
#[command(
    name = "legmat",
    version,
    about = "Checks determinant identities over finite fields: brute-force \
             evaluation against closed forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe the field F_q as JSON.
    Field {
        /// Odd prime power, at most 1000000.
        #[arg(long)]
        q: u64,
    },
    /// Check one case and print its record as JSON.
    Verify {
        /// Field order.
        #[arg(long)]
        q: u64,
        /// Subgroup size (carries d for GALLERY_SDP). The half-group
        /// corollaries default to (q-1)/2 when omitted.
        #[arg(long)]
        k: Option<u64>,
        /// Tag such as DK_VALUE or TK_SINGULARITY (case-insensitive).
        #[arg(long)]
        theorem: String,
    },
    /// Check every case up to a field-size bound and emit a report.
    Scan {
        /// Largest field order to include.
        #[arg(long)]
        q_max: u64,
        /// Comma-separated tags, or "all" for the default set.
        #[arg(long)]
        theorems: Option<String>,
        /// Restrict to one k value, or "all".
        #[arg(long)]
        k: Option<String>,
        /// Worker threads. The report is identical for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        /// Write the report to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Count documented discrepancies as failures for the exit code.
        #[arg(long)]
        strict: bool,
    },
    /// Evaluate one reciprocal-determinant family at one parameter point.
    Gallery {
        #[arg(long, value_enum)]
        which: Family,
        /// Prime field order (synonym for --q; pass exactly one).
        #[arg(long)]
        p: Option<u64>,
        /// Field order (pass exactly one of --p, --q).
        #[arg(long)]
        q: Option<u64>,
        /// Parameter d (sdp, luo-sun).
        #[arg(long)]
        d: Option<i64>,
        /// Even divisor of p-1 (wu-wang).
        #[arg(long)]
        k: Option<u64>,
        /// Parameter c (luo-sun).
        #[arg(long)]
        c: Option<i64>,
    },
    /// Class number for discriminant -p computed two ways, as JSON.
    Classnum {
        /// Prime congruent to 3 mod 4, greater than 3.
        #[arg(long)]
        p: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    SunRecip,
    InvSquares,
    Sdp,
    Wsn,
    WuWang,
    LuoSun,
}

enum CliError {
    Domain(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Usage(s) => f.write_str(s),
            CliError::Io(path, e) => write!(f, "cannot write {}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Field { q } => {
            let field = FieldSpec::for_q(q)?;
            println!("{}", pretty(&field.summary()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { q, k, theorem } => {
            let theorem: Theorem = theorem.parse()?;
            let field = Arc::new(FieldSpec::for_q(q)?);
            let rec = harness::verify_case(&field, k, theorem);
            println!("{}", pretty(&rec));
            Ok(record_exit(&rec))
        }
        Command::Scan {
            q_max,
            theorems,
            k,
            jobs,
            format,
            out,
            strict,
        } => {
            let config = ScanConfig {
                q_max,
                theorems: parse_theorems(theorems.as_deref())?,
                k: parse_k(k.as_deref())?,
                jobs,
                strict,
            };
            let report = harness::scan(&config)?;
            let body = match format {
                ReportFormat::Csv => harness::emit_csv(&report.records),
                ReportFormat::Json => harness::emit_json(&report.records, &report.summary),
            };
            match out {
                Some(path) => fs::write(&path, body).map_err(|e| CliError::Io(path, e))?,
                None => print!("{body}"),
            }
            let s = &report.summary;
            eprintln!(
                "scan: total={} pass={} fail={} expected_mismatch={} skip={}",
                s.total, s.pass, s.fail, s.expected_mismatch, s.skip
            );
            Ok(ExitCode::from(harness::exit_code(s, strict) as u8))
        }
        Command::Gallery {
            which,
            p,
            q,
            d,
            k,
            c,
        } => {
            let order = match (p, q) {
                (Some(p), None) => p,
                (None, Some(q)) => q,
                _ => {
                    return Err(CliError::Usage(
                        "pass exactly one of --p or --q".to_string(),
                    ))
                }
            };
            let field = Arc::new(FieldSpec::for_q(order)?);
            let rec = match which {
                Family::SunRecip => harness::verify_case(&field, None, Theorem::GallerySunRecip),
                Family::InvSquares => {
                    harness::verify_case(&field, None, Theorem::GalleryInvSquares)
                }
                Family::Sdp => {
                    let d = require(d, "sdp needs --d")?;
                    // S(d,p) depends on d only through its residue class.
                    let d = d.rem_euclid(field.p() as i64) as u64;
                    harness::verify_case(&field, Some(d), Theorem::GallerySdp)
                }
                Family::Wsn => harness::verify_case(&field, None, Theorem::GalleryWsn),
                Family::WuWang => {
                    let k = require(k, "wu-wang needs --k")?;
                    harness::verify_case(&field, Some(k), Theorem::GalleryWuWang)
                }
                Family::LuoSun => {
                    let c = require(c, "luo-sun needs --c")?;
                    let d = require(d, "luo-sun needs --d")?;
                    luo_sun_record(&field, c, d)?
                }
            };
            println!("{}", pretty(&rec));
            Ok(record_exit(&rec))
        }
        Command::Classnum { p } => {
            let result = classnum::class_number_result(p)?;
            println!("{}", pretty(&result));
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// No closed form is claimed for this family: the record carries the
/// observed determinant and its quadratic character, nothing is judged.
fn luo_sun_record(
    field: &Arc<FieldSpec>,
    c: i64,
    d: i64,
) -> Result<VerificationRecord, CliError> {
    let mut rec = VerificationRecord {
        q: field.q(),
        p: field.p(),
        n: field.n(),
        k: None,
        theorem: Theorem::GalleryLuoSun,
        brute_value: None,
        closed_value: None,
        brute_symbol: None,
        closed_symbol: None,
        match_value: None,
        match_symbol: None,
        note: format!("c={c} d={d}"),
        status: Status::Skip,
    };
    if field.n() != 1 {
        rec.note = "not applicable: stated for prime fields".to_string();
        return Ok(rec);
    }
    let det = gallery::luo_sun_matrix(field.p(), c, d)?.determinant();
    rec.brute_value = Some(det.index().to_string());
    rec.brute_symbol = Some(field.quadratic_character(det));
    Ok(rec)
}

fn require<T>(v: Option<T>, msg: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(msg.to_string()))
}

fn parse_theorems(arg: Option<&str>) -> Result<Option<Vec<Theorem>>, CliError> {
    let Some(s) = arg else { return Ok(None) };
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(None);
    }
    let mut list = Vec::new();
    for part in s.split(',') {
        list.push(part.parse::<Theorem>()?);
    }
    Ok(Some(list))
}

fn parse_k(arg: Option<&str>) -> Result<Option<u64>, CliError> {
    let Some(s) = arg else { return Ok(None) };
    let s = s.trim();
    if s.eq_ignore_ascii_case("all") {
        return Ok(None);
    }
    s.parse::<u64>().map(Some).map_err(|_| {
        CliError::Usage(format!("--k must be an integer or \"all\", got {s:?}"))
    })
}

fn record_exit(rec: &VerificationRecord) -> ExitCode {
    if rec.status == Status::Fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization is infallible")
}
