//! Command-line surface: evaluation, table emission, scanning, certificate
//! production/checking and the unboundedness witness.
//!
//! Exit codes: 0 on success (and on a passing `check`), 1 when a certificate
//! fails verification, 2 for usage, domain, I/O and parse errors. All output
//! is plain decimal with no locale formatting, so byte-identical runs are
//! reproducible.

use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use xsign::certifier::{
    block_chain, build_certificate, check_certificate, Certificate, CheckFailure,
};
use xsign::{
    eval_row, eval_row_big, exercise1_table, find_exceeding, scan_signs, scan_summary, EvalRow,
};

#[derive(Parser)]
#[command(
    name = "xsign",
    version,
    about = "Exact sign classification of x(n) = z(n) - (r(n)+1)m(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// The 21 sample points 1..13, 20, 50, 100, 200, 300, 400, 500, 1000.
    Exercise1,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate n, z, m, r, x at a single point (arbitrary precision).
    Eval { n: String },
    /// Emit evaluated rows for a range or a preset.
    Table {
        #[arg(long)]
        from: Option<u64>,
        #[arg(long)]
        to: Option<u64>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Emit the first maximal constant-(r, m) intervals with their x ranges.
    Intervals {
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Print maximal sign runs over [LO, HI] plus a zeros/extrema summary.
    Scan { lo: u64, hi: u64 },
    /// Build a certificate for the sign of x(n) for every n >= 1.
    Certify {
        /// Largest exponent with an exactly checked tail margin.
        #[arg(long = "tail-smax", default_value_t = 200)]
        tail_smax: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Independently re-verify a certificate file.
    Check {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Print a verified witness n with x(n) > B (arbitrary precision).
    Exceed { bound: String },
}

enum CliError {
    Usage(String),
    Io(String),
    Lib(xsign::Error),
    CheckFailed(CheckFailure),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Lib(xsign::Error::Certification(_)) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) => f.write_str(msg),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::CheckFailed(e) => write!(f, "{e}"),
        }
    }
}

impl From<xsign::Error> for CliError {
    fn from(e: xsign::Error) -> Self {
        CliError::Lib(e)
    }
}

fn parse_big(text: &str, what: &str) -> Result<BigUint, CliError> {
    text.parse::<BigUint>().map_err(|_| {
        CliError::Usage(format!(
            "{what} must be a non-negative decimal integer, got {text:?}"
        ))
    })
}

fn write_rows(rows: impl Iterator<Item = EvalRow>, format: Format) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match format {
        Format::Csv => writeln!(out, "n,z,m,r,x")?,
        Format::Plain => writeln!(out, "n z m r x")?,
    }
    for row in rows {
        match format {
            Format::Csv => writeln!(out, "{},{},{},{},{}", row.n, row.z, row.m, row.r, row.x)?,
            Format::Plain => writeln!(out, "{} {} {} {} {}", row.n, row.z, row.m, row.r, row.x)?,
        }
    }
    out.flush()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { n } => {
            let n = parse_big(&n, "n")?;
            let row = eval_row_big(&n)?;
            println!(
                "n={} z={} m={} r={} x={}",
                row.n, row.z, row.m, row.r, row.x
            );
            Ok(())
        }
        Command::Table {
            from,
            to,
            preset,
            format,
        } => {
            if let Some(Preset::Exercise1) = preset {
                if from.is_some() || to.is_some() {
                    return Err(CliError::Usage(
                        "--preset conflicts with --from/--to".into(),
                    ));
                }
                write_rows(exercise1_table().into_iter(), format)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                return Ok(());
            }
            let (from, to) = match (from, to) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(CliError::Usage(
                        "table needs --from and --to, or --preset".into(),
                    ))
                }
            };
            if from == 0 || from > to {
                return Err(CliError::Usage(format!(
                    "invalid range: --from {from} --to {to}"
                )));
            }
            // validates the upper end of the range before streaming
            eval_row(to)?;
            write_rows(
                (from..=to).map(|n| eval_row(n).expect("range validated")),
                format,
            )
            .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(())
        }
        Command::Intervals { count, format } => {
            if count == 0 {
                return Err(CliError::Usage("--count must be positive".into()));
            }
            let blocks = block_chain(count)?;
            let stdout = std::io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            let header = match format {
                Format::Csv => "i,start,end,r,m,x_min,x_max",
                Format::Plain => "i start end r m x_min x_max",
            };
            writeln!(out, "{header}").map_err(|e| CliError::Io(e.to_string()))?;
            for (i, b) in blocks.iter().enumerate() {
                let line = match format {
                    Format::Csv => format!(
                        "{},{},{},{},{},{},{}",
                        i + 1,
                        b.start,
                        b.end,
                        b.r_val,
                        b.m_val,
                        b.x_min,
                        b.x_max
                    ),
                    Format::Plain => format!(
                        "{} {} {} {} {} {} {}",
                        i + 1,
                        b.start,
                        b.end,
                        b.r_val,
                        b.m_val,
                        b.x_min,
                        b.x_max
                    ),
                };
                writeln!(out, "{line}").map_err(|e| CliError::Io(e.to_string()))?;
            }
            out.flush().map_err(|e| CliError::Io(e.to_string()))?;
            Ok(())
        }
        Command::Scan { lo, hi } => {
            let runs = scan_signs(lo, hi)?;
            let summary = scan_summary(lo, hi)?;
            let mut lines = Vec::with_capacity(runs.len() + 4);
            for run in &runs {
                lines.push(format!("{} {} {}", run.sign, run.lo, run.hi));
            }
            let zeros = summary
                .zeros
                .iter()
                .map(|z| z.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            lines.push(if zeros.is_empty() {
                "zeros".into()
            } else {
                format!("zeros {zeros}")
            });
            lines.push(format!("min {} {}", summary.min_at, summary.min_value));
            lines.push(format!("max {} {}", summary.max_at, summary.max_value));
            lines.push(match summary.last_nonpositive {
                Some(n) => format!("last_nonpositive {n}"),
                None => "last_nonpositive none".into(),
            });
            let stdout = std::io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            for line in lines {
                writeln!(out, "{line}").map_err(|e| CliError::Io(e.to_string()))?;
            }
            out.flush().map_err(|e| CliError::Io(e.to_string()))?;
            Ok(())
        }
        Command::Certify { tail_smax, out } => {
            let cert = build_certificate(tail_smax)?;
            std::fs::write(&out, cert.to_json())
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;
            println!(
                "wrote certificate: {} segments over [1, {}], tail margins s={}..={}",
                cert.segments.len(),
                cert.boundary - 1,
                cert.tail.s_min,
                cert.tail.s_checked_max
            );
            Ok(())
        }
        Command::Check { cert } => {
            let text = std::fs::read_to_string(&cert)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", cert.display())))?;
            let parsed = Certificate::from_json(&text)?;
            let report = check_certificate(&parsed).map_err(CliError::CheckFailed)?;
            println!("certificate OK: {report}");
            Ok(())
        }
        Command::Exceed { bound } => {
            let bound = parse_big(&bound, "B")?;
            let witness = find_exceeding(&bound);
            println!("n={} x={}", witness.n, witness.x);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
