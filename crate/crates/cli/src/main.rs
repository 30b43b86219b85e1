//! `tvcable`: cabling matrices, norm certificates and Turaev–Viro growth scans.

mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tvcable_core::growth::RECHECK_ABOVE;
use tvcable_core::{
    cabling_matrix, growth_point, norm_scan, p2_factorization, p2_inverse, sandwich_check, scan,
    KnotSpec, LevelRange, NormOptions, TqftParameter,
};

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "tvcable", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the cabling matrix of C_{p,q}.
    Matrix {
        #[arg(long)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, default_value_t = 2)]
        q: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Complex values instead of exact phase sums.
        #[arg(long)]
        numeric: bool,
    },
    /// Check the (p,2) factorization and inverse exactly at every odd r.
    VerifyFactorization {
        #[arg(long)]
        r_max: i64,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        p_list: Vec<i64>,
    },
    /// Print the exact inverse of the (p,2) cabling matrix.
    Inverse {
        #[arg(long)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        numeric: bool,
    },
    /// Operator norms of the (p,2) cabling matrix and its inverse.
    Norms {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        r_max: i64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Turaev-Viro invariant of a knot complement at one level.
    Tv {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        r: i64,
        #[arg(long, default_value_t = 53)]
        prec: u32,
    },
    /// Growth rate f(r) over a range of odd levels.
    Scan {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        r_min: i64,
        #[arg(long)]
        r_max: i64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 53)]
        prec: u32,
    },
    /// Compare TV of a knot with TV of its (p,2)-cable at every odd level.
    Sandwich {
        #[arg(long)]
        knot: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        r_max: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Core(#[from] tvcable_core::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Check(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_validation() => 1,
            _ => 2,
        }
    }
}

type Outcome = Result<(), Failure>;

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| Failure::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Failure::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn verify_factorization(r_max: i64, p_list: &[i64]) -> Outcome {
    let range = LevelRange::up_to(r_max)?;
    for &p in p_list {
        if p % 2 == 0 {
            return Err(tvcable_core::Error::EvenP(p).into());
        }
    }
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for r in range.levels() {
        let param = TqftParameter::new(i64::from(r))?;
        for &p in p_list {
            let op = cabling_matrix(&param, p, 2)?;
            if p2_factorization(&param, p)?.compose() != *op.matrix() {
                mismatches.push(format!("r={r} p={p}: factorization differs"));
            }
            if !op.compose(&p2_inverse(&param, p)?).is_identity() {
                mismatches.push(format!("r={r} p={p}: M·M⁻¹ is not the identity"));
            }
            checked += 1;
        }
    }
    if mismatches.is_empty() {
        println!(
            "{checked} (r, p) pairs up to r={}: all exact",
            range.r_max()
        );
        Ok(())
    } else {
        Err(Failure::Check(mismatches.join("\n")))
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Matrix {
            r,
            p,
            q,
            format,
            numeric,
        } => {
            let op = cabling_matrix(&TqftParameter::new(r)?, p, q)?;
            emit(&None, &render::operator(&op, format, numeric))
        }
        Command::VerifyFactorization { r_max, p_list } => verify_factorization(r_max, &p_list),
        Command::Inverse {
            r,
            p,
            format,
            numeric,
        } => {
            let op = p2_inverse(&TqftParameter::new(r)?, p)?;
            emit(&None, &render::operator(&op, format, numeric))
        }
        Command::Norms { p, r_max, tol } => {
            let opts = NormOptions {
                tol,
                ..NormOptions::default()
            };
            let report = norm_scan(LevelRange::up_to(r_max)?, p, opts)?;
            emit(&None, &render::norm_table(&report))?;
            if report.all_pass() {
                Ok(())
            } else if report.has_failed_estimates() {
                Err(Failure::Check("norm iteration did not converge".into()))
            } else {
                Err(Failure::Check("norm bound violated".into()))
            }
        }
        Command::Tv { knot, r, prec } => {
            let spec: KnotSpec = knot.parse()?;
            let point = growth_point(&TqftParameter::with_precision(r, prec)?, &spec)?;
            println!("TV = {:.16e}", point.tv);
            match point.f {
                Some(f) => println!("f = {f:.16e}"),
                None => println!("f = (absent, TV = 0)"),
            }
            Ok(())
        }
        Command::Scan {
            knot,
            r_min,
            r_max,
            jobs,
            out,
            format,
            prec,
        } => {
            let spec: KnotSpec = knot.parse()?;
            let series = scan(LevelRange::new(r_min, r_max)?, &spec, prec, jobs)?;
            let text = match format {
                Format::Csv => series.to_csv(),
                Format::Json => format!("{:#}\n", series.to_json()),
            };
            emit(&out, &text)?;
            for warning in &series.precision_warnings {
                eprintln!("warning: {warning} (levels above {RECHECK_ABOVE} are re-run)");
            }
            if series.failures.is_empty() {
                Ok(())
            } else {
                let rows: Vec<String> = series
                    .failures
                    .iter()
                    .map(|f| format!("r={}: {}", f.r, f.error))
                    .collect();
                Err(Failure::Check(rows.join("\n")))
            }
        }
        Command::Sandwich {
            knot,
            p,
            r_max,
            out,
        } => {
            let spec: KnotSpec = knot.parse()?;
            let report = sandwich_check(LevelRange::up_to(r_max)?, &spec, p)?;
            emit(&out, &report.to_csv())?;
            let exponent = report
                .exponent
                .map_or_else(|| "n/a".to_string(), |e| format!("{e:.4}"));
            let verdict = if report.all_pass() { "PASS" } else { "FAIL" };
            eprintln!(
                "{verdict}: {} rows, ratio exponent {exponent}",
                report.rows.len()
            );
            if report.all_pass() {
                Ok(())
            } else {
                Err(Failure::Check("sandwich bound violated".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
