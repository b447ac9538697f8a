use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use ehrhart_cli::analysis::{self, AnalyzeOptions};
use ehrhart_cli::{exit, fixtures, parse_coeffs, parse_polytope_file, AnalysisReport};
use ehrhart_core::rootcert::DEFAULT_TOLERANCE;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "ehrhart", version, about = "Ehrhart polynomials of lattice polytopes and the location of their roots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze polytopes given as vertex files (one vertex per line).
    Analyze {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Largest dilation for the layer identity [default: 2d]
        #[arg(long, short = 'M')]
        dilations: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tol)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Locate the roots of a polynomial given by its coefficients.
    Poly {
        /// Comma-separated rationals, constant term first, e.g. "1,3/2,1/2"
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tol)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// List the (f0, b2) pairs of smooth 4- or 5-polytopes with their checks.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
        dim: u8,
        #[arg(long)]
        json: bool,
    },
    /// Classify the roots of the dimension-six counterexample polynomials.
    Fixtures {
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tol)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn analyze_file(path: &PathBuf, opts: AnalyzeOptions) -> Result<AnalysisReport, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let p = parse_polytope_file(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    analysis::analyze(&path.display().to_string(), &p, opts).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Analyze { files, dilations, tol, json } => {
            let opts = AnalyzeOptions { dilations, tol };
            let results: Vec<_> = files.par_iter().map(|f| analyze_file(f, opts)).collect();
            for r in &results {
                match r {
                    Ok(report) if !json => println!("{report}\n"),
                    Ok(_) => {}
                    Err(e) => eprintln!("error: {e}"),
                }
            }
            if json {
                let reports: Vec<&AnalysisReport> = results.iter().filter_map(|r| r.as_ref().ok()).collect();
                print_json(&reports);
            }
            exit::for_batch(results.iter().map(|r| r.as_ref().map(|r| &r.violations[..])))
        }
        Command::Poly { coeffs, tol, json } => {
            let l = match parse_coeffs(&coeffs) {
                Ok(l) => l,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit::INPUT_ERROR;
                }
            };
            match analysis::poly_roots(&l, tol) {
                Ok(r) if json => print_json(&r),
                Ok(r) => println!("L(m) = {l}\n{r}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit::INPUT_ERROR;
                }
            }
            exit::OK
        }
        Command::Tables { dim, json } => {
            let rows = analysis::table_rows(dim as usize).expect("clap restricts dim to 4 or 5");
            if json {
                print_json(&rows);
            } else {
                println!(" f0   b2  check beta^2");
                for r in &rows {
                    println!("{r}");
                }
            }
            if rows.iter().all(|r| r.passes()) {
                exit::OK
            } else {
                exit::INVARIANT_VIOLATION
            }
        }
        Command::Fixtures { tol, json } => {
            let results: Vec<_> = fixtures::DIM6.par_iter().map(|f| analysis::fixture_report(f, tol)).collect();
            let mut reports = Vec::new();
            for r in results {
                match r {
                    Ok(r) => reports.push(r),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return exit::INPUT_ERROR;
                    }
                }
            }
            if json {
                print_json(&reports);
            } else {
                for r in &reports {
                    println!("{r}\n");
                }
            }
            exit::for_batch::<()>(reports.iter().map(|r| Ok(&r.violations[..])))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(exit::INPUT_ERROR),
            };
        }
    };
    ExitCode::from(run(cli))
}
