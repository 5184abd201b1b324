use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pacs_core::error::Error;
use pacs_core::lie::json::export_json;
use pacs_core::lie::FamilySpec;
use pacs_core::linalg::float::Mode;
use pacs_core::report::{compare_golden, run, to_csv, RunConfig, Suite, DEFAULT_FAMILIES, LARGE_FAMILIES};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "pacs", version, about = "Exact checks for contact gradings and their torsion and curvature spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify {
        /// Family label such as SL:2, SU:1,1, SO:3,0, SO_STAR:2, G2, F4 (repeatable).
        #[arg(long = "family")]
        families: Vec<String>,
        /// Suite name (repeatable); all suites when omitted.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Run the default family set.
        #[arg(long)]
        all: bool,
        /// Add E6, E7 and E8 to --all.
        #[arg(long)]
        include_large: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random probes for the maximality suite.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Size above which float-fallback mode uses floating point ranks or skips exact-only suites.
        #[arg(long, default_value_t = pacs_core::linalg::float::DEFAULT_THRESHOLD)]
        threshold: usize,
        /// Read the run configuration from a JSON file instead of flags.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the flattened dimension table.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare a report against a golden file, ignoring timings.
    Compare {
        #[arg(long)]
        golden: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Write an algebra's structure constants and metadata as JSON.
    Export {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify_config(cmd: &Command) -> Result<RunConfig, Error> {
    let Command::Verify { families, suites, all, include_large, seed, trials, mode, threshold, config, .. } = cmd
    else {
        unreachable!()
    };
    if let Some(path) = config {
        return Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?);
    }
    let mut fams = families.clone();
    if *all {
        fams.extend(DEFAULT_FAMILIES.iter().map(|s| s.to_string()));
    }
    if *include_large {
        if !all {
            return Err(Error::Usage("--include-large only extends --all".into()));
        }
        if matches!(mode, ModeArg::Exact) {
            eprintln!("warning: E6-E8 in exact mode can run for a long time; consider --mode float");
        }
        fams.extend(LARGE_FAMILIES.iter().map(|s| s.to_string()));
    }
    let suites = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let mode = match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::FloatFallback { threshold: *threshold },
    };
    let mut cfg = RunConfig::new(fams, suites, mode, Some(*seed));
    cfg.trials = *trials;
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<u8, Error> {
    match &cli.command {
        cmd @ Command::Verify { out, csv, .. } => {
            let report = run(&verify_config(cmd)?)?;
            write_or_print(out.as_ref(), &report.to_json())?;
            if let Some(p) = csv {
                std::fs::write(p, to_csv(&report))?;
            }
            for o in report.families.iter().flat_map(|f| f.suites.iter().map(move |o| (&f.family, o))) {
                eprintln!("{:<10} {:<13} {:?}{}", o.0, o.1.suite.name(), o.1.status, if o.1.probabilistic { " (probabilistic)" } else { "" });
            }
            Ok(if report.passed() { 0 } else { EXIT_FAILED })
        }
        Command::Compare { golden, report } => {
            let diffs = compare_golden(report, golden)?;
            if diffs.is_empty() {
                eprintln!("reports match");
                Ok(0)
            } else {
                for d in &diffs {
                    println!("{d}");
                }
                Ok(EXIT_FAILED)
            }
        }
        Command::Export { algebra, out } => {
            let spec: FamilySpec = algebra.parse().map_err(|e| Error::Usage(format!("{e}")))?;
            write_or_print(out.as_ref(), &export_json(&spec.build()?))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ (Error::Usage(_) | Error::Json(_) | Error::Io(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}
