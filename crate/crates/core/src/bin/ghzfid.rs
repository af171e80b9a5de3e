use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ghz_fidelity::io::datasets::dataset;
use ghz_fidelity::io::simulate::{preset_terms, simulate, SimulationConfig};
use ghz_fidelity::io::{
    parse_input, parse_observable_input, read_document, run_analysis, run_class_check,
    run_spectrum, Format,
};
use ghz_fidelity::oracle::verify::{run_all, VerifyConfig};
use ghz_fidelity::oracle::EIGEN_MAX_N;
use ghz_fidelity::{Error, Result};

/// Fidelity bounds and entanglement verdicts for GHZ-stabilizer observables.
///
/// Input files follow the versioned JSON schema described in the README.
/// A file argument of `-` reads standard input; `@name` loads a bundled
/// dataset (pan2000, case1, case2, case3, canonical_n).
#[derive(Parser)]
#[command(name = "ghzfid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity bounds, witness verdict, minimum-variance estimate and uncertainty.
    Analyze {
        file: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Width of the <A> ± kσ interval.
        #[arg(long)]
        sigma_k: Option<f64>,
        /// Report raw bounds instead of clipping them to [0, 1].
        #[arg(long)]
        no_clamp: bool,
        /// Fail with exit code 4 instead of falling back to the exact range.
        #[arg(long)]
        require_class: bool,
    },
    /// Eigenvalues of the observable with multiplicities.
    Spectrum {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Whether the observable is a positive combination of generators (exit 4 if not).
    CheckClass {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-check the algebra against dense matrices (exit 5 on failure).
    OracleVerify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simulated data for the noisy GHZ state V·|GHZ⟩⟨GHZ| + (1 - V)·I/2^n.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        visibility: f64,
        /// Input file or preset (pan2000, four-setting, case1, case2, case3, canonical).
        #[arg(long, default_value = "canonical")]
        observable: String,
        /// Shots per setting; omit for exact expectations.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the analysis of the simulated data instead of the data itself.
        #[arg(long)]
        analyze: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn load(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(name) => dataset(name)
            .map(str::to_string)
            .ok_or_else(|| Error::Io(format!("no bundled dataset named {name:?}"))),
        None => read_document(arg),
    }
}

fn emit(format: Format, text: String, json: String) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{json}"),
    }
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable")
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze {
            file,
            format,
            sigma_k,
            no_clamp,
            require_class,
        } => {
            let mut req = parse_input(&load(&file)?)?;
            if let Some(k) = sigma_k {
                req.options.sigma_k = k;
            }
            if no_clamp {
                req.options.clamp = false;
            }
            req.validate()?;
            if require_class {
                run_class_check(&req)?.class.require()?;
            }
            let report = run_analysis(&req)?;
            emit(
                format.unwrap_or(req.options.format),
                report.render_text(),
                report.to_json(),
            );
        }
        Command::Spectrum { file, format } => {
            let report = run_spectrum(&parse_observable_input(&load(&file)?)?)?;
            emit(format, report.render_text(), json(&report));
        }
        Command::CheckClass { file, format } => {
            let report = run_class_check(&parse_observable_input(&load(&file)?)?)?;
            emit(format, report.render_text(), json(&report));
            report.class.require()?;
        }
        Command::OracleVerify {
            max_n,
            trials,
            seed,
        } => {
            if !(2..=EIGEN_MAX_N).contains(&max_n) {
                return Err(Error::Schema {
                    path: "max-n".into(),
                    message: format!("must be in 2..={EIGEN_MAX_N}"),
                });
            }
            let report = run_all(VerifyConfig {
                max_n,
                trials,
                seed,
            });
            println!("{report}");
            report.into_result()?;
        }
        Command::Simulate {
            n,
            visibility,
            observable,
            shots,
            seed,
            analyze,
            format,
        } => {
            let terms =
                if std::path::Path::new(&observable).is_file() || observable.starts_with('@') {
                    let req = parse_observable_input(&load(&observable)?)?;
                    if req.n != n {
                        return Err(Error::SizeMismatch(n, req.n));
                    }
                    req.terms
                        .into_iter()
                        .map(|t| (t.setting, t.coefficient))
                        .collect()
                } else {
                    preset_terms(&observable, n)?
                };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let req = simulate(
                &SimulationConfig {
                    n,
                    visibility,
                    shots,
                },
                &terms,
                &mut rng,
            )?;
            if analyze {
                let report = run_analysis(&req)?;
                emit(format, report.render_text(), report.to_json());
            } else {
                println!("{}", json(&req));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("GHZFID_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
