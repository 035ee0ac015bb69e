use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mermin_sim::experiment::render_exchange;
use mermin_sim::{
    collapse, lr_bound_bruteforce, render_report, run_exchange_test, run_experiment,
    run_invariant_suite, ExchangeConfig, ExperimentConfig, NoiseModel, ReportFormat, SetupConfig,
    SetupId, SimError,
};

#[derive(Parser)]
#[command(
    name = "mermin",
    version,
    about = "Simulated Mermin-inequality tests on GHZ states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one setup and compare with its bounds.
    Run {
        #[arg(long)]
        qubits: usize,
        #[arg(long, value_parser = parse_setup)]
        setup: SetupId,
        #[arg(long, default_value_t = 16384)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// p1,p2,readout
        #[arg(long, value_parser = parse_noise)]
        noise: Option<NoiseModel>,
        #[arg(long)]
        expand_permutations: bool,
        #[arg(long, default_value_t = 3.0)]
        k_sigma: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Measure XXY, XYX, YXX as separate circuits.
    ExchangeTest {
        #[arg(long, default_value_t = 16384)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_noise)]
        noise: Option<NoiseModel>,
        /// 4 or 5 also need --allow-general.
        #[arg(long, default_value_t = 3)]
        qubits: usize,
        #[arg(long)]
        allow_general: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Print the polynomial, LR bound (brute force) and QM value.
    Bounds {
        #[arg(long)]
        qubits: usize,
        #[arg(long, value_parser = parse_setup)]
        setup: SetupId,
    },
    /// Run the invariant suite; exits 2 on any failure.
    Verify {
        #[arg(long, default_value_t = 5)]
        seeds: u64,
    },
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: SimError| e.to_string())
}

fn parse_setup(s: &str) -> Result<SetupId, String> {
    s.parse().map_err(|e: SimError| e.to_string())
}

fn parse_noise(s: &str) -> Result<NoiseModel, String> {
    NoiseModel::parse_triple(s).map_err(|e| e.to_string())
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), SimError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| SimError::Config(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_code(e: &SimError) -> u8 {
    match e {
        SimError::Invariant(_) | SimError::NotEigenvector { .. } | SimError::Serialize(_) => 2,
        _ => 1,
    }
}

fn execute(command: Command) -> Result<u8, SimError> {
    match command {
        Command::Run {
            qubits,
            setup,
            shots,
            seed,
            noise,
            expand_permutations,
            k_sigma,
            output,
        } => {
            let cfg = ExperimentConfig {
                noise: noise.unwrap_or_default(),
                expand_permutations,
                k_sigma,
                format: output.format,
                ..ExperimentConfig::new(qubits, setup)
                    .with_shots(shots)
                    .with_seed(seed)
            };
            let report = run_experiment(&cfg)?;
            emit(&render_report(&report, output.format)?, &output.out)?;
        }
        Command::ExchangeTest {
            shots,
            seed,
            noise,
            qubits,
            allow_general,
            output,
        } => {
            let cfg = ExchangeConfig {
                n: qubits,
                allow_general,
                ..ExchangeConfig::new(shots, seed, noise.unwrap_or_default())
            };
            let report = run_exchange_test(&cfg)?;
            emit(&render_exchange(&report, output.format)?, &output.out)?;
        }
        Command::Bounds { qubits, setup } => {
            let s = SetupConfig::new(qubits, setup)?;
            let brute = lr_bound_bruteforce(&s.polynomial)?;
            println!("polynomial  {}", s.polynomial.name);
            println!("ghz phase   {:.6}", s.ghz_phase);
            println!("lr bound    {brute}");
            println!("qm value    {:.6}", s.qm_value);
            for c in collapse(&s.polynomial)? {
                println!(
                    "  {:>6} × {:<2} {}",
                    c.coefficient.to_string(),
                    c.multiplicity,
                    c.representative(qubits)
                );
            }
            if brute != s.lr_bound {
                return Err(SimError::Invariant(format!(
                    "brute-force bound {brute} differs from stored {}",
                    s.lr_bound
                )));
            }
        }
        Command::Verify { seeds } => {
            let checks = run_invariant_suite(seeds);
            let mut failed = false;
            for c in &checks {
                println!(
                    "{} {:<22} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
                failed |= !c.passed;
            }
            if failed {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
