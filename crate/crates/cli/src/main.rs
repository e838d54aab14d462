use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geores_cli::commands::read_file;
use geores_cli::{
    bench_csv, bench_rows, load_system, oracle_check, solve, verify_document, CliError,
    FiberDocument, SolveOptions, Sweep,
};

#[derive(Parser)]
#[command(
    name = "geores",
    version,
    about = "Kronecker representations of polynomial systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug, Default)]
struct SolveFlags {
    /// Seed of the random choices.
    #[arg(long)]
    seed: Option<u64>,
    /// Failure probability per attempt, as a decimal or a fraction.
    #[arg(long)]
    epsilon: Option<String>,
    /// Starting bound on the fiber degrees.
    #[arg(long = "delta-bound")]
    delta_bound: Option<u64>,
    /// Attempts after the first one.
    #[arg(long)]
    retries: Option<u32>,
    /// Re-check every lifted curve.
    #[arg(long = "check-curves")]
    check_curves: bool,
    /// Never move to an extension field; fail if the field is too small.
    #[arg(long = "no-extension")]
    no_extension: bool,
}

impl From<&SolveFlags> for SolveOptions {
    fn from(f: &SolveFlags) -> Self {
        SolveOptions {
            seed: f.seed,
            epsilon: f.epsilon.clone(),
            delta_bound: f.delta_bound,
            retries: f.retries,
            check_curves: f.check_curves,
            no_extension: f.no_extension,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a system and print its fiber as one JSON line.
    Solve {
        #[arg(short = 'f', long = "file")]
        file: String,
        #[command(flatten)]
        flags: SolveFlags,
    },
    /// Check a fiber document against a system.
    Verify {
        /// The fiber document.
        #[arg(short = 'f', long = "file")]
        file: String,
        /// The system file.
        #[arg(short = 's', long = "system")]
        system: String,
    },
    /// Compare the solver against brute-force enumeration.
    OracleCheck {
        #[arg(short = 'f', long = "file")]
        file: String,
        #[command(flatten)]
        flags: SolveFlags,
    },
    /// Time a ladder of random systems and print CSV.
    Bench {
        /// Ladder such as `d=2,4,8` or `n=2..4;d=2`.
        #[arg(long)]
        sweep: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { file, flags } => {
            let spec = load_system(&file)?;
            let doc = solve(&spec, &(&flags).into())?;
            println!("{}", doc.to_line());
        }
        Command::Verify { file, system } => {
            let doc = FiberDocument::from_text(&read_file(&file)?)?;
            let spec = load_system(&system)?;
            let out = verify_document(&doc, &spec)?;
            println!(
                "{}",
                serde_json::to_string(&out).expect("reports serialize")
            );
            if !out.passed {
                return Err(CliError::Rejected(out.failures.join(", ")));
            }
        }
        Command::OracleCheck { file, flags } => {
            let spec = load_system(&file)?;
            let report = oracle_check(&spec, &(&flags).into())?;
            println!(
                "{}",
                serde_json::to_string(&report).expect("reports serialize")
            );
            if !report.matched() {
                return Err(CliError::Rejected(format!(
                    "oracle outcome {}",
                    report.outcome
                )));
            }
        }
        Command::Bench { sweep, seed } => {
            let sweep = Sweep::parse(&sweep).map_err(|e| CliError::Usage(e.to_string()))?;
            print!("{}", bench_csv(&bench_rows(&sweep, seed)));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
