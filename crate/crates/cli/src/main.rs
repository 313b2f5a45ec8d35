mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{CliError, Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "tclab", version, about = "Escape times, Hilbert-Kunz values and Frobenius-power membership for line-S4 quartics")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Worker threads (default: available parallelism).
    #[arg(long, env = "TCLAB_JOBS", global = true)]
    jobs: Option<usize>,

    /// Include wall-clock timing (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Escape time of an element, or the stored table of representatives.
    Escape(commands::escape::Args),
    /// Degree, squarefreeness and factorization of G_n.
    Gn(commands::gn::Args),
    /// Hilbert-Kunz values e_n.
    Hk(commands::hk::Args),
    /// Membership and lemma checks.
    Verify(commands::verify::Args),
    /// Brute-force binomial parity over the tiling region.
    Parity(commands::parity::Args),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Escape(_) => "escape",
            Command::Gn(_) => "gn",
            Command::Hk(_) => "hk",
            Command::Verify(v) => v.name(),
            Command::Parity(_) => "parity",
        }
    }

    fn run(&self, seed: u64) -> Result<Outcome, CliError> {
        match self {
            Command::Escape(a) => commands::escape::run(a),
            Command::Gn(a) => commands::gn::run(a),
            Command::Hk(a) => commands::hk::run(a, seed),
            Command::Verify(a) => commands::verify::run(a, seed),
            Command::Parity(a) => commands::parity::run(a),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool is configured once");
    }
    let start = std::time::Instant::now();
    match cli.command.run(cli.seed) {
        Ok(outcome) => {
            let elapsed = cli.timing.then(|| start.elapsed());
            let report = Report::new(cli.command.name(), cli.seed, outcome, elapsed);
            match report.render(cli.format) {
                Ok(s) => print!("{s}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
