mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qh_core::exactpoly::MonomialOrder;

/// Quantum cohomology of blow-ups of P3 and Q3 along curves.
#[derive(Parser, Debug)]
#[command(name = "qh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the cohomology ring, curve lattice and geometric input.
    Describe { descriptor: PathBuf },
    /// Print the essential unknowns.
    Essential { descriptor: PathBuf },
    /// Build the associativity system; optionally its dimension and degree.
    Assoc {
        descriptor: PathBuf,
        #[arg(long)]
        analyze: bool,
        #[arg(long, value_enum, default_value_t = Order::Degrevlex)]
        order: Order,
    },
    /// Solve the associativity system with the geometric relations.
    Solve { descriptor: PathBuf },
    /// Print the quantized presentation.
    Present { descriptor: PathBuf },
    /// Compare against an expected-results file.
    Verify {
        descriptor: PathBuf,
        #[arg(long)]
        expect: PathBuf,
    },
    /// Test generic semisimplicity at random q (descriptor or .qhp file).
    Semisimple {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: u64,
    },
    /// Run every stage on each descriptor and print a JSON report.
    All {
        #[arg(required = true)]
        descriptors: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: u64,
        /// Include wall-clock timings (makes the report machine-dependent).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Degrevlex,
    Lex,
}

impl From<Order> for MonomialOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Degrevlex => MonomialOrder::DegRevLex,
            Order::Lex => MonomialOrder::Lex,
        }
    }
}

/// Exit quietly when stdout is closed early (`qh solve X | head`).
fn reset_sigpipe() {
    #[cfg(unix)]
    // SAFETY: called before any other thread exists; restores the default disposition.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Describe { descriptor } => commands::describe(&descriptor),
        Command::Essential { descriptor } => commands::essential(&descriptor),
        Command::Assoc {
            descriptor,
            analyze,
            order,
        } => commands::assoc(&descriptor, analyze, order.into()),
        Command::Solve { descriptor } => commands::solve(&descriptor),
        Command::Present { descriptor } => commands::present(&descriptor),
        Command::Verify { descriptor, expect } => commands::verify(&descriptor, &expect),
        Command::Semisimple {
            input,
            seed,
            trials,
        } => commands::semisimple(&input, seed, trials),
        Command::All {
            descriptors,
            seed,
            trials,
            timings,
        } => commands::all(&descriptors, seed, trials, timings),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = e.hint() {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
