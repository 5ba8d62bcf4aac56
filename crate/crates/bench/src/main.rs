use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jensen_bench::config::parse_range;
use jensen_bench::{run_suite, sweep, write_csv, BenchError, Suite, SuiteConfig};

#[derive(Parser)]
#[command(
    version,
    about = "Verify and sweep dyadic refinements of Young- and Jensen-type inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized inequality suites and write a JSON summary.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Scalar instances.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Relative tolerance of the scalar chains.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 5)]
        max_depth: u32,
        /// Matrix dimensions as MIN..MAX.
        #[arg(long, default_value = "2..6", value_parser = parse_range::<usize>)]
        dims: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
        /// Make every other matrix fixture complex.
        #[arg(long)]
        complex: bool,
        #[arg(long)]
        no_timestamp: bool,
        #[arg(long, default_value_t = 200)]
        matrix_trials: u64,
        #[arg(long, default_value_t = 4)]
        matrix_max_depth: u32,
        /// PSD tolerance scale of the matrix chains.
        #[arg(long, default_value_t = 1e-8)]
        matrix_tol: f64,
        /// Scalars are drawn from [10^-R, 10^R].
        #[arg(long, default_value_t = 3.0)]
        range_exp: f64,
        #[arg(long, default_value_t = 1e3)]
        cond_max: f64,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Evaluate one bound family over a (v, N) grid and write CSV.
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 33)]
        grid: usize,
        /// Depths as LO..HI (inclusive).
        #[arg(long, default_value = "0..3", value_parser = parse_range::<u32>)]
        depths: (u32, u32),
        #[arg(long)]
        csv: PathBuf,
    },
}

fn run(cli: Cli) -> Result<i32, BenchError> {
    match cli.command {
        Command::Verify {
            suite,
            trials,
            seed,
            tol,
            max_depth,
            dims,
            out,
            complex,
            no_timestamp,
            matrix_trials,
            matrix_max_depth,
            matrix_tol,
            range_exp,
            cond_max,
            inject_fault,
        } => {
            let cfg = SuiteConfig {
                suite,
                trials,
                seed,
                max_depth,
                dim_range: dims,
                tol,
                matrix_trials,
                matrix_max_depth,
                matrix_tol,
                complex,
                range_exp,
                cond_max,
                timestamp: !no_timestamp,
                out_path: out,
                inject_fault,
            };
            let outcome = run_suite(&cfg)?;
            for (name, s) in &outcome.families {
                let worst = s.worst.as_ref().map_or(f64::NAN, |w| w.relative_slack);
                println!(
                    "{:<8} {:<20} {:>9} checks {:>6} failed  min slack/tol {:+.3e}",
                    s.suite, name, s.checks, s.failed, worst
                );
            }
            let failing = outcome.failing_families();
            if failing.is_empty() {
                println!("PASS");
            } else {
                println!("FAIL: {}", failing.join(", "));
            }
            Ok(outcome.exit_code)
        }
        Command::Sweep {
            family,
            a,
            b,
            grid,
            depths,
            csv,
        } => {
            let rows = sweep(&family, a, b, grid, depths)?;
            write_csv(&rows, &csv)?;
            println!("{} rows written to {}", rows.len(), csv.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
