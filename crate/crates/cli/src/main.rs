use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use filterfn::sim::{Execution, DEFAULT_REPLICATIONS};
use filterfn_cli::{
    cmd_simulate, eval_table, parse_columns, read_model, render_table, CliError, EventSelector,
    SimulateOptions,
};

#[derive(Parser)]
#[command(
    name = "filterfn",
    version,
    about = "Filter functions over finite universes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Model file
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated filter names, e.g. bel,pl,upper_k:2
    #[arg(long)]
    filters: String,
    /// all, nonempty, singletons or members
    #[arg(long, default_value = "all")]
    events: String,
    /// Also report the empty event
    #[arg(long)]
    include_empty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print filter values for a set of events
    Eval {
        #[command(flatten)]
        common: Common,
    },
    /// Sample from the model and write sampling-distribution reports
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated sample sizes
        #[arg(long, value_delimiter = ',', required = true)]
        nobs: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_REPLICATIONS)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Run replications on one thread
        #[arg(long)]
        sequential: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { common } => {
            let model = read_model(&common.model)?;
            let columns = parse_columns(&common.filters)?;
            let selector: EventSelector = common.events.parse()?;
            let events = selector.events(&model, common.include_empty);
            let table = eval_table(&model, &columns, &events)?;
            print!("{}", render_table(&model, &table));
        }
        Command::Simulate {
            common,
            nobs,
            reps,
            seed,
            out,
            sequential,
        } => {
            let model = read_model(&common.model)?;
            let opts = SimulateOptions {
                filters: parse_columns(&common.filters)?,
                sample_sizes: nobs,
                replications: reps,
                seed,
                events: common.events.parse()?,
                include_empty: common.include_empty,
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::default()
                },
            };
            for path in cmd_simulate(&model, &opts, &out)? {
                println!("{}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
