use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cr_secrecy::cli::{self, Overrides};
use cr_secrecy::{db_to_linear, direct_outage_closed_form, Error};

#[derive(Parser)]
#[command(name = "crsec", version)]
#[command(about = "Secrecy outage simulation for cognitive radio links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a config file and write the CSV table
    Run {
        /// Config file (TOML)
        #[arg(long)]
        config: PathBuf,
        /// Trials per grid point (overrides `trials`)
        #[arg(long)]
        trials: Option<u64>,
        /// Base seed (overrides `seed`)
        #[arg(long)]
        seed: Option<u64>,
        /// CSV output path (overrides `output`)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render a CSV table as an SVG plot
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Print the closed-form direct-link outage probability (perfect sensing)
    Oracle {
        /// Cognitive transmit SNR in dB
        #[arg(long, allow_hyphen_values = true)]
        gamma_s_db: f64,
        /// Target secrecy rate in bit/s/Hz
        #[arg(long)]
        rs: f64,
        /// Mean power of the source-to-destination link
        #[arg(long)]
        sigma_sd: f64,
        /// Mean power of the source-to-eavesdropper link
        #[arg(long)]
        sigma_se: f64,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run {
            config,
            trials,
            seed,
            output,
        } => {
            let overrides = Overrides {
                trials,
                seed,
                output,
            };
            let spec = cli::load_config_with(&config, &overrides)?;
            let workers = cli::workers_from_env()?;
            eprintln!("# effective configuration");
            eprint!("{}", spec.to_toml());
            let table = cli::run_experiment(&spec, workers)?;
            eprintln!(
                "wrote {} rows to {}",
                table.rows.len(),
                spec.output_path.display()
            );
        }
        Command::Plot { input, output } => {
            cli::emit_plot(&input, &output)?;
        }
        Command::Oracle {
            gamma_s_db,
            rs,
            sigma_sd,
            sigma_se,
        } => {
            let gamma_s = db_to_linear(gamma_s_db)?;
            let p = direct_outage_closed_form(gamma_s, sigma_sd, sigma_se, rs)?;
            println!("{}", cli::table::format_f64(p));
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
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
