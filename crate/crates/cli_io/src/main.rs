use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::FalseyValueParser;
use clap::{ArgAction, Parser, Subcommand};

use cli_io::canonical::canonical_bytes;
use cli_io::commands::{self, error_document, MultiplierOptions, Outcome, Settings};
use cli_io::workspace::Workspace;
use cli_io::{CliError, Result};

#[derive(Parser)]
#[command(name = "catalg", version, about = "Checks algebras, representations and ucp multipliers in unitary fusion categories")]
struct Cli {
    /// Overrides the tolerance recorded in category documents.
    #[arg(long, global = true, env = "CATALG_TOLERANCE")]
    tolerance: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "CATALG_SEED", default_value_t = 0)]
    seed: u64,
    /// Print the full JSON report instead of one line per check.
    #[arg(long, global = true, env = "CATALG_JSON", action = ArgAction::SetTrue, value_parser = FalseyValueParser::new())]
    json: bool,
    /// Print nothing; the exit code carries the verdict.
    #[arg(long, global = true, env = "CATALG_QUIET", action = ArgAction::SetTrue, value_parser = FalseyValueParser::new())]
    quiet: bool,
    /// Directory for emitted documents.
    #[arg(long, global = true, env = "CATALG_OUT")]
    out: Option<PathBuf>,
    /// Directory searched for documents whose reference path is stale.
    #[arg(long, global = true, env = "CATALG_ROOT")]
    root: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a fusion category.
    Validate { category: PathBuf },
    /// Check an algebra object.
    Algebra {
        algebra: PathBuf,
        #[arg(long)]
        star: bool,
        #[arg(long)]
        cstar: bool,
        /// Check the Pimsner–Popa bound of the conditional expectations onto each fiber.
        #[arg(long)]
        expectations: bool,
    },
    /// GNS construction of a state.
    Gns { algebra: PathBuf, state: PathBuf },
    /// Gelfand–Naimark embedding into B(L²).
    Embed { algebra: PathBuf },
    /// Stinespring dilation of a ucp multiplier into B(H).
    Stinespring { multiplier: PathBuf },
    /// Commutant of a representation.
    Commutant {
        representation: PathBuf,
        #[arg(long)]
        bicommutant: bool,
        #[arg(long)]
        modular: bool,
        /// State used for the modular conjugation; the regular trace by default.
        #[arg(long, requires = "modular")]
        trace: Option<PathBuf>,
    },
    /// Complete positivity, classification and convergence of a multiplier.
    Multiplier {
        multiplier: PathBuf,
        #[arg(long, value_name = "EPSILON")]
        classify: Option<f64>,
        /// Members of a net of multipliers, in order.
        #[arg(long, num_args = 1..)]
        net: Vec<PathBuf>,
        /// Labels (by index) for the windowed residual.
        #[arg(long, num_args = 1.., requires = "net")]
        window: Option<Vec<usize>>,
        /// Group algebra for the cross-check of a quantum-group multiplier.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
}

impl Command {
    fn primary(&self) -> &Path {
        match self {
            Command::Validate { category } => category,
            Command::Algebra { algebra, .. } | Command::Gns { algebra, .. } | Command::Embed { algebra } => algebra,
            Command::Stinespring { multiplier } | Command::Multiplier { multiplier, .. } => multiplier,
            Command::Commutant { representation, .. } => representation,
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let root = match &cli.root {
        Some(r) => r.clone(),
        None => cli.command.primary().parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let mut ws = Workspace::new(root, cli.tolerance);
    let settings = Settings { seed: cli.seed, out: cli.out.clone() };
    let out = match &cli.command {
        Command::Validate { category } => commands::cmd_validate(&mut ws, &settings, category)?,
        Command::Algebra { algebra, star, cstar, expectations } => {
            commands::cmd_algebra(&mut ws, &settings, algebra, *star, *cstar, *expectations)?
        }
        Command::Gns { algebra, state } => commands::cmd_gns(&mut ws, &settings, algebra, state)?,
        Command::Embed { algebra } => commands::cmd_embed(&mut ws, &settings, algebra)?,
        Command::Stinespring { multiplier } => commands::cmd_stinespring(&mut ws, &settings, multiplier)?,
        Command::Commutant { representation, bicommutant, modular, trace } => {
            commands::cmd_commutant(&mut ws, &settings, representation, *bicommutant, *modular, trace.as_deref())?
        }
        Command::Multiplier { multiplier, classify, net, window, algebra } => {
            let opts = MultiplierOptions { classify: *classify, net: net.clone(), window: window.clone(), algebra: algebra.clone() };
            commands::cmd_multiplier(&mut ws, &settings, multiplier, &opts)?
        }
    };
    if let Some(dir) = &cli.out {
        out.write(dir)?;
    }
    Ok(out)
}

fn print_error(e: &CliError, json: bool) {
    if json {
        eprintln!("{}", error_document(e));
    } else {
        eprintln!("error: {e}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let r = &out.report;
            if !cli.quiet {
                if cli.json {
                    match canonical_bytes(r) {
                        Ok(bytes) => println!("{}", String::from_utf8_lossy(&bytes)),
                        Err(e) => {
                            print_error(&e, true);
                            return ExitCode::from(2);
                        }
                    }
                } else {
                    print!("{}", r.render());
                    if let Some(dir) = &cli.out {
                        for o in &r.outputs {
                            println!("wrote {}", dir.join(&o.path).display());
                        }
                    }
                }
            }
            if r.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if !cli.quiet {
                print_error(&e, cli.json);
            }
            ExitCode::from(2)
        }
    }
}
