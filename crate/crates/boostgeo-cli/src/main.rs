use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use boostgeo_cli::commands::{cmd_invariants, cmd_mesh, cmd_p1t, cmd_verify};
use boostgeo_cli::config::RunConfig;

#[derive(Parser)]
#[command(
    name = "boostgeo",
    version,
    about = "Differential invariants of boost-invariant spacelike surfaces in Minkowski 4-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate s, a, b, c, d, K, h1, h2, H_norm2, A, B, D, N as CSV
    Invariants(RunArgs),
    /// Decide whether the Gauss map satisfies Delta G = f (G + C) on the grid
    P1t(RunArgs),
    /// Check a generated family against its expected properties
    Verify(RunArgs),
    /// Export the sampled immersion as an OBJ mesh
    Mesh(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// Output file (default: the config's `output`, else stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            // A closed stdout (e.g. piping into `head`) is not a failure.
            let broken_pipe = err
                .chain()
                .filter_map(|cause| cause.downcast_ref::<io::Error>())
                .any(|io_err| io_err.kind() == io::ErrorKind::BrokenPipe);
            if broken_pipe {
                return 0;
            }
            eprintln!("error: {err:#}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Invariants(args) => stream_command(args, cmd_invariants),
        Command::Mesh(args) => stream_command(args, cmd_mesh),
        Command::P1t(args) => report_command(args, cmd_p1t),
        Command::Verify(args) => report_command(args, cmd_verify),
    }
}

/// Commands whose whole output is one stream: a file when an output path is
/// given, stdout otherwise.
fn stream_command(
    args: &RunArgs,
    f: impl Fn(&RunConfig, &mut dyn Write) -> Result<i32>,
) -> Result<i32> {
    let config = RunConfig::load(&args.config)?;
    match args.out.clone().or_else(|| config.output.clone()) {
        Some(path) => {
            let file = fs::File::create(&path)
                .with_context(|| format!("cannot create output {}", path.display()))?;
            let mut writer = io::BufWriter::new(file);
            let code = f(&config, &mut writer)?;
            writer.flush()?;
            Ok(code)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&config, &mut lock)
        }
    }
}

/// Commands that print a human-readable report to stdout and mirror it as
/// JSON to the output path when one is given.
fn report_command(
    args: &RunArgs,
    f: impl Fn(&RunConfig, &mut dyn Write, Option<&mut dyn Write>) -> Result<i32>,
) -> Result<i32> {
    let config = RunConfig::load(&args.config)?;
    let stdout = io::stdout();
    let mut text = stdout.lock();
    match args.out.clone().or_else(|| config.output.clone()) {
        Some(path) => {
            let file = fs::File::create(&path)
                .with_context(|| format!("cannot create output {}", path.display()))?;
            let mut writer = io::BufWriter::new(file);
            let code = f(&config, &mut text, Some(&mut writer))?;
            writer.flush()?;
            Ok(code)
        }
        None => f(&config, &mut text, None),
    }
}
