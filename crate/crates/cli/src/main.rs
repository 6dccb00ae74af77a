use std::io::{self, Write};
use std::path::PathBuf;
use std::process::exit;

use clap::{Parser, Subcommand};
use dmra::{Algorithm, CodeKind};
use dmra_cli::commands::{self, CliError};
use dmra_cli::sweep::SweepConfig;

#[derive(Parser)]
#[command(
    name = "dmra",
    version,
    about = "Covering-array codes for downlink random access"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a covering array and write it to a file
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
        /// greedy or density
        #[arg(long, default_value = "density")]
        algo: Algorithm,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that an array file covers every pattern
    Verify { path: PathBuf },
    /// Encode one activity pattern
    Encode {
        path: PathBuf,
        /// Comma-separated 1-based active users, e.g. 1,3
        #[arg(long)]
        active: String,
        /// Comma-separated messages, one per active user
        #[arg(long)]
        messages: String,
        #[arg(long, default_value = "huffman")]
        code: CodeKind,
    },
    /// Decode a frame as the user at a given position
    Decode {
        path: PathBuf,
        #[arg(long)]
        bits: String,
        #[arg(long)]
        position: usize,
        #[arg(long, default_value = "huffman")]
        code: CodeKind,
    },
    /// Report entropy, code lengths and bounds for an array file
    Analyze {
        path: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build and analyze over a range of n, writing CSV
    Sweep {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        n_step: usize,
        #[arg(long, default_value = "density")]
        algo: Algorithm,
        /// CSV destination; stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write 0 for build times so the output is reproducible
        #[arg(long)]
        no_timing: bool,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Build {
            n,
            k,
            q,
            algo,
            out: path,
        } => commands::cmd_build(n, k, q, algo, &path, out),
        Command::Verify { path } => commands::cmd_verify(&path, out),
        Command::Encode {
            path,
            active,
            messages,
            code,
        } => commands::cmd_encode(&path, &active, &messages, code, out),
        Command::Decode {
            path,
            bits,
            position,
            code,
        } => commands::cmd_decode(&path, &bits, position, code, out),
        Command::Analyze { path, csv } => commands::cmd_analyze(&path, csv.as_deref(), out),
        Command::Sweep {
            k,
            q,
            n_min,
            n_max,
            n_step,
            algo,
            out: path,
            no_timing,
        } => {
            let config = SweepConfig {
                k,
                q,
                n_min,
                n_max,
                n_step,
                algorithm: algo,
                timing: !no_timing,
                memory_budget: dmra::coverage::DEFAULT_MEMORY_BUDGET,
            };
            commands::cmd_sweep(config, path.as_deref(), out)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    exit(code);
}
