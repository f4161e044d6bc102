mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mfrob_core::blocks::DEFAULT_CENTRE_BOUND;
use mfrob_core::chars::clifford::DEFAULT_ORBIT_BOUND;
use mfrob_core::chars::linear::DEFAULT_IRR_BOUND;
use mfrob_core::chars::DEFAULT_TABLE_BOUND;
use mfrob_core::exactnum::DEFAULT_PRIME_SEARCH_BOUND;
use mfrob_core::groups::checks::DEFAULT_COMM_BOUND;

#[derive(Parser, Debug)]
#[command(name = "mfrob", version, about = "Blocks, Frobenius twists and Morita Frobenius numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Morita Frobenius number of a block B_theta.
    Mfn(MfnArgs),
    /// Run the verification checks.
    Verify(VerifyArgs),
    /// List the blocks with idempotents, ranks and (when computable) Cartan data.
    Blocks(BlocksArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, env = "MFROB_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Accept p with p - 1 a power of l.
    #[arg(long)]
    pub machinery_mode: bool,
    /// Add wall-clock timing to the report; makes output run-dependent.
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub bounds: Bounds,
}

#[derive(Args, Debug, Clone)]
pub struct Bounds {
    #[arg(long, default_value_t = DEFAULT_PRIME_SEARCH_BOUND)]
    pub prime_bound: u64,
    #[arg(long, default_value_t = DEFAULT_TABLE_BOUND)]
    pub table_bound: usize,
    #[arg(long, default_value_t = DEFAULT_ORBIT_BOUND)]
    pub orbit_bound: u64,
    #[arg(long, default_value_t = DEFAULT_IRR_BOUND)]
    pub irr_bound: u64,
    #[arg(long, default_value_t = DEFAULT_COMM_BOUND)]
    pub comm_bound: u64,
    #[arg(long, default_value_t = DEFAULT_CENTRE_BOUND)]
    pub centre_bound: u64,
}

#[derive(Args, Debug, Clone)]
pub struct MfnArgs {
    #[arg(long)]
    pub l: u32,
    /// Target number; p is searched for when not given.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub t1: Option<u32>,
    #[arg(long)]
    pub t2: Option<u32>,
    /// Order of theta; defaults to l^n - 1, or |Z_l'| without --n.
    #[arg(long)]
    pub theta_order: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Levels {
    /// Sets t1 = t2 = t.
    #[arg(long, conflicts_with_all = ["t1", "t2"])]
    pub t: Option<u32>,
    #[arg(long)]
    pub t1: Option<u32>,
    #[arg(long)]
    pub t2: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub l: u32,
    #[arg(long)]
    pub p: u32,
    #[command(flatten)]
    pub levels: Levels,
    /// Comma-separated checks: fpstable, comm, faithful, autos, dkernel, twistperm, partition.
    #[arg(long, value_delimiter = ',', required_unless_present = "all", conflicts_with = "all")]
    pub which: Vec<String>,
    #[arg(long)]
    pub all: bool,
    /// Random G pairs per automorphism.
    #[arg(long, default_value_t = 1000)]
    pub random_pairs: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct BlocksArgs {
    #[arg(long, default_value_t = 2)]
    pub l: u32,
    #[arg(long)]
    pub p: u32,
    #[command(flatten)]
    pub levels: Levels,
    /// Skip character data even when it is computable.
    #[arg(long)]
    pub no_characters: bool,
    #[command(flatten)]
    pub common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_status().into()
        }
    }
}
