//! Front end for the `gelfand` binary: spec parsing, report records, the
//! character-table cache and the command implementations.

pub mod cache;
pub mod commands;
pub mod report;
pub mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use gelfand_core::config::{DEFAULT_SEED, DEFAULT_SIZE_BUDGET};

pub use commands::{CliError, Context, Format, Method, Output};
pub use report::{CharacterVerdict, PairReport, ScanSummary, SCHEMA_VERSION};
pub use spec::{parse_group_spec, parse_pair_spec, GroupSpecAst, PairSpec, SpecError};

use crate::cache::{TableCache, CACHE_ENV};

#[derive(Debug, Parser)]
#[command(
    name = "gelfand",
    version,
    about = "Decide whether (G wr S_n, G wr S_(n-1)) is a Gelfand pair"
)]
pub struct Cli {
    /// Output format: aligned text or one JSON record per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for every randomized internal.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Character-table cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Do not read or write the character-table cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Largest group order any command will construct.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_BUDGET)]
    pub size_budget: usize,
    /// Largest group order for which a character table is computed.
    #[arg(long, global = true, default_value_t = commands::DEFAULT_CHARTAB_ORDER_LIMIT)]
    pub chartab_order_limit: usize,
    /// Largest class count for which a character table is computed.
    #[arg(long, global = true, default_value_t = gelfand_core::config::DEFAULT_CLASS_LIMIT)]
    pub class_limit: usize,
    /// Include wall-clock timings in pair reports.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one pair, e.g. `wr(S3,2)`, by the chosen criteria.
    PairCheck {
        pair: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Check `wr(B,n)` for every base B and confirm gelfand == abelian.
    Scan {
        #[arg(required = true)]
        bases: Vec<String>,
        #[arg(short, long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Predicted decomposition of the induced trivial representation.
    Branch { base: String, n: usize },
    /// Double cosets and structure constants of a pair.
    Hecke {
        pair: String,
        /// Print every c[i][j][k] (rank 12 or less).
        #[arg(long)]
        show_constants: bool,
    },
    /// Partition utilities.
    Partitions {
        #[command(subcommand)]
        command: PartitionsCommand,
    },
    /// Order, classes, commutativity and irreducible degrees of a group.
    Group { spec: String },
}

#[derive(Debug, Subcommand)]
pub enum PartitionsCommand {
    /// All partitions obtained by adding one box, e.g. `extend 3,3,2,2,2,1`.
    Extend {
        #[arg(default_value = "", allow_hyphen_values = true)]
        lambda: String,
    },
}

impl Cli {
    pub fn context(&self) -> Context {
        let cache = if self.no_cache {
            TableCache::disabled()
        } else {
            TableCache::resolve(self.cache_dir.clone())
        };
        let mut ctx = Context::new(self.size_budget, self.seed, cache);
        ctx.chartab.limits.chartab_order_limit = self.chartab_order_limit;
        ctx.chartab.limits.class_limit = self.class_limit;
        ctx.timings = self.timings;
        ctx
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let ctx = cli.context();
    let f = cli.format;
    match &cli.command {
        Command::PairCheck { pair, method } => commands::cmd_pair_check(&ctx, pair, *method, f),
        Command::Scan { bases, n, method } => commands::cmd_scan(&ctx, bases, *n, *method, f),
        Command::Branch { base, n } => commands::cmd_branch(&ctx, base, *n, f),
        Command::Hecke {
            pair,
            show_constants,
        } => commands::cmd_hecke(&ctx, pair, *show_constants, f),
        Command::Partitions {
            command: PartitionsCommand::Extend { lambda },
        } => commands::cmd_partitions_extend(lambda, f),
        Command::Group { spec } => commands::cmd_group(&ctx, spec, f),
    }
}
