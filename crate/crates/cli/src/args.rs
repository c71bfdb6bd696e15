use std::path::PathBuf;

use candynim::harness::Profile;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact analysis of Candy Nim positions.
///
/// Games are written `[1,5,16,20]` (brackets optional, whitespace ignored).
/// Commands that take games read one game per line from stdin when none are
/// given on the command line; blank lines and lines starting with `#` are skipped.
#[derive(Debug, Parser)]
#[command(name = "candynim", version, about, long_about)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "CANDYNIM_FORMAT")]
    pub format: Format,

    /// Sweep limits for `verify`.
    #[arg(long, global = true, value_enum, default_value_t = ProfileArg::Desk, env = "CANDYNIM_PROFILE")]
    pub profile: ProfileArg,

    /// Largest admissible pile.
    #[arg(long, global = true, default_value_t = 1 << 16, env = "CANDYNIM_PILE_CAP")]
    pub pile_cap: u64,

    /// Largest number of memoized positions.
    #[arg(long, global = true, default_value_t = 10_000_000, env = "CANDYNIM_MEMO_CAP")]
    pub memo_cap: usize,

    /// Split the root search across threads. Output is unchanged.
    #[arg(long, global = true, env = "CANDYNIM_PARALLEL")]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Smoke,
    Desk,
    Extended,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Smoke => Profile::Smoke,
            ProfileArg::Desk => Profile::Desk,
            ProfileArg::Extended => Profile::Extended,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact value, candy split and principal line.
    Solve { games: Vec<String> },
    /// P or N.
    Classify { games: Vec<String> },
    /// Legal plies for the player to move: winning plies at N positions, all plies at P positions.
    Moves {
        games: Vec<String>,
        /// Only the plies that achieve the exact value.
        #[arg(long)]
        optimal: bool,
    },
    /// Play a loser strategy against the winner's reply and draw the trace.
    Simulate {
        #[arg(value_enum)]
        strategy: Strategy,
        games: Vec<String>,
    },
    /// Sweep a bound family against exact values.
    Bounds {
        #[arg(value_enum)]
        claim: BoundClaim,
        /// Largest k (standard-form, general) or a (corollary, semiratio-cap).
        #[arg(long)]
        param_max: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// Arrange N candies so the winner collects as few as possible.
    Allocate {
        total: u64,
        #[arg(long, value_enum, default_value_t = Method::Exhaustive)]
        method: Method,
        /// Pile-count limit for the exhaustive search.
        #[arg(long, default_value_t = candynim::allocation::DEFAULT_MAX_PILES)]
        max_piles: usize,
        /// Pile-size limit for the exhaustive search.
        #[arg(long)]
        max_pile: Option<u32>,
    },
    /// Replay one claim, or all of them, over the profile's sweep.
    Verify {
        /// Claim id, or `all`.
        #[arg(required_unless_present = "list")]
        claim: Option<String>,
        /// Print the registered ids.
        #[arg(long)]
        list: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a trace saved by `simulate --format json` (`-` reads stdin).
    Render { trace: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    FlipFlop,
    /// Fractal with f(a) = floor(a/2).
    Fractal,
    LargestPile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundClaim {
    StandardForm,
    Corollary,
    General,
    SemiratioCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Equality,
    FivePile,
    Exhaustive,
}
