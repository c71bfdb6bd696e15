use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse game {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("pile of size {size} exceeds the configured cap {cap}")]
    PileCap { size: u64, cap: u64 },

    #[error("the empty game has no moves")]
    NoMoves,

    #[error("illegal ply {ply} on {game}")]
    IllegalPly { game: String, ply: String },

    #[error("{game} is not a P position with at most three piles")]
    NotThreePileP { game: String },

    #[error("invariant breach: {0}")]
    Invariant(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("{game} is outside the {family} family")]
    Family { family: &'static str, game: String },

    #[error("invalid family parameters: {0}")]
    FamilyParams(String),

    #[error("contractive function {name} maps {input} to {output}")]
    NotContractive { name: String, input: u32, output: u32 },

    #[error("turn {turn}: {reason}")]
    IllegalTurn { turn: usize, reason: String },

    #[error("odd total {0}: every P position holds an even number of candies")]
    Parity(u64),

    #[error("{0}")]
    Construction(String),

    #[error("bound does not apply: {0}")]
    Inapplicable(String),

    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
}

impl Error {
    /// Memo or pile caps; the input itself may be fine under larger limits.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_) | Error::PileCap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
