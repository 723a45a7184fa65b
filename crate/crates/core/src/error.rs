use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("no channel samples")]
    NoChannelSamples,

    #[error("channel samples have mismatched dimensions")]
    SampleShapeMismatch,

    #[error("self-interference pair (cell {0})")]
    SelfInterferencePair(usize),

    #[error("payoff enumeration infeasible: {cells} cells exceeds the limit of {max}")]
    EnumerationInfeasible { cells: usize, max: usize },

    #[error("MS-NE not found")]
    EquilibriumNotFound,

    #[error("uneven static split: {0} slots per frame")]
    UnevenStaticSplit(usize),

    #[error("frame too short for fixed head/tail: {0} slots per frame")]
    FrameTooShort(usize),

    #[error("frame {frame}: {source}")]
    Frame {
        frame: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}
