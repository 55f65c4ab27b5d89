use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is not cop-win (infinite corner rank)")]
    NotCopWin,

    #[error("level {level} is out of range (valid levels are 1..={max})")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("strategy `{strategy}` has no admissible move: {detail}")]
    StrategyViolation { strategy: String, detail: String },

    #[error("strategy `{strategy}` made an illegal move from `{from}` to `{to}`")]
    IllegalMove {
        strategy: String,
        from: String,
        to: String,
    },

    #[error("position is an escape position; the cop has no optimal move")]
    EscapePosition,

    #[error("unknown corpus graph `{0}`")]
    UnknownGraph(String),

    #[error("invalid transcript: {0}")]
    Transcript(String),
}

pub type Result<T> = std::result::Result<T, Error>;
