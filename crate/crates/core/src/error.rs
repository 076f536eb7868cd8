use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in Q(zeta_{})", 2 * .p)]
    DivisionByZero { p: u32 },

    #[error("cyclotomic context mismatch: level {left} vs level {right}")]
    ContextMismatch { left: u32, right: u32 },

    #[error("invalid level p = {p}: {reason}")]
    InvalidLevel { p: u32, reason: &'static str },

    #[error("quantum integer of negative argument {0}")]
    NegativeQuantumInt(i64),

    #[error("Jones-Wenzl f_{n} undefined at p = {p}: quantum integer [{vanishing}] vanishes")]
    JonesWenzlOutOfRange { n: usize, p: u32, vanishing: usize },

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("inadmissible triple ({a}, {b}, {c}) at level {p}")]
    Inadmissible { a: u32, b: u32, c: u32, p: u32 },

    #[error("color {color} out of range at level {p} (max {max})")]
    ColorOutOfRange { color: u32, p: u32, max: u32 },

    #[error("network is not closed: {0}")]
    OpenNetwork(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("invalid curve or loop: {0}")]
    InvalidCurve(String),

    #[error("invalid tree move: {0}")]
    InvalidMove(String),

    #[error("operators belong to different surfaces")]
    SpecMismatch,

    #[error("matrix is singular")]
    Singular,

    #[error("the TQFT space is zero-dimensional; irreducibility is undefined")]
    EmptySpace,

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
