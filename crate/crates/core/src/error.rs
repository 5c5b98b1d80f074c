//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid trapezoid: need a <= b <= c <= d and finite values, got ({0}, {1}, {2}, {3})")]
    InvalidTrapezoid(f64, f64, f64, f64),

    #[error("zero-area fuzzy set: a = b = c = d = {0} has no centroid")]
    ZeroArea(f64),

    #[error("non-positive node weight {value} at index {index}")]
    NonPositiveDensity { index: usize, value: f64 },

    #[error("p must lie in (0, 1], got {0}")]
    POutOfRange(f64),

    #[error("need at least {need} nodes, got {got}")]
    TooFewNodes { need: usize, got: usize },

    #[error("lambda root search failed: densities are numerically degenerate")]
    RootNotFound,

    #[error("ground set of {0} nodes exceeds the exact-Shapley cap of {1}")]
    GroundSetTooLarge(usize, usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("node {0} out of range for {1} nodes")]
    NodeOutOfRange(usize, usize),

    #[error("matrix entry ({0}, {1}) breaks symmetry")]
    NotSymmetric(usize, usize),

    #[error("negative weight {2} at ({0}, {1})")]
    NegativeWeight(usize, usize, f64),

    #[error("gamma must lie in [0, 1], got {0}")]
    GammaOutOfRange(f64),

    #[error("graph has zero total weight")]
    EmptyGraph,

    #[error("partitions cover different node sets: {0} vs {1} nodes")]
    NodeSetMismatch(usize, usize),

    #[error("need at least one matrix to aggregate")]
    NoMatrices,

    #[error("need at least one attribute vector")]
    NoCharacteristics,

    #[error("unknown model id {0} (valid: 1..=4)")]
    UnknownModel(u8),

    #[error("unknown network id {0} (valid: 1..=9)")]
    UnknownNetwork(u8),

    #[error("unknown case id {0} (valid: 1..=9)")]
    UnknownCase(u8),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("network {network} case {case}: {source}")]
    Cell {
        network: u8,
        case: u8,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("{path}: {msg}")]
    Format { path: String, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Wraps an error with the (network, case) coordinates of the
    /// experiment cell it occurred in.
    pub fn in_cell(self, network: u8, case: u8) -> Self {
        Error::Cell {
            network,
            case,
            source: Box::new(self),
        }
    }

    /// True for errors caused by invalid user input (bad ids, bad config,
    /// out-of-range parameters) rather than by runtime processing.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownModel(_)
                | Error::UnknownNetwork(_)
                | Error::UnknownCase(_)
                | Error::GammaOutOfRange(_)
                | Error::POutOfRange(_)
                | Error::Config(_)
        )
    }
}
