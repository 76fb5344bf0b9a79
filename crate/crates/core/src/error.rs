use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has semiedges")]
    SemiedgePresent,
    #[error("graph has loops or semiedges")]
    LoopOrSemiedgePresent,
    #[error("scale exceeded: {what} is {actual}, cap is {cap}")]
    ScaleExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
    #[error("edge set is not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("group does not act semiregularly: {0}")]
    NotSemiregular(String),
    #[error("flow is not constant on group orbits: {0}")]
    NotXiInvariant(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid voltage assignment: {0}")]
    InvalidVoltage(String),
    #[error("connection multiset contains the identity")]
    IdentityInConnection,
    #[error("connection multiset is not closed under inverses: {0}")]
    NotInverseClosed(String),
    #[error("not a covering: {0}")]
    NotACovering(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::InvalidGraph(_) => 2,
            Error::InvalidGroup(_) | Error::InvalidVoltage(_) => 2,
            Error::IdentityInConnection | Error::NotInverseClosed(_) => 2,
            Error::ScaleExceeded { .. } => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
