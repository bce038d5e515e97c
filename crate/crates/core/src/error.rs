use thiserror::Error;

/// Errors raised by graph construction, parsing and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("graphs with {0} vertices are not supported (maximum is 62)")]
    UnsupportedSize(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(usize, usize),

    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("invalid bijection: {0}")]
    InvalidBijection(String),

    #[error("degree mismatch: anchor degrees {0} and {1}")]
    DegreeMismatch(usize, usize),

    #[error("size guard: {what} is {got}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("invalid order {0}")]
    InvalidOrder(usize),

    #[error("{0}")]
    Validation(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
