use thiserror::Error;

/// Errors produced by graph construction, family generators, codecs and the
/// exhaustive enumeration guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arc ({from}, {to}) out of range for a graph on {vertex_count} vertices")]
    ArcOutOfRange {
        from: usize,
        to: usize,
        vertex_count: usize,
    },

    #[error("vertex {vertex} out of range for universe {universe}")]
    VertexOutOfRange { vertex: usize, universe: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("operation requires a classic family (de Bruijn or Kautz), got {0}")]
    NotClassicFamily(&'static str),

    #[error("graph has {vertices} vertices; exhaustive enumeration refused above {limit}")]
    TooLargeForEnumeration { vertices: usize, limit: usize },

    #[error("criticality is defined for nonempty sets only")]
    EmptyCriticalSet,

    #[error("arc-list parse error on line {line}: {message}")]
    ArcListParse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
