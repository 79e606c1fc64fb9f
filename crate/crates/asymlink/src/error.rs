use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid node id {0} (graph has {1} nodes)")]
    InvalidNode(u32, usize),

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(u32, u32),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("not enough qualifying pairs: need {needed}, found {positives} positives and {negatives} negatives")]
    InsufficientPairs {
        needed: usize,
        positives: usize,
        negatives: usize,
    },

    #[error("{0}")]
    EmptyInput(&'static str),

    #[error("evaluation requires both positive and negative labels")]
    SingleClass,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
