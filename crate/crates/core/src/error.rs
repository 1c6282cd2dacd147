use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i64, strands: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::GeneratorOutOfRange { .. } => "generator_out_of_range",
            Error::InvalidDiagram(_) => "invalid_diagram",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
