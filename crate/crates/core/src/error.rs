use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("star outside domain: {0}")]
    NotInStarDomain(String),
    #[error("semiring mismatch: expected {expected}, found {found}")]
    SemiringMismatch { expected: String, found: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("word {word} lies outside truncation bound {bound}")]
    OutOfWindow { word: String, bound: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown letter '{0}'")]
    UnknownLetter(char),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("premise violated: {0}")]
    PremiseViolated(String),
    #[error("search budget exceeded: {needed} candidates, budget {budget}")]
    SearchBudgetExceeded { needed: u128, budget: u128 },
    #[error("not a morphism extension: {0}")]
    NotAMorphismExtension(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("invalid value '{0}'")]
    InvalidValue(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
