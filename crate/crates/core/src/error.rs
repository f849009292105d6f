use thiserror::Error;

/// Failures surfaced by the arithmetic pipeline.
///
/// Numerical routines never turn an undecided computation into an answer;
/// they report one of the `*Exhausted` / `*Failed` variants instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radicand {d_raw} is a perfect power with exponent {p}")]
    DegenerateRadicand { d_raw: u64, p: u32 },

    #[error("unsupported prime p = {0} (expected 3, 5 or 7)")]
    InvalidPrime(u32),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("factorization of {0} incomplete within the configured effort")]
    FactorizationIncomplete(u64),

    #[error("precision exhausted while {0}")]
    PrecisionExhausted(String),

    #[error("class group relation search incomplete: {0}")]
    RelationSearchIncomplete(String),

    #[error("cube root recognition failed: {0}")]
    RecognitionFailed(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("pair (U, A) = ({u}, {a}) is not admissible for p = {p}")]
    InadmissiblePair { p: u32, u: u32, a: u32 },
}

impl Error {
    /// Stable machine-readable code, used in report notes.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateRadicand { .. } => "DEGENERATE_RADICAND",
            Error::InvalidPrime(_) => "INVALID_PRIME",
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::FactorizationIncomplete(_) => "FACTORIZATION_INCOMPLETE",
            Error::PrecisionExhausted(_) => "PRECISION_EXHAUSTED",
            Error::RelationSearchIncomplete(_) => "RELATION_SEARCH_INCOMPLETE",
            Error::RecognitionFailed(_) => "RECOGNITION_FAILED",
            Error::InternalInconsistency(_) => "INTERNAL_INCONSISTENCY",
            Error::InadmissiblePair { .. } => "INADMISSIBLE_PAIR",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
