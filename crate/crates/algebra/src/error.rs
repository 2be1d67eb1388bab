use thiserror::Error;

/// Errors raised by ring, polynomial and prime-representation operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    /// An operation is not available for the given ring or field shape.
    /// Names the missing capability rather than guessing an answer.
    #[error("capability: {0}")]
    Capability(String),

    /// Localization at zero would produce the zero ring.
    #[error("degenerate localization: cannot invert zero")]
    DegenerateLocalization,

    /// A nonzero element was required.
    #[error("zero element not allowed here: {0}")]
    ZeroElement(String),

    /// Units lie in no prime ideal.
    #[error("no prime contains a unit")]
    NoPrimeContains,

    /// A fraction of polynomials does not lie in the valuation ring.
    #[error("not a member of the valuation ring: value {0} is lex-negative")]
    NotAMember(String),

    /// The zero polynomial has no leading data.
    #[error("zero polynomial")]
    ZeroPolynomial,

    /// reduce_by_monic requires a monic divisor.
    #[error("divisor is not monic")]
    NotMonic,

    /// Valuation-domain construction ran out of chain primes.
    #[error("rank exhausted: need {needed} but rank is {rank}")]
    RankExhausted { needed: usize, rank: usize },

    /// Presentation-matrix shape violates the fixed cokernel convention.
    #[error("presentation shape error: {0}")]
    Shape(String),

    /// Two values from different rings were combined.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

impl AlgebraError {
    pub fn capability(msg: impl Into<String>) -> Self {
        AlgebraError::Capability(msg.into())
    }

    pub fn is_capability(&self) -> bool {
        matches!(self, AlgebraError::Capability(_))
    }
}
