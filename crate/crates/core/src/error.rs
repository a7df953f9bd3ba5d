use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    BadModulus(u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch between operands")]
    RingMismatch,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("cohomology index {0} out of range")]
    BadCohomologyIndex(usize),
    #[error("twist {twist} with i={i} is outside the validity range of the ideal-sheaf formula")]
    OutOfFormulaRange { i: usize, twist: i64 },
    #[error("unsupported case (a,b,n)=({a},{b},{n}): not covered by the bipartite theorems")]
    UnsupportedCase { a: usize, b: usize, n: usize },
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("resolution did not terminate within {0} steps")]
    ResolutionTooLong(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
