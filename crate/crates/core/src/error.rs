use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("column cannot be completed to a unimodular matrix: {0}")]
    NotUnimodularlyCompletable(String),

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Dimension changed between window `window` and `window + 1`.
    #[error("cohomology window {window} is unstable ({at_window} vs {at_next})")]
    WindowUnstable {
        window: usize,
        at_window: usize,
        at_next: usize,
    },

    #[error("minimal twist search exhausted the range [{lo}, {hi}]")]
    SearchExhausted { lo: i64, hi: i64 },

    #[error("section vanishes: {0}")]
    SectionVanishes(String),

    #[error("quotient bundle has positive splitting degree {0}")]
    QuotientDegreePositive(i64),
}

impl Error {
    /// True for the variants that signal a broken internal invariant
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::WindowUnstable { .. }
                | Error::SearchExhausted { .. }
                | Error::SectionVanishes(_)
                | Error::QuotientDegreePositive(_)
        )
    }
}
