use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument {0} is a pole of the gamma function")]
    GammaPole(f64),

    #[error("series did not converge after {terms_used} terms")]
    SeriesConvergence { terms_used: usize },

    #[error("continued fraction did not converge at depth {depth} (last convergents {last} and {previous})")]
    FractionConvergence {
        depth: usize,
        last: Complex64,
        previous: Complex64,
    },

    #[error("denominator hypergeometric function nearly vanishes at z = {0}")]
    NearZeroDenominator(Complex64),

    #[error("Q vanishes at z = {0}")]
    SingularQ(Complex64),

    #[error("w' vanishes at z = {0}")]
    CriticalPoint(Complex64),

    #[error("2F1 or a derivative overflows at z = {0}")]
    Overflow(Complex64),

    #[error("estimation failed: {failed} of {total} evaluations failed")]
    Estimation { failed: usize, total: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by inputs outside a function's hypotheses.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::GammaPole(_)
                | Error::NearZeroDenominator(_)
                | Error::SingularQ(_)
                | Error::CriticalPoint(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
