use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("roots {0} and {1} nearly coincide; merge them into a higher multiplicity")]
    NearCoincidentRoots(String, String),
    #[error("function provides derivatives up to order {available}, order {required} needed")]
    Order { required: usize, available: usize },
    #[error("multiplicity undetermined: all derivatives up to order {0} vanish at tolerance")]
    MultiplicityUndetermined(usize),
    #[error("series overflow: {0}")]
    Overflow(String),
    #[error("not in kernel of the functional: {0}")]
    NotInKernel(String),
    #[error("kernel condition violated: {0}")]
    KernelCondition(String),
    #[error("degenerate mean-value problem: {0}")]
    Degenerate(String),
    #[error("adaptive integration did not converge after {panels} panels (error estimate {error_estimate:e})")]
    NonConvergence { panels: usize, error_estimate: f64 },
    #[error("accuracy error: {0}")]
    Accuracy(String),
    #[error("complex value {re} + {im}i has a non-negligible imaginary part")]
    ComplexResidue { re: f64, im: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
