use alloc::string::String;
use core::fmt;

/// Errors raised by the numerical engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A density specification violates one of its structural invariants.
    /// The payload names the violated clause.
    Invariant(String),
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// Adaptive quadrature could not reach its tolerance within the
    /// subdivision budget.
    Quadrature { estimate: f64, error: f64 },
    /// The saddle-point target is outside the range of `C'` over the
    /// solver window.
    Range(String),
    /// An iteration did not converge within its budget.
    Convergence { iterations: usize },
    /// A quantity exceeds the representable floating-point range.
    Overflow(String),
    /// The requested oracle cannot handle this class of density.
    Mode(String),
    /// The Richardson step-halving estimate exceeds the accepted bound.
    Step { estimate: f64, limit: f64 },
    /// The Fourier tail certificate could not be established.
    TailBound(String),
    /// The tilted Poisson intensity has infinite or unrepresentable mass.
    Mass(String),
    /// Thinning could not find a dominating intensity.
    Domination(String),
    /// A documented precondition of the operation does not hold.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invariant(clause) => write!(f, "invariant violated: {clause}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Quadrature { estimate, error } => write!(
                f,
                "quadrature did not converge (estimate {estimate:e}, error {error:e})"
            ),
            Error::Range(msg) => write!(f, "range error: {msg}"),
            Error::Convergence { iterations } => {
                write!(f, "no convergence after {iterations} iterations")
            }
            Error::Overflow(msg) => write!(f, "overflow: {msg}"),
            Error::Mode(msg) => write!(f, "unsupported oracle mode: {msg}"),
            Error::Step { estimate, limit } => write!(
                f,
                "step-halving error estimate {estimate:e} exceeds limit {limit:e}"
            ),
            Error::TailBound(msg) => write!(f, "tail bound not certified: {msg}"),
            Error::Mass(msg) => write!(f, "mass error: {msg}"),
            Error::Domination(msg) => write!(f, "domination error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// True for errors caused by the input specification rather than by the
    /// numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Invariant(_) | Error::Domain(_) | Error::Precondition(_) | Error::Mode(_)
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
