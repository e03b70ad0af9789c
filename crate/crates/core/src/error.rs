use core::fmt;

/// Errors raised by the algebraic and coding layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand lengths or matrix shapes do not conform.
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    /// A square matrix has rank below its dimension.
    Singular { rank: usize, dim: usize },
    /// A parity former has fewer than `m` independent columns, so the
    /// coset dimension would exceed `ell`.
    RankDeficient { rank: usize, required: usize },
    /// Lifting size outside the supported range.
    InvalidLiftingSize(usize),
    /// A code parameter (ell, shortening, k_info, ...) is out of range.
    InvalidParameter(&'static str),
    /// A cost function was constructed with unusable parameters.
    InvalidCost(&'static str),
    /// An interferer sample other than -1 or +1.
    InvalidInterferer { index: usize },
    /// The integrated channel density does not have unit mass.
    IntegrationFailure { mass: f64, nodes: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { what, expected, found } => {
                write!(f, "{what}: expected length {expected}, found {found}")
            }
            Error::Singular { rank, dim } => {
                write!(f, "matrix is singular (rank {rank} < {dim})")
            }
            Error::RankDeficient { rank, required } => {
                write!(f, "parity former not surjective (rank {rank} < {required})")
            }
            Error::InvalidLiftingSize(z) => write!(f, "invalid lifting size z = {z}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::InvalidCost(msg) => write!(f, "invalid cost function: {msg}"),
            Error::InvalidInterferer { index } => {
                write!(f, "interferer sample {index} is not -1 or +1")
            }
            Error::IntegrationFailure { mass, nodes } => write!(
                f,
                "numerical integration failed: density mass {mass} with {nodes} nodes"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_len(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { what, expected, found })
    }
}
