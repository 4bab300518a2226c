use thiserror::Error;

/// Errors raised by the algebraic and numerical routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("term `{0}` does not end in y")]
    TermNotEndingInY(String),
    #[error("`{0}` is not in H^1 (nonconstant word not ending in y)")]
    NotInH1(String),
    #[error("constant argument where a nonconstant element of H^1 is required")]
    ConstantArgument,
    #[error("degree {got} is below the minimum {min}")]
    DegreeTooSmall { got: usize, min: usize },
    #[error("`{0}` is not in xHy")]
    NotInXHY(String),
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("`{0}` is outside the domain of the map")]
    NotInDomain(String),
    #[error("argument must be a nonempty word")]
    EmptyArgument,
    #[error("`{0}` is not admissible")]
    NotAdmissible(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("word length {0} exceeds the supported maximum")]
    WordTooLong(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
