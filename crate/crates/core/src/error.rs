use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    Index(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid label: {0}")]
    Label(String),
    #[error("cone generators are not linearly independent: {0}")]
    Simpliciality(String),
    #[error("vector {0} lies in no maximal cone")]
    Completeness(String),
    #[error("point lies outside the polytope: {0}")]
    Outside(String),
    #[error("face poset order violated: {0}")]
    Poset(String),
    #[error("model mismatch: {0}")]
    Model(String),
    #[error("point has a negative coordinate")]
    NotNonnegative,
    #[error("coordinate pair {0} is within tolerance of the exceptional set")]
    AmbiguousSupport(usize),
    #[error("point lies on the exceptional set (coordinate pair {0})")]
    ExceptionalPoint(usize),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("solver did not converge: {0}")]
    Solve(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_solver_failure(&self) -> bool {
        matches!(self, Error::Solve(_))
    }
}
