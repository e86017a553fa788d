use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("N must be an odd integer >= 5, got {0}")]
    InvalidOrder(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields (N={0} and N={1})")]
    ContextMismatch(u32, u32),
    #[error("the zero vector has no direction")]
    ZeroDirection,
    #[error("sector index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("direction is terminal (horizontal or vertical); no gcd step applies")]
    TerminalDirection,
    #[error("surface is not made of axis-aligned rectangles: {0}")]
    NotStaircase(String),
    #[error("inconsistent gluing: {0}")]
    InconsistentGluing(String),
    #[error("the double heptagon model requires N = 7, got N = {0}")]
    NotHeptagon(u32),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("point does not lie in polygon {0}")]
    PointOutside(usize),
    #[error("ray leaves polygon {0} immediately; direction must point into the polygon")]
    OutwardDirection(usize),
    #[error("point is a singular vertex")]
    SingularPoint,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("I/O error on {path}: {msg}")]
    Io { path: String, msg: String },
}
