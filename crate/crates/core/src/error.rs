use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("cyclic order must be at least 1, got {0}")]
    InvalidOrder(i64),
    #[error("invariant factors {0:?} do not form a divisibility chain")]
    NotAChain(Vec<i64>),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("homomorphism is not well defined on generator {column}")]
    IllDefinedHom { column: usize },
    #[error("row {row} cannot be read modulo its modulus for variable {column}")]
    IncompatibleModuli { row: usize, column: usize },
    #[error("group is too large to enumerate ({0} elements)")]
    TooLarge(u128),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("malformed groupoid data: {0}")]
    Malformed(String),
    #[error("unit subset is not invariant: arrow {arrow} crosses its boundary")]
    NotInvariant { arrow: usize },
    #[error("groupoids differ: {0}")]
    Mismatch(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistError {
    #[error("input is not a 1-cocycle: {0}")]
    InvalidCocycle(String),
    #[error("sequence is not exact: {0}")]
    InexactSequence(String),
    #[error("twists have different base groupoids")]
    BaseMismatch,
    #[error("twists have different fibers")]
    FiberMismatch,
    #[error("2-cocycle is not normalized at pair {0:?}")]
    NotNormalized((usize, usize)),
    #[error("2-cocycle identity fails at triple {0:?}")]
    NotCocycle((usize, usize, usize)),
    #[error("search space of {0} candidates exceeds the enumeration limit")]
    SearchSpaceTooLarge(u128),
    #[error("twist data is malformed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("elements live on different groupoids")]
    GroupoidMismatch,
    #[error("inputs come from different contexts: {0}")]
    ContextMismatch(String),
    #[error("unit spaces differ: {0}")]
    UnitSpaceMismatch(String),
    #[error(transparent)]
    Twist(#[from] TwistError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CechError {
    #[error("cover is malformed: {0}")]
    Malformed(String),
    #[error("not a Čech cocycle: fails at {indices:?} on point {point}")]
    NotCechCocycle { indices: Vec<usize>, point: usize },
    #[error("2-cochain is not normalized at {indices:?} on point {point}")]
    NotNormalized { indices: Vec<usize>, point: usize },
    #[error("integer cochain is not locally constant on {indices:?}")]
    NotLocallyConstant { indices: Vec<usize> },
    #[error("degree {0} is out of range for this cover")]
    DegreeOutOfRange(usize),
    #[error("lift does not project to the given cocycle at {indices:?} on point {point}")]
    InconsistentLift { indices: Vec<usize>, point: usize },
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
