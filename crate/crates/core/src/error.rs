use thiserror::Error;

/// Errors raised by the arithmetic, coding and decoding layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeP(u64),
    #[error("modulus is reducible over Z/{0}Z")]
    ReducibleModulus(u64),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("field of size {0} is too large for this implementation")]
    FieldTooLarge(String),
    #[error("elements belong to different fields")]
    CtxMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primitive root of unity of order {order} in a field of size {q}")]
    NoSuchRoot { order: u64, q: u64 },
    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("group or field mismatch between operands")]
    Mismatch,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("root has order {actual}, expected {expected}")]
    BadRootOrder { expected: u64, actual: u64 },
    #[error("group order {order} is divisible by the characteristic {p}")]
    OrderDividesCharacteristic { order: usize, p: u64 },
    #[error("operation requires a prime field")]
    NotPrimeField,
    #[error("prime search exhausted after {0} candidates")]
    SearchExhausted(u64),
    #[error("lifted coefficient {value} exceeds the bound {bound}")]
    LiftOutOfRange { value: u64, bound: u128 },

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("module is not free: expanded rank {rank}, expected {expected}")]
    NotFree { rank: usize, expected: usize },
    #[error("matrix cannot be systematized: no unit pivot in column {0}")]
    NotSystematizable(usize),
    #[error("field does not split the group algebra (need e | q-1 and p not dividing the order)")]
    NotSplit,
    #[error("rank deficient: {0}")]
    RankDeficient(String),

    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("black-box solver failed after {0} attempts")]
    SolverFailed(usize),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("word is not in the image of the evaluation matrix")]
    NotInImage,
    #[error("too many evaluation points: {requested} requested, {available} available")]
    TooManyPoints { requested: usize, available: usize },
    #[error("degree window violated: {0}")]
    DegreeWindow(String),

    #[error("candidate denominator is zero")]
    NotADenominatorCandidate,
    #[error("Pade check failed: {0}")]
    CheckFailed(String),
    #[error("decoding failed: {0}")]
    DecodeFail(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
