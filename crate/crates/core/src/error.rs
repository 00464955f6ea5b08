use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension modulus must be monic")]
    NonMonicModulus,
    #[error("extension modulus must have degree at least 2, got {0}")]
    ModulusDegree(usize),
    #[error("extension modulus is reducible: {0}")]
    ReducibleModulus(String),
    #[error("finite field of order {0} exceeds the supported size")]
    FieldTooLarge(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("elements belong to different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("cannot parse `{text}` as an element of {field}")]
    Literal { text: String, field: String },

    #[error("ring axiom fails: {0}")]
    RingAxiom(String),
    #[error("idempotent decomposition stalled: {0}")]
    FactorizationIncomplete(String),
    #[error("enumeration bound exceeded: {needed} > cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("unit group is infinite")]
    InfiniteUnits,

    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("grading axiom fails: {left}*{right} has a nonzero coordinate on {offending}, outside the component of degree {expected}")]
    GradingAxiom {
        left: String,
        right: String,
        offending: String,
        expected: String,
    },
    #[error("group element {0:?} does not belong to the group")]
    BadGroupElement(Vec<i64>),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("character value does not respect generator order: {0}")]
    CharacterOrder(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal identity violated: {0}")]
    Identity(String),
    #[error("grading is not thin: component of degree {0} has dimension {1}")]
    NotThin(String, usize),
    #[error("undecided: {0}")]
    Undecided(String),

    #[error("line {line}: {msg}")]
    Deck { line: usize, msg: String },
    #[error("usage: {0}")]
    Usage(String),
}
