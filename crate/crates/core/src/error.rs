use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldSpecError {
    #[error("malformed field spec `{0}` (expected `q` or `fp:P`)")]
    Malformed(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31")]
    TooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coefficient `{text}` at byte {pos} is not representable in the field")]
    Unrepresentable { text: String, pos: usize },
    #[error("exponent at byte {pos} is out of range")]
    ExponentRange { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("exponent overflow")]
    ExponentOverflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("reduction budget of {budget} steps exhausted")]
    ResourceLimit { budget: u64 },
    #[error("polynomials live in different rings")]
    RingMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("ideals live in different rings")]
    RingMismatch,
    #[error("dimension is undefined for the unit ideal")]
    UnitIdeal,
    #[error("independent-set search supports at most 64 variables, ring has {0}")]
    TooManyVariables(usize),
}

impl From<PolyError> for IdealError {
    fn from(_: PolyError) -> Self {
        IdealError::RingMismatch
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid identification: {0}")]
    InvalidIdentification(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("`{0}` does not lie in (x1, x2)")]
    NotInX1X2(String),
    #[error("hypothesis (ii) fails in group {group}: ({first})*({second}) is not in the radical of the earlier ideal")]
    Hypothesis {
        group: usize,
        first: String,
        second: String,
    },
    #[error("no explicit equation set for s = {0}")]
    Unsupported(usize),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("equation set is empty")]
    EmptySet,
    #[error("unknown method `{0}` (expected s2, s2-homog, thm7 or explicit)")]
    UnknownMethod(String),
    #[error("malformed certificate: {0}")]
    Certificate(String),
}
