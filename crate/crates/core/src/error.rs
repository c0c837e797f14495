use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = 2 is not supported (2 is always a bad prime)")]
    EvenPrime,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("D = {0} is not a squarefree positive integer")]
    NotSquarefree(u64),
    #[error("{p} ramifies in Q(sqrt({d})); ramified primes are not supported")]
    Ramified { p: u64, d: u64 },
    #[error("{p} is a bad prime for preset {preset} (S = {bad:?})")]
    BadPrime { p: u64, preset: String, bad: Vec<u64> },
    #[error("value {value} is not {p}-integral")]
    NotPIntegral { value: String, p: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("square-free extraction in characteristic {p} needs degree < p, got degree {degree}")]
    SquarefreeGuard { degree: usize, p: u64 },
    #[error("series has a non-unit constant term")]
    NonUnitConstant,
    #[error("precision shortfall: need {needed} terms, {available} available")]
    Precision { needed: usize, available: usize },
    #[error("Gram-Schmidt norm <P_{stage}, P_{stage}> vanishes")]
    VanishingNorm { stage: usize },
    #[error("Padé approximant does not exist at order {m}")]
    PadeNotExists { m: usize },
    #[error("continued-fraction coefficient lambda_{index} vanishes")]
    ZeroLambda { index: usize },
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("hypergeometric parameter c + {index} vanishes")]
    HypergeometricPole { index: usize },
    #[error("malformed operator: {0}")]
    MalformedOperator(String),
    #[error("truncation path unavailable for p = {p}, j = {j}: Dwork degree {degree} >= p")]
    TruncationUnavailable { p: u64, j: usize, degree: i64 },
    #[error("truncation path inconsistent: {0}")]
    TruncationMismatch(String),
    #[error("Lyapunov exponent {0} outside (0, 1]")]
    LyapunovRange(String),
    #[error("degree provider required for preset {0}")]
    MissingDegree(String),
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("j = {j} out of range 1..={g}")]
    ComponentIndex { j: usize, g: usize },
    #[error("partial Hasse degree mismatch: expected {expected}, got {actual}")]
    DegreeMismatch { expected: usize, actual: usize },
    #[error("singular fiber")]
    SingularFiber,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Refusals are mathematical guards (bad/ramified primes, unavailable
    /// paths) rather than malformed input.
    pub fn is_refusal(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::Invalid(_) | Error::UnknownPreset(_))
    }
}
