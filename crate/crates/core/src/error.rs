use thiserror::Error;

/// Structural and arithmetic failures of the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by zero in F_p")]
    DivisionByZero,
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("coefficient moduli differ ({0} vs {1})")]
    ModulusMismatch(u32, u32),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("monomial length mismatch ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("exponent overflow (limit {})", u16::MAX)]
    ExponentOverflow,
    #[error("{0} does not divide exactly")]
    InexactDivision(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

/// Failures of Groebner-basis based computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("height of the unit ideal is undefined")]
    UnitIdeal,
    #[error("no regular sequence found of length {0}")]
    NoRegularSequence(usize),
    #[error("no certificate found (ring may fail G1): {0}")]
    NoCertificate(String),
    #[error("missing principality certificate; call find_certificate first")]
    MissingCertificate,
    #[error("invalid divisorial ideal: {0}")]
    InvalidDivisorial(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("quotient not Gorenstein artinian (socle dimension {0}): J is not a canonical ideal or parameters invalid")]
    NotGorensteinArtinian(usize),
    #[error("splitting ideal did not stabilize for t <= {max_t}: ladder {ladder:?}")]
    NoStabilization { max_t: u32, ladder: Vec<String> },
    #[error("instance outside supported regime: {0}")]
    Unsupported(String),
}

impl AlgebraError {
    pub fn is_budget(&self) -> bool {
        matches!(self, AlgebraError::BudgetExceeded(_))
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
