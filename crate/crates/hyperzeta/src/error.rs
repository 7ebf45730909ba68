use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Variants mirror the failure modes of the
/// arithmetic core, the analytic identities, and the sweep harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("residue-symbol modulus must be monic of degree >= 1")]
    NotMonicModulus,
    #[error("discriminant must be monic square-free of degree >= 1")]
    NotSquarefree,
    #[error("L-data consistency failure: {0}")]
    SymmetryViolation(String),
    #[error("zero off the critical circle, relative residual {0:.3e}")]
    RHViolation(f64),
    #[error("evaluation point hits a pole")]
    PoleAtPoint,
    #[error("central value L(1/2) vanishes")]
    CentralZero,
    #[error("L(1/2 + sigma0) evaluated at a zero")]
    CentralEvaluationAtZero,
    #[error("integer coefficient overflow (exceeds 64-bit range)")]
    CoefficientOverflow,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("empty sample")]
    EmptySample,
    #[error("enumeration infeasible: {0}")]
    InfeasibleEnumeration(String),
    #[error("syntax error in polynomial text: {0}")]
    SyntaxError(String),
    #[error("coefficient {0} out of range [0, {1})")]
    CoefficientOutOfRange(u64, u64),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("corrupt cache: {0}")]
    CorruptCache(String),
    #[error("missing cache: {0}")]
    MissingCache(String),
    #[error("incompatible cache: {0}")]
    IncompatibleCache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code per the CLI contract: 2 usage, 3 budget/cache, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SyntaxError(_) | Error::CoefficientOutOfRange(_, _) => 2,
            Error::BudgetExceeded(_)
            | Error::CorruptCache(_)
            | Error::MissingCache(_)
            | Error::IncompatibleCache(_) => 3,
            _ => 1,
        }
    }
}
