use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("series is not a unit (zero constant term)")]
    NotAUnit,
    #[error("substitution image has nonzero constant term (index {0})")]
    ConstantTermNonzero(usize),
    #[error("no {1}-th root of {0} in Q(i)")]
    BaseFieldRootMissing(String, u32),
    #[error("series is not x_n-regular up to cap")]
    NotRegular,
    #[error("series is zero up to cap")]
    ZeroUpToCap,
    #[error("projective ring denominators differ")]
    DenominatorMismatch,
    #[error("not weighted homogeneous at index {0}")]
    NotWeightedHomogeneous(usize),
    #[error("no primitive element found after {0} attempts")]
    PrimitiveCheckFailed(usize),
    #[error("operation needs a pure homogeneous element z^e - h")]
    NonPureUnsupported,
    #[error("roots of unity of order {0} are not supported")]
    CyclotomicUnsupported(u32),
    #[error("residue factors are not coprime")]
    NotCoprime,
    #[error("residue polynomial {0} has no roots in Q(i)")]
    BaseFieldFactorizationUnsupported(String),
    #[error("polynomial is not reduced (discriminant zero up to cap)")]
    NotReduced,
    #[error("polynomial is not quasi-ordinary (discriminant {0} is not monomial times unit)")]
    NotQuasiOrdinary(String),
    #[error("no root matches the morphism up to cap")]
    NoMatch,
    #[error("blow-up depth {0} exceeded")]
    DepthExceeded(usize),
    #[error("fiber point outside Q(i): {0}")]
    FiberRootUnsupported(String),
    #[error("point lies on the strict transform of h")]
    OnStrictTransformOfH,
    #[error("cap {0} too small (need at least {1})")]
    CapTooSmall(u32, u32),
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("hypothesis violated: 2*nu(P-Q) = {lhs} <= d*nu(Delta) = {rhs}")]
    HypothesisViolated { lhs: String, rhs: String },
    #[error("root pairing ambiguous at this cap")]
    PairingAmbiguous,
    #[error("factor count mismatch: {0} vs {1}")]
    FactorCountMismatch(usize, usize),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("unknown strategy '{0}'")]
    UnknownStrategy(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// How a failure should be read by a caller (and mapped to an exit code).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// A mathematical negative answer.
    Negative,
    /// Outside the supported coefficient tower.
    Unsupported,
    /// Malformed or inconsistent input.
    Input,
}

impl PfError {
    pub fn class(&self) -> ErrorClass {
        use PfError::*;
        match self {
            NotAUnit
            | NotRegular
            | ZeroUpToCap
            | NotReduced
            | NotQuasiOrdinary(_)
            | NoMatch
            | NotCoprime
            | HypothesisViolated { .. }
            | PairingAmbiguous
            | FactorCountMismatch(..)
            | DepthExceeded(_)
            | OnStrictTransformOfH
            | PrimitiveCheckFailed(_)
            | PrecisionExhausted(_) => ErrorClass::Negative,
            BaseFieldRootMissing(..)
            | NonPureUnsupported
            | CyclotomicUnsupported(_)
            | BaseFieldFactorizationUnsupported(_)
            | FiberRootUnsupported(_)
            | NotSupported(_) => ErrorClass::Unsupported,
            VarCountMismatch(..)
            | ConstantTermNonzero(_)
            | DenominatorMismatch
            | NotWeightedHomogeneous(_)
            | CapTooSmall(..)
            | UnknownStrategy(_)
            | InvalidInput(_) => ErrorClass::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, PfError>;
