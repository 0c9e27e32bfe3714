use thiserror::Error;

/// Errors raised by the algebraic and numeric routines of this crate.
///
/// Variant names are stable: the command-line front end reports them
/// verbatim through [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different fields")]
    MixedFields,
    #[error("operation requires an exact field (Q or F_p)")]
    NumericFieldUnsupported,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large for exhaustive root search")]
    PrimeTooLarge(u64),
    #[error("minimal polynomial does not split over the working field")]
    NonSplitField,
    #[error("matrix data is malformed: {0}")]
    Shape(String),
    #[error("sequence horizon {horizon} is smaller than the required {required}")]
    HorizonTooSmall { horizon: usize, required: usize },
    #[error("Gamma basis requires characteristic zero")]
    CharPositive,
    #[error("wedge context characteristic {ctx} does not match field characteristic {field}")]
    CharacteristicMismatch { ctx: u64, field: u64 },
    #[error("form is not in the expected basis")]
    WrongBasis,
    #[error("spectrum or coefficients are not conjugate symmetric")]
    NotConjugateSymmetric,
    #[error("matrix is not real")]
    NotReal,
    #[error("empty input")]
    EmptyInput,
    #[error("Kronecker product order {0} exceeds the limit")]
    OrderTooLarge(usize),
    #[error("sequence does not satisfy the supplied annihilator")]
    AnnihilatorMismatch,
    #[error("prefix is too short to determine an annihilator")]
    InsufficientData,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("principal logarithm undefined: eigenvalue on the closed negative real axis")]
    PrincipalUndefined,
    #[error("two eigenvalues map to the same logarithm under the chosen branch")]
    ZeroLogClash,
    #[error("branch list has {got} entries but the spectrum has {expected} eigenvalues")]
    BranchCount { expected: usize, got: usize },
}

impl Error {
    /// Stable variant name.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MixedFields => "MixedFields",
            Error::NumericFieldUnsupported => "NumericFieldUnsupported",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NonMonic => "NonMonic",
            Error::DegreeZero => "DegreeZero",
            Error::NotPrime(_) => "NotPrime",
            Error::PrimeTooLarge(_) => "PrimeTooLarge",
            Error::NonSplitField => "NonSplitField",
            Error::Shape(_) => "Shape",
            Error::HorizonTooSmall { .. } => "HorizonTooSmall",
            Error::CharPositive => "CharPositive",
            Error::CharacteristicMismatch { .. } => "CharacteristicMismatch",
            Error::WrongBasis => "WrongBasis",
            Error::NotConjugateSymmetric => "NotConjugateSymmetric",
            Error::NotReal => "NotReal",
            Error::EmptyInput => "EmptyInput",
            Error::OrderTooLarge(_) => "OrderTooLarge",
            Error::AnnihilatorMismatch => "AnnihilatorMismatch",
            Error::InsufficientData => "InsufficientData",
            Error::SingularMatrix => "SingularMatrix",
            Error::PrincipalUndefined => "PrincipalUndefined",
            Error::ZeroLogClash => "ZeroLogClash",
            Error::BranchCount { .. } => "BranchCount",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
