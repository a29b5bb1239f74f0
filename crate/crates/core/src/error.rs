use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in input")]
    NonFinite,
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("character weights are not sorted ascending")]
    NotSorted,
    #[error("character weights sum to {sum}, expected 2")]
    SumNotTwo { sum: f64 },
    #[error("character weight {index} is outside (0, 1)")]
    OutOfRange { index: usize },
    #[error("character is degenerate (gamma3 = 0); use the equal-character branch")]
    DegenerateCharacter,

    #[error("lambda = {lambda} is outside the admissible range")]
    LambdaOutOfRange { lambda: f64 },
    #[error("lambda^2 + mu^2 + nu^2 = {value}, expected 1/4")]
    ConstraintViolated { value: f64 },
    #[error("sign pattern of (lambda, mu, nu) describes a decomposable triple")]
    SignPatternInvalid,
    #[error("relation residual {residual:e} too large for the given character")]
    RelationResidualTooLarge { residual: f64 },
    #[error("(lambda, chi) = ({lambda}, {chi}) outside the equal-character domain")]
    DomainViolation { lambda: f64, chi: f64 },

    #[error("projector {index} is not rank one")]
    NotRankOne { index: usize },
    #[error("graph representation is not locally scalar (residual {residual:e})")]
    ScalarityViolated { residual: f64 },

    #[error("quadruple is decomposable (commutant dimension {commutant_dim})")]
    Decomposable { commutant_dim: usize },
    #[error("input is not a projector quadruple: {reason}")]
    NotAQuadruple { reason: String },
    #[error("characters differ")]
    CharacterMismatch,

    #[error("Bloch vectors violate unit length or closure (residual {residual:e})")]
    ClosureViolated { residual: f64 },
    #[error("linkage sampler exhausted its rejection budget")]
    SamplingExhausted,
}

impl Error {
    /// Stable machine-readable name, used in CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite => "NonFinite",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::NotSorted => "NotSorted",
            Error::SumNotTwo { .. } => "SumNotTwo",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::DegenerateCharacter => "DegenerateCharacter",
            Error::LambdaOutOfRange { .. } => "LambdaOutOfRange",
            Error::ConstraintViolated { .. } => "ConstraintViolated",
            Error::SignPatternInvalid => "SignPatternInvalid",
            Error::RelationResidualTooLarge { .. } => "RelationResidualTooLarge",
            Error::DomainViolation { .. } => "DomainViolation",
            Error::NotRankOne { .. } => "NotRankOne",
            Error::ScalarityViolated { .. } => "ScalarityViolated",
            Error::Decomposable { .. } => "Decomposable",
            Error::NotAQuadruple { .. } => "NotAQuadruple",
            Error::CharacterMismatch => "CharacterMismatch",
            Error::ClosureViolated { .. } => "ClosureViolated",
            Error::SamplingExhausted => "SamplingExhausted",
        }
    }
}
