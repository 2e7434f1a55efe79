use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// Variant names double as the machine-readable error codes that the CLI
/// writes into report files, so they are stable identifiers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("DivisionByZeroConstantTerm: divisor has zero constant term")]
    DivisionByZeroConstantTerm,

    #[error("OrderTooSmall: operation needs order >= {needed}, jet has order {have}")]
    OrderTooSmall { needed: usize, have: usize },

    #[error("BasePointMismatch: inner jet has constant offset {offset:e} relative to the outer base point")]
    BasePointMismatch { offset: f64 },

    #[error("SingularJacobian: map has non-invertible linear part (det = {det:e})")]
    SingularJacobian { det: f64 },

    #[error("NondegeneracyFailure: det g = {det:e} at the base point")]
    NondegeneracyFailure { det: f64 },

    #[error("DomainError: {0}")]
    DomainError(String),

    #[error("SyntaxError at position {position}: {message}")]
    SyntaxError { position: usize, message: String },

    #[error("NotAnIntegralElement: residual {residual:e} exceeds tolerance {tolerance:e}")]
    NotAnIntegralElement { residual: f64, tolerance: f64 },

    #[error("DegenerateFrame: |det G| = {det:e} is too small")]
    DegenerateFrame { det: f64 },

    #[error("SingularMatrix: |det A| = {det:e} is too small")]
    SingularMatrix { det: f64 },

    #[error("NotRegular: regularity value {value:e} vanishes within tolerance")]
    NotRegular { value: f64 },

    #[error("NoAdmissibleGauge: deterministic gauge scan exhausted ({tried} candidates)")]
    NoAdmissibleGauge { tried: usize },

    #[error("ConstraintViolated: {0}")]
    ConstraintViolated(String),

    #[error("CharacteristicInitialData: {0}")]
    CharacteristicInitialData(String),

    #[error("ObstructionDetected: degree {degree} system inconsistent (residual {residual:e})")]
    ObstructionDetected { degree: usize, residual: f64 },

    #[error("RankCollapse: degree {degree} solve degenerated ({message})")]
    RankCollapse { degree: usize, message: String },

    #[error("NotClosed: closedness residual {residual:e} exceeds tolerance")]
    NotClosed { residual: f64 },

    #[error("ConfigError: {0}")]
    ConfigError(String),

    #[error("IoError: {0}")]
    Io(String),
}

impl Error {
    /// Stable code used in report files and exit diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZeroConstantTerm => "DivisionByZeroConstantTerm",
            Error::OrderTooSmall { .. } => "OrderTooSmall",
            Error::BasePointMismatch { .. } => "BasePointMismatch",
            Error::SingularJacobian { .. } => "SingularJacobian",
            Error::NondegeneracyFailure { .. } => "NondegeneracyFailure",
            Error::DomainError(_) => "DomainError",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::NotAnIntegralElement { .. } => "NotAnIntegralElement",
            Error::DegenerateFrame { .. } => "DegenerateFrame",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::NotRegular { .. } => "NotRegular",
            Error::NoAdmissibleGauge { .. } => "NoAdmissibleGauge",
            Error::ConstraintViolated(_) => "ConstraintViolated",
            Error::CharacteristicInitialData(_) => "CharacteristicInitialData",
            Error::ObstructionDetected { .. } => "ObstructionDetected",
            Error::RankCollapse { .. } => "RankCollapse",
            Error::NotClosed { .. } => "NotClosed",
            Error::ConfigError(_) => "ConfigError",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
