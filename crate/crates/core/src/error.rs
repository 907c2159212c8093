use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("symbol {symbol:?} is not in the {alphabet} alphabet")]
    Alphabet { symbol: char, alphabet: &'static str },
    #[error("example length {len} is out of range for a system over n = {n}")]
    ExampleLength { len: usize, n: usize },
    #[error("empty example")]
    EmptyExample,
    #[error("sample labels example {0:?} both positive and negative")]
    ConflictingLabels(String),
    #[error("invalid distribution: {0}")]
    Distribution(String),
    #[error("invalid representation: {0}")]
    Representation(String),
    #[error("representations belong to different systems ({0} vs {1})")]
    MixedSystems(&'static str, &'static str),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("compression function is not monotone in m (f({lo}) = {f_lo} > f({hi}) = {f_hi})")]
    NonMonotone { lo: u64, hi: u64, f_lo: f64, f_hi: f64 },
    #[error("sample is not realizable: {0}")]
    NotRealizable(String),
    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),
    #[error("codec precondition violated: {0}")]
    Precondition(String),
    #[error("malformed witness code: {0}")]
    Malformed(String),
    #[error("conditioning does not match codec {0}")]
    ConditioningMismatch(&'static str),
    #[error("no finite sample bound: {0}")]
    Infinite(String),
    #[error("stage {stage} failed its error guarantee after {attempts} attempt(s)")]
    StageFailure { stage: usize, attempts: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Input,
    Infeasible,
    StageFailure,
    Other,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Alphabet { .. }
            | Error::ExampleLength { .. }
            | Error::EmptyExample
            | Error::ConflictingLabels(_)
            | Error::Parse(_)
            | Error::Parameter(_)
            | Error::Representation(_)
            | Error::Distribution(_)
            | Error::Malformed(_) => ErrorCategory::Input,
            Error::Infinite(_)
            | Error::NotRealizable(_)
            | Error::EnumerationBound(_) => ErrorCategory::Infeasible,
            Error::StageFailure { .. } => ErrorCategory::StageFailure,
            _ => ErrorCategory::Other,
        }
    }
}
