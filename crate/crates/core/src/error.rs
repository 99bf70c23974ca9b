use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure class, used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Verification,
    Limits,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("malformed diagram code: {0}")]
    MalformedCode(String),
    #[error("code is not a planar sphere diagram (V - E + F = {euler}, expected 2)")]
    NonPlanar { euler: i64 },
    #[error("diagram has {components} components, a knot diagram has exactly one")]
    MultiComponent { components: usize },
    #[error("torus parameters ({p}, {q}) are not coprime")]
    NotCoprime { p: usize, q: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("no crossing with id {0}")]
    UnknownCrossing(usize),
    #[error("crossing {0} cannot be paired with itself")]
    SelfPair(usize),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("internal schedule error: {0}")]
    InternalScheduleError(String),
    #[error("step {index} is illegal: {reason}")]
    IllegalStep { index: usize, reason: String },
    #[error("step {index}: recorded state does not match the replayed diagram")]
    StateMismatch { index: usize },
    #[error("final diagram is not isomorphic to the declared target")]
    TargetMismatch,
    #[error("search explored {explored} states and hit the state limit")]
    LimitsExceeded { explored: usize },
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedCode(_) => "MalformedCode",
            Error::NonPlanar { .. } => "NonPlanar",
            Error::MultiComponent { .. } => "MultiComponent",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::BadParams(_) => "BadParams",
            Error::UnknownCrossing(_) => "UnknownCrossing",
            Error::SelfPair(_) => "SelfPair",
            Error::IllegalMove(_) => "IllegalMove",
            Error::InternalScheduleError(_) => "InternalScheduleError",
            Error::IllegalStep { .. } => "IllegalStep",
            Error::StateMismatch { .. } => "StateMismatch",
            Error::TargetMismatch => "TargetMismatch",
            Error::LimitsExceeded { .. } => "LimitsExceeded",
            Error::Json(_) => "Json",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::IllegalStep { .. } | Error::StateMismatch { .. } | Error::TargetMismatch => {
                ErrorClass::Verification
            }
            Error::LimitsExceeded { .. } => ErrorClass::Limits,
            _ => ErrorClass::Validation,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
