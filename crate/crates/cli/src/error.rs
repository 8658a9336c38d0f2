use kmotive::exact::SeriesError;
use kmotive::fgl::FglError;
use kmotive::motives::MotiveError;
use kmotive::rootsys::RootError;
use kmotive::witt::WittError;
use thiserror::Error;

/// An engine failure: exits 1 with `{"error": name, "detail": message}`.
#[derive(Debug, Error)]
#[error("{name}: {detail}")]
pub struct EngineError {
    pub name: &'static str,
    pub detail: String,
}

impl EngineError {
    pub fn new(name: &'static str, detail: impl Into<String>) -> Self {
        EngineError {
            name,
            detail: detail.into(),
        }
    }
}

/// Either a usage problem (exit 2) or an engine error (exit 1).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn series_name(e: &SeriesError) -> &'static str {
    match e {
        SeriesError::NonUnitLeadingCoefficient(_) => "NonUnitLeadingCoefficient",
        SeriesError::ZeroConstantViolation(_) => "ZeroConstantViolation",
        SeriesError::CompositionAtNonzeroConstant(_) => "CompositionAtNonzeroConstant",
        SeriesError::NonInvertibleConstant(_) => "NonInvertibleConstant",
    }
}

impl From<FglError> for CliError {
    fn from(e: FglError) -> Self {
        let name = match &e {
            FglError::InvalidPrime(_) => "InvalidPrime",
            FglError::InvalidHeight(_) => "InvalidHeight",
            FglError::InvalidBound => "InvalidBound",
            FglError::IntegralityViolation { .. } => "IntegralityViolation",
            FglError::Series(s) => series_name(s),
        };
        EngineError::new(name, e.to_string()).into()
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        let name = match &e {
            RootError::UnsupportedType(_) => "UnsupportedType",
            RootError::GroupTooLarge { .. } => "GroupTooLarge",
            RootError::IllDefinedHomomorphism(_) => "IllDefinedHomomorphism",
            RootError::InvalidIndex { .. } => "InvalidIndex",
            RootError::SourceMismatch => "SourceMismatch",
            RootError::InvalidWord(_) => "InvalidWord",
        };
        EngineError::new(name, e.to_string()).into()
    }
}

fn witt_name(e: &WittError) -> &'static str {
    match e {
        WittError::AmbientMismatch { .. } => "AmbientMismatch",
        WittError::AmbientOutOfRange(_) => "AmbientOutOfRange",
        WittError::DegeneratePfisterEntry(_) => "DegeneratePfisterEntry",
        WittError::NotInFundamentalPower { .. } => "NotInFundamentalPower",
        WittError::OddDimensional => "OddDimensional",
        WittError::TooFewEntries(_) => "TooFewEntries",
        WittError::Parse(_) => "ParseError",
    }
}

impl From<WittError> for CliError {
    fn from(e: WittError) -> Self {
        EngineError::new(witt_name(&e), e.to_string()).into()
    }
}

impl From<MotiveError> for CliError {
    fn from(e: MotiveError) -> Self {
        let name = match &e {
            MotiveError::InvalidPrime(_) => "InvalidPrime",
            MotiveError::InvalidDegree(_) => "InvalidDegree",
            MotiveError::EntryCount { .. } => "EntryCount",
            MotiveError::SquareClassAtOddPrime => "SquareClassAtOddPrime",
            MotiveError::TooManyVariables(_) => "TooManyVariables",
            MotiveError::DimensionMismatch { .. } => "DimensionMismatch",
            MotiveError::DimensionOutOfRange(_) => "DimensionOutOfRange",
            MotiveError::InvalidHeight(_) => "InvalidHeight",
            MotiveError::InsufficientData(_) => "InsufficientData",
            MotiveError::HypothesisViolation { .. } => "HypothesisViolation",
            MotiveError::Witt(w) => witt_name(w),
        };
        EngineError::new(name, e.to_string()).into()
    }
}
