//! Splitting criteria for Rost motives, projective quadrics and Borel
//! varieties, and the Euler-characteristic arithmetic they rest on.

mod borel;
mod euler;
mod quadric;
mod rost;

use thiserror::Error;

pub use borel::{
    borel_split, BorelVerdict, GroupDescriptor, HeightQuery, RawGroupDescriptor, RawRostInvariant,
    RawTitsClass, RostInvariant, RuleId, UInvariant, Verdict,
};
pub use euler::{
    euler_char, milnor_number_hypersurface, milnor_number_quadric, nu_variety_check,
    EulerReport, EulerTheory, VarietyDescriptor,
};
pub use quadric::{quadric_split_levels, HeightVerdict, QuadricDescriptor, QuadricSplitLevels};
pub use rost::{
    ideal_i, rost_split_status, rost_split_status_for, specialize_image, IdealModule, ImageReport,
    ModuleShape, PureSymbol, RostVerdict, SpecializationTarget, SplitStatus, SymbolEntry,
    TorsionSummand,
};

use crate::witt::WittError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MotiveError {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("symbol degree m = {0} must be at least 2")]
    InvalidDegree(u32),
    #[error("symbol has {got} entries, expected {expected}")]
    EntryCount { expected: usize, got: usize },
    #[error("square-class entries are only meaningful at p = 2")]
    SquareClassAtOddPrime,
    #[error("ideal needs {0} variables, at most {max} supported", max = crate::exact::MAX_VARS)]
    TooManyVariables(u32),
    #[error("dimension {dim} is not p^n - 1 = {expected}")]
    DimensionMismatch { dim: u64, expected: u64 },
    #[error("dimension {0} is out of the supported range")]
    DimensionOutOfRange(u64),
    #[error("Morava height must be at least 1 here, got {0}")]
    InvalidHeight(u32),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("hypothesis violation in `{key}`: {reason}")]
    HypothesisViolation { key: String, reason: String },
    #[error(transparent)]
    Witt(#[from] WittError),
}

fn check_prime(p: u64) -> Result<(), MotiveError> {
    if crate::exact::is_prime(p) {
        Ok(())
    } else {
        Err(MotiveError::InvalidPrime(p))
    }
}
