use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the core crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A pattern with no components.
    EmptyPattern,
    /// A raw value at `index` is NaN or infinite.
    NonFinite {
        index: usize,
    },
    /// All values of the pattern are equal, so the sigmoid phase map is undefined.
    ConstantPattern,
    /// Amplitude encoding of an all-zero pattern.
    ZeroNorm,
    /// A decoded phase sits on 0 or 2π, where the inverse sigmoid diverges.
    PhaseSaturated {
        index: usize,
        phase: f64,
    },
    /// Operation needs a state of a different encoding kind.
    WrongEncoding {
        expected: &'static str,
        found: &'static str,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// A state that must be unit-norm is not.
    NotNormalized {
        norm: f64,
    },
    /// `build` called without patterns.
    NoPatterns,
    InvalidConfidence(f64),
    BadMagic,
    UnsupportedVersion(u32),
    Truncated {
        needed: usize,
        available: usize,
    },
    ChecksumMismatch {
        stored: u32,
        computed: u32,
    },
    TrailingBytes(usize),
    InvalidLabel {
        index: usize,
    },
    /// A decoded memory violates a structural invariant.
    Corrupt(String),
    InvalidConfig(String),
    /// Dense and lazy recall disagree beyond tolerance.
    PathDisagreement {
        n: usize,
        p: usize,
        disagreement: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPattern => write!(f, "pattern has no components"),
            Error::NonFinite { index } => write!(f, "non-finite value at component {index}"),
            Error::ConstantPattern => write!(
                f,
                "constant pattern has zero standard deviation; encode it with the uniform phase pi instead"
            ),
            Error::ZeroNorm => write!(f, "pattern has zero Euclidean norm"),
            Error::PhaseSaturated { index, phase } => {
                write!(f, "phase {phase} at component {index} is saturated at 0 or 2pi")
            }
            Error::WrongEncoding { expected, found } => {
                write!(f, "expected a {expected} state, found {found}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotNormalized { norm } => write!(f, "state is not unit-norm (norm {norm})"),
            Error::NoPatterns => write!(f, "at least one pattern is required"),
            Error::InvalidConfidence(t) => write!(f, "minimum confidence {t} outside [0, 1]"),
            Error::BadMagic => write!(f, "bad magic bytes"),
            Error::UnsupportedVersion(v) => write!(f, "unsupported format version {v}"),
            Error::Truncated { needed, available } => {
                write!(f, "truncated payload: need {needed} bytes, have {available}")
            }
            Error::ChecksumMismatch { stored, computed } => write!(
                f,
                "checksum mismatch: stored {stored:#010x}, computed {computed:#010x}"
            ),
            Error::TrailingBytes(n) => write!(f, "{n} unexpected trailing bytes"),
            Error::InvalidLabel { index } => write!(f, "label {index} is not valid UTF-8"),
            Error::Corrupt(why) => write!(f, "corrupt memory: {why}"),
            Error::InvalidConfig(why) => write!(f, "invalid experiment config: {why}"),
            Error::PathDisagreement { n, p, disagreement } => write!(
                f,
                "dense and lazy recall disagree by {disagreement:e} at N = {n}, P = {p}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
