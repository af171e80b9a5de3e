use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("site count {0} is outside the supported range 1..=64")]
    SiteCount(usize),

    #[error("label {label:?} has length {len}, expected {expected}")]
    LabelLength {
        label: String,
        len: usize,
        expected: usize,
    },

    #[error("invalid character {ch:?} at position {pos} in label {label:?} (expected one of I, x, y, z)")]
    InvalidLabelChar { label: String, ch: char, pos: usize },

    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i32),

    #[error("site count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("group index {p} out of range for n = {n}")]
    IndexOutOfRange { n: usize, p: u64 },

    #[error("at least {min} sites required, got {got}")]
    TooFewSites { min: usize, got: usize },

    #[error("Pauli string {0} is not real-signed (phase i or -i)")]
    NotRealSigned(String),

    #[error("{0} is the negation of a GHZ stabilizer element")]
    NegatedElement(String),

    #[error("{0} is not an element of the GHZ stabilizer group")]
    NotInGroup(String),

    #[error("term {index}: {source}")]
    Term {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("coefficient of term {index} is not finite ({value})")]
    NonFiniteCoefficient { index: usize, value: f64 },

    #[error("spectrum has a single distinct eigenvalue {0}; the observable is proportional to the identity")]
    DegenerateSpectrum(f64),

    #[error("mean {mean} lies outside the feasible range [{min}, {max}]")]
    InfeasibleMean { mean: f64, min: f64, max: f64 },

    #[error("observable is not in the class C_{n}: {reasons}")]
    NotInClass { n: usize, reasons: String },

    #[error("n = {n} exceeds the cap of {cap} for {what}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("uncertainties given for {given} of {total} terms; supply all or none")]
    PartialUncertainty { given: usize, total: usize },

    #[error("invalid uncertainty {value} for term {index}")]
    InvalidUncertainty { index: usize, value: f64 },

    #[error("operators do not commute")]
    NonCommuting,

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("visibility {0} outside [0, 1]")]
    Visibility(f64),

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("{0}")]
    Io(String),

    #[error("oracle verification failed: {0}")]
    OracleFailure(String),
}

impl Error {
    pub(crate) fn at_term(self, index: usize) -> Error {
        Error::Term {
            index,
            source: Box::new(self),
        }
    }

    /// Innermost error, looking through term wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Term { source, .. } => source.root(),
            e => e,
        }
    }

    /// Process exit code used by the `ghzfid` binary.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::InfeasibleMean { .. } => 3,
            Error::NotInClass { .. } => 4,
            Error::OracleFailure(_) => 5,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
