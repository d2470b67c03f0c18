use thiserror::Error;

/// Errors surfaced by the public operations of this crate.
///
/// Domain errors (bad class codes, forbidden constants, vanishing
/// denominators at a requested point) are distinguished from internal
/// inconsistencies, which indicate a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("invalid class code `{word}`: {reason}")]
    InvalidCode { word: String, reason: String },
    #[error("constant supplied at a forbidden slot: step {step} (letter {letter}) does not admit a {slot} constant")]
    ConstantNotAllowed {
        step: usize,
        letter: u8,
        slot: &'static str,
    },
    #[error("missing constant at step {step} slot {slot}")]
    ConstantMissing { step: usize, slot: &'static str },
    #[error("chart construction requires width m = 2, got m = {0}")]
    UnsupportedWidth(usize),
    #[error("vector fields live on different rings")]
    RingMismatch,
    #[error("denominator vanishes at the requested point")]
    DenominatorVanishes,
    #[error("generators are linearly dependent over the rational-function field")]
    DependentGenerators,
    #[error("coordinate map is not invertible: zero scale factor at `{0}`")]
    NonInvertibleMap(String),
    #[error("jet truncation order {supplied} too small: stage {stage} needs order >= {needed}")]
    TruncationTooSmall {
        supplied: usize,
        needed: usize,
        stage: usize,
    },
    #[error("no diagonal scaling achieves the requested target: {0}")]
    InconsistentScaling(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
