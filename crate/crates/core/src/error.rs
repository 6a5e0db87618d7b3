use thiserror::Error;

/// Errors raised by parsing, validation and the enumeration algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: unknown element `{label}`")]
    UnknownElement { line: usize, label: String },

    #[error("line {line}: ground line declared more than once")]
    DuplicateGround { line: usize },

    #[error("line {line}: set repeats an earlier line")]
    DuplicateSet { line: usize },

    #[error("invalid element label `{label}`: {reason}")]
    InvalidLabel { label: String, reason: &'static str },

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("label `{0}` is reserved for gadget elements")]
    ReservedLabel(String),

    #[error("line {line}: implication with empty premise (enable empty premises to accept it)")]
    EmptyPremise { line: usize },

    #[error("ground set has {size} elements, limit is {limit}")]
    GroundTooLarge { size: usize, limit: usize },

    #[error("element index {index} outside ground set of size {size}")]
    ElementOutOfRange { index: usize, size: usize },

    #[error("implication `{0}` is not binary")]
    NonBinaryImplication(String),

    #[error("closure system is not standard: cl({0}) minus itself is not closed")]
    NotStandard(String),

    #[error("set is not closed")]
    NotClosed,

    #[error("family is not an antichain")]
    NotAntichain,

    #[error("antichain is empty")]
    EmptyAntichain,

    #[error("set does not span the required closed set")]
    NotSpanning,

    #[error("target element belongs to the candidate set")]
    TargetInSet,

    #[error("element `{0}` has no D-generators")]
    NoDGenerators(String),

    #[error("set is not a D-generator of `{0}`")]
    NotDGenerator(String),

    #[error("malformed gadget: {0}")]
    MalformedGadget(String),

    #[error("invalid CNF: {0}")]
    InvalidCnf(String),

    #[error("visited-set cap of {0} solutions exceeded")]
    MemoryCapExceeded(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
