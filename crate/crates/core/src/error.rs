use thiserror::Error;

use crate::arith::DivisorKind;
use crate::symbolic::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no boundary value defined for {kind} with s = {s}")]
    NoBoundaryValue { kind: DivisorKind, s: u32 },

    #[error("non-unit divisor: constant term is zero")]
    NonUnitDivisor,

    #[error("vanishing factor (1 - q^0) in product expansion")]
    VanishingFactor,

    #[error("product factor with modulus 0 repeats forever")]
    DegenerateModulus,

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },

    #[error("unsupported Phi index r = {r}, s = {s}: {reason}")]
    UnsupportedPhi { r: u32, s: u32, reason: &'static str },

    #[error("invalid series parameter: {0}")]
    InvalidSeries(String),

    #[error("unknown series name `{0}`")]
    UnknownSeries(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("identity `{id}` is not a {expected} identity")]
    WrongIdentityKind { id: String, expected: &'static str },

    #[error("unknown special value `{0}`")]
    UnknownSpecialValue(String),

    #[error("series evaluation diverges: |x| >= 1")]
    Divergent,

    #[error("precision must be at least {min} bits, got {got}")]
    Precision { min: usize, got: usize },

    #[error("cannot parse polynomial `{input}`: {reason}")]
    PolyParse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
