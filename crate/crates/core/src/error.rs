use thiserror::Error;

use crate::classify::{DeformationClass, TriState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid pair (d, s) = ({d}, {s}): need 2 <= d <= {max_d} and s >= 1", max_d = crate::classify::MAX_DEGREE)]
    InvalidPair { d: u32, s: u32 },

    #[error("modulus {0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {0} is outside the supported range (10^6, 2^32)")]
    ModulusOutOfRange(u64),

    #[error("point configuration is degenerate: point {0} repeats an earlier point")]
    DegenerateConfiguration(usize),

    #[error("fat-point system has {expected} points but the configuration has {actual}")]
    PointCountMismatch { expected: usize, actual: usize },

    #[error("invalid fat-point system: {0}")]
    InvalidSystem(String),

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("no smooth canonical double cover for (d, s) = ({d}, {s}) (verdict {verdict:?})")]
    NoCover { d: u32, s: u32, verdict: TriState },

    #[error("(d, s) = ({d}, {s}) has deformation class {actual:?}, expected {expected:?}")]
    WrongClass {
        d: u32,
        s: u32,
        expected: DeformationClass,
        actual: DeformationClass,
    },

    #[error("divisor class needs m >= 4, got m = {0}")]
    InvalidMultiple(i64),

    #[error("scroll type needs 0 <= a <= b <= c, got ({a}, {b}, {c})")]
    InvalidScroll { a: u32, b: u32, c: u32 },

    #[error("non-integral value {numer}/{denom} for {what}")]
    NonIntegral {
        what: &'static str,
        numer: i128,
        denom: i128,
    },

    #[error("congruence table covers only 5 <= m <= 10, got m = {0}")]
    CongruenceOutOfRange(i64),

    #[error("internal consistency violation for (d, s) = ({d}, {s}): {reason}")]
    Inconsistent { d: u32, s: u32, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
