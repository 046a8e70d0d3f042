use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A pairing that should be integral has an odd doubled value.
    NonIntegral,
    /// A column or neighbourhood reaches outside the known window.
    WindowTooSmall(String),
    /// Exact division in the quantum torus left a remainder.
    NonLaurent,
    /// A denominator was requested for a pair of nodes with no stated formula.
    UnknownPair(i64, i64),
    /// The rank is not valid for the requested affine type.
    BadRank(String),
    /// No stated dictionary case covers the input.
    OutOfStatedDomain(String),
    /// The operation is only available for other affine types.
    NotStated(String),
    /// Mutation requested at a frozen or unknown vertex.
    NotExchangeable(u32),
    /// Malformed input.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonIntegral => write!(f, "value is not integral"),
            Error::WindowTooSmall(s) => write!(f, "window too small: {}", s),
            Error::NonLaurent => write!(f, "exact division failed: result is not Laurent"),
            Error::UnknownPair(k, l) => write!(f, "no denominator stated for nodes ({}, {})", k, l),
            Error::BadRank(s) => write!(f, "bad rank: {}", s),
            Error::OutOfStatedDomain(s) => write!(f, "outside stated domain: {}", s),
            Error::NotStated(s) => write!(f, "not stated: {}", s),
            Error::NotExchangeable(v) => write!(f, "vertex {} is not exchangeable", v),
            Error::Invalid(s) => write!(f, "invalid input: {}", s),
        }
    }
}
