use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),

    #[error("endpoint coefficient {which} of b is zero")]
    ZeroEndpoint { which: &'static str },

    #[error("expansion requires 2n > k and n + l >= k, got n = {n}, k = {k}")]
    DegreeTooSmall { n: u64, k: usize },

    #[error("leading coefficient b_l + a_k cancels at n = {n}; the member has degree below 2n + 2l")]
    LeadingCancellation { n: u64 },

    #[error("coefficient overflow while expanding")]
    Overflow,

    #[error("the b coefficients are not palindromic")]
    NonPalindromic,

    #[error("degenerate envelope: |f2| and |E| coincide identically")]
    DegenerateEnvelope,

    #[error("series contains half-integer frequencies")]
    HalfIntegerFrequency,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("root classification unstable at tolerance {tolerance:e}: {reason}")]
    ClassificationUnstable { tolerance: f64, reason: String },

    #[error("sign-change grid unstable: {0}")]
    GridInstability(String),

    #[error("root finder did not converge: {0}")]
    RootFinder(String),

    #[error("integrality check failed for m = {m}: {value} is not an integer")]
    Integrality { m: u32, value: f64 },

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
