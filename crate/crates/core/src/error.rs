use thiserror::Error;

/// Errors raised by the community-code library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Code parameters outside `1 <= m <= n`.
    #[error("invalid code parameters n={n}, m={m}: require 1 <= m <= n")]
    InvalidCode { n: usize, m: usize },

    /// The code has fewer than two codewords, so a minimum discrepancy does not exist.
    #[error("C({n},{m}) has a single codeword (n < 2m); minimum discrepancy is undefined")]
    UndefinedCode { n: usize, m: usize },

    /// Channel crossover probabilities outside `0 < p <= q`, `p + q < 1`.
    #[error("invalid channel (p={p}, q={q}): {constraint}")]
    ChannelDomain {
        p: f64,
        q: f64,
        constraint: &'static str,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Word length is not `C(n, 2)` for any `n`, or does not match the stated `n`.
    #[error(
        "word of length {len} is not the upper triangle of an adjacency matrix on {n} vertices"
    )]
    BadBlockLength { n: usize, len: usize },

    #[error("not a codeword: the graph is not a disjoint union of cliques")]
    NotACodeword,

    /// An invalid partition type (unsorted, zero part, or wrong total).
    #[error("invalid partition type {parts:?}: {reason}")]
    InvalidType {
        parts: Vec<usize>,
        reason: &'static str,
    },

    /// Exhaustive enumeration would exceed the configured cap.
    #[error("enumeration of {what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u64 },

    /// Empirical channel estimation against a reference with an empty pair class.
    #[error("degenerate reference labeling: {0}")]
    DegenerateReference(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
