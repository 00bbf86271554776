//! Error type shared by all kernels.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("`0` is not a valid generator token (generators are nonzero integers)")]
    ZeroGenerator,
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("generator index {index} needs at least {} strands, but n = {n}", index + 1)]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("band ({i},{j}) is out of range for {n} strands (need 1 <= i < j <= n)")]
    BandOutOfRange { i: usize, j: usize, n: usize },
    #[error("gamma indices ({i},{j}) are out of range for {n} strands")]
    GammaOutOfRange { i: usize, j: usize, n: usize },
    #[error("gamma span |{i}-{j}| exceeds n-3 = {} for n = {n}", n.saturating_sub(3))]
    GammaSpanTooWide { i: usize, j: usize, n: usize },
    #[error("state assignment has {got} entries, diagram has {expected} crossings")]
    AssignmentLength { got: usize, expected: usize },
    #[error("crossing count {crossings} exceeds the state-sum limit {limit}")]
    OracleLimit { crossings: usize, limit: usize },
    #[error("strand count {n} exceeds the planar-basis limit {limit}")]
    BasisLimit { n: usize, limit: usize },
    #[error("closure has {components} components, expected a knot")]
    NotAKnot { components: usize },
    #[error("band count {bands} has the wrong parity for a knot closure on {n} strands")]
    GenusParity { bands: usize, n: usize },
    #[error("braid index {b} is below the minimum {min} required by this bound")]
    BraidIndexTooSmall { b: u32, min: u32 },
    #[error(
        "Turaev identity violated: c = {c}, |sA| = {s_a}, |sB| = {s_b} \
         (the closure diagram is split or malformed)"
    )]
    TuraevIdentity { c: usize, s_a: usize, s_b: usize },
    #[error("invalid knot profile: {0}")]
    InvalidProfile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
