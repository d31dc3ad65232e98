use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimensions n={n}, q={q}: {reason}")]
    InvalidDimensions { n: usize, q: u64, reason: &'static str },

    #[error("vertex {coords:?} does not belong to H({n},{q})")]
    VertexOutOfSpace { coords: Vec<u32>, n: usize, q: u32 },

    #[error("invalid clique: {0}")]
    InvalidClique(String),

    #[error("invalid hyperface: direction {direction}, symbol {symbol} in H({n},{q})")]
    InvalidHyperface { direction: usize, symbol: u32, n: usize, q: u32 },

    #[error("position {position} out of range for word length {n}")]
    InvalidPosition { position: usize, n: usize },

    #[error("code is empty")]
    EmptyCode,

    #[error("code must be a proper nonempty subset of the vertex set")]
    EmptyOrFullCode,

    #[error("code has no essential positions")]
    NoEssentialPositions,

    #[error("codes live in different spaces")]
    SpaceMismatch,

    #[error("divisibility violated: {0}")]
    DivisibilityViolated(String),

    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("Condition 1 violated for q={q} by (r,s,t,a,b,c)=({r},{s},{t},{a},{b},{c})")]
    ConditionOneViolated { q: u32, r: u32, s: u32, t: u32, a: u32, b: u32, c: u32 },

    #[error("eigenvalue index {i} out of range 0..={n}")]
    IndexOutOfRange { i: usize, n: usize },

    #[error("gamma={gamma} is not normalized (gamma <= beta = {beta}); query the complement with gamma={beta}")]
    NotNormalized { gamma: u32, beta: u32 },

    #[error("space with {vertices} vertices exceeds the search cap of {cap}")]
    SpaceTooLarge { vertices: usize, cap: usize },

    #[error("not a clique partition: codeword {witness:?} lies in {covered} full cliques")]
    NotCliquePartition { witness: Vec<u32>, covered: usize },

    #[error("structural relation violated: {0}")]
    LemmaViolated(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("search emitted a code that failed re-verification: {0}")]
    SearchVerification(String),
}
