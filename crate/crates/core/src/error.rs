use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,

    #[error("graph needs at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("complex too large: dimension {dim} exceeds the cap of {cap} simplices")]
    ComplexTooLarge { dim: usize, cap: usize },

    #[error("degree {k} out of range (allowed {min}..={max})")]
    DegreeOutOfRange { k: i64, min: i64, max: i64 },

    #[error("simplex {0:?} is not in the complex")]
    SimplexNotFound(Vec<usize>),

    #[error("no {k}-simplices")]
    NoSimplices { k: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("numerical rank mismatch in degree {k}: kernel dimension {kernel} vs rank-nullity {rank_nullity}")]
    RankMismatch {
        k: usize,
        kernel: usize,
        rank_nullity: usize,
    },

    #[error("simplex stalled after {iterations} iterations")]
    SimplexStalled { iterations: usize },

    #[error("{what}: size {size} exceeds search cap {cap}")]
    SearchCapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("no totally dominating set exists (vertex {0} is isolated)")]
    NoTotalDominatingSet(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by enumeration or search budgets.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::ComplexTooLarge { .. } | Error::SearchCapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
