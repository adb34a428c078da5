use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex index {0} out of range")]
    InvalidVertex(usize),

    #[error("edge index {0} out of range")]
    InvalidEdge(usize),

    #[error("weight must be finite and strictly positive, got {0}")]
    InvalidWeight(f64),

    #[error("curvature undefined for self-loops (edge {0})")]
    SelfLoop(usize),

    #[error("OR in scope for unweighted networks only")]
    WeightedGraph,

    #[error("{side} masses sum to {sum}, expected 1")]
    MassMismatch { side: &'static str, sum: f64 },

    #[error("invalid {side} mass {value} at index {index}")]
    InvalidMass {
        side: &'static str,
        index: usize,
        value: f64,
    },

    #[error("cost entry ({row}, {col}) is {value}; costs must be finite and non-negative")]
    InvalidCost { row: usize, col: usize, value: f64 },

    #[error("cost matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("transport simplex exceeded {0} pivots")]
    PivotLimit(usize),

    #[error("correlation undefined: {0}")]
    CorrelationUndefined(&'static str),

    #[error("pagerank did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("generator stalled after {0} consecutive rejections")]
    GeneratorStalled(usize),

    #[error("strategy `{strategy}` does not apply to {family} removal")]
    StrategyFamily {
        strategy: &'static str,
        family: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
