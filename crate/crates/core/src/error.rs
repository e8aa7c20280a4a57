use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input must be a positive integer")]
    NonPositiveInput,

    #[error("input {0} exceeds the supported integer range (2^31)")]
    InputTooLarge(u64),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("ragged matrix: expected {expected} columns, row {row} has {got}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("matrix is not Hermitian: entry ({row},{col}) differs from the conjugate of ({col},{row}) by {defect:.3e}")]
    NotHermitian {
        row: usize,
        col: usize,
        defect: f64,
    },

    /// Membership failure: entry (j,k) disagrees with entry (2j-k, j).
    #[error("operator is not KD-real: entry ({j},{k}) differs from entry ({j2},{k2}) by {defect:.3e}")]
    NotKdReal {
        j: usize,
        k: usize,
        j2: usize,
        k2: usize,
        defect: f64,
    },

    #[error("invalid pure-state descriptor (d1={d1}, d2={d2}, j={j}, k={k}) for dimension {d}")]
    InvalidDescriptor {
        d: usize,
        d1: usize,
        d2: usize,
        j: usize,
        k: usize,
    },

    /// Two catalog entries produced the same projector; the catalog must
    /// contain d*tau(d) distinct states, so this is a hard error.
    #[error("catalog states ({0}) and ({1}) coincide")]
    DuplicateCatalogState(String, String),

    #[error("tolerances must be strictly positive")]
    InvalidTolerance,

    #[error("reconstruction residual {residual:.3e} exceeds the limit {limit:.3e}")]
    ResidualExceeded { residual: f64, limit: f64 },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
