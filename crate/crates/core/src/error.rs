use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid user-supplied configuration (generator lists, parameters).
    #[error("configuration error: {0}")]
    Config(String),

    /// Inconsistent structure: mismatched generator systems, missing
    /// character values, out-of-range generator indices.
    #[error("structural error: {0}")]
    Structural(String),

    /// Symbols with `c0 = 0` are not handled.
    #[error("unsupported symbol class: {0}")]
    UnsupportedClass(String),

    /// The symbol failed the class membership check.
    #[error("symbol rejected: {0}")]
    Class(String),

    /// A point outside the admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A root stayed too close to the contour after all nudges.
    #[error("contour error: {0}")]
    Contour(String),

    /// The winding integral did not round to an integer.
    #[error("quadrature error: {0}")]
    Quadrature(String),

    /// Root isolation exceeded its recursion budget.
    #[error("subdivision error: {0}")]
    Subdivision(String),

    /// A counting evaluation failed inside a Monte Carlo run.
    #[error("sample {index} (seed {seed}) failed: {source}")]
    Sample {
        seed: u64,
        index: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
