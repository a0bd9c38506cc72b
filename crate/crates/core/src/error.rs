use thiserror::Error;

/// Errors raised by matrix construction, spectral calculus and divergences.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Dimension must be at least one and the entry buffer must match it.
    #[error("invalid shape: {0}")]
    InvalidShape(&'static str),

    /// An entry is NaN or infinite.
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite {
        /// Row index.
        row: usize,
        /// Column index.
        col: usize,
    },

    /// `m[row][col]` differs from `conj(m[col][row])` beyond tolerance.
    #[error("matrix is not Hermitian at ({row}, {col}): deviation {deviation:e}")]
    NotHermitian {
        /// Row index.
        row: usize,
        /// Column index.
        col: usize,
        /// Absolute deviation.
        deviation: f64,
    },

    /// Operands of a binary operation have different dimensions.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// The Jacobi eigensolver hit its sweep limit.
    #[error("eigensolver did not converge after {0} sweeps")]
    NonConvergence(usize),

    /// An eigenvalue lies below the clamping threshold.
    #[error("matrix is not positive semidefinite: eigenvalue {0:e}")]
    NotPsd(f64),

    /// Trace of a density matrix is not one.
    #[error("density matrix trace is {0}, expected 1")]
    NotNormalized(f64),

    /// A scalar function is undefined (or non-finite) at an eigenvalue.
    #[error("function undefined at eigenvalue {0:e}")]
    DomainError(f64),

    /// A positive definite input has an eigenvalue at or below 1e-12.
    #[error("singular input: eigenvalue {0:e} is not above 1e-12")]
    SingularInput(f64),

    /// A divergence came out negative beyond cancellation tolerance.
    #[error("divergence evaluated to {0:e}, below the -1e-12 cancellation floor")]
    NumericalInconsistency(f64),

    /// Kernel matrix is not symmetric.
    #[error("kernel is not symmetric at ({row}, {col})")]
    AsymmetricInput {
        /// Row index.
        row: usize,
        /// Column index.
        col: usize,
    },

    /// Kernel diagonal is not zero.
    #[error("kernel diagonal entry {index} is {value:e}, expected 0")]
    NonZeroDiagonal {
        /// Diagonal index.
        index: usize,
        /// Offending value.
        value: f64,
    },

    /// Embedding requested for a kernel that is not negative definite.
    #[error("kernel is not negative definite; no Euclidean embedding exists")]
    NotEmbeddable,

    /// Bloch vector outside the closed unit ball.
    #[error("Bloch vector norm {0} exceeds 1")]
    InvalidBlochVector(f64),

    /// Function specification is not convex on a grid spot-check.
    #[error("function is not convex near x = {x}: second difference {second_difference:e}")]
    NotConvex {
        /// Grid point.
        x: f64,
        /// Offending second difference.
        second_difference: f64,
    },

    /// A scalar parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
