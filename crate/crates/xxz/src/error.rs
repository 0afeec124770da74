use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature failed to converge: error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("derivative methods disagree: analytic {analytic:.9e} vs finite-difference {finite_diff:.9e}")]
    Derivative { analytic: f64, finite_diff: f64 },

    #[error("unsupported separation r = {0} (supported: 1, 2, 3)")]
    UnsupportedSeparation(usize),

    #[error("density matrix is not physical: smallest eigenvalue {0:.3e}")]
    Physicality(f64),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("eigensolver failed to converge: {0}")]
    Convergence(String),

    #[error("problem size exceeds resource budget: {0}")]
    Resource(String),

    #[error("ground-state degeneracy {0} too large for the requested state selection")]
    Degeneracy(usize),

    #[error("finite-size fit rejected: residual {residual:.3e} exceeds 10% of value spread {spread:.3e}")]
    Fit { residual: f64, spread: f64 },

    #[error("sweep is missing the companion series '{0}'")]
    MissingSeries(String),
}

pub type Result<T> = std::result::Result<T, Error>;
