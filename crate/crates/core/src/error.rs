//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix contains NaN or infinite entries")]
    NotFinite,
    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("operator is not a contraction (norm {norm:.6})")]
    NotContraction { norm: f64 },
    #[error("shape error: {0}")]
    Shape(String),

    #[error("kernel matrix is numerically singular (min eigenvalue {min_eigenvalue:.3e})")]
    SingularKernel { min_eigenvalue: f64 },
    #[error("kernel has a zero entry at ({row}, {col}); the Pick machinery requires K != 0")]
    ZeroKernelEntry { row: usize, col: usize },
    #[error("point outside the kernel domain: {0}")]
    DomainViolation(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("kernel fails the Pick test (min eigenvalue of the Pick matrix {min_eigenvalue:.3e})")]
    NotPick { min_eigenvalue: f64 },
    #[error("delta vanishes at point index {index}; normalization is undefined there")]
    ZeroDelta { index: usize },

    #[error("element is not in the range (relative residual {residual:.3e})")]
    NotInRange { residual: f64 },
    #[error("Douglas condition T C1 C1* T* <= C2 C2* fails (witness eigenvalue {min_eigenvalue:.3e})")]
    DouglasFails { min_eigenvalue: f64 },

    #[error("subspace is not invariant under the Pick multiplier (witness eigenvalue {min_eigenvalue:.3e})")]
    NotInvariant { min_eigenvalue: f64 },
    #[error("presentation is not isometric (||C*C - I|| = {residual:.3e})")]
    NotIsometric { residual: f64 },
    #[error("multiplier dimensions do not compose: {0}")]
    DimMismatch(String),

    #[error("resolvent is numerically singular (condition {condition:.3e})")]
    SingularResolvent { condition: f64 },
    #[error("kernel is not normalized at the base point (max |delta - 1| = {deviation:.3e})")]
    NotNormalized { deviation: f64 },
    #[error("candidate operator violates the complementary-space conditions: {0}")]
    ConditionsViolated(String),
    #[error("counterexample search exhausted its budget: {0}")]
    SearchFailed(String),

    #[error("malformed input: {0}")]
    Input(String),
}
