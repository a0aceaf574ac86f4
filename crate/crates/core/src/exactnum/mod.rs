//! Exact arithmetic in quadratic fields and dense linear algebra over any [`Scalar`].

mod linalg;
mod matrix;
mod quad;
mod scalar;

pub use linalg::{determinant, gauss_rank, inverse, linear_solve, nullspace, proportionality, span_basis, Solution};
pub use matrix::{Matrix, DEFAULT_KRON_CAP};
pub use quad::{field_op, is_square_free, split_square, FieldOp, FieldValue, QuadScalar};
pub(crate) use quad::{quad_from_json_parts, IntRepr};
pub use scalar::{check_tol, set_check_tol, Scalar, FLOAT_CHECK_TOL, FLOAT_PIVOT_TOL, MAX_CHECK_TOL};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("operands live in different quadratic fields Q(√{0}) and Q(√{1})")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("radicand {0} is not square-free")]
    NotSquareFree(u64),
    #[error("binary operation needs a second operand")]
    MissingOperand,
    #[error("shape mismatch: {left:?} against {right:?}")]
    Shape { left: (usize, usize), right: (usize, usize) },
    #[error("rows have different lengths")]
    Ragged,
    #[error("result would have {entries} entries, above the cap of {cap}")]
    TooLarge { entries: usize, cap: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix is singular")]
    Singular,
    #[error("tolerance {0} outside (0, 1e-4]")]
    Tolerance(String),
}
