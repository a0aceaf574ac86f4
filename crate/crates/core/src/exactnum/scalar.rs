use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;

use super::{NumError, QuadScalar};

/// Relative pivot threshold used by float elimination.
pub const FLOAT_PIVOT_TOL: f64 = 1e-8;
/// Default tolerance for float equality checks of verification residuals.
pub const FLOAT_CHECK_TOL: f64 = 1e-9;
/// Largest accepted check tolerance.
pub const MAX_CHECK_TOL: f64 = 1e-4;

static CHECK_TOL_BITS: AtomicU64 = AtomicU64::new(0);

/// The float check tolerance currently in force.
pub fn check_tol() -> f64 {
    match CHECK_TOL_BITS.load(Ordering::Relaxed) {
        0 => FLOAT_CHECK_TOL,
        bits => f64::from_bits(bits),
    }
}

/// Replaces the float check tolerance; it must lie in `(0, MAX_CHECK_TOL]`.
pub fn set_check_tol(tol: f64) -> Result<(), NumError> {
    if !(tol > 0.0 && tol <= MAX_CHECK_TOL) {
        return Err(NumError::Tolerance(tol.to_string()));
    }
    CHECK_TOL_BITS.store(tol.to_bits(), Ordering::Relaxed);
    Ok(())
}

/// Field arithmetic shared by the exact and the floating-point pipelines.
///
/// The exact/float mode of every algorithm is selected by the scalar type.
pub trait Scalar: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    /// Panics on a zero divisor (exact) or returns inf/NaN (float).
    fn over(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn magnitude(&self) -> f64;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).over(&Self::from_i64(den))
    }

    /// Whether a pivot candidate should be treated as zero inside a matrix whose
    /// largest entry has magnitude `scale`.
    fn negligible(&self, scale: f64) -> bool {
        let _ = scale;
        self.is_zero()
    }

    /// Equality up to the float check tolerance (exact equality for exact types).
    fn close_to(&self, o: &Self) -> bool {
        if Self::EXACT {
            self == o
        } else {
            self.minus(o).magnitude() <= check_tol() * (1.0 + o.magnitude())
        }
    }

    /// Rank of the row set; exact types may override with a faster scheme.
    fn rank_of_rows(rows: Vec<Vec<Self>>) -> usize {
        super::linalg::gauss_rank(rows)
    }

    fn to_f64_lossy(&self) -> f64;

    /// Image of an exact scalar (the float types round it).
    fn from_quad(q: &QuadScalar) -> Self;
}

impl Scalar for QuadScalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        QuadScalar::zero()
    }
    fn one() -> Self {
        QuadScalar::one()
    }
    fn from_i64(v: i64) -> Self {
        QuadScalar::integer(v)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        self.negate()
    }
    fn is_zero(&self) -> bool {
        QuadScalar::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        QuadScalar::ratio(num, den).expect("nonzero denominator")
    }
    fn rank_of_rows(rows: Vec<Vec<Self>>) -> usize {
        super::linalg::fraction_free_rank(rows)
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64()
    }
    fn from_quad(q: &QuadScalar) -> Self {
        q.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_PIVOT_TOL * scale.max(f64::MIN_POSITIVE)
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
    fn from_quad(q: &QuadScalar) -> Self {
        q.to_f64()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn negligible(&self, scale: f64) -> bool {
        self.norm() <= FLOAT_PIVOT_TOL * scale.max(f64::MIN_POSITIVE)
    }
    fn to_f64_lossy(&self) -> f64 {
        self.re
    }
    fn from_quad(q: &QuadScalar) -> Self {
        Complex64::new(q.to_f64(), 0.0)
    }
}
