//! Involutive Yang–Baxter operators ("symmetries"), their verification, the
//! induced representations of symmetric groups on tensor powers, and gluing.
//!
//! Index convention: the basis vector `x_k ⊗ x_l` is sent to `Σ S[(i,j),(k,l)] x_i ⊗ x_j`,
//! so the row is the output pair and the column is the input pair.

mod fixture;
mod permutation;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use fixture::{Entry, Fixture};
pub use permutation::Permutation;

use crate::exactnum::{nullspace, Matrix, NumError, QuadScalar, Scalar};
use crate::tensor::{Grading, SiteOperator, SparseVec, TensorPower};
use crate::Caps;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SymmetryError {
    #[error("{equation} violated (residual {residual})")]
    ConstraintViolation { equation: &'static str, residual: String },
    #[error("matrix is not an involutive Yang-Baxter operator: {0:?}")]
    NotASymmetry(VerificationReport),
    #[error("{0}")]
    Shape(String),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("tensor degree {m} exceeds the configured cap {cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error(transparent)]
    Num(#[from] NumError),
}

/// How a symmetry was produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance<T> {
    Rank2 { u: Matrix<T>, v: Matrix<T> },
    Glued { left: usize, right: usize },
    Super { b: T },
    Classical,
    Custom,
    Induced { partition: Vec<usize> },
}

impl<T> Provenance<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Rank2 { .. } => "rank2",
            Provenance::Glued { .. } => "glued",
            Provenance::Super { .. } => "super",
            Provenance::Classical => "classical",
            Provenance::Custom => "custom",
            Provenance::Induced { .. } => "induced",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub involutive: bool,
    pub qybe: bool,
    pub flip_conjugation: bool,
    pub involutive_residual: f64,
    pub qybe_residual: f64,
    pub conjugation_residual: f64,
}

impl VerificationReport {
    pub fn all_hold(&self) -> bool {
        self.involutive && self.qybe && self.flip_conjugation
    }
}

/// Radicand of the quadratic field a scalar lives in (0 for rationals and floats).
pub trait FieldTag {
    fn field_tag(&self) -> u64;
}

impl FieldTag for QuadScalar {
    fn field_tag(&self) -> u64 {
        self.radicand()
    }
}

impl FieldTag for f64 {
    fn field_tag(&self) -> u64 {
        0
    }
}

impl FieldTag for num_complex::Complex64 {
    fn field_tag(&self) -> u64 {
        0
    }
}

/// Scalars usable inside a [`Symmetry`].
pub trait SymScalar: Scalar + FieldTag {}
impl<T: Scalar + FieldTag> SymScalar for T {}

/// A verified involutive solution of the quantum Yang–Baxter equation on `V ⊗ V`.
#[derive(Clone, Debug)]
pub struct Symmetry<T: SymScalar = QuadScalar> {
    n: usize,
    matrix: Matrix<T>,
    op: SiteOperator<T>,
    field: u64,
    provenance: Provenance<T>,
    report: VerificationReport,
    grading: OnceLock<Grading>,
}

fn residual_between<T: Scalar>(a: &SparseVec<T>, b: &SparseVec<T>) -> f64 {
    a.sub(b).max_abs()
}

fn field_of<T: SymScalar>(m: &Matrix<T>) -> Result<u64, NumError> {
    let mut d = 0;
    for x in m.entries() {
        let e = x.field_tag();
        if e != 0 {
            if d != 0 && d != e {
                return Err(NumError::FieldMismatch(d, e));
            }
            d = e;
        }
    }
    Ok(d)
}

/// The flip `x_k ⊗ x_l ↦ x_l ⊗ x_k`.
pub fn flip_matrix<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n * n, n * n, |r, c| if r == (c % n) * n + c / n { T::one() } else { T::zero() })
}

/// Checks involutivity, QYBE and the flip-conjugation identity of a candidate matrix.
pub fn verify_matrix<T: Scalar>(n: usize, s: &Matrix<T>) -> VerificationReport {
    let op = SiteOperator::from_matrix(n, s);
    let sq = TensorPower::new(&op, 2);
    let mut inv_res: f64 = 0.0;
    for i in 0..n * n {
        let e = SparseVec::unit(i);
        inv_res = inv_res.max(residual_between(&sq.apply_sequence(&[0, 0], &e), &e));
    }
    let cube = TensorPower::new(&op, 3);
    let flip = SiteOperator::from_matrix(n, &flip_matrix::<T>(n));
    let flip3 = TensorPower::new(&flip, 3);
    let mut ybe_res: f64 = 0.0;
    let mut conj_res: f64 = 0.0;
    for i in 0..n * n * n {
        let e = SparseVec::unit(i);
        let lhs = cube.apply_sequence(&[0, 1, 0], &e);
        let rhs = cube.apply_sequence(&[1, 0, 1], &e);
        ybe_res = ybe_res.max(residual_between(&lhs, &rhs));
        let direct = cube.apply_adjacent(1, &e);
        let moved = flip3.apply_sequence(&[0, 1], &e);
        let moved = cube.apply_adjacent(0, &moved);
        let moved = flip3.apply_sequence(&[1, 0], &moved);
        conj_res = conj_res.max(residual_between(&direct, &moved));
    }
    let ok = |r: f64| if T::EXACT { r == 0.0 } else { r <= crate::exactnum::check_tol() };
    VerificationReport {
        involutive: ok(inv_res),
        qybe: ok(ybe_res),
        flip_conjugation: ok(conj_res),
        involutive_residual: inv_res,
        qybe_residual: ybe_res,
        conjugation_residual: conj_res,
    }
}

impl<T: SymScalar> Symmetry<T> {
    /// Verifies `matrix` and wraps it; unverified operators are rejected.
    pub fn new(n: usize, matrix: Matrix<T>, provenance: Provenance<T>) -> Result<Self, SymmetryError> {
        if n == 0 || matrix.rows() != n * n || matrix.cols() != n * n {
            return Err(SymmetryError::Shape(format!("expected a {0}x{0} matrix, got {1}x{2}", n * n, matrix.rows(), matrix.cols())));
        }
        let field = field_of(&matrix)?;
        let report = verify_matrix(n, &matrix);
        if !report.all_hold() {
            return Err(SymmetryError::NotASymmetry(report));
        }
        let op = SiteOperator::from_matrix(n, &matrix);
        Ok(Symmetry { n, matrix, op, field, provenance, report, grading: OnceLock::new() })
    }

    pub fn classical(n: usize) -> Self {
        Self::new(n, flip_matrix(n), Provenance::Classical).expect("the flip is a symmetry")
    }

    pub fn custom(n: usize, matrix: Matrix<T>) -> Result<Self, SymmetryError> {
        Self::new(n, matrix, Provenance::Custom)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn field(&self) -> u64 {
        self.field
    }

    pub fn provenance(&self) -> &Provenance<T> {
        &self.provenance
    }

    pub fn verify(&self) -> VerificationReport {
        self.report.clone()
    }

    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &T {
        self.matrix.get(i * self.n + j, k * self.n + l)
    }

    pub fn site_operator(&self) -> &SiteOperator<T> {
        &self.op
    }

    pub fn power(&self, m: usize) -> TensorPower<'_, T> {
        TensorPower::new(&self.op, m)
    }

    /// Integer weights on the basis of `V` conserved by the operator.
    pub fn grading(&self) -> &Grading {
        self.grading.get_or_init(|| {
            let n = self.n;
            let mut rows = Vec::new();
            for r in 0..n * n {
                for c in 0..n * n {
                    if self.matrix.get(r, c).is_zero() {
                        continue;
                    }
                    let mut row = vec![0i64; n];
                    row[r / n] += 1;
                    row[r % n] += 1;
                    row[c / n] -= 1;
                    row[c % n] -= 1;
                    if row.iter().any(|&x| x != 0) && !rows.contains(&row) {
                        rows.push(row);
                    }
                }
            }
            if rows.is_empty() {
                return Grading::from_weights((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect());
            }
            let a =
                Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| QuadScalar::integer(x)).collect()).collect()).expect("rectangular");
            let kernel = nullspace(&a);
            let integral: Vec<Vec<i64>> = kernel.iter().map(|v| integer_multiple(v)).collect();
            Grading::from_weights((0..n).map(|i| integral.iter().map(|w| w[i]).collect()).collect())
        })
    }

    fn cap_for(&self, caps: &Caps) -> usize {
        if T::EXACT {
            caps.exact_m
        } else {
            caps.float_m
        }
    }

    pub fn check_degree(&self, m: usize, caps: &Caps) -> Result<(), SymmetryError> {
        let cap = self.cap_for(caps);
        if m > cap {
            return Err(SymmetryError::CapExceeded { m, cap });
        }
        Ok(())
    }

    /// Applies `ρ_S(π)` to a vector of `V^{⊗m}` with `m = π.degree()`.
    pub fn apply_perm(&self, perm: &Permutation, v: &SparseVec<T>) -> SparseVec<T> {
        let tp = self.power(perm.degree());
        let positions: Vec<usize> = perm.adjacent_word().iter().map(|i| i - 1).collect();
        tp.apply_sequence(&positions, v)
    }

    /// `ρ_S(π)` as a dense matrix on `V^{⊗m}`.
    pub fn rho_perm(&self, m: usize, perm: &Permutation, caps: &Caps) -> Result<Matrix<T>, SymmetryError> {
        if m == 0 || perm.degree() != m {
            return Err(SymmetryError::Shape(format!("permutation of degree {} used on degree {m}", perm.degree())));
        }
        self.check_degree(m, caps)?;
        let dim = self.n.pow(m as u32);
        let columns: Vec<Vec<T>> = (0..dim).map(|i| self.apply_perm(perm, &SparseVec::unit(i)).to_dense(dim)).collect();
        Ok(Matrix::from_columns(dim, &columns))
    }

    /// `ρ_S` of the product `s_{w[0]} ∘ s_{w[1]} ∘ …` as a dense matrix.
    pub fn rho_word(&self, m: usize, word: &[usize], caps: &Caps) -> Result<Matrix<T>, SymmetryError> {
        self.check_degree(m, caps)?;
        if word.iter().any(|&i| i == 0 || i >= m) {
            return Err(SymmetryError::Shape(format!("word {word:?} has letters outside 1..{}", m - 1)));
        }
        let dim = self.n.pow(m as u32);
        let tp = self.power(m);
        let positions: Vec<usize> = word.iter().rev().map(|i| i - 1).collect();
        let columns: Vec<Vec<T>> = (0..dim).map(|i| tp.apply_sequence(&positions, &SparseVec::unit(i)).to_dense(dim)).collect();
        Ok(Matrix::from_columns(dim, &columns))
    }

    pub fn map_scalars<U: SymScalar>(&self, f: impl Fn(&T) -> U + Copy) -> Result<Symmetry<U>, SymmetryError> {
        let provenance = match &self.provenance {
            Provenance::Rank2 { u, v } => Provenance::Rank2 { u: u.map(f), v: v.map(f) },
            Provenance::Glued { left, right } => Provenance::Glued { left: *left, right: *right },
            Provenance::Super { b } => Provenance::Super { b: f(b) },
            Provenance::Classical => Provenance::Classical,
            Provenance::Custom => Provenance::Custom,
            Provenance::Induced { partition } => Provenance::Induced { partition: partition.clone() },
        };
        Symmetry::new(self.n, self.matrix.map(f), provenance)
    }

    pub fn to_float(&self) -> Symmetry<f64> {
        self.map_scalars(|x| x.to_f64_lossy()).expect("float image of a verified symmetry stays within tolerance")
    }
}

fn integer_multiple(v: &[QuadScalar]) -> Vec<i64> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let lcm = v.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.parts().2));
    v.iter()
        .map(|x| {
            let (a, _, c) = x.parts();
            (a * (&lcm / c)).to_i64().expect("weights fit in i64")
        })
        .collect()
}

/// `S = Id − 2·u⊗v` as an operator, validating the two defining constraints first.
pub fn build_rank2<T: SymScalar>(u: &Matrix<T>, v: &Matrix<T>) -> Result<Symmetry<T>, SymmetryError> {
    let n = u.rows();
    if n < 2 || !u.is_square() || !v.is_square() || v.rows() != n {
        return Err(SymmetryError::Shape(format!(
            "u and v must be square of equal size at least 2, got {}x{} and {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    let pairing = u.entries().iter().zip(v.entries()).fold(T::zero(), |acc, (a, b)| acc.plus(&a.times(b)));
    if !pairing.close_to(&T::one()) {
        return Err(SymmetryError::ConstraintViolation {
            equation: "odinn (u_ij v^ij = 1)",
            residual: format!("{:?}", pairing.minus(&T::one())),
        });
    }
    let quarter = Matrix::<T>::identity(n).scale(&T::from_ratio(1, 4));
    let prod = u.mul(v)?.mul(&u.transpose())?.mul(&v.transpose())?;
    if !prod.approx_eq(&quarter) {
        return Err(SymmetryError::ConstraintViolation {
            equation: "odin (u v u^t v^t = Id/4)",
            residual: format!("{}", prod.max_abs_diff(&quarter)),
        });
    }
    let two = T::from_i64(2);
    let s = Matrix::from_fn(n * n, n * n, |r, c| {
        let delta = if r == c { T::one() } else { T::zero() };
        let (ui, vi) = (u.get(r / n, r % n), v.get(c / n, c % n));
        if ui.is_zero() || vi.is_zero() {
            delta
        } else {
            delta.minus(&two.times(&ui.times(vi)))
        }
    });
    Symmetry::new(n, s, Provenance::Rank2 { u: u.clone(), v: v.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

/// The root `(3 ± √5)/2` of `x + 1/x = 3`.
pub fn golden_root(branch: Branch) -> QuadScalar {
    let sign = if branch == Branch::Plus { 1 } else { -1 };
    QuadScalar::from_parts(3, sign, 2, 5).expect("valid")
}

/// The `(u, v)` pair of the three-dimensional skew-diagonal family.
pub fn skew_diagonal_n3(a: &QuadScalar, b: &QuadScalar, branch: Branch) -> Result<(Matrix<QuadScalar>, Matrix<QuadScalar>), SymmetryError> {
    if a.is_zero() || b.is_zero() {
        return Err(SymmetryError::ZeroParameter);
    }
    for p in [a, b] {
        if p.radicand() != 0 && p.radicand() != 5 {
            return Err(NumError::FieldMismatch(5, p.radicand()).into());
        }
    }
    let x = golden_root(branch);
    let two = QuadScalar::integer(2);
    let mut u = Matrix::zeros(3, 3);
    let mut v = Matrix::zeros(3, 3);
    u.set(0, 2, a.clone());
    u.set(1, 1, b.clone());
    u.set(2, 0, -(a / &x));
    v.set(0, 2, &x / &(&two * a));
    v.set(1, 1, -(QuadScalar::one() / (&two * b)));
    v.set(2, 0, -(QuadScalar::one() / (&two * a)));
    Ok((u, v))
}

/// The skew-diagonal `n = 3` symmetry with `a = b = 1`.
pub fn n3_fixture(branch: Branch) -> Symmetry<QuadScalar> {
    let (u, v) = skew_diagonal_n3(&QuadScalar::one(), &QuadScalar::one(), branch).expect("nonzero parameters");
    build_rank2(&u, &v).expect("the family satisfies the constraints")
}

/// The classical rank-2 pair on `n = 2`: `v = x_1∧x_2`, `u` its dual.
pub fn classical_pair_n2() -> (Matrix<QuadScalar>, Matrix<QuadScalar>) {
    let h = QuadScalar::ratio(1, 2).expect("valid");
    let one = QuadScalar::one();
    let u = Matrix::from_rows(vec![vec![QuadScalar::zero(), h.clone()], vec![-h, QuadScalar::zero()]]).expect("square");
    let v = Matrix::from_rows(vec![vec![QuadScalar::zero(), one.clone()], vec![-one, QuadScalar::zero()]]).expect("square");
    (u, v)
}

/// Symmetry on `V₁ ⊕ V₂`: `S1` and `S2` on the diagonal blocks, the flip between them.
pub fn glue<T: SymScalar>(s1: &Symmetry<T>, s2: &Symmetry<T>) -> Result<Symmetry<T>, SymmetryError> {
    if s1.field != 0 && s2.field != 0 && s1.field != s2.field {
        return Err(NumError::FieldMismatch(s1.field, s2.field).into());
    }
    let (n1, n2) = (s1.n, s2.n);
    let n = n1 + n2;
    let part = |i: usize| if i < n1 { (0, i) } else { (1, i - n1) };
    let s = Matrix::from_fn(n * n, n * n, |r, c| {
        let ((pi, i), (pj, j)) = (part(r / n), part(r % n));
        let ((pk, k), (pl, l)) = (part(c / n), part(c % n));
        match (pk, pl) {
            (0, 0) if pi == 0 && pj == 0 => s1.entry(i, j, k, l).clone(),
            (1, 1) if pi == 1 && pj == 1 => s2.entry(i, j, k, l).clone(),
            (a, b) if a != b && pi == b && pj == a && i == l && j == k => T::one(),
            _ => T::zero(),
        }
    });
    Symmetry::new(n, s, Provenance::Glued { left: n1, right: n2 })
}

/// Two-dimensional example `S(x⊗x) = x⊗x + b·y⊗y`, `S(x⊗y) = y⊗x`, `S(y⊗x) = x⊗y`, `S(y⊗y) = −y⊗y`.
pub fn super_example<T: SymScalar>(b: &T) -> Result<Symmetry<T>, SymmetryError> {
    let mut s = Matrix::zeros(4, 4);
    s.set(0, 0, T::one());
    s.set(3, 0, b.clone());
    s.set(2, 1, T::one());
    s.set(1, 2, T::one());
    s.set(3, 3, T::one().negated());
    Symmetry::new(2, s, Provenance::Super { b: b.clone() })
}

/// `glue(classical n=2, n=3 family with the plus root)`.
pub fn glued_2_3() -> Symmetry<QuadScalar> {
    let (u, v) = classical_pair_n2();
    let classical = build_rank2(&u, &v).expect("the classical pair satisfies the constraints");
    glue(&classical, &n3_fixture(Branch::Plus)).expect("both factors live over Q(sqrt 5)")
}

/// Names accepted by [`named_fixture`].
pub const FIXTURE_NAMES: [&str; 7] = ["n3-plus", "n3-minus", "glued-2-3", "super-0", "super-1", "classical-2", "classical-3"];

pub fn named_fixture(name: &str) -> Option<Symmetry<QuadScalar>> {
    let fixture = match name {
        "n3-plus" => n3_fixture(Branch::Plus),
        "n3-minus" => n3_fixture(Branch::Minus),
        "glued-2-3" => glued_2_3(),
        "super-0" => super_example(&QuadScalar::zero()).expect("valid"),
        "super-1" => super_example(&QuadScalar::one()).expect("valid"),
        "classical-2" => Symmetry::classical(2),
        "classical-3" => Symmetry::classical(3),
        _ => return None,
    };
    Some(fixture)
}
