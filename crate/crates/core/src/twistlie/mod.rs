//! Crossings with the dual space, the twisted Lie algebras `gl(V_S)` and `sl(V_S)`,
//! their action on the determinant and the Casimir operator on tensor powers.

mod crossings;
mod lie;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub use crossings::{crossings, DualSide, ExtendedSymmetry};
pub use lie::{lie_data, LieChecks, LieData};

use crate::exactnum::{Matrix, NumError, Scalar};
use crate::poincare::{DetPair, PoincareError};
use crate::schurweyl::{gamma, isotypic_basis, schur_basis, Partition, SchurError};
use crate::symmetry::{Permutation, SymScalar, Symmetry, SymmetryError};
use crate::tensor::SparseVec;
use crate::Caps;

#[derive(Debug, Clone, thiserror::Error)]
pub enum TwistError {
    #[error("block {block} is not determined: {freedom}-dimensional family of solutions")]
    Ambiguous { block: &'static str, freedom: usize },
    #[error("block {0} admits no solution")]
    NoSolution(&'static str),
    #[error("the Lie algebra is built on the left dual")]
    WrongDual,
    #[error("{0} fails")]
    LieAxiom(&'static str),
    #[error("the Casimir operator is not scalar on V_{0}")]
    NotScalar(Partition),
    #[error("V_{0} is zero")]
    EmptyComponent(Partition),
    #[error("X(v) is not proportional to v")]
    NotProportional,
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Poincare(#[from] PoincareError),
}

/// `m p v + 2 Σ_{i<j} ρ_S((i j)) v` on `V^{⊗m}`.
pub fn casimir_apply<T: SymScalar>(s: &Symmetry<T>, p: usize, m: usize, v: &SparseVec<T>) -> SparseVec<T> {
    let mut out = v.scale(&T::from_i64((m * p) as i64));
    let two = T::from_i64(2);
    for i in 1..=m {
        for j in i + 1..=m {
            out = out.axpy(&two, &s.apply_perm(&Permutation::transposition(m, i, j), v));
        }
    }
    out
}

/// The Casimir operator on `V^{⊗m}` as a dense matrix.
pub fn casimir_matrix<T: SymScalar>(s: &Symmetry<T>, p: usize, m: usize, caps: &Caps) -> Result<Matrix<T>, TwistError> {
    s.check_degree(m, caps)?;
    let dim = s.dim().pow(m as u32);
    let cols: Vec<Vec<T>> = (0..dim).map(|i| casimir_apply(s, p, m, &SparseVec::unit(i)).to_dense(dim)).collect();
    Ok(Matrix::from_columns(dim, &cols))
}

/// `m p + 2 γ_λ`.
pub fn casimir_gl_eigenvalue(lambda: &Partition, p: usize) -> Result<Ratio<i64>, SchurError> {
    let m = lambda.weight() as i64;
    Ok(Ratio::from_integer(m * p as i64) + gamma(lambda)? * 2)
}

/// `m p + 2 γ_λ − m²/p`.
pub fn casimir_sl_eigenvalue(lambda: &Partition, p: usize) -> Result<Ratio<i64>, SchurError> {
    let m = lambda.weight() as i64;
    Ok(casimir_gl_eigenvalue(lambda, p)? - Ratio::new(m * m, p as i64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentCasimir<T> {
    pub lambda: Partition,
    pub m: usize,
    pub p: usize,
    pub gamma: Ratio<i64>,
    pub scalar: T,
    pub eig_gl: Ratio<i64>,
    pub eig_sl: Ratio<i64>,
    pub scalar_check: bool,
}

fn ratio_value<T: Scalar>(r: Ratio<i64>) -> T {
    T::from_ratio(*r.numer(), *r.denom())
}

/// The common eigenvalue of the Casimir operator on every vector of the family, if there is one.
fn common_eigenvalue<T: SymScalar>(s: &Symmetry<T>, p: usize, m: usize, family: &[SparseVec<T>]) -> Option<T> {
    let mut value: Option<T> = None;
    for b in family {
        let img = casimir_apply(s, p, m, b);
        let c = if img.is_zero() { T::zero() } else { img.ratio_to(b)? };
        match &value {
            Some(v) if !v.close_to(&c) => return None,
            Some(_) => {}
            None => value = Some(c),
        }
    }
    value
}

/// The scalar by which the Casimir operator acts on `V_λ`, checked against `m p + 2 γ_λ`.
pub fn casimir_on_component<T: SymScalar>(
    s: &Symmetry<T>,
    p: usize,
    lambda: &Partition,
    caps: &Caps,
) -> Result<ComponentCasimir<T>, TwistError> {
    let m = lambda.weight();
    s.check_degree(m, caps)?;
    let basis = schur_basis(s, lambda, caps)?;
    if basis.is_empty() {
        return Err(TwistError::EmptyComponent(lambda.clone()));
    }
    let scalar = common_eigenvalue(s, p, m, &basis).ok_or_else(|| TwistError::NotScalar(lambda.clone()))?;
    let eig_gl = casimir_gl_eigenvalue(lambda, p)?;
    let eig_sl = casimir_sl_eigenvalue(lambda, p)?;
    let scalar_check = scalar.close_to(&ratio_value(eig_gl));
    Ok(ComponentCasimir { lambda: lambda.clone(), m, p, gamma: gamma(lambda)?, scalar, eig_gl, eig_sl, scalar_check })
}

/// Whether the Casimir operator acts on the `λ`-isotypic block of `V^{⊗m}` by `m p + 2 γ_λ`.
pub fn casimir_on_isotypic<T: SymScalar>(s: &Symmetry<T>, p: usize, lambda: &Partition, caps: &Caps) -> Result<bool, TwistError> {
    let family = isotypic_basis(s, lambda, caps)?;
    if family.is_empty() {
        return Ok(true);
    }
    let expected: T = ratio_value(casimir_gl_eigenvalue(lambda, p)?);
    Ok(common_eigenvalue(s, p, lambda.weight(), &family).is_some_and(|c| c.close_to(&expected)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetAction<T> {
    /// `X(v) = scalar · v`.
    pub scalar: T,
    /// `p Σ_{i,j} C_det[i][j] a_i^j`.
    pub expected: T,
    pub agree: bool,
}

/// The action of `X = Σ a_i^j e_j^i` (with `X(x_i) = Σ_j a[i][j] x_j`) on the determinant,
/// through `Q = Id − S^{12} + S^{23}S^{12} − …` applied to `v^{i₁…}X(x_{i₁}) ⊗ x_{i₂} ⊗ …`.
pub fn act_on_det<T: SymScalar>(s: &Symmetry<T>, dp: &DetPair<T>, a: &Matrix<T>) -> Result<DetAction<T>, TwistError> {
    let n = s.dim();
    let p = dp.rank;
    let inner = n.pow(p as u32 - 1);
    let v = SparseVec::from_dense(&dp.v);
    let mut first = std::collections::HashMap::new();
    for (idx, c) in v.entries() {
        let (i, rest) = (idx / inner, idx % inner);
        for j in 0..n {
            let coeff = a.get(i, j);
            if coeff.is_zero() {
                continue;
            }
            let add = c.times(coeff);
            first.entry(j * inner + rest).and_modify(|t: &mut T| *t = t.plus(&add)).or_insert(add);
        }
    }
    let w = SparseVec::from_map(first);
    let tp = s.power(p);
    let mut total = SparseVec::zero();
    let mut cur = w;
    for k in 0..p {
        if k > 0 {
            cur = tp.apply_adjacent(k - 1, &cur);
        }
        let sign = if k % 2 == 0 { T::one() } else { T::one().negated() };
        total = total.axpy(&sign, &cur);
    }
    let scalar = if total.is_zero() { T::zero() } else { total.ratio_to(&v).ok_or(TwistError::NotProportional)? };
    let c_det =
        Matrix::from_fn(n, n, |i, j| (0..inner).fold(T::zero(), |acc, k| acc.plus(&dp.v[i * inner + k].times(&dp.u[j * inner + k]))));
    let sum = (0..n * n).fold(T::zero(), |acc, ij| acc.plus(&c_det.get(ij / n, ij % n).times(a.get(ij / n, ij % n))));
    let expected = T::from_i64(p as i64).times(&sum);
    Ok(DetAction { agree: scalar.close_to(&expected), scalar, expected })
}

/// `X(x_i) = Σ_j a[i][j] x_j` for an element given in the `e_i^j` coordinates.
pub fn action_matrix<T: Scalar>(n: usize, coords: &[T]) -> Matrix<T> {
    // e_i^j(x_k) = δ_k^j x_i
    Matrix::from_fn(n, n, |k, i| coords[i * n + k].clone())
}
