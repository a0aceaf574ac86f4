//! Poincaré series of a symmetry, its rank data, the determinant pair and the
//! tensors built from it.

mod roots;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use roots::{polynomial_roots, quadratic_alpha, reciprocal_roots, Alpha};

use crate::exactnum::{inverse, linear_solve, Matrix, NumError, QuadScalar};
use crate::symmetry::{SymScalar, Symmetry};
use crate::tensor::{GradedBasis, SparseVec};

#[derive(Debug, Clone, thiserror::Error)]
pub enum PoincareError {
    #[error("series is not of the required type: {0}")]
    NotEven(String),
    #[error("the identity P+(t)P-(-t) = 1 fails at degree {degree}")]
    SeriesIdentity { degree: usize },
    #[error("operator is not invertible by column")]
    NotInvertibleByColumn,
    #[error("image of the antisymmetrizer has dimension {0}, expected 1")]
    DeterminantDimension(usize),
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Bases of `Im P^k_±` for `k = 0..=max_k`, homogeneous for the symmetry's grading.
pub fn exterior_bases<T: SymScalar>(s: &Symmetry<T>, max_k: usize, sign: Sign) -> Vec<Vec<SparseVec<T>>> {
    let n = s.dim();
    let grading = s.grading().clone();
    let mut out = vec![vec![SparseVec::unit(0)]];
    for k in 1..=max_k {
        let prev = &out[k - 1];
        if prev.is_empty() {
            out.push(Vec::new());
            continue;
        }
        let tp = s.power(k);
        let mut basis = GradedBasis::default();
        for w in prev {
            for x in 0..n {
                let g = w.kron(&SparseVec::unit(x), n);
                let img = tp.extend_projector(0, k, sign.value(), &g);
                if let Some((lead, _)) = img.leading() {
                    basis.insert(grading.weight_of(n, k, *lead), &img);
                }
            }
        }
        out.push(basis.into_vectors());
    }
    out
}

/// `dim ∧^k_±(V)` for `k = 0..=max_k`.
pub fn exterior_dims<T: SymScalar>(s: &Symmetry<T>, max_k: usize, sign: Sign) -> Vec<u64> {
    exterior_bases(s, max_k, sign).iter().map(|b| b.len() as u64).collect()
}

/// `P^k_±` as a dense matrix on `V^{⊗k}`.
pub fn projector<T: SymScalar>(s: &Symmetry<T>, k: usize, sign: Sign) -> Matrix<T> {
    let tp = s.power(k);
    let dim = tp.dim();
    let cols: Vec<Vec<T>> = (0..dim).map(|i| tp.apply_projector(0, k, sign.value(), &SparseVec::unit(i)).to_dense(dim)).collect();
    Matrix::from_columns(dim, &cols)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Classification {
    Even { rank: usize },
    Odd { rank: usize },
    Rational { p: usize, q: usize },
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoincareData {
    pub minus: Vec<u64>,
    pub plus: Vec<u64>,
    pub classification: Classification,
    pub alpha: Option<Alpha>,
}

impl PoincareData {
    pub fn rank(&self) -> Option<usize> {
        match self.classification {
            Classification::Even { rank } => Some(rank),
            _ => None,
        }
    }

    /// Elementary symmetric functions `e_0..e_p` of `α` (the minus coefficients up to the rank).
    pub fn elementary(&self) -> Option<Vec<i64>> {
        self.rank().map(|p| self.minus[..=p].iter().map(|&x| x as i64).collect())
    }
}

/// Checks `P₊(t)·P₋(−t) = 1` coefficientwise and returns the first failing degree.
pub fn series_identity_failure(minus: &[u64], plus: &[u64]) -> Option<usize> {
    let k = minus.len().min(plus.len());
    (0..k).find(|&d| {
        let s: i128 = (0..=d)
            .map(|i| {
                let sgn = if (d - i) % 2 == 0 { 1 } else { -1 };
                plus[i] as i128 * minus[d - i] as i128 * sgn
            })
            .sum();
        s != i128::from(d == 0)
    })
}

/// Smallest `(p, q)` with the series equal to a ratio of polynomials of degrees `p` and `q`,
/// accepted only when `K + 1 ≥ 2(p+q) + 2` coefficients back it up.
pub fn fit_rational(series: &[u64]) -> Option<(usize, usize)> {
    let len = series.len();
    let a = |k: isize| if k < 0 { 0i64 } else { series[k as usize] as i64 };
    let mut total = 0;
    while 2 * total + 2 <= len {
        for q in 0..=total {
            let p = total - q;
            let rows: Vec<usize> = (p + 1..len).collect();
            if q == 0 {
                if rows.iter().all(|&j| a(j as isize) == 0) {
                    return Some((p, 0));
                }
                continue;
            }
            let lhs = Matrix::from_fn(rows.len(), q, |r, i| QuadScalar::integer(a(rows[r] as isize - (i as isize + 1))));
            let rhs = Matrix::from_fn(rows.len(), 1, |r, _| QuadScalar::integer(-a(rows[r] as isize)));
            if let Ok(sol) = linear_solve(&lhs, &rhs) {
                let d = sol.particular.column(0);
                let numer_top: QuadScalar = (0..=q.min(p))
                    .map(|i| {
                        let di = if i == 0 { QuadScalar::one() } else { d[i - 1].clone() };
                        &di * &QuadScalar::integer(a(p as isize - i as isize))
                    })
                    .fold(QuadScalar::zero(), |x, y| &x + &y);
                if !d[q - 1].is_zero() && (p == 0 || !numer_top.is_zero()) {
                    return Some((p, q));
                }
            }
        }
        total += 1;
    }
    None
}

fn classify(minus: &[u64], plus: &[u64]) -> Classification {
    let last_nonzero = minus.iter().rposition(|&x| x != 0).unwrap_or(0);
    if last_nonzero + 1 < minus.len() && minus[last_nonzero] == 1 {
        return Classification::Even { rank: last_nonzero };
    }
    let last_plus = plus.iter().rposition(|&x| x != 0).unwrap_or(0);
    if last_plus + 1 < plus.len() && plus[last_plus] == 1 {
        return Classification::Odd { rank: last_plus };
    }
    match fit_rational(minus) {
        Some((p, 0)) => Classification::Even { rank: p },
        Some((0, q)) => Classification::Odd { rank: q },
        Some((p, q)) => Classification::Rational { p, q },
        None => Classification::Undetermined,
    }
}

/// `α` from the palindromic minus coefficients `e_0..e_p`.
pub fn roots_alpha(e: &[i64]) -> Alpha {
    if e.len() == 3 && e[2] == 1 {
        return Alpha::Exact(quadratic_alpha(e[1]));
    }
    if e.len() == 2 {
        return Alpha::Exact(vec![QuadScalar::integer(e[1])]);
    }
    let mut roots = reciprocal_roots(e);
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Alpha::Numeric(roots.iter().map(|z| [z.re, z.im]).collect())
}

/// Both Poincaré series through degree `max_k`, classified, with roots in the even case.
pub fn poincare_series<T: SymScalar>(s: &Symmetry<T>, max_k: usize) -> Result<PoincareData, PoincareError> {
    let minus = exterior_dims(s, max_k, Sign::Minus);
    let plus = exterior_dims(s, max_k, Sign::Plus);
    if let Some(degree) = series_identity_failure(&minus, &plus) {
        return Err(PoincareError::SeriesIdentity { degree });
    }
    let classification = classify(&minus, &plus);
    let alpha = match classification {
        Classification::Even { rank } if rank >= 1 => Some(roots_alpha(&minus[..=rank].iter().map(|&x| x as i64).collect::<Vec<_>>())),
        _ => None,
    };
    Ok(PoincareData { minus, plus, classification, alpha })
}

/// Determinant `v` spanning `Im P₋^p` (first nonzero entry 1) and codeterminant `u`
/// with `P₋^p = v·uᵀ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetPair<T> {
    pub rank: usize,
    pub v: Vec<T>,
    pub u: Vec<T>,
    pub gauge_index: usize,
    pub pairing: T,
    pub invariant: bool,
}

/// Smallest `p` with `dim Im P₋^p = 1` and `Im P₋^{p+1} = 0`, searching up to `max_k`.
pub fn even_rank<T: SymScalar>(s: &Symmetry<T>, max_k: usize) -> Result<usize, PoincareError> {
    let dims = exterior_dims(s, max_k, Sign::Minus);
    match classify(&dims, &vec![1; dims.len()]) {
        Classification::Even { rank } => Ok(rank),
        _ => Err(PoincareError::NotEven(format!("minus coefficients {dims:?}"))),
    }
}

pub fn determinant_pair<T: SymScalar>(s: &Symmetry<T>, rank: usize) -> Result<DetPair<T>, PoincareError> {
    let bases = exterior_bases(s, rank, Sign::Minus);
    let top = &bases[rank];
    if top.len() != 1 {
        return Err(PoincareError::DeterminantDimension(top.len()));
    }
    let tp = s.power(rank);
    let dim = tp.dim();
    let raw = &top[0];
    let (gauge_index, lead) = raw.leading().cloned().expect("nonzero basis vector");
    let v_sparse = raw.scale(&T::one().over(&lead));
    let v = v_sparse.to_dense(dim);
    let u: Vec<T> = (0..dim).map(|i| tp.apply_projector(0, rank, -1, &SparseVec::unit(i)).get(gauge_index)).collect();
    let pairing = u.iter().zip(&v).fold(T::zero(), |acc, (a, b)| acc.plus(&a.times(b)));
    let invariant = (0..s.dim()).all(|x| {
        let out = move_past_block(s, rank, &v_sparse.kron(&SparseVec::unit(x), s.dim()));
        factor_through_right(&out, &v_sparse, dim, s.dim()).is_some()
    });
    Ok(DetPair { rank, v, u, gauge_index, pairing, invariant })
}

/// `S_{T^p, V} = S^{12} S^{23} ⋯ S^{p,p+1}` applied to a vector of `V^{⊗(p+1)}`.
fn move_past_block<T: SymScalar>(s: &Symmetry<T>, p: usize, w: &SparseVec<T>) -> SparseVec<T> {
    let tp = s.power(p + 1);
    let positions: Vec<usize> = (0..p).rev().collect();
    tp.apply_sequence(&positions, w)
}

/// `S_{V, T^p} = S^{p,p+1} ⋯ S^{12}` applied to a vector of `V^{⊗(p+1)}`.
fn move_before_block<T: SymScalar>(s: &Symmetry<T>, p: usize, w: &SparseVec<T>) -> SparseVec<T> {
    let tp = s.power(p + 1);
    let positions: Vec<usize> = (0..p).collect();
    tp.apply_sequence(&positions, w)
}

/// Coefficients `c_j` with `w = Σ c_j x_j ⊗ v`, if `w` has that form.
fn factor_through_right<T: SymScalar>(w: &SparseVec<T>, v: &SparseVec<T>, vdim: usize, n: usize) -> Option<Vec<T>> {
    let mut coeffs = Vec::with_capacity(n);
    let mut rebuilt = SparseVec::zero();
    for j in 0..n {
        let slice = SparseVec::from_dense(&(0..vdim).map(|i| w.get(j * vdim + i)).collect::<Vec<_>>());
        let c = slice.ratio_to(v)?;
        rebuilt = rebuilt.add(&SparseVec::unit(j).kron(v, vdim).scale(&c));
        coeffs.push(c);
    }
    let residual = w.sub(&rebuilt);
    let ok = if T::EXACT { residual.is_zero() } else { residual.max_abs() <= crate::exactnum::check_tol() };
    ok.then_some(coeffs)
}

/// Coefficients `c_j` with `w = Σ c_j v ⊗ x_j`, if `w` has that form.
fn factor_through_left<T: SymScalar>(w: &SparseVec<T>, v: &SparseVec<T>, vdim: usize, n: usize) -> Option<Vec<T>> {
    let mut coeffs = Vec::with_capacity(n);
    let mut rebuilt = SparseVec::zero();
    for j in 0..n {
        let slice = SparseVec::from_dense(&(0..vdim).map(|i| w.get(i * n + j)).collect::<Vec<_>>());
        let c = slice.ratio_to(v)?;
        rebuilt = rebuilt.add(&v.kron(&SparseVec::unit(j), n).scale(&c));
        coeffs.push(c);
    }
    let residual = w.sub(&rebuilt);
    let ok = if T::EXACT { residual.is_zero() } else { residual.max_abs() <= crate::exactnum::check_tol() };
    ok.then_some(coeffs)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MnMatrices<T> {
    pub m: Matrix<T>,
    pub n: Matrix<T>,
    /// `M N = p⁻² Id`.
    pub product_holds: bool,
    /// `S(v ⊗ x_i) = (−1)^{p−1} p M_i^j x_j ⊗ v` and `S(x_i ⊗ v) = (−1)^{p−1} p N_i^j v ⊗ x_j`.
    pub commutation_holds: bool,
}

pub fn mn_matrices<T: SymScalar>(s: &Symmetry<T>, dp: &DetPair<T>) -> MnMatrices<T> {
    let n = s.dim();
    let p = dp.rank;
    let inner = n.pow(p as u32 - 1);
    let m = Matrix::from_fn(n, n, |i, j| (0..inner).fold(T::zero(), |acc, k| acc.plus(&dp.u[k * n + i].times(&dp.v[j * inner + k]))));
    let nn = Matrix::from_fn(n, n, |i, j| (0..inner).fold(T::zero(), |acc, k| acc.plus(&dp.u[i * inner + k].times(&dp.v[k * n + j]))));
    let inv_p2 = T::one().over(&T::from_i64((p * p) as i64));
    let product_holds = m.mul(&nn).map(|x| x.approx_eq(&Matrix::identity(n).scale(&inv_p2))).unwrap_or(false);
    let factor = T::from_i64(if p % 2 == 1 { p as i64 } else { -(p as i64) });
    let vdim = n.pow(p as u32);
    let v_sparse = SparseVec::from_dense(&dp.v);
    let commutation_holds = (0..n).all(|i| {
        let left = move_past_block(s, p, &v_sparse.kron(&SparseVec::unit(i), n));
        let right = move_before_block(s, p, &SparseVec::unit(i).kron(&v_sparse, vdim));
        let lc = factor_through_right(&left, &v_sparse, vdim, n);
        let rc = factor_through_left(&right, &v_sparse, vdim, n);
        match (lc, rc) {
            (Some(lc), Some(rc)) => {
                (0..n).all(|j| lc[j].close_to(&factor.times(m.get(i, j))) && rc[j].close_to(&factor.times(nn.get(i, j))))
            }
            _ => false,
        }
    });
    MnMatrices { m, n: nn, product_holds, commutation_holds }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralityReport<T> {
    pub central: bool,
    /// `(−1)^{p−1} p M`, the identity exactly when the determinant is central.
    pub scaled_m: Matrix<T>,
    pub scaled_n: Matrix<T>,
}

pub fn centrality<T: SymScalar>(dp: &DetPair<T>, mn: &MnMatrices<T>) -> CentralityReport<T> {
    let p = dp.rank;
    let factor = T::from_i64(if p % 2 == 1 { p as i64 } else { -(p as i64) });
    let scaled_m = mn.m.scale(&factor);
    let scaled_n = mn.n.scale(&factor);
    let id = Matrix::identity(mn.m.rows());
    CentralityReport { central: scaled_m.approx_eq(&id) && scaled_n.approx_eq(&id), scaled_m, scaled_n }
}

/// The column inverse `T` and the matrices derived from it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualTensors<T> {
    /// `T[(k,i),(m,n)] = T_{km}^{in}` with `S_{ij}^{kl} T_{km}^{in} = δ_m^l δ_j^n`.
    pub t: Matrix<T>,
    /// `C_i^j = T_{ik}^{jk}`.
    pub c: Matrix<T>,
    /// `B_i^j = T_{ki}^{kj}`.
    pub b: Matrix<T>,
    /// `C_det[i][j] = v^{i i₂…} u_{j i₂…}`.
    pub c_det: Matrix<T>,
    pub trace: T,
    pub bc_is_identity: bool,
    pub c_equals_p_cdet: bool,
    pub b_equals_p_cdet: bool,
}

pub fn column_inverse<T: SymScalar>(s: &Symmetry<T>) -> Result<Matrix<T>, PoincareError> {
    let n = s.dim();
    let reindexed = Matrix::from_fn(n * n, n * n, |r, c| {
        let (l, j) = (r / n, r % n);
        let (k, i) = (c / n, c % n);
        s.entry(i, j, k, l).clone()
    });
    inverse(&reindexed).map_err(|_| PoincareError::NotInvertibleByColumn)
}

pub fn dual_tensors<T: SymScalar>(s: &Symmetry<T>, dp: &DetPair<T>) -> Result<DualTensors<T>, PoincareError> {
    let n = s.dim();
    let t = column_inverse(s)?;
    let at = |a: usize, b: usize, c: usize, d: usize| t.get(a * n + b, c * n + d).clone();
    let c = Matrix::from_fn(n, n, |i, j| (0..n).fold(T::zero(), |acc, k| acc.plus(&at(i, j, k, k))));
    let b = Matrix::from_fn(n, n, |i, j| (0..n).fold(T::zero(), |acc, k| acc.plus(&at(k, k, i, j))));
    let trace = (0..n * n).fold(T::zero(), |acc, x| acc.plus(&at(x / n, x / n, x % n, x % n)));
    let inner = n.pow(dp.rank as u32 - 1);
    let c_det =
        Matrix::from_fn(n, n, |i, j| (0..inner).fold(T::zero(), |acc, k| acc.plus(&dp.v[i * inner + k].times(&dp.u[j * inner + k]))));
    let p_cdet = c_det.scale(&T::from_i64(dp.rank as i64));
    let bc_is_identity = b.mul(&c).map(|x| x.approx_eq(&Matrix::identity(n))).unwrap_or(false);
    Ok(DualTensors { c_equals_p_cdet: c.approx_eq(&p_cdet), b_equals_p_cdet: b.approx_eq(&p_cdet), t, c, b, c_det, trace, bc_is_identity })
}

/// Numeric roots as complex numbers, exact or not.
pub fn alpha_complex(alpha: &Alpha) -> Vec<Complex64> {
    alpha.to_complex()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{build_rank2, classical_pair_n2, n3_fixture, Branch};

    #[test]
    fn classical_series() {
        let s = Symmetry::<QuadScalar>::classical(3);
        let d = poincare_series(&s, 4).unwrap();
        assert_eq!(d.minus, vec![1, 3, 3, 1, 0]);
        assert_eq!(d.plus, vec![1, 3, 6, 10, 15]);
        assert_eq!(d.classification, Classification::Even { rank: 3 });
    }

    #[test]
    fn family_series() {
        let s = n3_fixture(Branch::Plus);
        let d = poincare_series(&s, 5).unwrap();
        assert_eq!(d.minus, vec![1, 3, 1, 0, 0, 0]);
        assert_eq!(d.plus, vec![1, 3, 8, 21, 55, 144]);
        let alpha = d.alpha.unwrap();
        let exact = alpha.exact().unwrap();
        assert_eq!(&exact[0] * &exact[1], QuadScalar::one());
    }

    #[test]
    fn classical_det_pair() {
        let (u, v) = classical_pair_n2();
        let s = build_rank2(&u, &v).unwrap();
        let dp = determinant_pair(&s, 2).unwrap();
        let h = QuadScalar::ratio(1, 2).unwrap();
        assert_eq!(dp.v, vec![QuadScalar::zero(), QuadScalar::one(), -QuadScalar::one(), QuadScalar::zero()]);
        assert_eq!(dp.u, vec![QuadScalar::zero(), h.clone(), -h.clone(), QuadScalar::zero()]);
        assert_eq!(dp.pairing, QuadScalar::one());
        let mn = mn_matrices(&s, &dp);
        assert_eq!(mn.m, Matrix::identity(2).scale(&-h.clone()));
        assert!(mn.product_holds, "{mn:?}");
        assert!(mn.commutation_holds, "{mn:?}");
        assert!(centrality(&dp, &mn).central);
        let dt = dual_tensors(&s, &dp).unwrap();
        assert_eq!(dt.c, Matrix::identity(2));
        assert_eq!(dt.c_det, Matrix::identity(2).scale(&h));
        assert!(dt.c_equals_p_cdet && dt.b_equals_p_cdet && dt.bc_is_identity);
        assert_eq!(dt.trace, QuadScalar::integer(2));
    }

    #[test]
    fn rational_fit_super() {
        assert_eq!(fit_rational(&[1, 2, 2, 2, 2, 2]), Some((1, 1)));
        assert_eq!(fit_rational(&[1, 3, 1, 0, 0, 0]), Some((2, 0)));
        assert_eq!(fit_rational(&[1, 2]), None);
    }
}
