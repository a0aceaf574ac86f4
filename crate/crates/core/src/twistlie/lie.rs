use serde::{Deserialize, Serialize};

use crate::exactnum::{Matrix, Scalar};
use crate::poincare::{DetPair, DualTensors};
use crate::symmetry::{Provenance, SymScalar, Symmetry};
use crate::tensor::SparseVec;

use super::{DualSide, ExtendedSymmetry, TwistError};

/// Outcome of the twisted Lie algebra checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieChecks {
    pub skew_symmetric: bool,
    pub invariant: bool,
    pub jacobi: bool,
    /// `tr ∘ [ , ] = 0`.
    pub trace_kills_bracket: bool,
    /// `tr(Id) = p`.
    pub trace_of_identity: bool,
    /// `Σ_i f_i^i = 0`.
    pub sl_relation: bool,
    /// `tr(e_i^j) = C_i^j` with `C` from the column inverse.
    pub trace_is_c: bool,
    /// `tr(e_i^j) = B_j^i = p C_det[j][i]`.
    pub trace_is_b_transposed: bool,
}

/// `gl(V_S)` on the basis `e_i^j = x_i ⊗ x^j` (index `i n + j`) and its `sl` part.
#[derive(Clone, Debug)]
pub struct LieData<T: SymScalar> {
    pub n: usize,
    pub p: usize,
    /// The symmetry of `End V ⊗ End V`.
    pub s_end: Symmetry<T>,
    /// Column `a n² + b` holds `[e_a, e_b]`.
    pub bracket: Matrix<T>,
    /// `tr(e_i^j)` at index `i n + j`, computed as `⟨ , ⟩ ∘ S`.
    pub trace: Vec<T>,
    /// `f_i^j = e_i^j − p⁻¹ tr(e_i^j) Id` at index `i n + j`.
    pub sl_basis: Vec<Vec<T>>,
    pub checks: LieChecks,
    columns: Vec<SparseVec<T>>,
}

/// `S_End = S^{23} S^{12} S^{34} S^{23}` on `(V ⊗ V*)^{⊗2}`, read off the extended symmetry.
fn end_matrix<T: SymScalar>(ext: &ExtendedSymmetry<T>) -> Result<Matrix<T>, TwistError> {
    let n = ext.n;
    let w = 2 * n;
    let quad = ext.block.power(4);
    let g = n * n;
    let mut columns = Vec::with_capacity(g * g);
    for a in 0..g {
        for b in 0..g {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            let idx = ((i * w + n + j) * w + k) * w + n + l;
            let out = quad.apply_sequence(&[1, 0, 2, 1], &SparseVec::unit(idx));
            let mut col = vec![T::zero(); g * g];
            for (o, c) in out.entries() {
                let d = quad.digits(*o);
                if d[0] >= n || d[1] < n || d[2] >= n || d[3] < n {
                    return Err(TwistError::LieAxiom("S_End leaves End V ⊗ End V"));
                }
                col[((d[0] * n + d[1] - n) * n + d[2]) * n + d[3] - n] = c.clone();
            }
            columns.push(col);
        }
    }
    Ok(Matrix::from_columns(g * g, &columns))
}

impl<T: SymScalar> LieData<T> {
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    /// `[x, y]` for coordinate vectors on the `e_i^j` basis.
    pub fn bracket_of(&self, x: &[T], y: &[T]) -> Vec<T> {
        let g = self.dim();
        let mut out = vec![T::zero(); g];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let f = xa.times(yb);
                for (c, v) in self.columns[a * g + b].entries() {
                    out[*c] = out[*c].plus(&f.times(v));
                }
            }
        }
        out
    }

    pub fn trace_of(&self, x: &[T]) -> T {
        x.iter().zip(&self.trace).fold(T::zero(), |acc, (a, b)| acc.plus(&a.times(b)))
    }
}

/// Bracket applied to factors `pos, pos + 1` of a vector of `g^{⊗k}`.
fn bracket_at<T: SymScalar>(columns: &[SparseVec<T>], g: usize, k: usize, pos: usize, v: &SparseVec<T>) -> SparseVec<T> {
    let after = g.pow((k - pos - 2) as u32);
    let mut acc = std::collections::HashMap::new();
    for (idx, x) in v.entries() {
        let high = idx / (after * g * g);
        let pair = (idx / after) % (g * g);
        let low = idx % after;
        for (c, y) in columns[pair].entries() {
            let key = (high * g + c) * after + low;
            let add = x.times(y);
            acc.entry(key).and_modify(|t: &mut T| *t = t.plus(&add)).or_insert(add);
        }
    }
    SparseVec::from_map(acc)
}

fn vanishes<T: Scalar>(v: &SparseVec<T>) -> bool {
    if T::EXACT {
        v.is_zero()
    } else {
        v.max_abs() <= crate::exactnum::check_tol()
    }
}

/// Bracket `∘(Id − S_End)`, trace `⟨ , ⟩ ∘ S` and the `sl` projection for the left dual,
/// with every axiom checked; a failing axiom is an error.
pub fn lie_data<T: SymScalar>(ext: &ExtendedSymmetry<T>, duals: &DualTensors<T>, dp: &DetPair<T>) -> Result<LieData<T>, TwistError> {
    if ext.side != DualSide::Left {
        return Err(TwistError::WrongDual);
    }
    let n = ext.n;
    let g = n * n;
    let p = dp.rank;
    let s_end = Symmetry::new(g, end_matrix(ext)?, Provenance::Custom)?;
    let pair = s_end.power(2);
    let compose = |v: &SparseVec<T>| {
        let mut out = vec![T::zero(); g];
        for (idx, c) in v.entries() {
            let (a, b) = (idx / g, idx % g);
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            if j == k {
                out[i * n + l] = out[i * n + l].plus(c);
            }
        }
        SparseVec::from_dense(&out)
    };
    let columns: Vec<SparseVec<T>> = (0..g * g)
        .map(|ab| {
            let e = SparseVec::unit(ab);
            compose(&e).sub(&compose(&pair.apply_adjacent(0, &e)))
        })
        .collect();
    let bracket = Matrix::from_columns(g, &columns.iter().map(|c| c.to_dense(g)).collect::<Vec<_>>());

    let skew_symmetric = (0..g * g).all(|ab| {
        let e = SparseVec::unit(ab);
        let swapped = pair.apply_adjacent(0, &e);
        vanishes(&bracket_at(&columns, g, 2, 0, &e.add(&swapped)))
    });
    let cube = s_end.power(3);
    let mut invariant = true;
    let mut jacobi = true;
    for abc in 0..g * g * g {
        let e = SparseVec::unit(abc);
        // S ∘ ([ , ] ⊗ id) = (id ⊗ [ , ]) ∘ S^{12} S^{23}
        let lhs = pair.apply_adjacent(0, &bracket_at(&columns, g, 3, 0, &e));
        let rhs = bracket_at(&columns, g, 3, 1, &cube.apply_sequence(&[1, 0], &e));
        // S ∘ (id ⊗ [ , ]) = ([ , ] ⊗ id) ∘ S^{23} S^{12}
        let lhs2 = pair.apply_adjacent(0, &bracket_at(&columns, g, 3, 1, &e));
        let rhs2 = bracket_at(&columns, g, 3, 0, &cube.apply_sequence(&[0, 1], &e));
        invariant &= vanishes(&lhs.sub(&rhs)) && vanishes(&lhs2.sub(&rhs2));
        let cyc = e.add(&cube.apply_sequence(&[1, 0], &e)).add(&cube.apply_sequence(&[0, 1], &e));
        let inner = bracket_at(&columns, g, 3, 0, &cyc);
        jacobi &= vanishes(&bracket_at(&columns, g, 2, 0, &inner));
        if !invariant || !jacobi {
            break;
        }
    }

    let trace: Vec<T> = (0..g).map(|ij| (0..n).fold(T::zero(), |acc, a| acc.plus(ext.vd.get(a * n + a, ij)))).collect();
    let trace_kills_bracket = columns.iter().all(|c| {
        let t = c.entries().iter().fold(T::zero(), |acc, (i, x)| acc.plus(&x.times(&trace[*i])));
        t.close_to(&T::zero())
    });
    let tr_id = (0..n).fold(T::zero(), |acc, i| acc.plus(&trace[i * n + i]));
    let trace_of_identity = tr_id.close_to(&T::from_i64(p as i64));
    let inv_p = T::one().over(&T::from_i64(p as i64));
    let sl_basis: Vec<Vec<T>> = (0..g)
        .map(|ij| {
            let mut f = vec![T::zero(); g];
            f[ij] = T::one();
            let shift = trace[ij].times(&inv_p);
            for i in 0..n {
                f[i * n + i] = f[i * n + i].minus(&shift);
            }
            f
        })
        .collect();
    let sl_relation = (0..g).all(|c| (0..n).fold(T::zero(), |acc, i| acc.plus(&sl_basis[i * n + i][c])).close_to(&T::zero()));
    let pt = T::from_i64(p as i64);
    let trace_is_c = (0..g).all(|ij| trace[ij].close_to(duals.c.get(ij / n, ij % n)));
    let trace_is_b_transposed = (0..g).all(|ij| {
        let (i, j) = (ij / n, ij % n);
        trace[ij].close_to(duals.b.get(j, i)) && trace[ij].close_to(&pt.times(duals.c_det.get(j, i)))
    });
    let checks = LieChecks {
        skew_symmetric,
        invariant,
        jacobi,
        trace_kills_bracket,
        trace_of_identity,
        sl_relation,
        trace_is_c,
        trace_is_b_transposed,
    };
    for (ok, name) in [
        (skew_symmetric, "skew-symmetry"),
        (invariant, "invariance"),
        (jacobi, "twisted Jacobi identity"),
        (trace_kills_bracket, "tr ∘ [ , ] = 0"),
    ] {
        if !ok {
            return Err(TwistError::LieAxiom(name));
        }
    }
    Ok(LieData { n, p, s_end, bracket, trace, sl_basis, checks, columns })
}
