use serde::{Deserialize, Serialize};

use crate::exactnum::{linear_solve, Matrix, NumError};
use crate::symmetry::{Provenance, SymScalar, Symmetry};
use crate::tensor::SparseVec;

use super::TwistError;

/// Which pairing identifies `V*` as a dual: `V ⊗ V* → k` (right) or `V* ⊗ V → k` (left).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualSide {
    Right,
    Left,
}

/// The symmetry extended to `(V ⊕ V*)^{⊗2}`; the basis of `V ⊕ V*` is `x_0..x_{n-1}, x^0..x^{n-1}`.
///
/// A block `B[(i,j),(k,l)]` is the coefficient of `b_i ⊗ a_j` in the image of `a_k ⊗ b_l`.
#[derive(Clone, Debug)]
pub struct ExtendedSymmetry<T: SymScalar> {
    pub n: usize,
    pub side: DualSide,
    pub vv: Matrix<T>,
    pub vd: Matrix<T>,
    pub dv: Matrix<T>,
    pub dd: Matrix<T>,
    pub block: Symmetry<T>,
    pub pairing_invariant: bool,
    pub copairing_invariant: bool,
}

/// `X` with `Σ_{r,s} Z[(t,s),(a,r)] X[(r,s),(b,c)] = δ_ab δ_ct`, unique or rejected.
fn solve_right_factor<T: SymScalar>(z: &Matrix<T>, n: usize, what: &'static str) -> Result<Matrix<T>, TwistError> {
    let a = Matrix::from_fn(n * n, n * n, |row, col| {
        let (a, t) = (row / n, row % n);
        let (r, s) = (col / n, col % n);
        z.get(t * n + s, a * n + r).clone()
    });
    unique_inverse(&a, what)
}

fn unique_inverse<T: SymScalar>(a: &Matrix<T>, what: &'static str) -> Result<Matrix<T>, TwistError> {
    match linear_solve(a, &Matrix::identity(a.rows())) {
        Ok(sol) if sol.is_unique() => Ok(sol.particular),
        Ok(sol) => Err(TwistError::Ambiguous { block: what, freedom: sol.kernel.len() }),
        Err(NumError::Inconsistent) => Err(TwistError::NoSolution(what)),
        Err(e) => Err(e.into()),
    }
}

/// `Z` with `Σ_{r,s} Z[(t,s),(a,r)] X[(r,s),(b,c)] = δ_ab δ_ct`, unique or rejected.
fn solve_left_factor<T: SymScalar>(x: &Matrix<T>, n: usize, what: &'static str) -> Result<Matrix<T>, TwistError> {
    let inv = unique_inverse(x, what)?;
    Ok(Matrix::from_fn(n * n, n * n, |row, col| {
        let (t, s) = (row / n, row % n);
        let (a, r) = (col / n, col % n);
        inv.get(a * n + t, r * n + s).clone()
    }))
}

fn assemble<T: SymScalar>(n: usize, vv: &Matrix<T>, vd: &Matrix<T>, dv: &Matrix<T>, dd: &Matrix<T>) -> Matrix<T> {
    let w = 2 * n;
    let mut m = Matrix::zeros(w * w, w * w);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let (r, c) = (i * n + j, k * n + l);
                    m.set(i * w + j, k * w + l, vv.get(r, c).clone());
                    m.set((n + i) * w + j, k * w + n + l, vd.get(r, c).clone());
                    m.set(i * w + n + j, (n + k) * w + l, dv.get(r, c).clone());
                    m.set((n + i) * w + n + j, (n + k) * w + n + l, dd.get(r, c).clone());
                }
            }
        }
    }
    m
}

/// Offsets of the paired factors `(P, Q)` with `P ⊗ Q → k`.
fn paired(side: DualSide, n: usize) -> (usize, usize) {
    match side {
        DualSide::Right => (0, n),
        DualSide::Left => (n, 0),
    }
}

/// `(id_Y ⊗ ev)(S^{12} S^{23}(p_a ⊗ q_b ⊗ y_c)) = δ_ab y_c` for `Y = V, V*`.
fn pairing_invariance<T: SymScalar>(block: &Symmetry<T>, side: DualSide, n: usize) -> bool {
    let w = 2 * n;
    let (po, qo) = paired(side, n);
    let cube = block.power(3);
    for y in 0..w {
        for a in 0..n {
            for b in 0..n {
                let input = ((po + a) * w + qo + b) * w + y;
                let out = cube.apply_sequence(&[1, 0], &SparseVec::unit(input));
                let mut acc = vec![T::zero(); w];
                for (idx, c) in out.entries() {
                    let (t, s1, s2) = (idx / (w * w), (idx / w) % w, idx % w);
                    if s1 >= po && s1 < po + n && s2 >= qo && s2 < qo + n && s1 - po == s2 - qo {
                        acc[t] = acc[t].plus(c);
                    }
                }
                let acc = SparseVec::from_dense(&acc);
                let expect = if a == b { SparseVec::unit(y) } else { SparseVec::zero() };
                if !close(&acc, &expect) {
                    return false;
                }
            }
        }
    }
    true
}

fn close<T: SymScalar>(a: &SparseVec<T>, b: &SparseVec<T>) -> bool {
    let d = a.sub(b);
    if T::EXACT {
        d.is_zero()
    } else {
        d.max_abs() <= crate::exactnum::check_tol()
    }
}

/// `S_{Y, Q⊗P}(y ⊗ coev) = coev ⊗ y` for `coev = Σ q_i ⊗ p_i` and `Y = V, V*`.
fn copairing_invariance<T: SymScalar>(block: &Symmetry<T>, side: DualSide, n: usize) -> bool {
    let w = 2 * n;
    let (po, qo) = paired(side, n);
    let cube = block.power(3);
    let coev = (0..n).fold(SparseVec::zero(), |acc, i| acc.add(&SparseVec::unit((qo + i) * w + po + i)));
    (0..w).all(|y| {
        let lhs = cube.apply_sequence(&[0, 1], &SparseVec::unit(y).kron(&coev, w * w));
        close(&lhs, &coev.kron(&SparseVec::unit(y), w))
    })
}

/// Solves for the mixed blocks from the naturality of the pairing and involutivity,
/// then re-verifies the assembled operator.
pub fn crossings<T: SymScalar>(s: &Symmetry<T>, side: DualSide) -> Result<ExtendedSymmetry<T>, TwistError> {
    let n = s.dim();
    let vv = s.matrix().clone();
    let (vd, dv, dd) = match side {
        DualSide::Right => {
            let dv = solve_right_factor(&vv, n, "S_{V*V}")?;
            let vd = unique_inverse(&dv, "S_{VV*}")?;
            let dd = solve_right_factor(&vd, n, "S_{V*V*}")?;
            (vd, dv, dd)
        }
        DualSide::Left => {
            let dv = solve_left_factor(&vv, n, "S_{V*V}")?;
            let vd = unique_inverse(&dv, "S_{VV*}")?;
            let dd = solve_left_factor(&vd, n, "S_{V*V*}")?;
            (vd, dv, dd)
        }
    };
    let block = Symmetry::new(2 * n, assemble(n, &vv, &vd, &dv, &dd), Provenance::Custom)?;
    let pairing_invariant = pairing_invariance(&block, side, n);
    let copairing_invariant = copairing_invariance(&block, side, n);
    Ok(ExtendedSymmetry { n, side, vv, vd, dv, dd, block, pairing_invariant, copairing_invariant })
}
