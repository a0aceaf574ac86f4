use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Matrix, NumError, QuadScalar, Scalar};

fn scale_of<T: Scalar>(rows: &[Vec<T>]) -> f64 {
    rows.iter().flatten().map(Scalar::magnitude).fold(0.0, f64::max)
}

/// Plain Gaussian elimination rank with a magnitude-aware pivot test.
pub fn gauss_rank<T: Scalar>(mut rows: Vec<Vec<T>>) -> usize {
    let scale = scale_of(&rows);
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let mut best = None;
        let mut best_mag = 0.0;
        for (r, row) in rows.iter().enumerate().skip(rank) {
            let m = row[col].magnitude();
            if !row[col].negligible(scale) && (best.is_none() || m > best_mag) {
                best = Some(r);
                best_mag = m;
            }
        }
        let Some(p) = best else { continue };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].over(&pivot_row[col]);
            for c in col..cols {
                if !pivot_row[c].is_zero() {
                    row[c] = row[c].minus(&f.times(&pivot_row[c]));
                }
            }
        }
        rank += 1;
    }
    rank
}

type ZPair = (BigInt, BigInt);

fn zmul(x: &ZPair, y: &ZPair, d: &BigInt) -> ZPair {
    (&x.0 * &y.0 + &x.1 * &y.1 * d, &x.0 * &y.1 + &x.1 * &y.0)
}

fn zero_pair(x: &ZPair) -> bool {
    x.0.is_zero() && x.1.is_zero()
}

fn pair_size(x: &ZPair) -> u64 {
    x.0.bits() + x.1.bits()
}

fn strip_content(row: &mut [ZPair]) {
    let mut g = BigInt::zero();
    for (a, b) in row.iter() {
        g = g.gcd(a).gcd(b);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (a, b) in row.iter_mut() {
        *a /= &g;
        *b /= &g;
    }
}

/// Rank over `Q(√d)` by fraction-free elimination on `Z[√d]` rows.
pub fn fraction_free_rank(rows: Vec<Vec<QuadScalar>>) -> usize {
    let mut d = 0u64;
    for x in rows.iter().flatten() {
        if x.radicand() != 0 {
            assert!(d == 0 || d == x.radicand(), "{}", NumError::FieldMismatch(d, x.radicand()));
            d = x.radicand();
        }
    }
    let dd = BigInt::from(d);
    let cols = rows.first().map_or(0, Vec::len);
    let mut work: Vec<Vec<ZPair>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denominator()));
            let mut zr: Vec<ZPair> = r.iter().map(|x| x.over_denominator(&lcm)).collect();
            strip_content(&mut zr);
            zr
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        if rank == work.len() {
            break;
        }
        let pick =
            work.iter().enumerate().skip(rank).filter(|(_, r)| !zero_pair(&r[col])).min_by_key(|(_, r)| pair_size(&r[col])).map(|(i, _)| i);
        let Some(p) = pick else { continue };
        work.swap(rank, p);
        let (head, tail) = work.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let piv = pivot_row[col].clone();
        for row in tail.iter_mut() {
            if zero_pair(&row[col]) {
                continue;
            }
            let q = row[col].clone();
            for c in col..cols {
                let left = zmul(&piv, &row[c], &dd);
                let right = zmul(&q, &pivot_row[c], &dd);
                row[c] = (left.0 - right.0, left.1 - right.1);
            }
            strip_content(&mut row[col..]);
        }
        rank += 1;
        let mut keep = rank;
        for i in rank..work.len() {
            if work[i].iter().any(|x| !zero_pair(x)) {
                work.swap(keep, i);
                keep += 1;
            }
        }
        work.truncate(keep);
    }
    rank
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<T: Scalar>(rows: &mut [Vec<T>], n_cols: usize) -> Vec<usize> {
    let scale = scale_of(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n_cols {
        if r == rows.len() {
            break;
        }
        let mut best = None;
        let mut best_mag = 0.0;
        for (i, row) in rows.iter().enumerate().skip(r) {
            let m = row[col].magnitude();
            if !row[col].negligible(scale) && (best.is_none() || (!T::EXACT && m > best_mag)) {
                best = Some(i);
                best_mag = m;
                if T::EXACT {
                    break;
                }
            }
        }
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = T::one().over(&rows[r][col]);
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.times(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (c, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    row[c] = row[c].minus(&f.times(pv));
                }
            }
            if !T::EXACT {
                row[col] = T::zero();
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Solution set `{particular + kernel span}` of `A X = B`.
#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub particular: Matrix<T>,
    pub kernel: Vec<Vec<T>>,
}

impl<T: Scalar> Solution<T> {
    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }
}

/// Solves `A X = B` for all right-hand-side columns at once.
pub fn linear_solve<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Solution<T>, NumError> {
    if a.rows() != b.rows() {
        return Err(NumError::Shape { left: (a.rows(), a.cols()), right: (b.rows(), b.cols()) });
    }
    let n = a.cols();
    let k = b.cols();
    let mut rows: Vec<Vec<T>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend_from_slice(b.row(i));
            r
        })
        .collect();
    let all_pivots = rref(&mut rows, n);
    let scale = scale_of(&rows).max(1.0);
    for row in rows.iter().skip(all_pivots.len()) {
        if row[n..].iter().any(|x| !x.negligible(scale)) {
            return Err(NumError::Inconsistent);
        }
    }
    let mut particular = Matrix::zeros(n, k);
    for (r, &pc) in all_pivots.iter().enumerate() {
        for j in 0..k {
            particular.set(pc, j, rows[r][n + j].clone());
        }
    }
    let mut is_pivot = vec![false; n];
    for &p in &all_pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![T::zero(); n];
        v[free] = T::one();
        for (r, &pc) in all_pivots.iter().enumerate() {
            v[pc] = rows[r][free].negated();
        }
        kernel.push(v);
    }
    Ok(Solution { particular, kernel })
}

pub fn inverse<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>, NumError> {
    if !a.is_square() {
        return Err(NumError::Shape { left: (a.rows(), a.cols()), right: (a.cols(), a.rows()) });
    }
    let sol = linear_solve(a, &Matrix::identity(a.rows())).map_err(|_| NumError::Singular)?;
    if !sol.is_unique() {
        return Err(NumError::Singular);
    }
    Ok(sol.particular)
}

pub fn nullspace<T: Scalar>(a: &Matrix<T>) -> Vec<Vec<T>> {
    linear_solve(a, &Matrix::zeros(a.rows(), 1)).map(|s| s.kernel).unwrap_or_default()
}

/// Basis of the span of `vectors`, in reduced echelon form.
pub fn span_basis<T: Scalar>(vectors: Vec<Vec<T>>) -> Vec<Vec<T>> {
    let Some(dim) = vectors.first().map(Vec::len) else { return Vec::new() };
    let mut rows = vectors;
    let pivots = rref(&mut rows, dim);
    rows.truncate(pivots.len());
    rows
}

/// Determinant by elimination.
pub fn determinant<T: Scalar>(a: &Matrix<T>) -> T {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    let mut rows = a.to_rows();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else { return T::zero() };
        if p != col {
            rows.swap(p, col);
            det = det.negated();
        }
        let piv = rows[col][col].clone();
        det = det.times(&piv);
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].over(&piv);
            let (upper, lower) = rows.split_at_mut(r);
            for (x, y) in lower[0][col..n].iter_mut().zip(&upper[col][col..n]) {
                *x = x.minus(&f.times(y));
            }
        }
    }
    det
}

/// Ratio `x = s·y` when the two vectors are proportional (y nonzero).
pub fn proportionality<T: Scalar>(x: &[T], y: &[T]) -> Option<T> {
    let idx = y.iter().position(|v| !v.negligible(1.0))?;
    let s = x[idx].over(&y[idx]);
    x.iter().zip(y).all(|(a, b)| a.close_to(&s.times(b))).then_some(s)
}
