//! Partitions, symmetric-group characters, Young symmetrizers and the Schur
//! functors `V_λ = Im ρ_S(p_λ)` of a symmetry.

mod characters;
mod group_algebra;
mod partition;

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use characters::{character, gamma, hook_dim, CHARACTER_WEIGHT_MAX};
pub use group_algebra::{column_tableau, young_symmetrizer, GroupAlgebraElement};
pub use partition::Partition;

use crate::exactnum::{determinant, Matrix, Scalar};
use crate::poincare::{
    centrality, determinant_pair, exterior_bases, exterior_dims, mn_matrices, poincare_series, polynomial_roots, roots_alpha,
    PoincareError, Sign,
};
use crate::symmetry::{Permutation, Provenance, SymScalar, Symmetry, SymmetryError};
use crate::tensor::{GradedBasis, SparseVec};
use crate::Caps;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SchurError {
    #[error("parts {0:?} are not weakly decreasing")]
    NotAPartition(Vec<usize>),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("{partition} has more than {rank} rows")]
    TooManyRows { partition: Partition, rank: usize },
    #[error("weights of {lambda} and {mu} differ")]
    WeightMismatch { lambda: Partition, mu: Partition },
    #[error("gamma of {partition}: character formula gives {formula}, content sum gives {contents}")]
    GammaDisagreement { partition: Partition, formula: String, contents: i64 },
    #[error("degree {m} exceeds the configured cap {cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("the swap of V_{lambda} and V_{mu} leaves V_{mu} ⊗ V_{lambda}")]
    RestrictionNotClosed { lambda: Partition, mu: Partition },
    #[error("V_{0} is zero")]
    ZeroModule(Partition),
    #[error("symmetry is not even: {0}")]
    NotEven(String),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Poincare(#[from] PoincareError),
}

fn schur_cap<T: Scalar>(caps: &Caps) -> usize {
    if T::EXACT {
        caps.schur_exact_m
    } else {
        caps.float_m
    }
}

/// `π₀` with `π₀(row-filled entry of a box) = column-filled entry of that box`.
fn row_to_column(lambda: &Partition) -> Permutation {
    let cols = column_tableau(lambda);
    let mut images = vec![0; lambda.weight()];
    let mut next = 0;
    for row in &cols {
        for &entry in row {
            images[next] = entry;
            next += 1;
        }
    }
    Permutation::new(images).expect("tableau entries form a permutation")
}

/// A basis of `V_λ ⊂ V^{⊗m}` sorted by leading index, each vector homogeneous for the grading.
///
/// `Im ρ(c_λ r_λ) = ρ(c_λ) ρ(π₀) (⊗_i Im P₊^{λ_i})`, where `π₀` conjugates the row
/// stabilizer of the row-filled tableau onto that of the column-filled one.
pub fn schur_basis<T: SymScalar>(s: &Symmetry<T>, lambda: &Partition, caps: &Caps) -> Result<Vec<SparseVec<T>>, SchurError> {
    let m = lambda.weight();
    let cap = schur_cap::<T>(caps);
    if m > cap {
        return Err(SchurError::CapExceeded { m, cap });
    }
    if m == 0 {
        return Ok(vec![SparseVec::unit(0)]);
    }
    let n = s.dim();
    let rows = exterior_bases(s, lambda.part(0), Sign::Plus);
    let pi0 = row_to_column(lambda);
    let conj = lambda.conjugate();
    let tp = s.power(m);
    let grading = s.grading();
    let mut basis = GradedBasis::default();
    let mut gens: Vec<SparseVec<T>> = vec![SparseVec::unit(0)];
    for &len in lambda.parts() {
        let block = &rows[len];
        let block_dim = n.pow(len as u32);
        gens = gens.iter().flat_map(|g| block.iter().map(move |b| g.kron(b, block_dim))).collect();
    }
    for g in gens {
        let mut v = s.apply_perm(&pi0, &g);
        let mut offset = 0;
        for &h in conj.parts() {
            if h > 1 {
                v = tp.apply_projector(offset, h, -1, &v);
            }
            offset += h;
        }
        if let Some((lead, _)) = v.leading() {
            basis.insert(grading.weight_of(n, m, *lead), &v);
        }
    }
    let mut out = basis.into_vectors();
    out.sort_by_key(|v| v.leading().map(|e| e.0));
    Ok(out)
}

/// `dim V_λ` as the rank of `ρ_S(p_λ)`.
pub fn schur_dim<T: SymScalar>(s: &Symmetry<T>, lambda: &Partition, caps: &Caps) -> Result<usize, SchurError> {
    Ok(schur_basis(s, lambda, caps)?.len())
}

/// `dim V_λ` from the dense matrix `ρ_S(p_λ)`; slow, kept as a cross-check.
pub fn schur_dim_dense<T: SymScalar>(s: &Symmetry<T>, lambda: &Partition, caps: &Caps) -> Result<usize, SchurError> {
    if lambda.weight() == 0 {
        return Ok(1);
    }
    let p = young_symmetrizer(lambda, caps)?;
    Ok(p.rho(s, caps)?.rank())
}

/// `e_0..e_k` of the multiset.
pub fn elementary<T: Scalar>(alpha: &[T]) -> Vec<T> {
    let mut e = vec![T::one()];
    for a in alpha {
        let mut next = e.clone();
        next.push(T::zero());
        for k in 1..next.len() {
            next[k] = next[k].plus(&a.times(&e[k - 1]));
        }
        e = next;
    }
    e
}

/// `h_0..h_max` from `e_0, e_1, …` (missing `e_k` read as zero).
pub fn complete_from_elementary<T: Scalar>(e: &[T], max: usize) -> Vec<T> {
    let mut h = vec![T::one()];
    for k in 1..=max {
        let mut acc = T::zero();
        for i in 1..=k.min(e.len().saturating_sub(1)) {
            let term = e[i].times(&h[k - i]);
            acc = if i % 2 == 1 { acc.plus(&term) } else { acc.minus(&term) };
        }
        h.push(acc);
    }
    h
}

/// `s_λ = det(h_{λ_i − i + j})` with `h` derived from the elementary values `e`.
pub fn schur_from_elementary<T: Scalar>(lambda: &Partition, e: &[T]) -> T {
    let l = lambda.len();
    if l == 0 {
        return T::one();
    }
    let h = complete_from_elementary(e, lambda.part(0) + l);
    let jt = Matrix::from_fn(l, l, |i, j| {
        let k = lambda.part(i) as isize - i as isize + j as isize;
        if k < 0 {
            T::zero()
        } else {
            h[k as usize].clone()
        }
    });
    determinant(&jt)
}

/// `s_λ(α_1, …, α_p)`.
pub fn schur_poly<T: Scalar>(lambda: &Partition, alpha: &[T]) -> T {
    schur_from_elementary(lambda, &elementary(alpha))
}

/// `dim` of the `λ`-isotypic component of `V^{⊗m}`, the rank of `Σ_π χ_λ(π) ρ_S(π)`.
pub fn isotypic_dim<T: SymScalar>(s: &Symmetry<T>, lambda: &Partition, caps: &Caps) -> Result<usize, SchurError> {
    if lambda.weight() == 0 {
        return Ok(1);
    }
    Ok(isotypic_basis(s, lambda, caps)?.len())
}

/// A basis of the image of `Σ_π χ_λ(π) ρ_S(π)` on `V^{⊗m}`.
pub fn isotypic_basis<T: SymScalar>(s: &Symmetry<T>, lambda: &Partition, caps: &Caps) -> Result<Vec<SparseVec<T>>, SchurError> {
    let m = lambda.weight();
    if m == 0 {
        return Ok(vec![SparseVec::unit(0)]);
    }
    s.check_degree(m, caps)?;
    let mut terms = Vec::new();
    for perm in Permutation::all(m) {
        let chi = character(lambda, &Partition::new(perm.cycle_type())?)?;
        if chi != 0 {
            terms.push((perm, T::from_i64(chi)));
        }
    }
    let n = s.dim();
    let grading = s.grading();
    let mut basis = GradedBasis::default();
    for i in 0..n.pow(m as u32) {
        let e = SparseVec::unit(i);
        let img = terms.iter().fold(SparseVec::zero(), |acc, (p, c)| acc.axpy(c, &s.apply_perm(p, &e)));
        if !img.is_zero() {
            basis.insert(grading.weight_of(n, m, i), &img);
        }
    }
    Ok(basis.into_vectors())
}

/// Coordinates of `v` in a family whose leading indices are pairwise distinct.
fn coordinates<T: Scalar>(family: &[SparseVec<T>], pivots: &HashMap<usize, usize>, v: &SparseVec<T>) -> Option<Vec<T>> {
    let mut coeffs = vec![T::zero(); family.len()];
    let mut cur = v.clone();
    let scale = v.max_abs().max(1.0);
    while let Some((lead, x)) = cur.leading().cloned() {
        if !T::EXACT && x.magnitude() <= crate::exactnum::check_tol() * scale {
            cur = SparseVec::from_map(cur.entries()[1..].iter().cloned().collect());
            continue;
        }
        let idx = *pivots.get(&lead)?;
        let f = x.over(&family[idx].entries()[0].1);
        cur = cur.axpy(&f.negated(), &family[idx]);
        coeffs[idx] = coeffs[idx].plus(&f);
    }
    Some(coeffs)
}

/// `b ⊗ c` for every pair, with the map from leading index to position.
fn product_family<T: Scalar>(
    left: &[SparseVec<T>],
    right: &[SparseVec<T>],
    right_dim: usize,
) -> (Vec<SparseVec<T>>, HashMap<usize, usize>) {
    let mut family = Vec::with_capacity(left.len() * right.len());
    let mut pivots = HashMap::new();
    for b in left {
        for c in right {
            let v = b.kron(c, right_dim);
            pivots.insert(v.leading().expect("nonzero").0, family.len());
            family.push(v);
        }
    }
    (family, pivots)
}

/// `ρ_S` of the block swap moving the first `m1` factors past the last `m2`.
fn block_swap(m1: usize, m2: usize) -> Permutation {
    let images: Vec<usize> = (1..=m1 + m2).map(|i| if i <= m1 { i + m2 } else { i - m1 }).collect();
    Permutation::new(images).expect("block swap")
}

/// Whether the swap `V^{⊗m1} ⊗ V^{⊗m2} → V^{⊗m2} ⊗ V^{⊗m1}` maps `V_λ ⊗ V_μ` into `V_μ ⊗ V_λ`.
pub fn restriction_closes<T: SymScalar>(s: &Symmetry<T>, lambda: &Partition, mu: &Partition, caps: &Caps) -> Result<bool, SchurError> {
    let (m1, m2) = (lambda.weight(), mu.weight());
    s.check_degree(m1 + m2, caps)?;
    let bl = schur_basis(s, lambda, caps)?;
    let bm = schur_basis(s, mu, caps)?;
    let n = s.dim();
    let (target, pivots) = product_family(&bm, &bl, n.pow(m1 as u32));
    let swap = block_swap(m1, m2);
    for b in &bl {
        for c in &bm {
            let img = s.apply_perm(&swap, &b.kron(c, n.pow(m2 as u32)));
            if coordinates(&target, &pivots, &img).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The swap of `V_λ ⊗ V_λ` as a symmetry on `V_λ`, together with the basis of `V_λ` used.
pub fn induced_symmetry<T: SymScalar>(
    s: &Symmetry<T>,
    lambda: &Partition,
    caps: &Caps,
) -> Result<(Symmetry<T>, Vec<SparseVec<T>>), SchurError> {
    let m = lambda.weight();
    s.check_degree(2 * m, caps)?;
    let basis = schur_basis(s, lambda, caps)?;
    if basis.is_empty() {
        return Err(SchurError::ZeroModule(lambda.clone()));
    }
    let d = basis.len();
    let tdim = s.dim().pow(m as u32);
    let (family, pivots) = product_family(&basis, &basis, tdim);
    let swap = block_swap(m, m);
    let mut cols = Vec::with_capacity(d * d);
    for v in &family {
        let img = s.apply_perm(&swap, v);
        let coords = coordinates(&family, &pivots, &img)
            .ok_or_else(|| SchurError::RestrictionNotClosed { lambda: lambda.clone(), mu: lambda.clone() })?;
        cols.push(coords);
    }
    let matrix = Matrix::from_columns(d * d, &cols);
    let induced = Symmetry::new(d, matrix, Provenance::Induced { partition: lambda.parts().to_vec() })?;
    Ok((induced, basis))
}

/// Semistandard tableaux of shape `λ` with entries `0..p`, as entry lists in row-major order.
pub fn semistandard_tableaux(lambda: &Partition, p: usize) -> Vec<Vec<usize>> {
    let boxes = lambda.boxes();
    let mut out = Vec::new();
    let mut fill = vec![0usize; boxes.len()];
    fn rec(k: usize, boxes: &[(usize, usize)], lambda: &Partition, p: usize, fill: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == boxes.len() {
            out.push(fill.clone());
            return;
        }
        let (r, c) = boxes[k];
        let mut low = 0;
        if c > 0 {
            low = fill[k - 1];
        }
        if r > 0 {
            let above: usize = (0..r - 1).map(|i| lambda.part(i)).sum::<usize>() + c;
            low = low.max(fill[above] + 1);
        }
        for x in low..p {
            fill[k] = x;
            rec(k + 1, boxes, lambda, p, fill, out);
        }
    }
    rec(0, &boxes, lambda, p, &mut fill, &mut out);
    out
}

/// The multiset `W_λ(α)`: classical diagonal weights of `V_λ` evaluated at `diag(α)`.
pub fn weight_multiset(lambda: &Partition, alpha: &[Complex64]) -> Vec<Complex64> {
    semistandard_tableaux(lambda, alpha.len()).iter().map(|t| t.iter().fold(Complex64::new(1.0, 0.0), |acc, &i| acc * alpha[i])).collect()
}

fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

/// Largest distance in an optimal greedy matching of two equal-size multisets.
fn multiset_deviation(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut left: Vec<Complex64> = b.to_vec();
    let mut worst: f64 = 0.0;
    for z in a {
        let (i, d) = left.iter().enumerate().map(|(i, w)| (i, (z - w).norm() / (1.0 + w.norm()))).min_by(|x, y| x.1.total_cmp(&y.1))?;
        worst = worst.max(d);
        left.swap_remove(i);
    }
    Some(worst)
}

/// Roots `α'` of `Σ (−1)^k e_k z^{q−k}` for the minus coefficients of an even object.
fn alpha_of(e: &[i64]) -> Vec<Complex64> {
    let q = e.len() - 1;
    let palindromic = (0..=q).all(|k| e[k] == e[q - k]);
    if palindromic {
        return roots_alpha(e).to_complex();
    }
    let coeffs: Vec<Complex64> =
        (0..=q).map(|k| Complex64::new(if k % 2 == 0 { e[k] as f64 } else { -(e[k] as f64) }, 0.0)).rev().collect();
    polynomial_roots(&coeffs)
}

const ROOT_TOL: f64 = 1e-6;

/// Comparison of the roots of `P₋(t, V_λ)` with `W_λ(α)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub lambda: Partition,
    pub base_rank: usize,
    pub dim: usize,
    pub induced_minus: Vec<u64>,
    pub induced_rank: Option<usize>,
    pub induced_alpha: Vec<[f64; 2]>,
    pub predicted_alpha: Vec<[f64; 2]>,
    pub max_deviation: Option<f64>,
    pub agree: bool,
    pub determinant_central: Option<bool>,
    pub finding: String,
}

/// Builds the induced symmetry on `V_λ` and compares its Poincaré roots with `W_λ(α)`.
/// The outcome is recorded in the report and never turned into an error.
pub fn conjecture_probe<T: SymScalar>(s: &Symmetry<T>, lambda: &Partition, caps: &Caps) -> Result<ConjectureReport, SchurError> {
    let cap = if T::EXACT { caps.exact_m } else { caps.float_m };
    let base = poincare_series(s, (s.dim() + 1).min(cap))?;
    let p = base.rank().ok_or_else(|| SchurError::NotEven(format!("{:?}", base.classification)))?;
    if lambda.len() > p {
        return Err(SchurError::TooManyRows { partition: lambda.clone(), rank: p });
    }
    let alpha = base.alpha.as_ref().map(|a| a.to_complex()).unwrap_or_default();
    let predicted = sorted(weight_multiset(lambda, &alpha));
    let (induced, basis) = induced_symmetry(s, lambda, caps)?;
    let dim = basis.len();
    let max_k = (predicted.len() + 1).min(cap);
    let minus = exterior_dims(&induced, max_k, Sign::Minus);
    let to_pairs = |v: &[Complex64]| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>();
    let last = minus.iter().rposition(|&x| x != 0).unwrap_or(0);
    let terminated = last + 1 < minus.len() && minus[last] == 1;
    if !terminated {
        let finding = format!("P-(t, V_{lambda}) has not terminated by degree {max_k}: {minus:?}");
        return Ok(ConjectureReport {
            lambda: lambda.clone(),
            base_rank: p,
            dim,
            induced_minus: minus,
            induced_rank: None,
            induced_alpha: Vec::new(),
            predicted_alpha: to_pairs(&predicted),
            max_deviation: None,
            agree: false,
            determinant_central: None,
            finding,
        });
    }
    let e: Vec<i64> = minus[..=last].iter().map(|&x| x as i64).collect();
    let roots = sorted(alpha_of(&e));
    let deviation = multiset_deviation(&roots, &predicted);
    let agree = deviation.is_some_and(|d| d <= ROOT_TOL);
    let determinant_central = determinant_pair(&induced, last).ok().map(|dp| {
        let mn = mn_matrices(&induced, &dp);
        centrality(&dp, &mn).central
    });
    let finding = if agree {
        format!("roots of P-(t, V_{lambda}) match W_{lambda}(alpha)")
    } else {
        format!("roots of P-(t, V_{lambda}) differ from W_{lambda}(alpha)")
    };
    Ok(ConjectureReport {
        lambda: lambda.clone(),
        base_rank: p,
        dim,
        induced_minus: minus,
        induced_rank: Some(last),
        induced_alpha: to_pairs(&roots),
        predicted_alpha: to_pairs(&predicted),
        max_deviation: deviation,
        agree,
        determinant_central,
        finding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QuadScalar;
    use crate::symmetry::{n3_fixture, Branch};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn jacobi_trudi_small() {
        let e = [1, 3, 1].map(QuadScalar::integer);
        assert_eq!(schur_from_elementary(&p(&[2, 1]), &e), QuadScalar::integer(3));
        assert_eq!(schur_from_elementary(&p(&[2, 2]), &e), QuadScalar::one());
        assert_eq!(schur_from_elementary(&Partition::empty(), &e), QuadScalar::one());
        assert_eq!(schur_from_elementary(&p(&[1, 1, 1]), &e), QuadScalar::zero());
        let alpha = [1.0, 2.0, 3.0];
        assert!((schur_poly(&p(&[1, 1]), &alpha) - 11.0).abs() < 1e-12);
        assert!((schur_poly(&p(&[2]), &alpha) - 25.0).abs() < 1e-12);
    }

    #[test]
    fn tableaux_count() {
        assert_eq!(semistandard_tableaux(&p(&[2, 1]), 3).len(), 8);
        assert_eq!(semistandard_tableaux(&p(&[2]), 2).len(), 3);
        assert_eq!(semistandard_tableaux(&p(&[1, 1, 1]), 2).len(), 0);
    }

    #[test]
    fn family_dims() {
        let s = n3_fixture(Branch::Plus);
        let caps = Caps::default();
        for (l, d) in [(&[1][..], 3), (&[2], 8), (&[1, 1], 1), (&[1, 1, 1], 0), (&[2, 1], 3)] {
            assert_eq!(schur_dim(&s, &p(l), &caps).unwrap(), d, "{l:?}");
            assert_eq!(schur_dim_dense(&s, &p(l), &caps).unwrap(), d, "{l:?}");
        }
    }

    #[test]
    fn family_isotypic() {
        let s = n3_fixture(Branch::Minus);
        let caps = Caps::default();
        assert_eq!(isotypic_dim(&s, &p(&[2]), &caps).unwrap(), 8);
        assert_eq!(isotypic_dim(&s, &p(&[2, 1]), &caps).unwrap(), 6);
    }
}
