#![allow(clippy::mutable_key_type)]

use std::collections::BTreeMap;

use crate::exactnum::{Matrix, QuadScalar};
use crate::symmetry::{Permutation, SymScalar, Symmetry, SymmetryError};
use crate::tensor::SparseVec;
use crate::Caps;

use super::{Partition, SchurError};

/// An element of `k[S(m)]` with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement {
    m: usize,
    terms: BTreeMap<Permutation, QuadScalar>,
}

impl GroupAlgebraElement {
    pub fn zero(m: usize) -> Self {
        GroupAlgebraElement { m, terms: BTreeMap::new() }
    }

    pub fn identity(m: usize) -> Self {
        Self::from_perm(Permutation::identity(m), QuadScalar::one())
    }

    pub fn from_perm(perm: Permutation, coeff: QuadScalar) -> Self {
        let mut e = Self::zero(perm.degree());
        e.add_term(perm, coeff);
        e
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, QuadScalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, perm: &Permutation) -> QuadScalar {
        self.terms.get(perm).cloned().unwrap_or_else(QuadScalar::zero)
    }

    fn add_term(&mut self, perm: Permutation, coeff: QuadScalar) {
        let slot = self.terms.entry(perm).or_insert_with(QuadScalar::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &QuadScalar) -> Self {
        let mut out = Self::zero(self.m);
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(p, c)| (p.clone(), c * s)).collect();
        out
    }

    /// Product in the group algebra, `(π)(τ) = π∘τ`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Permutation, QuadScalar> = BTreeMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let slot = acc.entry(p.compose(q)).or_insert_with(QuadScalar::zero);
                *slot = &*slot + &(a * b);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        GroupAlgebraElement { m: self.m, terms: acc }
    }

    /// Applies `ρ_S` of the element to a vector of `V^{⊗m}`.
    pub fn act<T: SymScalar>(&self, s: &Symmetry<T>, v: &SparseVec<T>) -> SparseVec<T> {
        self.terms.iter().fold(SparseVec::zero(), |acc, (p, c)| acc.axpy(&T::from_quad(c), &s.apply_perm(p, v)))
    }

    /// `ρ_S` of the element as a dense matrix on `V^{⊗m}`.
    pub fn rho<T: SymScalar>(&self, s: &Symmetry<T>, caps: &Caps) -> Result<Matrix<T>, SymmetryError> {
        s.check_degree(self.m, caps)?;
        let dim = s.dim().pow(self.m as u32);
        let cols: Vec<Vec<T>> = (0..dim).map(|i| self.act(s, &SparseVec::unit(i)).to_dense(dim)).collect();
        Ok(Matrix::from_columns(dim, &cols))
    }
}

/// Every permutation preserving each block of a set partition of `1..=m`.
pub(crate) fn block_group(m: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut images: Vec<Vec<usize>> = vec![(1..=m).collect()];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local = Permutation::all(block.len());
        let mut next = Vec::with_capacity(images.len() * local.len());
        for img in &images {
            for sigma in &local {
                let mut out = img.clone();
                for (i, &x) in block.iter().enumerate() {
                    out[x - 1] = block[sigma.apply(i + 1) - 1];
                }
                next.push(out);
            }
        }
        images = next;
    }
    images.into_iter().map(|v| Permutation::new(v).expect("block permutation")).collect()
}

/// Entries of the column-filled tableau, listed row by row.
pub fn column_tableau(lambda: &Partition) -> Vec<Vec<usize>> {
    let conj = lambda.conjugate();
    let offsets: Vec<usize> = conj
        .parts()
        .iter()
        .scan(0, |acc, &h| {
            let o = *acc;
            *acc += h;
            Some(o)
        })
        .collect();
    (0..lambda.len()).map(|r| (0..lambda.part(r)).map(|c| offsets[c] + r + 1).collect()).collect()
}

/// `p_λ = c_λ r_λ` for the column-filled tableau.
pub fn young_symmetrizer(lambda: &Partition, caps: &Caps) -> Result<GroupAlgebraElement, SchurError> {
    let m = lambda.weight();
    if m > caps.exact_m {
        return Err(SchurError::CapExceeded { m, cap: caps.exact_m });
    }
    if m == 0 {
        return Ok(GroupAlgebraElement::identity(0));
    }
    let rows = column_tableau(lambda);
    let conj = lambda.conjugate();
    let cols: Vec<Vec<usize>> = (0..conj.len()).map(|c| (0..conj.part(c)).map(|r| rows[r][c]).collect()).collect();
    let mut c = GroupAlgebraElement::zero(m);
    for p in block_group(m, &cols) {
        let sign = p.sign();
        c.add_term(p, QuadScalar::integer(sign));
    }
    let mut r = GroupAlgebraElement::zero(m);
    for p in block_group(m, &rows) {
        r.add_term(p, QuadScalar::one());
    }
    Ok(c.mul(&r))
}
