//! Sparse vectors in tensor powers `V^{⊗m}` and the action of a two-site operator on them.
//!
//! Multi-indices are encoded base `n` with the first tensor factor most significant.

use std::collections::{BTreeMap, HashMap};

use crate::exactnum::{Matrix, Scalar};

const FLOAT_DROP: f64 = 1e-13;

fn negligible_entry<T: Scalar>(x: &T) -> bool {
    x.is_zero() || (!T::EXACT && x.magnitude() < FLOAT_DROP)
}

/// Sorted list of nonzero `(index, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Scalar> SparseVec<T> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, T::one())] }
    }

    pub fn from_map(map: HashMap<usize, T>) -> Self {
        let mut entries: Vec<(usize, T)> = map.into_iter().filter(|(_, v)| !negligible_entry(v)).collect();
        entries.sort_unstable_by_key(|e| e.0);
        SparseVec { entries }
    }

    pub fn from_dense(v: &[T]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, x)| !negligible_entry(*x)).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<T> {
        let mut out = vec![T::zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> T {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, T)> {
        self.entries.first()
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.times(s))).collect() }
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: &T, other: &Self) -> Self {
        if s.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    let v = x.1.plus(&s.times(&y.1));
                    if !negligible_entry(&v) {
                        out.push((x.0, v));
                    }
                    a.next();
                    b.next();
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    out.push((*x).clone());
                    a.next();
                }
                (_, Some(y)) => {
                    let v = s.times(&y.1);
                    if !negligible_entry(&v) {
                        out.push((y.0, v));
                    }
                    b.next();
                }
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&T::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&T::one().negated(), other)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.1.magnitude()).fold(0.0, f64::max)
    }

    /// Tensor product `self ⊗ other` where `other` lives in a space of dimension `other_dim`.
    pub fn kron(&self, other: &Self, other_dim: usize) -> Self {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * other_dim + j, x.times(y)));
            }
        }
        SparseVec { entries }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseVec<U> {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, f(v))).filter(|(_, v)| !negligible_entry(v)).collect() }
    }

    /// Whether `self = s·other` for some scalar, returning it.
    pub fn ratio_to(&self, other: &Self) -> Option<T> {
        if other.is_zero() {
            return self.is_zero().then(T::zero);
        }
        let (i0, y0) = other.entries.iter().max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))?;
        let s = self.get(*i0).over(y0);
        let diff = self.axpy(&s.negated(), other);
        let ok = if T::EXACT { diff.is_zero() } else { diff.max_abs() <= crate::exactnum::check_tol() * (1.0 + self.max_abs()) };
        ok.then_some(s)
    }
}

/// A two-site operator `V⊗V → V⊗V` stored by input column.
#[derive(Clone, Debug)]
pub struct SiteOperator<T> {
    n: usize,
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SiteOperator<T> {
    pub fn from_matrix(n: usize, s: &Matrix<T>) -> Self {
        assert_eq!(s.rows(), n * n);
        assert_eq!(s.cols(), n * n);
        let columns =
            (0..n * n).map(|col| (0..n * n).filter(|&r| !s.get(r, col).is_zero()).map(|r| (r, s.get(r, col).clone())).collect()).collect();
        SiteOperator { n, columns }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn column(&self, c: usize) -> &[(usize, T)] {
        &self.columns[c]
    }
}

/// `V^{⊗m}` together with an operator acting on adjacent factors.
#[derive(Clone, Copy, Debug)]
pub struct TensorPower<'a, T> {
    op: &'a SiteOperator<T>,
    m: usize,
}

impl<'a, T: Scalar> TensorPower<'a, T> {
    pub fn new(op: &'a SiteOperator<T>, m: usize) -> Self {
        TensorPower { op, m }
    }

    pub fn n(&self) -> usize {
        self.op.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.op.n.pow(self.m as u32)
    }

    /// Applies the operator to factors `pos` and `pos + 1` (0-based).
    pub fn apply_adjacent(&self, pos: usize, v: &SparseVec<T>) -> SparseVec<T> {
        assert!(pos + 1 < self.m, "adjacent pair {pos} outside degree {}", self.m);
        let n = self.op.n;
        let low = n.pow((self.m - pos - 2) as u32);
        let high = low * n;
        let mut acc: HashMap<usize, T> = HashMap::with_capacity(v.nnz() * 2);
        for (idx, val) in v.entries() {
            let a = (idx / high) % n;
            let b = (idx / low) % n;
            let base = idx - a * high - b * low;
            for (out, coeff) in &self.op.columns[a * n + b] {
                let key = base + (out / n) * high + (out % n) * low;
                let add = coeff.times(val);
                acc.entry(key).and_modify(|x| *x = x.plus(&add)).or_insert(add);
            }
        }
        SparseVec::from_map(acc)
    }

    /// Applies adjacent operators in the listed order, the first entry acting first.
    pub fn apply_sequence(&self, positions: &[usize], v: &SparseVec<T>) -> SparseVec<T> {
        positions.iter().fold(v.clone(), |acc, &p| self.apply_adjacent(p, &acc))
    }

    /// `P^k_±` acting on the factors `offset..offset+k`, normalized to be idempotent.
    pub fn apply_projector(&self, offset: usize, k: usize, sign: i64, v: &SparseVec<T>) -> SparseVec<T> {
        if k <= 1 {
            return v.clone();
        }
        let inner = self.apply_projector(offset, k - 1, sign, v);
        self.extend_projector(offset, k, sign, &inner)
    }

    /// Given `w` already in the image of `P^{k-1}` on `offset..offset+k-1`,
    /// returns `P^k w` on `offset..offset+k`.
    pub fn extend_projector(&self, offset: usize, k: usize, sign: i64, w: &SparseVec<T>) -> SparseVec<T> {
        if k <= 1 {
            return w.clone();
        }
        // ρ(s_j … s_{k-1}) w for j = k, k-1, …, 1
        let mut total = w.clone();
        let mut cur = w.clone();
        let mut coeff = T::one();
        let sgn = T::from_i64(sign);
        for j in (1..k).rev() {
            cur = self.apply_adjacent(offset + j - 1, &cur);
            coeff = coeff.times(&sgn);
            total = total.axpy(&coeff, &cur);
        }
        total.scale(&T::one().over(&T::from_i64(k as i64)))
    }

    pub fn digits(&self, idx: usize) -> Vec<usize> {
        let n = self.op.n;
        let mut out = vec![0; self.m];
        let mut x = idx;
        for slot in out.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        out
    }
}

/// Integer weights on basis vectors of `V` preserved by the operator:
/// `w_i + w_j = w_k + w_l` whenever the entry `(ij, kl)` is nonzero.
#[derive(Clone, Debug)]
pub struct Grading {
    weights: Vec<Vec<i64>>,
}

impl Grading {
    pub fn trivial(n: usize) -> Self {
        Grading { weights: vec![Vec::new(); n] }
    }

    pub fn from_weights(weights: Vec<Vec<i64>>) -> Self {
        Grading { weights }
    }

    pub fn weight_of(&self, n: usize, m: usize, idx: usize) -> Vec<i64> {
        let width = self.weights.first().map_or(0, Vec::len);
        let mut acc = vec![0i64; width];
        let mut x = idx;
        for _ in 0..m {
            for (a, w) in acc.iter_mut().zip(&self.weights[x % n]) {
                *a += w;
            }
            x /= n;
        }
        acc
    }

    pub fn basis_weights(&self) -> &[Vec<i64>] {
        &self.weights
    }
}

/// Incrementally maintained basis in echelon form keyed by leading index.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    rows: Vec<SparseVec<T>>,
    pivot_of: HashMap<usize, usize>,
}

impl<T: Scalar> Default for EchelonBasis<T> {
    fn default() -> Self {
        EchelonBasis { rows: Vec::new(), pivot_of: HashMap::new() }
    }
}

impl<T: Scalar> EchelonBasis<T> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn vectors(&self) -> &[SparseVec<T>] {
        &self.rows
    }

    pub fn into_vectors(self) -> Vec<SparseVec<T>> {
        self.rows
    }

    /// Residual of `v` after eliminating every pivot position.
    pub fn reduce(&self, v: &SparseVec<T>) -> SparseVec<T> {
        let scale = v.max_abs();
        let mut cur: BTreeMap<usize, T> = v.entries().iter().cloned().collect();
        let mut lower = 0usize;
        loop {
            let next = cur.range(lower..).find(|(k, _)| self.pivot_of.contains_key(k)).map(|(k, x)| (*k, x.clone()));
            let Some((k, x)) = next else { break };
            let row = &self.rows[self.pivot_of[&k]];
            let f = x.over(&row.entries()[0].1);
            for (i, y) in row.entries() {
                let t = f.times(y);
                let drop = match cur.get_mut(i) {
                    Some(slot) => {
                        *slot = slot.minus(&t);
                        negligible_entry(slot) || (!T::EXACT && slot.magnitude() <= 1e-10 * scale)
                    }
                    None => {
                        cur.insert(*i, t.negated());
                        false
                    }
                };
                if drop {
                    cur.remove(i);
                }
            }
            cur.remove(&k);
            lower = k + 1;
        }
        if !T::EXACT {
            cur.retain(|_, x| x.magnitude() > 1e-9 * scale.max(f64::MIN_POSITIVE));
        }
        SparseVec { entries: cur.into_iter().collect() }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<T>) -> bool {
        let r = self.reduce(v);
        let Some((lead, x)) = r.leading().cloned() else { return false };
        let normalized = r.scale(&T::one().over(&x));
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(normalized);
        true
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Echelon bases split by weight; every inserted vector must be homogeneous.
#[derive(Clone, Debug)]
pub struct GradedBasis<T> {
    blocks: BTreeMap<Vec<i64>, EchelonBasis<T>>,
}

impl<T: Scalar> Default for GradedBasis<T> {
    fn default() -> Self {
        GradedBasis { blocks: BTreeMap::new() }
    }
}

impl<T: Scalar> GradedBasis<T> {
    pub fn insert(&mut self, weight: Vec<i64>, v: &SparseVec<T>) -> bool {
        self.blocks.entry(weight).or_default().insert(v)
    }

    pub fn len(&self) -> usize {
        self.blocks.values().map(EchelonBasis::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn into_vectors(self) -> Vec<SparseVec<T>> {
        self.blocks.into_values().flat_map(EchelonBasis::into_vectors).collect()
    }
}
