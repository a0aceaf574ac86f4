use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use super::SymmetryError;

/// A bijection of `{1, …, m}` stored by its images.
///
/// Composition follows functions: `(π∘τ)(x) = π(τ(x))`.
#[derive(Clone)]
pub struct Permutation {
    images: Vec<usize>,
    word: OnceLock<Vec<usize>>,
}

impl Permutation {
    /// Images are 1-based.
    pub fn new(images: Vec<usize>) -> Result<Self, SymmetryError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(SymmetryError::NotAPermutation(images.clone()));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images, word: OnceLock::new() })
    }

    pub fn identity(m: usize) -> Self {
        Permutation { images: (1..=m).collect(), word: OnceLock::new() }
    }

    /// The transposition of `i` and `j` (1-based).
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (1..=m).collect();
        images.swap(i - 1, j - 1);
        Permutation { images, word: OnceLock::new() }
    }

    /// The product `s_{w[0]} ∘ s_{w[1]} ∘ …` of adjacent transpositions `s_i = (i, i+1)`.
    pub fn from_word(m: usize, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(m), |acc, &i| acc.compose(&Self::transposition(m, i, i + 1)))
    }

    /// Permutation taking `i` to `cycle[k+1]` for `i = cycle[k]`.
    pub fn cycle(m: usize, cycle: &[usize]) -> Self {
        let mut images: Vec<usize> = (1..=m).collect();
        for (k, &x) in cycle.iter().enumerate() {
            images[x - 1] = cycle[(k + 1) % cycle.len()];
        }
        Permutation { images, word: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        let images = other.images.iter().map(|&x| self.images[x - 1]).collect();
        Permutation { images, word: OnceLock::new() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images, word: OnceLock::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn inversions(&self) -> usize {
        let m = self.degree();
        (0..m).map(|i| (i + 1..m).filter(|&j| self.images[i] > self.images[j]).count()).sum()
    }

    pub fn sign(&self) -> i64 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Reduced factorization `self = s_{w[k-1]} ∘ … ∘ s_{w[0]}` found by bubble sort;
    /// acting on tensors, `s_{w[0]}` is applied first.
    pub fn adjacent_word(&self) -> &[usize] {
        self.word.get_or_init(|| {
            let mut cur = self.images.clone();
            let mut word = Vec::new();
            while let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
                cur.swap(i, i + 1);
                word.push(i + 1);
            }
            word
        })
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut lens = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] - 1;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Every permutation of `{1, …, m}` in lexicographic order of images.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=m).collect();
        loop {
            out.push(Permutation { images: cur.clone(), word: OnceLock::new() });
            let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..m).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl PartialEq for Permutation {
    fn eq(&self, o: &Self) -> bool {
        self.images == o.images
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.images.hash(h);
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Permutation {
    fn cmp(&self, o: &Self) -> Ordering {
        self.images.cmp(&o.images)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}
