use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SchurError;

/// A partition with its zero parts stripped; the empty partition is written `(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, SchurError> {
        parts.retain(|&x| x > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchurError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn row(m: usize) -> Self {
        Partition { parts: if m == 0 { Vec::new() } else { vec![m] } }
    }

    pub fn column(m: usize) -> Self {
        Partition { parts: vec![1; m] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.part(0);
        Partition { parts: (0..cols).map(|c| self.parts.iter().filter(|&&x| x > c).count()).collect() }
    }

    /// Boxes `(row, col)` in row-major order, 0-based.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.parts.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect()
    }

    pub fn content_sum(&self) -> i64 {
        self.boxes().iter().map(|&(r, c)| c as i64 - r as i64).sum()
    }

    /// Every partition of `m`, in reverse lexicographic order.
    pub fn enumerate(m: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                rec(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions of `m` with at most `len` parts.
    pub fn enumerate_bounded(m: usize, len: usize) -> Vec<Partition> {
        Self::enumerate(m).into_iter().filter(|p| p.len() <= len).collect()
    }

    /// Removes full columns of height `p`; rejected when there are more than `p` rows.
    pub fn reduce(&self, p: usize) -> Result<Partition, SchurError> {
        if self.len() > p {
            return Err(SchurError::TooManyRows { partition: self.clone(), rank: p });
        }
        if self.len() < p {
            return Ok(self.clone());
        }
        let shift = self.parts[p - 1];
        Partition::new(self.parts.iter().map(|x| x - shift).collect())
    }

    /// `λ + a·(1^p)`.
    pub fn add_columns(&self, a: usize, p: usize) -> Partition {
        let mut parts: Vec<usize> = (0..p.max(self.len())).map(|i| self.part(i)).collect();
        for x in parts.iter_mut().take(p) {
            *x += a;
        }
        Partition::new(parts).expect("adding full columns keeps the order")
    }

    /// Hook lengths in row-major box order.
    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.boxes().iter().map(|&(r, c)| (self.parts[r] - c - 1) + (conj.parts[c] - r - 1) + 1).collect()
    }

    /// Whether `self` contains `inner` as a diagram.
    pub fn contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && inner.parts.iter().enumerate().all(|(i, &x)| x <= self.parts[i])
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = SchurError;
    fn try_from(v: Vec<usize>) -> Result<Self, SchurError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "(0)");
        }
        let body: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Parses comma lists such as `2,1`, `(2,1)` or `0`.
impl FromStr for Partition {
    type Err = SchurError;
    fn from_str(s: &str) -> Result<Self, SchurError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts =
            t.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| SchurError::Parse(s.to_string()))).collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_and_reduce() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 2]).reduce(2).unwrap(), Partition::empty());
        assert_eq!(p(&[4, 2, 2, 2]).reduce(4).unwrap(), p(&[2]));
        assert!(p(&[1, 1, 1]).reduce(2).is_err());
        assert_eq!(p(&[2, 1]).reduce(3).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=8).map(|m| Partition::enumerate(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("2,1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[2, 1]).to_string(), "(2,1)");
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn shift() {
        assert_eq!(p(&[2]).add_columns(1, 3), p(&[3, 1, 1]));
        assert_eq!(p(&[3, 1, 1]).reduce(3).unwrap(), p(&[2]));
    }
}
