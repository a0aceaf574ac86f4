//! Littlewood–Richardson coefficients and the rank-`p` fusion ring of the
//! Schur functors, with shifted diagrams identified.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::exactnum::Scalar;
use crate::schurweyl::{schur_from_elementary, Partition, SchurError};

type Coeffs = BTreeMap<Partition, u64>;

fn memo() -> &'static Mutex<HashMap<(Partition, Partition), Coeffs>> {
    static MEMO: OnceLock<Mutex<HashMap<(Partition, Partition), Coeffs>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of LR tableaux of shape `ν/λ` and content `μ`.
fn count_lr_tableaux(nu: &Partition, lambda: &Partition, mu: &Partition) -> u64 {
    // skew boxes in reading order: rows top to bottom, each row right to left
    let cells: Vec<(usize, usize)> = (0..nu.len()).flat_map(|r| (lambda.part(r)..nu.part(r)).rev().map(move |c| (r, c))).collect();
    let mut fill: HashMap<(usize, usize), usize> = HashMap::new();
    let mut counts = vec![0usize; mu.len() + 1];
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        mu: &Partition,
        fill: &mut HashMap<(usize, usize), usize>,
        counts: &mut Vec<usize>,
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let mut hi = mu.len();
        if let Some(&right) = fill.get(&(r, c + 1)) {
            hi = hi.min(right);
        }
        let mut lo = 1;
        if r > 0 && c >= lambda.part(r - 1) {
            lo = fill[&(r - 1, c)] + 1;
        }
        let mut total = 0;
        for v in lo..=hi {
            if counts[v] >= mu.part(v - 1) || (v > 1 && counts[v] + 1 > counts[v - 1]) {
                continue;
            }
            counts[v] += 1;
            fill.insert((r, c), v);
            total += rec(k + 1, cells, lambda, mu, fill, counts);
            fill.remove(&(r, c));
            counts[v] -= 1;
        }
        total
    }
    rec(0, &cells, lambda, mu, &mut fill, &mut counts)
}

/// `c^ν_{λμ}` for every `ν` with a nonzero coefficient.
pub fn lr_coeffs(lambda: &Partition, mu: &Partition) -> Coeffs {
    let key = (lambda.clone(), mu.clone());
    if let Some(hit) = memo().lock().expect("lr memo").get(&key) {
        return hit.clone();
    }
    let mut out = Coeffs::new();
    for nu in Partition::enumerate(lambda.weight() + mu.weight()) {
        if !nu.contains(lambda) || !nu.contains(mu) || nu.len() > lambda.len() + mu.len() {
            continue;
        }
        let c = count_lr_tableaux(&nu, lambda, mu);
        if c > 0 {
            out.insert(nu, c);
        }
    }
    memo().lock().expect("lr memo").insert(key, out.clone());
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionResult {
    pub lhs: Partition,
    pub rhs: Partition,
    pub p: usize,
    /// The full LR expansion before any identification.
    #[serde(with = "partition_keys")]
    pub raw: Coeffs,
    /// Components with more than `p` rows dropped and `p`-row diagrams reduced;
    /// absent when the determinant is not central.
    #[serde(with = "optional_partition_keys")]
    pub reduced: Option<Coeffs>,
}

/// JSON maps keyed by the printed partition, e.g. `"(2,1)"`.
mod partition_keys {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn to_strings(c: &Coeffs) -> BTreeMap<String, u64> {
        c.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    pub fn from_strings<E: serde::de::Error>(m: BTreeMap<String, u64>) -> Result<Coeffs, E> {
        m.into_iter().map(|(k, v)| k.parse::<Partition>().map(|p| (p, v)).map_err(E::custom)).collect()
    }

    pub fn serialize<S: Serializer>(c: &Coeffs, s: S) -> Result<S::Ok, S::Error> {
        to_strings(c).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Coeffs, D::Error> {
        from_strings(BTreeMap::<String, u64>::deserialize(d)?)
    }
}

mod optional_partition_keys {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Option<Coeffs>, s: S) -> Result<S::Ok, S::Error> {
        c.as_ref().map(partition_keys::to_strings).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Coeffs>, D::Error> {
        Option::<BTreeMap<String, u64>>::deserialize(d)?.map(partition_keys::from_strings).transpose()
    }
}

impl FusionResult {
    /// The expansion the dimension identity is checked against.
    pub fn terms(&self) -> &Coeffs {
        self.reduced.as_ref().unwrap_or(&self.raw)
    }
}

/// `[V_λ]·[V_μ]` in rank `p`.
pub fn fuse(lhs: &Partition, rhs: &Partition, p: usize, central: bool) -> Result<FusionResult, SchurError> {
    for part in [lhs, rhs] {
        if part.len() > p {
            return Err(SchurError::TooManyRows { partition: part.clone(), rank: p });
        }
    }
    let raw = lr_coeffs(lhs, rhs);
    let reduced = central.then(|| {
        let mut acc = Coeffs::new();
        for (nu, c) in &raw {
            if let Ok(r) = nu.reduce(p) {
                *acc.entry(r).or_insert(0) += c;
            }
        }
        acc
    });
    Ok(FusionResult { lhs: lhs.clone(), rhs: rhs.clone(), p, raw, reduced })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimCheck<T> {
    pub dim_lhs: T,
    pub dim_rhs: T,
    pub dim_sum: T,
    pub consistent: bool,
}

/// `s_λ s_μ = Σ mult(ν) s_ν` with every Schur value taken from the elementary values `e`.
pub fn dim_check<T: Scalar>(result: &FusionResult, e: &[T]) -> DimCheck<T> {
    let dim_lhs = schur_from_elementary(&result.lhs, e);
    let dim_rhs = schur_from_elementary(&result.rhs, e);
    let dim_sum =
        result.terms().iter().fold(T::zero(), |acc, (nu, c)| acc.plus(&schur_from_elementary(nu, e).times(&T::from_i64(*c as i64))));
    let consistent = dim_lhs.times(&dim_rhs).close_to(&dim_sum);
    DimCheck { dim_lhs, dim_rhs, dim_sum, consistent }
}
