use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_rational::Ratio;

use super::{Partition, SchurError};

type Key = (Vec<usize>, Vec<usize>);

fn table() -> &'static RwLock<HashMap<Key, i64>> {
    static TABLE: OnceLock<RwLock<HashMap<Key, i64>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `dim M_λ = m! / ∏ hooks`.
pub fn hook_dim(lambda: &Partition) -> u64 {
    let m = lambda.weight() as u128;
    let fact: u128 = (1..=m).product();
    let hooks: u128 = lambda.hooks().iter().map(|&h| h as u128).product();
    u64::try_from(fact / hooks).expect("dimension fits in u64")
}

/// `χ_λ` on the class of cycle type `mu` by the Murnaghan–Nakayama rule.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, SchurError> {
    if lambda.weight() != mu.weight() {
        return Err(SchurError::WeightMismatch { lambda: lambda.clone(), mu: mu.clone() });
    }
    Ok(mn(lambda.parts(), mu.parts()))
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = table().read().expect("character table").get(&key) {
        return *v;
    }
    let r = mu[0];
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, x)| x + len - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let crossed = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let reduced: Vec<usize> = next.iter().enumerate().map(|(j, x)| x - (len - 1 - j)).filter(|&x| x > 0).collect();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&reduced, &mu[1..]);
    }
    table().write().expect("character table").insert(key, total);
    total
}

/// Largest weight whose characters and hook dimensions fit in 64 bits.
pub const CHARACTER_WEIGHT_MAX: usize = 20;

/// `γ_λ = (m² − m) χ_λ(transposition) / (2 dim M_λ)`, checked against the content sum
/// up to weight [`CHARACTER_WEIGHT_MAX`]; beyond it the content sum alone is returned.
pub fn gamma(lambda: &Partition) -> Result<Ratio<i64>, SchurError> {
    let m = lambda.weight();
    let contents = lambda.content_sum();
    if m < 2 {
        return Ok(Ratio::from_integer(0));
    }
    if m > CHARACTER_WEIGHT_MAX {
        return Ok(Ratio::from_integer(contents));
    }
    let mut cls = vec![2];
    cls.extend(std::iter::repeat_n(1, m - 2));
    let chi = character(lambda, &Partition::new(cls)?)?;
    let m = m as i64;
    let formula = Ratio::new((m * m - m) * chi, 2 * hook_dim(lambda) as i64);
    if formula != Ratio::from_integer(contents) {
        return Err(SchurError::GammaDisagreement { partition: lambda.clone(), formula: formula.to_string(), contents });
    }
    Ok(formula)
}
