//! Spectra of the twisted Casimir on the hyperboloid and on `CPⁿ`-type orbits,
//! the counting function and the exponential Weyl-type asymptotics.

use std::io::Write;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::QuadScalar;
use crate::poincare::roots_alpha;
use crate::schurweyl::{elementary, schur_from_elementary, Partition, SchurError};
use crate::twistlie::casimir_sl_eigenvalue;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SpectraError {
    #[error("n = {0} is outside the model (n ≥ 3 required)")]
    ClassicalHyperboloid(i64),
    #[error("rank p = {0} is outside the model (p ≥ 2 required)")]
    RankTooSmall(usize),
    #[error("{got} roots given for rank {p}")]
    RootCount { p: usize, got: usize },
    #[error("the roots multiply to {0}, not 1")]
    RootProduct(String),
    #[error("multiplicity {value} of {lambda} is not an integer")]
    NonIntegral { lambda: Partition, value: String },
    #[error("{0} lies beyond the last tabulated eigenvalue {1}")]
    OutOfRange(f64, String),
    #[error("the asymptotics probe needs the hyperboloid model")]
    NotHyperboloid,
    #[error("the asymptotics probe needs L ≥ 10, got {0}")]
    TooShort(usize),
    #[error("multiplicity formulas disagree at l = {0}")]
    FormulaMismatch(usize),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error("csv output: {0}")]
    Csv(String),
}

/// Integers too large for `u64` travel through JSON as decimal strings.
mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumModel {
    Hyperboloid { n: i64 },
    Cpn { p: usize, alpha: Vec<[f64; 2]> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub l: usize,
    pub lambda: Partition,
    pub eigenvalue: Ratio<i64>,
    #[serde(with = "decimal")]
    pub multiplicity: BigInt,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub model: SpectrumModel,
    pub rows: Vec<SpectrumRow>,
}

fn ratio_f64(r: &Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `(α₂^{2l+1} − α₁^{2l+1}) / (α₂ − α₁)` in `Q(√(n²−4))`.
fn alpha_formula(alpha: &[QuadScalar], l: usize) -> QuadScalar {
    let k = 2 * l + 1;
    let pow = |x: &QuadScalar| (0..k).fold(QuadScalar::one(), |acc, _| &acc * x);
    let num = &pow(&alpha[0]) - &pow(&alpha[1]);
    num.try_div(&(&alpha[0] - &alpha[1])).expect("distinct roots")
}

fn rational_integer(q: &QuadScalar) -> Option<BigInt> {
    let r = q.rational_part();
    (q.is_rational() && r.is_integer()).then(|| r.to_integer())
}

/// Rows `l = 0..=L` with `λ_l = 2l² + 2l` and `m_l = h_{2l}(α)` by the three-term recurrence,
/// cross-checked against the closed `α`-formula and, for `l ≤ 4`, against `s_{(2l)}(α)`.
pub fn hyperboloid_spectrum(n: i64, l_max: usize) -> Result<SpectrumTable, SpectraError> {
    if n < 3 {
        return Err(SpectraError::ClassicalHyperboloid(n));
    }
    let alpha = roots_alpha(&[1, n, 1]).exact().expect("quadratic roots").to_vec();
    let e = [1, n, 1].map(QuadScalar::integer);
    let step = BigInt::from(n * n - 2);
    let mut mults: Vec<BigInt> = vec![BigInt::one(), BigInt::from(n * n - 1)];
    while mults.len() <= l_max {
        let k = mults.len();
        mults.push(&step * &mults[k - 1] - &mults[k - 2]);
    }
    let mut rows = Vec::with_capacity(l_max + 1);
    for (l, m) in mults.into_iter().take(l_max + 1).enumerate() {
        if rational_integer(&alpha_formula(&alpha, l)).as_ref() != Some(&m) {
            return Err(SpectraError::FormulaMismatch(l));
        }
        let lambda = Partition::row(2 * l);
        if l <= 4 && rational_integer(&schur_from_elementary(&lambda, &e)).as_ref() != Some(&m) {
            return Err(SpectraError::FormulaMismatch(l));
        }
        let eigenvalue = casimir_sl_eigenvalue(&lambda, 2)?;
        rows.push(SpectrumRow { l, lambda, eigenvalue, multiplicity: m });
    }
    Ok(SpectrumTable { model: SpectrumModel::Hyperboloid { n }, rows })
}

/// `(2k, k^{p−2})`.
pub fn orbit_diagram(k: usize, p: usize) -> Partition {
    let mut parts = vec![2 * k];
    parts.extend(std::iter::repeat_n(k, p - 2));
    Partition::new(parts).expect("weakly decreasing")
}

/// Rows `k = 0..=L` on the diagrams `(2k, k^{p−2})` with multiplicity `s_λ(α)`.
pub fn orbit_spectrum_cpn(p: usize, alpha: &[Complex64], l_max: usize) -> Result<SpectrumTable, SpectraError> {
    if p < 2 {
        return Err(SpectraError::RankTooSmall(p));
    }
    if alpha.len() != p {
        return Err(SpectraError::RootCount { p, got: alpha.len() });
    }
    let prod = alpha.iter().fold(Complex64::new(1.0, 0.0), |acc, a| acc * a);
    if (prod - Complex64::new(1.0, 0.0)).norm() > crate::exactnum::check_tol() {
        return Err(SpectraError::RootProduct(format!("{prod}")));
    }
    let e = elementary(alpha);
    let mut rows = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        let lambda = orbit_diagram(l, p);
        let value = schur_from_elementary(&lambda, &e);
        let rounded = value.re.round();
        let tol = 1e-6 * value.norm().max(1.0);
        if (value - Complex64::new(rounded, 0.0)).norm() > tol || rounded < 1.0 || rounded >= 2f64.powi(53) {
            return Err(SpectraError::NonIntegral { lambda, value: format!("{value}") });
        }
        let eigenvalue = casimir_sl_eigenvalue(&lambda, p)?;
        rows.push(SpectrumRow { l, lambda, eigenvalue, multiplicity: BigInt::from(rounded as u64) });
    }
    let alpha = alpha.iter().map(|z| [z.re, z.im]).collect();
    Ok(SpectrumTable { model: SpectrumModel::Cpn { p, alpha }, rows })
}

impl SpectrumTable {
    /// Running sums `N(λ_l)`.
    pub fn cumulative(&self) -> Vec<BigInt> {
        self.rows
            .iter()
            .scan(BigInt::zero(), |acc, r| {
                *acc += &r.multiplicity;
                Some(acc.clone())
            })
            .collect()
    }

    /// CSV with columns `l, eigenvalue, multiplicity, N, r_at, r_below`; the ratio columns
    /// are filled for the hyperboloid model only.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), SpectraError> {
        self.write_csv_through(out, self.rows.len().saturating_sub(1))
    }

    /// The CSV restricted to rows `0..=last`, with ratios taken from the whole table.
    pub fn write_csv_through<W: Write>(&self, out: W, last: usize) -> Result<(), SpectraError> {
        let ratios = match self.model {
            SpectrumModel::Hyperboloid { n } => Some(ratios(n, self)),
            SpectrumModel::Cpn { .. } => None,
        };
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        let err = |e: csv::Error| SpectraError::Csv(e.to_string());
        w.write_record(["l", "eigenvalue", "multiplicity", "N", "r_at", "r_below"]).map_err(err)?;
        for (i, (row, n)) in self.rows.iter().zip(self.cumulative()).enumerate().take(last + 1) {
            let (at, below) = match &ratios {
                Some((at, below)) => (format!("{:.12e}", at[i]), below.get(i).map(|b| format!("{b:.12e}")).unwrap_or_default()),
                None => (String::new(), String::new()),
            };
            w.write_record([row.l.to_string(), row.eigenvalue.to_string(), row.multiplicity.to_string(), n.to_string(), at, below])
                .map_err(err)?;
        }
        w.flush().map_err(|e| SpectraError::Csv(e.to_string()))
    }
}

/// `N(λ)`: multiplicities of the rows with eigenvalue `≤ λ`.
pub fn count_n(table: &SpectrumTable, lam: f64) -> Result<BigInt, SpectraError> {
    let last = table.rows.last().map(|r| r.eigenvalue).unwrap_or_else(Ratio::zero);
    if lam > ratio_f64(&last) {
        return Err(SpectraError::OutOfRange(lam, last.to_string()));
    }
    Ok(table.rows.iter().filter(|r| ratio_f64(&r.eigenvalue) <= lam).map(|r| &r.multiplicity).sum())
}

/// `ln x` for integers beyond the `f64` range.
fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x >> shift).to_f64().expect("60-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn log_alpha2(n: i64) -> f64 {
    let nf = n as f64;
    ((nf + (nf * nf - 4.0).sqrt()) / 2.0).ln()
}

/// `r_at(l) = N(λ_l)/α₂^{√(2λ_l)}` for every row and `r_below(l) = N(λ_l)/α₂^{√(2λ_{l+1})}`
/// for every row with a successor.
fn ratios(n: i64, table: &SpectrumTable) -> (Vec<f64>, Vec<f64>) {
    let la = log_alpha2(n);
    let logs: Vec<f64> = table.cumulative().iter().map(big_ln).collect();
    let root = |r: &SpectrumRow| (2.0 * ratio_f64(&r.eigenvalue)).sqrt();
    let at = table.rows.iter().zip(&logs).map(|(r, ln)| (ln - root(r) * la).exp()).collect();
    let below = table.rows.windows(2).zip(&logs).map(|(w, ln)| (ln - root(&w[1]) * la).exp()).collect();
    (at, below)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylRow {
    pub l: usize,
    pub eigenvalue: f64,
    pub log_n: f64,
    pub r_at: f64,
    pub r_below: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylReport {
    pub n: i64,
    pub l_max: usize,
    pub log_alpha2: f64,
    pub alpha2_squared: f64,
    pub rows: Vec<WeylRow>,
    pub beta_sup: f64,
    pub beta_inf: f64,
    pub ratio: f64,
    pub ratio_rel_error: f64,
    /// Largest relative change of `r_at` over the last five terms.
    pub r_at_drift: f64,
    pub r_below_drift: f64,
    pub r_at_stable: bool,
    pub r_below_stable: bool,
    /// Successive differences of `r_at` shrink monotonically from `l = 10` on.
    pub r_at_cauchy: bool,
    /// `ln N(λ_L) / √(2λ_L)`.
    pub log_growth: f64,
    pub log_growth_rel_error: f64,
    /// `ln N(λ_l) / ln λ_l` at `l = L/2` and `l = L`; growth means no polynomial law.
    pub polynomial_exponent: [f64; 2],
}

const STABLE_TOL: f64 = 1e-3;

fn drift(seq: &[f64]) -> f64 {
    let tail = &seq[seq.len() - 6..];
    tail.windows(2).map(|w| ((w[1] - w[0]) / w[0]).abs()).fold(0.0, f64::max)
}

/// Both subsequential limits of `N(λ)/α₂^{√(2λ)}` on the hyperboloid, their ratio and
/// the growth rate of `ln N`, all in logarithmic arithmetic.
pub fn weyl_fit(table: &SpectrumTable, l_max: usize) -> Result<WeylReport, SpectraError> {
    let SpectrumModel::Hyperboloid { n } = table.model else {
        return Err(SpectraError::NotHyperboloid);
    };
    if l_max < 10 {
        return Err(SpectraError::TooShort(l_max));
    }
    let table = if table.rows.len() > l_max + 1 { table.clone() } else { hyperboloid_spectrum(n, l_max + 1)? };
    let (at, below) = ratios(n, &table);
    let logs: Vec<f64> = table.cumulative().iter().map(big_ln).collect();
    let rows: Vec<WeylRow> = (0..=l_max)
        .map(|l| WeylRow { l, eigenvalue: ratio_f64(&table.rows[l].eigenvalue), log_n: logs[l], r_at: at[l], r_below: below[l] })
        .collect();
    let la = log_alpha2(n);
    let alpha2_squared = (2.0 * la).exp();
    let (beta_sup, beta_inf) = (at[l_max], below[l_max]);
    let ratio = beta_sup / beta_inf;
    let r_at_drift = drift(&at[..=l_max]);
    let r_below_drift = drift(&below[..=l_max]);
    let diffs: Vec<f64> = at[10..=l_max].windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let r_at_cauchy = diffs.windows(2).all(|w| w[1] <= w[0]);
    let lam = |l: usize| rows[l].eigenvalue;
    let log_growth = logs[l_max] / (2.0 * lam(l_max)).sqrt();
    let exponent = |l: usize| logs[l] / lam(l).ln();
    Ok(WeylReport {
        n,
        l_max,
        log_alpha2: la,
        alpha2_squared,
        beta_sup,
        beta_inf,
        ratio,
        ratio_rel_error: (ratio - alpha2_squared).abs() / alpha2_squared,
        r_at_drift,
        r_below_drift,
        r_at_stable: r_at_drift < STABLE_TOL,
        r_below_stable: r_below_drift < STABLE_TOL,
        r_at_cauchy,
        log_growth,
        log_growth_rel_error: (log_growth - la).abs() / la,
        polynomial_exponent: [exponent(l_max / 2), exponent(l_max)],
        rows,
    })
}
