use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exactnum::QuadScalar;

/// The multiset `{α_i}` with `P₋(t) = ∏(1 + α_i t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "values", rename_all = "snake_case")]
pub enum Alpha {
    Exact(Vec<QuadScalar>),
    Numeric(Vec<[f64; 2]>),
}

impl Alpha {
    pub fn len(&self) -> usize {
        match self {
            Alpha::Exact(v) => v.len(),
            Alpha::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            Alpha::Exact(v) => v.iter().map(|x| Complex64::new(x.to_f64(), 0.0)).collect(),
            Alpha::Numeric(v) => v.iter().map(|z| Complex64::new(z[0], z[1])).collect(),
        }
    }

    pub fn exact(&self) -> Option<&[QuadScalar]> {
        match self {
            Alpha::Exact(v) => Some(v),
            Alpha::Numeric(_) => None,
        }
    }

    /// Real parts sorted ascending (all roots are real for the shipped fixtures).
    pub fn real_sorted(&self) -> Vec<f64> {
        let mut r: Vec<f64> = self.to_complex().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        r
    }
}

fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Roots of the polynomial with ascending coefficients (leading one nonzero)
/// by Durand–Kerner iteration followed by Newton polishing.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * (radius / 2.0).max(0.5)).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = eval(&monic, z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let d1 = derivative(&monic);
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let dp = eval(&d1, *zi);
            if dp.norm() < 1e-12 {
                break;
            }
            let step = eval(&monic, *zi) / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    z
}

/// Roots of `z^p - e_1 z^{p-1} + e_2 z^{p-2} - …` for a palindromic `e`,
/// found through `w = z + 1/z` so reciprocal roots stay exactly paired.
pub fn reciprocal_roots(e: &[i64]) -> Vec<Complex64> {
    let p = e.len() - 1;
    // ascending coefficients of the monic polynomial in z
    let mut c: Vec<f64> = (0..=p).map(|k| if k % 2 == 0 { e[k] as f64 } else { -(e[k] as f64) }).collect();
    c.reverse();
    let mut roots = Vec::new();
    // peel off ±1 factors until the remaining polynomial is palindromic of even degree
    loop {
        let deg = c.len() - 1;
        let palin = (0..=deg).all(|k| (c[k] - c[deg - k]).abs() < 1e-9);
        if deg.is_multiple_of(2) && palin {
            break;
        }
        let at = |x: f64| c.iter().rev().fold(0.0, |acc, v| acc * x + v);
        let r = if at(1.0).abs() < 1e-9 { 1.0 } else { -1.0 };
        // synthetic division by (z - r), descending order
        let desc: Vec<f64> = c.iter().rev().copied().collect();
        let mut q = Vec::with_capacity(deg);
        let mut acc = 0.0;
        for &a in &desc[..deg] {
            acc = acc * r + a;
            q.push(acc);
        }
        q.reverse();
        c = q;
        roots.push(Complex64::new(r, 0.0));
    }
    let deg = c.len() - 1;
    let half = deg / 2;
    if half == 0 {
        return roots;
    }
    // z^{-half} f(z) = c_half + Σ_k c_{half+k} (z^k + z^{-k}); z^k + z^{-k} = T_k(w)
    let mut t_prev = vec![2.0];
    let mut t_cur = vec![0.0, 1.0];
    let mut q = vec![0.0; half + 1];
    q[0] += c[half];
    for k in 1..=half {
        for (i, v) in t_cur.iter().enumerate() {
            q[i] += c[half + k] * v;
        }
        let mut next = vec![0.0; t_cur.len() + 1];
        for (i, v) in t_cur.iter().enumerate() {
            next[i + 1] += v;
        }
        for (i, v) in t_prev.iter().enumerate() {
            next[i] -= v;
        }
        t_prev = t_cur;
        t_cur = next;
    }
    let qc: Vec<Complex64> = q.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    for w in polynomial_roots(&qc) {
        let disc = (w * w - 4.0).sqrt();
        let z1 = (w + disc) / 2.0;
        roots.push(z1);
        roots.push(1.0 / z1);
    }
    roots
}

/// Exact roots of `z² - n z + 1`.
pub fn quadratic_alpha(n: i64) -> Vec<QuadScalar> {
    let disc = n * n - 4;
    let root = if disc >= 0 { QuadScalar::sqrt_of(disc as u64) } else { QuadScalar::zero() };
    let half = QuadScalar::ratio(1, 2).expect("valid");
    let base = QuadScalar::integer(n);
    vec![&(&base + &root) * &half, &(&base - &root) * &half]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots_golden() {
        let a = quadratic_alpha(3);
        assert_eq!(a[0], QuadScalar::from_parts(3, 1, 2, 5).unwrap());
        assert_eq!(&a[0] * &a[1], QuadScalar::one());
        assert_eq!(quadratic_alpha(2), vec![QuadScalar::one(), QuadScalar::one()]);
    }

    #[test]
    fn quartic_roots_union() {
        let r = reciprocal_roots(&[1, 5, 8, 5, 1]);
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        let expect = [1.0 / phi2, 1.0, 1.0, phi2];
        for (a, b) in re.iter().zip(expect) {
            assert!((a - b).abs() < 1e-7, "{re:?}");
        }
        let prod = r.iter().fold(Complex64::new(1.0, 0.0), |acc, z| acc * z);
        assert!((prod - 1.0).norm() < 1e-12);
    }

    #[test]
    fn odd_degree_classical() {
        let r = reciprocal_roots(&[1, 3, 3, 1]);
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|z| (z - 1.0).norm() < 1e-6));
    }

    #[test]
    fn durand_kerner_cubic() {
        // (z-1)(z-2)(z+3) = z^3 - 7z + 6
        let c: Vec<Complex64> = [6.0, -7.0, 0.0, 1.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let mut r: Vec<f64> = polynomial_roots(&c).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (a, b) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
