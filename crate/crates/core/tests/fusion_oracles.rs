use std::collections::BTreeMap;

use num_complex::Complex64;
use swlab::exactnum::QuadScalar;
use swlab::fusion::*;
use swlab::poincare::poincare_series;
use swlab::schurweyl::{character, Partition};
use swlab::symmetry::glued_2_3;

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn centralizer(mu: &Partition) -> f64 {
    let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
    for &x in mu.parts() {
        *counts.entry(x).or_default() += 1;
    }
    counts.iter().map(|(&k, &c)| (k as f64).powi(c as i32) * (1..=c).product::<u32>() as f64).product()
}

fn union(a: &Partition, b: &Partition) -> Partition {
    let mut parts: Vec<usize> = a.parts().iter().chain(b.parts()).copied().collect();
    parts.sort_unstable_by(|x, y| y.cmp(x));
    Partition::new(parts).unwrap()
}

/// `⟨Res χ_ν, χ_λ × χ_μ⟩` over `S_a × S_b`.
fn induction_multiplicity(nu: &Partition, lambda: &Partition, mu: &Partition) -> u64 {
    let mut total = 0.0;
    for a in Partition::enumerate(lambda.weight()) {
        for b in Partition::enumerate(mu.weight()) {
            let chi = character(nu, &union(&a, &b)).unwrap() * character(lambda, &a).unwrap() * character(mu, &b).unwrap();
            total += chi as f64 / (centralizer(&a) * centralizer(&b));
        }
    }
    total.round() as u64
}

fn all_up_to(k: usize, rows: usize) -> Vec<Partition> {
    (0..=k).flat_map(|m| Partition::enumerate_bounded(m, rows)).collect()
}

#[test]
fn lr_matches_character_inner_products() {
    for lambda in all_up_to(3, 3) {
        for mu in all_up_to(3, 3) {
            let lr = lr_coeffs(&lambda, &mu);
            for nu in Partition::enumerate(lambda.weight() + mu.weight()) {
                let expect = induction_multiplicity(&nu, &lambda, &mu);
                assert_eq!(lr.get(&nu).copied().unwrap_or(0), expect, "{lambda} {mu} {nu}");
            }
        }
    }
}

#[test]
fn commutative_with_unit() {
    for lambda in all_up_to(4, 2) {
        assert_eq!(fuse(&lambda, &Partition::empty(), 2, true).unwrap().reduced.unwrap(), BTreeMap::from([(lambda.reduce(2).unwrap(), 1)]));
        for mu in all_up_to(4, 2) {
            let a = fuse(&lambda, &mu, 2, true).unwrap();
            let b = fuse(&mu, &lambda, 2, true).unwrap();
            assert_eq!(a.reduced, b.reduced);
        }
    }
}

fn times(terms: &BTreeMap<Partition, u64>, c: &Partition, p: usize) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    for (nu, m) in terms {
        for (k, v) in fuse(nu, c, p, true).unwrap().reduced.unwrap() {
            *out.entry(k).or_insert(0) += m * v;
        }
    }
    out
}

#[test]
fn associative_on_small_triples() {
    let small = all_up_to(3, 2);
    for a in &small {
        for b in &small {
            for c in &small {
                let left = times(&fuse(a, b, 2, true).unwrap().reduced.unwrap(), c, 2);
                let right = times(&fuse(b, c, 2, true).unwrap().reduced.unwrap(), a, 2);
                assert_eq!(left, right, "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn rank_two_dimensions_exact() {
    let e: Vec<QuadScalar> = [1, 3, 1].into_iter().map(QuadScalar::integer).collect();
    for lambda in all_up_to(4, 2) {
        for mu in all_up_to(4, 2) {
            let r = fuse(&lambda, &mu, 2, true).unwrap();
            assert!(dim_check(&r, &e).consistent, "{lambda} {mu}");
            assert!(dim_check(&fuse(&lambda, &mu, 2, false).unwrap(), &e).consistent);
        }
    }
    let d = dim_check(&fuse(&p(&[2]), &p(&[2]), 2, true).unwrap(), &e);
    assert_eq!(d.dim_sum, QuadScalar::integer(64));
}

#[test]
fn rank_four_glued_dimensions_float() {
    let data = poincare_series(&glued_2_3(), 5).unwrap();
    let alpha = data.alpha.unwrap().to_complex();
    let e: Vec<Complex64> = swlab::schurweyl::elementary(&alpha);
    for lambda in all_up_to(4, 4) {
        for mu in all_up_to(4, 4) {
            let r = fuse(&lambda, &mu, 4, true).unwrap();
            let d = dim_check(&r, &e);
            let rel = (d.dim_lhs * d.dim_rhs - d.dim_sum).norm() / (1.0 + d.dim_sum.norm());
            assert!(rel < 1e-9, "{lambda} {mu} {rel}");
        }
    }
}

#[test]
fn dropped_components_vanish() {
    let e: Vec<QuadScalar> = [1, 3, 1].into_iter().map(QuadScalar::integer).collect();
    for lambda in all_up_to(3, 2) {
        for mu in all_up_to(3, 2) {
            for (nu, _) in lr_coeffs(&lambda, &mu) {
                if nu.len() > 2 {
                    assert!(swlab::schurweyl::schur_from_elementary(&nu, &e).is_zero());
                }
            }
        }
    }
}
