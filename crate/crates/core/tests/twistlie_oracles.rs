use num_rational::Ratio;
use proptest::prelude::*;
use swlab::exactnum::{Matrix, QuadScalar};
use swlab::poincare::*;
use swlab::schurweyl::Partition;
use swlab::symmetry::*;
use swlab::twistlie::*;
use swlab::Caps;

fn q(v: i64) -> QuadScalar {
    QuadScalar::integer(v)
}

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn family() -> Symmetry {
    n3_fixture(Branch::Plus)
}

fn lie_for(s: &Symmetry, p: usize) -> LieData<QuadScalar> {
    let dp = determinant_pair(s, p).unwrap();
    let duals = dual_tensors(s, &dp).unwrap();
    let ext = crossings(s, DualSide::Left).unwrap();
    lie_data(&ext, &duals, &dp).unwrap()
}

#[test]
fn classical_blocks_are_flips() {
    for side in [DualSide::Left, DualSide::Right] {
        let ext = crossings(&Symmetry::<QuadScalar>::classical(2), side).unwrap();
        let flip: Matrix<QuadScalar> = flip_matrix(2);
        assert_eq!(ext.vd, flip);
        assert_eq!(ext.dv, flip);
        assert_eq!(ext.dd, flip);
        assert_eq!(*ext.block.matrix(), flip_matrix(4));
        assert!(ext.pairing_invariant && ext.copairing_invariant);
    }
}

#[test]
fn family_crossings_both_sides() {
    for branch in [Branch::Plus, Branch::Minus] {
        for side in [DualSide::Left, DualSide::Right] {
            let ext = crossings(&n3_fixture(branch), side).unwrap();
            assert!(ext.block.verify().all_hold());
            assert!(ext.pairing_invariant, "{branch:?} {side:?}");
            assert!(ext.copairing_invariant, "{branch:?} {side:?}");
        }
    }
}

#[test]
fn classical_gl2_is_the_commutator() {
    let lie = lie_for(&Symmetry::classical(2), 2);
    let n = 2;
    for a in 0..4 {
        for b in 0..4 {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            let mut expect = vec![q(0); 4];
            if j == k {
                expect[i * n + l] = &expect[i * n + l] + &q(1);
            }
            if l == i {
                expect[k * n + j] = &expect[k * n + j] - &q(1);
            }
            let mut ea = vec![q(0); 4];
            ea[a] = q(1);
            let mut eb = vec![q(0); 4];
            eb[b] = q(1);
            assert_eq!(lie.bracket_of(&ea, &eb), expect);
        }
    }
    assert!(lie.checks.trace_is_c);
    assert!(lie.checks.trace_is_b_transposed);
}

#[test]
fn family_lie_axioms_exact() {
    for branch in [Branch::Plus, Branch::Minus] {
        let lie = lie_for(&n3_fixture(branch), 2);
        let c = &lie.checks;
        assert!(c.skew_symmetric && c.invariant && c.jacobi && c.trace_kills_bracket);
        assert!(c.trace_of_identity && c.sl_relation);
        assert!(c.trace_is_b_transposed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn trace_kills_random_brackets(x in prop::collection::vec(-5i64..=5, 9), y in prop::collection::vec(-5i64..=5, 9)) {
        thread_local! {
            static LIE: LieData<QuadScalar> = lie_for(&family(), 2);
        }
        LIE.with(|lie| {
            let x: Vec<QuadScalar> = x.into_iter().map(q).collect();
            let y: Vec<QuadScalar> = y.into_iter().map(q).collect();
            assert!(lie.trace_of(&lie.bracket_of(&x, &y)).is_zero());
        });
    }

    #[test]
    fn random_action_on_det(a in prop::collection::vec(-6i64..=6, 9)) {
        let s = family();
        let dp = determinant_pair(&s, 2).unwrap();
        let x = Matrix::from_fn(3, 3, |i, j| q(a[i * 3 + j]));
        let r = act_on_det(&s, &dp, &x).unwrap();
        prop_assert!(r.agree, "{r:?}");
    }
}

#[test]
fn sl_basis_kills_det() {
    let s = family();
    let lie = lie_for(&s, 2);
    let dp = determinant_pair(&s, 2).unwrap();
    for f in &lie.sl_basis {
        let r = act_on_det(&s, &dp, &action_matrix(3, f)).unwrap();
        assert!(r.scalar.is_zero(), "{r:?}");
        assert!(r.agree);
    }
}

#[test]
fn classical_identity_on_det() {
    let s = Symmetry::<QuadScalar>::classical(2);
    let dp = determinant_pair(&s, 2).unwrap();
    let r = act_on_det(&s, &dp, &Matrix::identity(2)).unwrap();
    assert_eq!(r.scalar, q(2));
    assert!(r.agree);
}

#[test]
fn casimir_low_degrees() {
    let s = family();
    let caps = Caps::default();
    assert_eq!(casimir_matrix(&s, 2, 1, &caps).unwrap(), Matrix::identity(3).scale(&q(2)));
    let expect = Matrix::identity(9).scale(&q(4)).add(&s.matrix().scale(&q(2))).unwrap();
    assert_eq!(casimir_matrix(&s, 2, 2, &caps).unwrap(), expect);
}

#[test]
fn casimir_component_examples() {
    let s = family();
    let caps = Caps::default();
    for (lambda, value) in [(part(&[2]), 6), (part(&[1, 1]), 2), (part(&[3, 1]), 12)] {
        let c = casimir_on_component(&s, 2, &lambda, &caps).unwrap();
        assert_eq!(c.scalar, q(value), "{lambda}");
        assert!(c.scalar_check);
        let m = lambda.weight() as i64;
        if lambda.len() == 1 {
            assert_eq!(c.scalar, q(m * m + m));
        }
    }
}

#[test]
fn casimir_scalar_on_every_component() {
    let s = family();
    let caps = Caps::default();
    for m in 1..=4 {
        for lambda in Partition::enumerate_bounded(m, 2) {
            let c = casimir_on_component(&s, 2, &lambda, &caps).unwrap();
            assert!(c.scalar_check, "{lambda}");
        }
        for lambda in Partition::enumerate(m) {
            assert!(casimir_on_isotypic(&s, 2, &lambda, &caps).unwrap(), "{lambda}");
        }
    }
}

#[test]
fn casimir_commutes_with_permutations() {
    let s = family();
    let caps = Caps::default();
    for m in 2..=4 {
        let c = casimir_matrix(&s, 2, m, &caps).unwrap();
        for perm in Permutation::all(m) {
            let r = s.rho_perm(m, &perm, &caps).unwrap();
            assert_eq!(c.mul(&r).unwrap(), r.mul(&c).unwrap(), "m={m} {perm:?}");
        }
    }
}

#[test]
fn sl_eigenvalue_shift_invariance() {
    let p = 2;
    for m in 0..=6 {
        for lambda in Partition::enumerate_bounded(m, p) {
            let shifted = lambda.add_columns(1, p);
            assert_eq!(casimir_sl_eigenvalue(&lambda, p).unwrap(), casimir_sl_eigenvalue(&shifted, p).unwrap(), "{lambda}");
        }
    }
    for l in 0..=10i64 {
        assert_eq!(casimir_sl_eigenvalue(&Partition::row(2 * l as usize), 2).unwrap(), Ratio::from_integer(2 * l * l + 2 * l));
    }
    assert_eq!(casimir_sl_eigenvalue(&part(&[2, 2]), 2).unwrap(), Ratio::from_integer(0));
    assert_eq!(casimir_sl_eigenvalue(&Partition::empty(), 2).unwrap(), Ratio::from_integer(0));
}
