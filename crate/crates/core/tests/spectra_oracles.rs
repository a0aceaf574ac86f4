use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Ratio;
use proptest::prelude::*;
use swlab::poincare::*;
use swlab::schurweyl::{schur_dim, Partition};
use swlab::spectra::*;
use swlab::symmetry::*;
use swlab::twistlie::casimir_sl_eigenvalue;
use swlab::Caps;

#[test]
fn recurrence_and_eigenvalues() {
    for n in 3..=6 {
        let t = hyperboloid_spectrum(n, 20).unwrap();
        let step = BigInt::from(n * n - 2);
        for w in t.rows.windows(3) {
            assert_eq!(w[2].multiplicity, &step * &w[1].multiplicity - &w[0].multiplicity);
        }
        for r in &t.rows {
            let l = r.l as i64;
            assert_eq!(r.eigenvalue, Ratio::from_integer(2 * l * l + 2 * l));
            assert_eq!(r.eigenvalue, casimir_sl_eigenvalue(&Partition::row(2 * r.l), 2).unwrap());
        }
    }
}

#[test]
fn brute_force_multiplicities() {
    let s = n3_fixture(Branch::Plus);
    let t = hyperboloid_spectrum(3, 2).unwrap();
    for r in &t.rows {
        let dim = schur_dim(&s, &r.lambda, &Caps::default()).unwrap();
        assert_eq!(BigInt::from(dim), r.multiplicity);
    }
}

#[test]
fn rank_two_orbit_is_the_hyperboloid() {
    let alpha: Vec<Complex64> = alpha_complex(&roots_alpha(&[1, 3, 1]));
    let orbit = orbit_spectrum_cpn(2, &alpha, 12).unwrap();
    let hyper = hyperboloid_spectrum(3, 12).unwrap();
    assert_eq!(orbit.rows, hyper.rows);
}

#[test]
fn glued_orbit() {
    let g = glued_2_3();
    let alpha = alpha_complex(&poincare_series(&g, 5).unwrap().alpha.unwrap());
    let t = orbit_spectrum_cpn(4, &alpha, 3).unwrap();
    assert_eq!(t.rows[0].eigenvalue, Ratio::from_integer(0));
    assert_eq!(t.rows[0].multiplicity, BigInt::from(1));
    assert_eq!(t.rows[1].lambda, Partition::new(vec![2, 1, 1]).unwrap());
    assert_eq!(t.rows[1].eigenvalue, Ratio::from_integer(8));
    assert!(t.rows.windows(2).all(|w| w[0].eigenvalue < w[1].eigenvalue));
}

#[test]
fn bad_roots_rejected() {
    let alpha = [Complex64::new(2.0, 0.0), Complex64::new(2.0, 0.0)];
    assert!(orbit_spectrum_cpn(2, &alpha, 2).is_err());
    let alpha = [Complex64::new(1.5, 0.0), Complex64::new(1.0 / 1.5, 0.0)];
    assert!(matches!(orbit_spectrum_cpn(2, &alpha, 2), Err(SpectraError::NonIntegral { .. })));
}

#[test]
fn weyl_asymptotics() {
    let t = hyperboloid_spectrum(3, 41).unwrap();
    let r = weyl_fit(&t, 40).unwrap();
    let a2 = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
    assert!((r.alpha2_squared - a2).abs() < 1e-12);
    assert!(r.ratio_rel_error < 0.01, "{}", r.ratio);
    assert!(r.r_at_stable && r.r_below_stable);
    assert!(r.r_at_cauchy);
    assert!(r.log_growth_rel_error < 0.01, "{}", r.log_growth);
    assert!(r.polynomial_exponent[1] > r.polynomial_exponent[0]);
    assert!(weyl_fit(&t, 9).is_err());
}

proptest! {
    #[test]
    fn counting_is_a_step_function(a in 0.0f64..220.0, b in 0.0f64..220.0) {
        let t = hyperboloid_spectrum(3, 10).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(count_n(&t, lo).unwrap() <= count_n(&t, hi).unwrap());
        let cum = t.cumulative();
        for (i, r) in t.rows.iter().enumerate() {
            let at = *r.eigenvalue.numer() as f64;
            prop_assert_eq!(&count_n(&t, at).unwrap(), &cum[i]);
            if i > 0 {
                prop_assert_eq!(&count_n(&t, at - 1e-9).unwrap(), &cum[i - 1]);
            }
        }
    }
}
