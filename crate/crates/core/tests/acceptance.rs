use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swlab::exactnum::{Matrix, QuadScalar};
use swlab::fusion::{dim_check, fuse, lr_coeffs};
use swlab::poincare::*;
use swlab::schurweyl::*;
use swlab::spectra::{hyperboloid_spectrum, weyl_fit};
use swlab::symmetry::*;
use swlab::twistlie::*;
use swlab::Caps;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);

fn q(v: i64) -> QuadScalar {
    QuadScalar::integer(v)
}

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn fail<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn branches() -> [(Branch, Symmetry); 2] {
    [(Branch::Plus, n3_fixture(Branch::Plus)), (Branch::Minus, n3_fixture(Branch::Minus))]
}

fn elementary_of(s: &Symmetry) -> Result<Vec<QuadScalar>, String> {
    let d = poincare_series(s, s.dim() + 1).map_err(fail)?;
    Ok(d.elementary().ok_or("not even")?.into_iter().map(QuadScalar::integer).collect())
}

fn axioms() -> Outcome {
    for (branch, s) in branches() {
        let r = s.verify();
        ensure(r.involutive && r.qybe && r.flip_conjugation, || format!("{branch:?}: {r:?}"))?;
        ensure(s.field() == 5, || format!("{branch:?}: field {}", s.field()))?;
    }
    Ok("involutive, QYBE and flip conjugation hold exactly on both branches over Q(√5)".into())
}

fn poincare() -> Outcome {
    for (branch, s) in branches() {
        let d = poincare_series(&s, 5).map_err(fail)?;
        ensure(d.minus == [1, 3, 1, 0, 0, 0], || format!("{branch:?}: minus {:?}", d.minus))?;
        ensure(d.plus == [1, 3, 8, 21, 55, 144], || format!("{branch:?}: plus {:?}", d.plus))?;
        ensure(series_identity_failure(&d.minus, &d.plus).is_none(), || format!("{branch:?}: P₊(t)P₋(−t) ≠ 1"))?;
    }
    let g = poincare_series(&glued_2_3(), 5).map_err(fail)?;
    ensure(g.minus == [1, 5, 8, 5, 1, 0], || format!("glued minus {:?}", g.minus))?;
    ensure(series_identity_failure(&g.minus, &g.plus).is_none(), || "glued P₊(t)P₋(−t) ≠ 1".into())?;
    Ok("P₋ = 1+3t+t², P₊ = 1,3,8,21,55,144, identity through degree 5; glued P₋ = 1+5t+8t²+5t³+t⁴".into())
}

fn determinants() -> Outcome {
    for (branch, s) in branches() {
        let dp = determinant_pair(&s, 2).map_err(fail)?;
        ensure(dp.pairing == q(1) && dp.invariant, || format!("{branch:?}: u·v = {}", dp.pairing))?;
        let mn = mn_matrices(&s, &dp);
        let product = mn.m.mul(&mn.n).map_err(fail)?;
        ensure(product == Matrix::identity(3).scale(&QuadScalar::ratio(1, 4).unwrap()), || format!("{branch:?}: MN = {product:?}"))?;
        let c = centrality(&dp, &mn);
        ensure(c.central && c.scaled_m == Matrix::identity(3), || format!("{branch:?}: (−1)^(p−1) p M = {:?}", c.scaled_m))?;
        let dt = dual_tensors(&s, &dp).map_err(fail)?;
        ensure(dt.trace == q(2), || format!("{branch:?}: Σ T = {}", dt.trace))?;
        ensure(dt.bc_is_identity && dt.b.mul(&dt.c).map_err(fail)? == Matrix::identity(3), || format!("{branch:?}: BC ≠ Id"))?;
    }
    Ok("u·v = 1, MN = Id/4, −2M = Id, Σ T = 2, BC = Id on both branches".into())
}

fn schur_dimensions() -> Outcome {
    let caps = Caps::default();
    let mut count = 0;
    for (branch, s) in branches() {
        let e = elementary_of(&s)?;
        for m in 0..=5 {
            for lambda in Partition::enumerate(m) {
                let dim = schur_dim(&s, &lambda, &caps).map_err(fail)?;
                let poly = schur_from_elementary(&lambda, &e);
                ensure(q(dim as i64) == poly, || format!("{branch:?} {lambda}: rank {dim}, s_λ(α) = {poly}"))?;
                count += 1;
            }
        }
    }
    let s = n3_fixture(Branch::Plus);
    for (l, d) in [(&[2][..], 8), (&[1, 1], 1), (&[1, 1, 1], 0), (&[4], 55), (&[2, 1], 3)] {
        let got = schur_dim(&s, &part(l), &caps).map_err(fail)?;
        ensure(got == d, || format!("{:?}: {got} ≠ {d}", l))?;
    }
    Ok(format!("rank ρ(p_λ) = s_λ(α) for {count} (branch, λ) pairs with |λ| ≤ 5"))
}

fn isotypic() -> Outcome {
    let caps = Caps::default();
    let s = n3_fixture(Branch::Plus);
    for m in 1..=4 {
        let mut total = 0;
        for lambda in Partition::enumerate(m) {
            let iso = isotypic_dim(&s, &lambda, &caps).map_err(fail)?;
            let expect = schur_dim(&s, &lambda, &caps).map_err(fail)? * hook_dim(&lambda) as usize;
            ensure(iso == expect, || format!("{lambda}: isotypic {iso} ≠ {expect}"))?;
            total += iso;
        }
        ensure(total == 3usize.pow(m as u32), || format!("m = {m}: Σ = {total}"))?;
    }
    Ok("isotypic = schur_dim × dim M_λ and Σ = 3^m for m ≤ 4".into())
}

fn gamma_two_ways() -> Outcome {
    let mut count = 0;
    for m in 2..=8usize {
        let transposition = {
            let mut c = vec![2];
            c.extend(std::iter::repeat_n(1, m - 2));
            Partition::new(c).unwrap()
        };
        for lambda in Partition::enumerate(m) {
            let chi = character(&lambda, &transposition).map_err(fail)?;
            let mn = Ratio::new((m * (m - 1) / 2) as i64 * chi, hook_dim(&lambda) as i64);
            let contents = Ratio::from_integer(lambda.content_sum());
            ensure(mn == contents, || format!("{lambda}: {mn} ≠ {contents}"))?;
            ensure(gamma(&lambda).map_err(fail)? == contents, || format!("{lambda}: gamma"))?;
            count += 1;
        }
    }
    Ok(format!("Murnaghan–Nakayama γ equals the content sum for {count} partitions with 2 ≤ |λ| ≤ 8"))
}

fn fusion() -> Outcome {
    let e: Vec<QuadScalar> = [1, 3, 1].into_iter().map(q).collect();
    let r = fuse(&part(&[2]), &part(&[2]), 2, true).map_err(fail)?;
    let raw: Vec<String> = r.raw.keys().map(|k| k.to_string()).collect();
    ensure(r.raw.keys().cloned().collect::<Vec<_>>() == [part(&[2, 2]), part(&[3, 1]), part(&[4])], || format!("raw {raw:?}"))?;
    ensure(r.raw.values().all(|c| *c == 1), || format!("raw {raw:?}"))?;
    let reduced = r.reduced.clone().ok_or("no reduction")?;
    ensure(
        reduced.keys().cloned().collect::<Vec<_>>() == [Partition::empty(), part(&[2]), part(&[4])] && reduced.values().all(|c| *c == 1),
        || format!("reduced {reduced:?}"),
    )?;
    let d = dim_check(&r, &e);
    ensure(d.consistent && d.dim_sum == q(64), || format!("{d:?}"))?;
    let parts: Vec<Partition> = (0..=4).flat_map(Partition::enumerate).collect();
    let mut pairs = 0;
    for lambda in &parts {
        for mu in &parts {
            if lambda.len() <= 2 && mu.len() <= 2 {
                for central in [true, false] {
                    let d = dim_check(&fuse(lambda, mu, 2, central).map_err(fail)?, &e);
                    ensure(d.consistent, || format!("{lambda} × {mu}: {d:?}"))?;
                }
            } else {
                ensure(fuse(lambda, mu, 2, true).is_err(), || format!("{lambda} × {mu} accepted"))?;
                let sum = lr_coeffs(lambda, mu).iter().fold(q(0), |acc, (nu, c)| &acc + &(&schur_from_elementary(nu, &e) * &q(*c as i64)));
                let product = &schur_from_elementary(lambda, &e) * &schur_from_elementary(mu, &e);
                ensure(sum == product, || format!("{lambda} × {mu}: {sum} ≠ {product}"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("(2)×(2): raw {{(4),(3,1),(2,2)}}, reduced {{(4),(2),(0)}}, 64 = 55+8+1; {pairs} pairs with |λ|,|μ| ≤ 4 consistent"))
}

fn casimir() -> Outcome {
    let caps = Caps::default();
    let s = n3_fixture(Branch::Plus);
    let p = 2;
    ensure(casimir_matrix(&s, p, 1, &caps).map_err(fail)? == Matrix::identity(3).scale(&q(2)), || "m = 1".into())?;
    let two = Matrix::identity(9).scale(&q(4)).add(&s.matrix().scale(&q(2))).map_err(fail)?;
    ensure(casimir_matrix(&s, p, 2, &caps).map_err(fail)? == two, || "m = 2".into())?;
    let mut components = 0;
    for m in 1..=4 {
        for lambda in Partition::enumerate(m) {
            ensure(casimir_on_isotypic(&s, p, &lambda, &caps).map_err(fail)?, || format!("{lambda}: isotypic block not scalar"))?;
            if lambda.len() > p {
                continue;
            }
            let c = casimir_on_component(&s, p, &lambda, &caps).map_err(fail)?;
            let expect = q((m * p) as i64 + 2 * lambda.content_sum());
            ensure(c.scalar == expect && c.scalar_check, || format!("{lambda}: {} ≠ {expect}", c.scalar))?;
            let mi = m as i64;
            let pi = p as i64;
            if lambda.len() == 1 {
                ensure(c.scalar == q(mi * mi + mi * (pi - 1)), || format!("{lambda}: row formula"))?;
            }
            if lambda.parts().iter().all(|x| *x == 1) {
                ensure(c.scalar == q(mi * pi - mi * mi + mi), || format!("{lambda}: column formula"))?;
            }
            components += 1;
        }
    }
    for m in 0..=6 {
        for lambda in Partition::enumerate_bounded(m, p) {
            let shifted = lambda.add_columns(1, p);
            let (a, b) = (casimir_sl_eigenvalue(&lambda, p).map_err(fail)?, casimir_sl_eigenvalue(&shifted, p).map_err(fail)?);
            ensure(a == b, || format!("{lambda}: {a} ≠ {b} after shift"))?;
        }
    }
    Ok(format!("scalar mp + 2γ on {components} components, every isotypic block scalar; m=1,2 forms; row/column forms; sl shift invariance to |λ| ≤ 6"))
}

fn det_action() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (branch, s) in branches() {
        let dp = determinant_pair(&s, 2).map_err(fail)?;
        let duals = dual_tensors(&s, &dp).map_err(fail)?;
        let lie = lie_data(&crossings(&s, DualSide::Left).map_err(fail)?, &duals, &dp).map_err(fail)?;
        for f in &lie.sl_basis {
            let r = act_on_det(&s, &dp, &action_matrix(3, f)).map_err(fail)?;
            ensure(r.scalar.is_zero(), || format!("{branch:?}: f acts by {}", r.scalar))?;
        }
        for _ in 0..20 {
            let x = Matrix::from_fn(3, 3, |_, _| q(rng.random_range(-9..=9)));
            let r = act_on_det(&s, &dp, &x).map_err(fail)?;
            let mut trace = q(0);
            for i in 0..3 {
                for j in 0..3 {
                    trace = &trace + &(duals.c_det.get(i, j) * x.get(i, j));
                }
            }
            let expect = &q(2) * &trace;
            ensure(r.scalar == expect && r.agree, || format!("{branch:?}: {} ≠ {expect}", r.scalar))?;
        }
    }
    Ok("every f_i^j kills det; 20 seeded random X act by p·tr_det(X) on both branches".into())
}

fn spectrum() -> Outcome {
    let t = hyperboloid_spectrum(3, 20).map_err(fail)?;
    let head: Vec<(Ratio<i64>, BigInt)> = t.rows.iter().take(4).map(|r| (r.eigenvalue, r.multiplicity.clone())).collect();
    let expect: Vec<(Ratio<i64>, BigInt)> =
        [(0, 1), (4, 8), (12, 55), (24, 377)].iter().map(|(a, b)| (Ratio::from_integer(*a), BigInt::from(*b))).collect();
    ensure(head == expect, || format!("{head:?}"))?;
    let n = t.cumulative();
    ensure(n[..4] == [1, 9, 64, 441].map(BigInt::from), || format!("N = {:?}", &n[..4]))?;
    for w in t.rows.windows(3) {
        ensure(w[2].multiplicity == BigInt::from(7) * &w[1].multiplicity - &w[0].multiplicity, || format!("recurrence at l = {}", w[2].l))?;
    }
    let caps = Caps::default();
    let s = n3_fixture(Branch::Plus);
    for l in 0..=2 {
        let dim = schur_dim(&s, &Partition::row(2 * l), &caps).map_err(fail)?;
        ensure(BigInt::from(dim) == t.rows[l].multiplicity, || format!("l = {l}: schur_dim {dim}"))?;
    }
    Ok("(0,1),(4,8),(12,55),(24,377), N = 1,9,64,441, m_{l+1} = 7m_l − m_{l−1} to l = 20, brute force to l = 2".into())
}

fn weyl() -> Outcome {
    let t = hyperboloid_spectrum(3, 41).map_err(fail)?;
    let r = weyl_fit(&t, 40).map_err(fail)?;
    ensure(r.r_at_stable && r.r_at_drift < 1e-3, || format!("r_at drift {}", r.r_at_drift))?;
    ensure(r.r_below_stable && r.r_below_drift < 1e-3, || format!("r_below drift {}", r.r_below_drift))?;
    let a2 = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
    ensure((r.ratio / a2 - 1.0).abs() < 0.01, || format!("ratio {} vs {a2}", r.ratio))?;
    ensure(r.log_growth_rel_error < 0.01, || format!("log growth {} vs {}", r.log_growth, r.log_alpha2))?;
    Ok(format!(
        "drifts {:.1e}, {:.1e}; ratio {:.5} vs α₂² {:.5}; log N/√(2λ) {:.4} vs log α₂ {:.4}",
        r.r_at_drift, r.r_below_drift, r.ratio, a2, r.log_growth, r.log_alpha2
    ))
}

fn lie_axioms() -> Outcome {
    for (branch, s) in branches() {
        for side in [DualSide::Left, DualSide::Right] {
            let ext = crossings(&s, side).map_err(fail)?;
            ensure(ext.pairing_invariant && ext.copairing_invariant, || format!("{branch:?} {side:?}: pairing"))?;
            ensure(ext.block.verify().all_hold(), || format!("{branch:?} {side:?}: block QYBE"))?;
        }
        let dp = determinant_pair(&s, 2).map_err(fail)?;
        let duals = dual_tensors(&s, &dp).map_err(fail)?;
        let lie = lie_data(&crossings(&s, DualSide::Left).map_err(fail)?, &duals, &dp).map_err(fail)?;
        let c = &lie.checks;
        ensure(c.skew_symmetric && c.invariant && c.jacobi, || format!("{branch:?}: {c:?}"))?;
        ensure(c.trace_kills_bracket && c.trace_of_identity && c.sl_relation, || format!("{branch:?}: {c:?}"))?;
        ensure(c.trace_is_b_transposed, || format!("{branch:?}: trace is not p·C_det"))?;
    }
    Ok("skew-symmetry, invariance, twisted Jacobi, tr∘[ , ] = 0, tr Id = p on gl and sl; crossings invariant with block QYBE".into())
}

fn conjecture() -> Outcome {
    let s = n3_fixture(Branch::Plus);
    let r = conjecture_probe(&s, &part(&[2]), &Caps::default()).map_err(fail)?;
    let show = |v: &[[f64; 2]]| v.iter().map(|[re, im]| format!("{re:.6}{im:+.6}i")).collect::<Vec<_>>().join(", ");
    Ok(format!(
        "λ = (2): induced [{}], predicted [{}], verdict {} (reported, not asserted)",
        show(&r.induced_alpha),
        show(&r.predicted_alpha),
        if r.agree { "agree" } else { "disagree" }
    ))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 13] = [
        (1, "axioms", axioms, Some(secs(1))),
        (2, "poincare series", poincare, None),
        (3, "determinant machinery", determinants, None),
        (4, "schur dimensions", schur_dimensions, Some(secs(120))),
        (5, "isotypic components", isotypic, None),
        (6, "gamma two ways", gamma_two_ways, None),
        (7, "fusion consistency", fusion, None),
        (8, "casimir", casimir, None),
        (9, "action on det", det_action, None),
        (10, "hyperboloid spectrum", spectrum, None),
        (11, "weyl asymptotics", weyl, Some(secs(1))),
        (12, "lie axioms", lie_axioms, Some(secs(30))),
        (13, "conjecture probe", conjecture, None),
    ];
    let mut failed = 0;
    for (k, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {k:>2} {name} [{elapsed:.2?}]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {k:>2} {name} [{elapsed:.2?}]: {detail}");
            }
        }
    }
    println!("{} of 13 criteria pass", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
