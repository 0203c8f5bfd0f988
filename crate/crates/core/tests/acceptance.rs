//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test -p sqfn-core --test acceptance -- --nocapture`.
//! Criterion 10 (byte-identical reports) lives in the CLI crate's
//! `acceptance_determinism` test, next to the binary it exercises.

use num_traits::Zero;
use sqfn_core::corpus::{disjoint_family, random_coeffs, random_step};
use sqfn_core::dyadic::{rat, DyadicStep, FamilyGrid};
use sqfn_core::iw::{
    denom_vanishing_probe, denom_vanishing_test, eps_threshold, factor_identity_check,
    parseval_case, split_identity_check, Fraction, ProjectionSpec,
};
use sqfn_core::norms::{
    khintchine_check, menchov_rademacher_check, nonconcentration_check, type1star_sandwich,
};
use sqfn_core::primes::primes_in;
use sqfn_core::rng::SplitMix64;
use sqfn_core::tuplecheck::{satisfies, tuples, verify_family, verify_family_labeled, OrthoClass};
use sqfn_core::vino::{count_solutions, count_solutions_naive, find_pte, DEFAULT_BUDGET};
use sqfn_core::zmodn::{quasi_super_check, DirichletChar};
use sqfn_core::Rat;

#[test]
fn criterion_01_exact_superorthogonality_rademacher() {
    let family: Vec<DyadicStep> = (0..=5).map(DyadicStep::rademacher).collect();
    for r in 1..=3usize {
        let report = verify_family(&family, r, &OrthoClass::TypeI);
        assert!(
            report.passed(),
            "r={r}: {} violations",
            report.violations.len()
        );
        // Complementary tuples (every multiplicity even) integrate to 1.
        let grid = FamilyGrid::new(&family, 2 * r);
        let mut complementary = 0u64;
        for idx in tuples(family.len(), 2 * r) {
            let labels: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
            if satisfies(&labels, &OrthoClass::TypeI) {
                continue;
            }
            complementary += 1;
            assert_eq!(grid.product_integral(&idx), rat(1), "tuple {labels:?}");
        }
        assert!(complementary > 0);
    }
    println!("criterion 1 (exact Rademacher superorthogonality): PASS");
}

#[test]
fn criterion_02_type3_for_walsh_paley_differences() {
    let mut rng = SplitMix64::new(0);
    for case in 0..20 {
        let f = random_step(8, 128, 256, &mut rng);
        let diffs: Vec<DyadicStep> = (0..=8)
            .map(|n| f.dyadic_diff(n).expect("index in range"))
            .collect();
        for r in 1..=2usize {
            let report = verify_family(&diffs, r, &OrthoClass::TypeIII);
            assert!(
                report.passed(),
                "case {case}, r={r}: {} violations",
                report.violations.len()
            );
        }
    }
    println!("criterion 2 (Type III for dyadic differences, 20 seeded functions): PASS");
}

#[test]
fn criterion_03_walsh_xor_witness() {
    let labels = [1u64, 2, 4, 7];
    let family: Vec<DyadicStep> = labels
        .iter()
        .map(|&n| DyadicStep::walsh(n).expect("small index"))
        .collect();
    // The product integrates to exactly 1 ...
    let product = family
        .iter()
        .skip(1)
        .fold(family[0].clone(), |acc, f| acc.mul(f));
    assert_eq!(product.integrate(), rat(1));
    // ... and the verification engine reports exactly that tuple.
    let report = verify_family_labeled(&family, &labels, 2, &OrthoClass::TypeII);
    let witness = report
        .violations
        .iter()
        .find(|v| v.tuple == vec![1, 2, 4, 7])
        .expect("witness tuple present");
    assert_eq!(witness.value, "1/1");
    println!("criterion 3 (Walsh non-superorthogonality witness (1,2,4,7)): PASS");
}

#[test]
fn criterion_04_khintchine() {
    let mut rng = SplitMix64::new(0);
    for case in 0..200 {
        let len = 1 + rng.below(8) as usize;
        let coeffs = random_coeffs(len, 12, 8, &mut rng);
        for r in [2u32, 3] {
            let rep = khintchine_check(&coeffs, r);
            assert!(rep.l2_exact, "case {case}: L2 identity broke");
            assert!(rep.norm.pass, "case {case}, r={r}: direct inequality broke");
        }
    }
    println!("criterion 4 (Khintchine: exact L2 identity, C_2=3, C_3=15, 200 vectors): PASS");
}

#[test]
fn criterion_05_inequality_property_suite() {
    // Nonconcentration, 1000 exact instances.
    let mut rng = SplitMix64::new(0);
    for case in 0..1000 {
        let len = 1 + rng.below(10) as usize;
        let r = 1 + rng.below(4) as u32;
        let a: Vec<Rat> = (0..len).map(|_| rng.rational_nonneg(16, 16)).collect();
        assert!(
            nonconcentration_check(&a, r).expect("non-negative"),
            "nonconcentration case {case}"
        );
    }
    // Bisection inequality, 1000 exact instances.
    let mut rng = SplitMix64::new(1);
    for case in 0..1000 {
        let t = rng.below(5) as u32;
        let p = 1 + rng.below(4) as u32;
        let b: Vec<Rat> = (0..(1usize << t) + 1).map(|_| rng.rational(20, 4)).collect();
        assert!(
            menchov_rademacher_check(&b, t, p).expect("length matches"),
            "bisection case {case} (t={t}, p={p})"
        );
    }
    // Factorial sandwich on verified Type I* families, 1000 exact instances.
    let mut rng = SplitMix64::new(2);
    for case in 0..1000 {
        let parts = 1 + rng.below(4) as usize;
        let r = 2 + rng.below(2) as u32;
        let fam = disjoint_family(4, parts, 8, 4, &mut rng);
        let rep = type1star_sandwich(&fam, r).expect("disjoint supports are Type I*");
        assert!(rep.pass, "sandwich case {case}");
    }
    println!("criterion 5 (nonconcentration + bisection + factorial sandwich, 1000 each): PASS");
}

#[test]
fn criterion_06_weil_certificates() {
    let mut qualifying_total = 0u64;
    for q in primes_in(5, 97) {
        let chi = DirichletChar::quadratic(q).expect("odd prime");
        for r in 1..=2usize {
            for idx in tuples(4, 2 * r) {
                let shifts: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
                if !satisfies(&shifts, &OrthoClass::TypeII) {
                    continue;
                }
                let rep = quasi_super_check(&chi, &shifts).expect("uniqueness verified");
                assert!(rep.sum.exact.is_some(), "quadratic path must be exact");
                assert!(
                    rep.pass,
                    "q={q}, shifts {shifts:?}: |sum| > {} sqrt(q)",
                    2 * r - 1
                );
                qualifying_total += 1;
            }
        }
    }
    assert!(qualifying_total > 1000);
    println!(
        "criterion 6 (Weil certificates, {} uniqueness tuples across primes 5..97): PASS",
        qualifying_total
    );
}

#[test]
fn criterion_07_iw_vanishing() {
    // Vanishing at half the threshold.
    let eps = eps_threshold(2, 5) / 2.0;
    let spec = ProjectionSpec::impulse(2025, eps);
    let report = denom_vanishing_test(&spec, &[3, 5], 2).expect("valid spec");
    assert!(report.qualifying > 0);
    assert!(
        report.passed(),
        "vanishing violated: max ratio {}",
        report.max_ratio
    );

    // Sharpness probe: inflating eps by q(Z)^{2r} exposes a tuple.
    let probe_spec = ProjectionSpec::impulse(2025, eps * 625.0);
    let probe = denom_vanishing_probe(&probe_spec, &[3, 5], 2).expect("valid spec");
    assert!(
        !probe.violations.is_empty(),
        "sharpness probe found no non-vanishing tuple"
    );

    // Parseval case at N = 64 to 1e-9.
    assert!(parseval_case(64, 0));

    // Splitting and factorization identities, exact for q <= 60.
    let mut rng = SplitMix64::new(0);
    for q in 2..=60u64 {
        let mut table = std::collections::BTreeMap::new();
        for a in 1..=q {
            table.insert(Fraction::new(a, q), rng.rational(50, 7));
        }
        let h = |f: &Fraction| -> Rat { table.get(f).cloned().unwrap_or_else(Rat::zero) };
        assert!(split_identity_check(q, &h).expect("q > 1"), "split q={q}");

        let n = (q * q * q) as usize;
        let delta = num_rational::Ratio::new(1, (q * q) as i64);
        let half = (q / 2) as usize;
        let mut mu = vec![0.0; n];
        let mut phi = vec![0.0; n];
        for v in [&mut mu, &mut phi] {
            for j in 0..=half {
                v[j] = rng.f64() - 0.5;
                if j > 0 {
                    v[n - j] = rng.f64() - 0.5;
                }
            }
        }
        assert!(
            factor_identity_check(q, n, delta, &mu, &phi).expect("valid inputs"),
            "factor q={q}"
        );
    }
    println!("criterion 7 (IW vanishing + sharpness probe + Parseval + split/factor): PASS");
}

#[test]
fn criterion_08_burgess_pipeline() {
    use sqfn_core::burgess::*;
    for q in [1009u64, 10007] {
        let h = default_h(q);
        let params = BurgessParams::new(q, 0, h, 2).expect("admissible H");
        let chi = DirichletChar::quadratic(q).expect("odd prime");
        let rep = burgess_bound(&params, &chi).expect("pipeline runs");
        assert!(rep.m2_pass, "q={q}: sum a^2 = {} > 10 L^2", rep.m2);
        assert!(rep.m2_sharp_pass, "q={q}: sum a#^2 = {} > 10 H L", rep.m2_sharp);
        assert!(rep.overlap_pass, "q={q}: overlap = {} > 50 L^2", rep.overlap);
        assert!(rep.pass, "q={q}: actual {} > strong {}", rep.actual, rep.strong_bound);
        assert!(rep.chain_ok, "q={q}: measured chain inequality broke");
    }
    // 20-prime sweep at r = 2: ratio actual/strong below 1 in >= 95% of rows.
    let qs = sweep_primes(1000, 100_000, 20);
    let mut ok_rows = 0usize;
    for &q in &qs {
        let params = BurgessParams::new(q, 0, default_h(q), 2).expect("admissible H");
        let chi = DirichletChar::quadratic(q).expect("odd prime");
        let rep = burgess_bound(&params, &chi).expect("pipeline runs");
        assert!(rep.chain_ok, "q={q}: chain broke");
        if rep.ratio_strong < 1.0 {
            ok_rows += 1;
        }
    }
    assert!(
        ok_rows * 100 >= qs.len() * 95,
        "only {ok_rows}/{} sweep rows under the strong bound",
        qs.len()
    );
    println!(
        "criterion 8 (Burgess pipeline at q=1009,10007 + 20-prime sweep, {}/{} rows under bound): PASS",
        ok_rows,
        qs.len()
    );
}

#[test]
fn criterion_09_vinogradov() {
    for (n, r, x) in [(2u32, 2u32, 20u64), (3, 2, 12), (3, 3, 12)] {
        let c = count_solutions(n, r, x, DEFAULT_BUDGET).expect("within budget");
        assert_eq!(c.offdiagonal, 0, "(n,r,X)=({n},{r},{x})");
        assert_eq!(c.total, c.diagonal);
    }
    assert_eq!(
        find_pte(2, 7, DEFAULT_BUDGET).expect("within budget"),
        Some((vec![1, 5, 6], vec![2, 3, 7]))
    );
    let fast = count_solutions(2, 2, 6, DEFAULT_BUDGET).expect("within budget");
    let naive = count_solutions_naive(2, 2, 6);
    assert_eq!(fast, naive);
    println!("criterion 9 (Vinogradov diagonal theorem + equal-power-sums search + oracle): PASS");
}
