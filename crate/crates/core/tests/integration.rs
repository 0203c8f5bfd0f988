//! Cross-module scenarios at larger grid sizes: the r-linear vanishing
//! grids, the complex-exponential sandwich with a brute-force oracle,
//! and the step-record interface round trip.

use num_complex::Complex64;
use sqfn_core::corpus::random_step;
use sqfn_core::dyadic::DyadicStep;
use sqfn_core::iw::{eps_threshold, numer_vanishing_test, ProjectionSpec};
use sqfn_core::rng::SplitMix64;
use sqfn_core::tuplecheck::{satisfies, tuples, OrthoClass};
use std::f64::consts::PI;

#[test]
fn numer_vanishing_two_linear_full_grid() {
    // (q_1, q_2) = (3, 5) on N = 2025: every qualifying tuple vanishes.
    let spec = ProjectionSpec::impulse(2025, eps_threshold(2, 5) / 2.0);
    let report = numer_vanishing_test(&spec, &[3, 5], 2).expect("valid spec");
    assert!(report.qualifying > 0);
    assert!(report.passed(), "max ratio {}", report.max_ratio);
}

#[test]
fn numer_vanishing_three_linear_full_grid() {
    // (3, 5, 7) on N = 11025 = 105^2, full enumeration of the 2304 tuples.
    let spec = ProjectionSpec::impulse(11025, eps_threshold(3, 7) / 2.0);
    let report = numer_vanishing_test(&spec, &[3, 5, 7], 3).expect("valid spec");
    assert!(report.qualifying > 0);
    assert!(report.passed(), "max ratio {}", report.max_ratio);
}

/// Complex exponentials on a cyclic grid with pairwise-distinct-sums
/// frequencies: the positional predicate implies vanishing, and the
/// factorial sandwich holds strictly inside its endpoints.
#[test]
fn steinhaus_exponentials_sandwich_with_oracle() {
    let n = 64usize;
    let freqs = [1u64, 2, 5, 11];
    let tone = |f: u64, x: usize| -> Complex64 {
        let theta = 2.0 * PI * (f as usize * x % n) as f64 / n as f64;
        Complex64::new(theta.cos(), theta.sin())
    };
    // Type I* verification: every tuple whose position multisets differ
    // must integrate to zero (brute-force sums over the grid).
    for idx in tuples(freqs.len(), 4) {
        let labels: Vec<u64> = idx.iter().map(|&j| freqs[j]).collect();
        if !satisfies(&labels, &OrthoClass::TypeIStar) {
            continue;
        }
        let mut total = Complex64::new(0.0, 0.0);
        for x in 0..n {
            let term = tone(labels[0], x)
                * tone(labels[1], x).conj()
                * tone(labels[2], x)
                * tone(labels[3], x).conj();
            total += term;
        }
        assert!(total.norm() < 1e-9 * n as f64, "tuple {labels:?}");
    }
    // Sandwich at r = 2 by direct evaluation: the lower edge is
    // sum_x (sum_j |f_j|^2)^2 = 16 N, the middle counts the 28 position
    // pairings, and the upper edge is 2 * 16 N.
    let mut middle = 0.0;
    for x in 0..n {
        let s: Complex64 = freqs.iter().map(|&f| tone(f, x)).sum();
        middle += s.norm().powi(4);
    }
    let lower = 16.0 * n as f64;
    let upper = 2.0 * lower;
    assert!((middle - 28.0 * n as f64).abs() < 1e-9 * middle);
    assert!(lower <= middle * (1.0 + 1e-9) && middle <= upper * (1.0 + 1e-9));
}

#[test]
fn denom_vanishing_holds_for_random_signals() {
    // The support argument is signal-independent: any input must vanish
    // on every qualifying tuple, not just the impulse.
    let n = 2025;
    let mut rng = SplitMix64::new(19);
    let signal: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.f64() - 0.5, rng.f64() - 0.5))
        .collect();
    let spec = ProjectionSpec::new(n, eps_threshold(2, 5) / 2.0, signal).unwrap();
    let report = sqfn_core::iw::denom_vanishing_test(&spec, &[3, 5], 2).unwrap();
    assert!(report.qualifying > 0);
    assert!(report.passed(), "max ratio {}", report.max_ratio);
}

#[test]
fn bisection_maximal_bound_across_window_sizes() {
    use sqfn_core::burgess::maximal_sum_norm;
    use sqfn_core::zmodn::DirichletChar;
    for q in [101u64, 211] {
        let chi = DirichletChar::quadratic(q).unwrap();
        for k in [2u64, 3, 4, 5, 7, 8, 9, 16, 31, 32, 33] {
            for r in [1u32, 2] {
                let rep = maximal_sum_norm(&chi, k, r).unwrap();
                assert!(rep.pass, "q={q} K={k} r={r}");
            }
        }
    }
}

#[test]
fn burgess_chain_holds_across_start_residues() {
    // The measured chain inequality is a theorem for every start N; any
    // off-by-one in the anchor, window, or folding constants would break
    // it somewhere, so sweep starts densely (both r values at q = 1009,
    // spot checks at q = 10007).
    use sqfn_core::burgess::{burgess_bound, default_h, BurgessParams};
    use sqfn_core::zmodn::DirichletChar;
    let q = 1009u64;
    let chi = DirichletChar::quadratic(q).unwrap();
    let mut rng = SplitMix64::new(6);
    let mut starts: Vec<u64> = (0..40).collect();
    starts.extend((0..20).map(|_| rng.below(q)));
    for &n0 in &starts {
        for r in [2u32, 3] {
            let params = BurgessParams::new(q, n0, default_h(q), r).unwrap();
            let rep = burgess_bound(&params, &chi).unwrap();
            assert!(
                rep.chain_ok,
                "chain broke at q={q}, N={n0}, r={r}: actual={} sharp={} weak={}",
                rep.actual, rep.chain_rhs, rep.chain_weak_rhs
            );
        }
    }
    let q = 10007u64;
    let chi = DirichletChar::quadratic(q).unwrap();
    for n0 in [0u64, 1, 4573, 9998, 10006] {
        let params = BurgessParams::new(q, n0, default_h(q), 2).unwrap();
        let rep = burgess_bound(&params, &chi).unwrap();
        assert!(rep.chain_ok, "chain broke at q={q}, N={n0}");
    }
}

#[test]
fn step_record_interface_round_trip() {
    // The text record is the exchange format between modules and the CLI;
    // a seeded function must survive it exactly, including after algebra.
    let mut rng = SplitMix64::new(41);
    let f = random_step(6, 64, 48, &mut rng);
    let g = random_step(6, 64, 48, &mut rng);
    let h = f.mul(&g).add(&f.scale(&sqfn_core::dyadic::ratio(-3, 7)));
    for step in [f, g, h] {
        let rec = step.to_record();
        assert_eq!(DyadicStep::from_record(&rec).unwrap(), step);
    }
}
