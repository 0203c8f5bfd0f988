//! The short character sum pipeline: multiplicative redistribution of a
//! short sum over prime step sizes, redundancy counts of the transformed
//! starting points with second-moment certificates, overlap counting,
//! maximal partial-sum norms via bisection, and the final weak/strong
//! bound comparison with unit implied constants.
//!
//! All counting is exact integer arithmetic; quadratic characters keep the
//! moment computations exact as well.

use crate::primes::{is_prime, next_prime, primes_in};
use crate::report::ser_u128;
use crate::zmodn::DirichletChar;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BurgessError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("start N = {n0} outside [0, q) for q = {q}")]
    BadStart { q: u64, n0: u64 },
    #[error("H = {h} outside the admissible range [{lo:.3}, {hi:.3}] (stage: H-range)")]
    HRange { h: u64, lo: f64, hi: f64 },
    #[error("no primes in [L, 2L] coprime to q (stage: script-L empty)")]
    EmptyL,
    #[error("overlap lemma hypothesis B*L^2 < q fails (stage: overlap)")]
    OverlapHypothesis,
    #[error("K must be at least 2 for the maximal norm")]
    KTooSmall,
}

/// Validated pipeline parameters. `L = H q^{-1/(2r)} / 2` is kept as a
/// real number alongside its floor.
#[derive(Clone, Debug, Serialize)]
pub struct BurgessParams {
    pub q: u64,
    pub n0: u64,
    pub h: u64,
    pub r: u32,
    pub l_real: f64,
    pub l_floor: u64,
}

impl BurgessParams {
    pub fn new(q: u64, n0: u64, h: u64, r: u32) -> Result<Self, BurgessError> {
        if !is_prime(q) {
            return Err(BurgessError::NotPrime(q));
        }
        if n0 >= q {
            return Err(BurgessError::BadStart { q, n0 });
        }
        assert!(r >= 1);
        let qf = q as f64;
        let lo = 2.0 * qf.powf(1.0 / (2.0 * r as f64));
        let hi = qf.powf(0.5 + 1.0 / (4.0 * r as f64));
        if (h as f64) < lo - 1e-9 || (h as f64) > hi + 1e-9 {
            return Err(BurgessError::HRange { h, lo, hi });
        }
        let l_real = h as f64 * qf.powf(-1.0 / (2.0 * r as f64)) / 2.0;
        Ok(BurgessParams {
            q,
            n0,
            h,
            r,
            l_real,
            l_floor: l_real.floor() as u64,
        })
    }

    /// Integer window count `ceil(H / L) = ceil(2 q^{1/2r})` used by the
    /// sharp redundancy function.
    pub fn window(&self) -> u64 {
        (self.h as f64 / self.l_real).ceil() as u64
    }
}

/// The prime step sizes: primes in `[L, 2L]` not dividing `q`. May be
/// empty at tiny scales; downstream stages require nonempty.
pub fn build_l(params: &BurgessParams) -> Vec<u64> {
    let lo = params.l_real.ceil() as u64;
    let hi = (2.0 * params.l_real).floor() as u64;
    primes_in(lo.max(2), hi)
        .into_iter()
        .filter(|&l| params.q % l != 0)
        .collect()
}

/// Exact short sum of a quadratic character over `(n0, n0+h]`.
pub fn short_sum_quadratic(chi: &DirichletChar, n0: u64, h: u64) -> i64 {
    (1..=h).map(|x| chi.eval_quadratic((n0 + x) as i64)).sum()
}

/// Short sum for a general character.
pub fn short_sum(chi: &DirichletChar, n0: u64, h: u64) -> Complex64 {
    (1..=h).map(|x| chi.eval((n0 + x) as i64)).sum()
}

fn floor_div(num: i128, den: i128) -> i128 {
    num.div_euclid(den)
}

/// Anchor `floor((N - a q)/l)` of the transformed interval for `(l, a)`.
fn anchor(params: &BurgessParams, l: u64, a: u64) -> i64 {
    let num = params.n0 as i128 - a as i128 * params.q as i128;
    floor_div(num, l as i128) as i64
}

/// Redundancy counts. `sharp = false` counts anchors:
/// `a(m) = #{(l, a): floor((N-aq)/l) = m}`. `sharp = true` spreads each
/// anchor over the window `(anchor - W, anchor]` with `W = ceil(H/L)`.
pub fn redundancy(
    params: &BurgessParams,
    ls: &[u64],
    sharp: bool,
) -> BTreeMap<i64, u64> {
    let mut map = BTreeMap::new();
    let w = params.window() as i64;
    for &l in ls {
        for a in 0..l {
            let s = anchor(params, l, a);
            if sharp {
                for m in (s - w + 1)..=s {
                    *map.entry(m).or_insert(0) += 1;
                }
            } else {
                *map.entry(s).or_insert(0) += 1;
            }
        }
    }
    map
}

/// `sum_m a(m)^2`, exactly.
pub fn second_moment(map: &BTreeMap<i64, u64>) -> u128 {
    map.values().map(|&c| c as u128 * c as u128).sum()
}

/// `sum_m a(m)`, exactly (the mass identity's left side).
pub fn total_mass(map: &BTreeMap<i64, u64>) -> u128 {
    map.values().map(|&c| c as u128).sum()
}

/// Overlap count: ordered pairs of starting points `(N-aq)/l`, `(N-a'q)/l'`
/// within distance `B`, summed over `l, l'` in the prime set. Requires
/// `B >= 1` and `B L^2 < q`. Comparison is exact via cross-multiplication.
pub fn overlap_count(
    ls: &[u64],
    b: u64,
    n0: u64,
    q: u64,
    l_real: f64,
) -> Result<u128, BurgessError> {
    if b == 0 || (b as f64) * l_real * l_real >= q as f64 {
        return Err(BurgessError::OverlapHypothesis);
    }
    // Starting points as exact rationals (num/den).
    let mut pts: Vec<(i128, i128)> = Vec::new();
    for &l in ls {
        for a in 0..l {
            pts.push((n0 as i128 - a as i128 * q as i128, l as i128));
        }
    }
    pts.sort_by(|&(n1, d1), &(n2, d2)| (n1 * d2).cmp(&(n2 * d1)));
    // Two-pointer sweep over the sorted values.
    let within = |i: usize, j: usize| -> bool {
        let (ni, di) = pts[i];
        let (nj, dj) = pts[j];
        (ni * dj - nj * di).abs() <= b as i128 * di * dj
    };
    let mut total: u128 = 0;
    let mut lo = 0usize;
    let mut hi = 0usize;
    for i in 0..pts.len() {
        while lo < i && !within(lo, i) {
            lo += 1;
        }
        if hi < i {
            hi = i;
        }
        while hi + 1 < pts.len() && within(i, hi + 1) {
            hi += 1;
        }
        total += (hi - lo + 1) as u128;
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximalNormReport {
    pub q: u64,
    pub k: u64,
    pub r: u32,
    /// `sum_m (max_{k' <= K} |S(m, k')|)^{2r}`, exact for quadratic chi.
    #[serde(serialize_with = "ser_u128")]
    pub exact_pow: u128,
    /// The bisection bound `(t+1)^{p-1} sum_windows moment`, exact.
    #[serde(serialize_with = "ser_u128")]
    pub mr_bound_pow: u128,
    /// `((K q^{1/4r} + sqrt(K) q^{1/2r}) ln K)^{2r}` with unit constant.
    pub closed_pow: f64,
    pub c_emp: f64,
    /// `exact_pow <= mr_bound_pow`; a theorem, so always expected true.
    pub pass: bool,
}

/// Maximal partial-sum moment `sum_m max_{k' <= K} |sum_{x in (0,k']}
/// chi(m+x)|^{2r}` with the bisection-derived bound computed from exact
/// window moments, plus the closed-form shape with its empirical constant.
/// Exact path for quadratic characters only.
pub fn maximal_sum_norm(
    chi: &DirichletChar,
    k: u64,
    r: u32,
) -> Result<MaximalNormReport, BurgessError> {
    if k < 2 {
        return Err(BurgessError::KTooSmall);
    }
    let q = chi.q();
    let mut t = 0u32;
    while (1u64 << t) < k {
        t += 1;
    }
    let top = 1u64 << t;
    let p = 2 * r;
    let mut exact_pow: u128 = 0;
    let mut window_moments: u128 = 0;
    if chi.is_quadratic() {
        let mut partial = vec![0i64; top as usize + 1];
        for m in 0..q as i64 {
            for x in 1..=top as i64 {
                partial[x as usize] = partial[x as usize - 1] + chi.eval_quadratic(m + x);
            }
            let maxabs = partial[1..=k as usize]
                .iter()
                .map(|v| v.unsigned_abs())
                .max()
                .unwrap();
            exact_pow += (maxabs as u128).pow(p);
            for i in 0..=t {
                let step = (top >> i) as usize;
                for v in 0..1usize << i {
                    let inc = (partial[(v + 1) * step] - partial[v * step]).unsigned_abs();
                    window_moments += (inc as u128).pow(p);
                }
            }
        }
    } else {
        // Floating path for higher-order characters; moments rounded to
        // the nearest integer scale only in the report.
        let mut exact_f = 0.0f64;
        let mut windows_f = 0.0f64;
        let mut partial = vec![Complex64::new(0.0, 0.0); top as usize + 1];
        for m in 0..q as i64 {
            for x in 1..=top as i64 {
                partial[x as usize] = partial[x as usize - 1] + chi.eval(m + x);
            }
            let maxabs = partial[1..=k as usize]
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            exact_f += maxabs.powi(p as i32);
            for i in 0..=t {
                let step = (top >> i) as usize;
                for v in 0..1usize << i {
                    let inc = (partial[(v + 1) * step] - partial[v * step]).norm();
                    windows_f += inc.powi(p as i32);
                }
            }
        }
        exact_pow = exact_f.round() as u128;
        window_moments = windows_f.ceil() as u128;
    }
    let mr_bound_pow = (t as u128 + 1).pow(p - 1) * window_moments;
    let qf = q as f64;
    let kf = k as f64;
    let closed = (kf * qf.powf(1.0 / (4.0 * r as f64))
        + kf.sqrt() * qf.powf(1.0 / (2.0 * r as f64)))
        * kf.ln();
    let closed_pow = closed.powi(p as i32);
    Ok(MaximalNormReport {
        q,
        k,
        r,
        exact_pow,
        mr_bound_pow,
        closed_pow,
        c_emp: exact_pow as f64 / closed_pow,
        pass: exact_pow <= mr_bound_pow,
    })
}

/// One full pipeline run. Every counted quantity is exact; bounds are
/// reported with unit implied constants and the measured ratios alongside.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub q: u64,
    pub n0: u64,
    pub h: u64,
    pub r: u32,
    pub l_real: f64,
    pub l_count: usize,
    pub window: u64,
    pub k_sharp: u64,
    /// `|sum_{(N,N+H]} chi|`.
    pub actual: f64,
    pub weak_bound: f64,
    pub strong_bound: f64,
    /// The same bounds with a single logarithm, the normalization the
    /// classical argument achieves when the bisection step is avoided.
    pub weak_bound_single_log: f64,
    pub strong_bound_single_log: f64,
    pub ratio_weak: f64,
    pub ratio_strong: f64,
    #[serde(serialize_with = "ser_u128")]
    pub m2: u128,
    pub m2_bound: f64,
    #[serde(serialize_with = "ser_u128")]
    pub m2_sharp: u128,
    pub m2_sharp_bound: f64,
    #[serde(serialize_with = "ser_u128")]
    pub overlap: u128,
    pub overlap_bound: f64,
    /// The three measured factors of the sharp chain inequality:
    /// `2/(W |L|)`, `(sum a#^2)^{1-1/2r}`, and `(3 M#)^{1/2r}`.
    pub chain_factor_prefix: f64,
    pub chain_factor_moment: f64,
    pub chain_factor_max: f64,
    /// Measured right side of the sharp chain (the product of the three).
    pub chain_rhs: f64,
    /// Measured right side of the anchor-only chain
    /// `(1/|L|) (sum a^2)^{1-1/2r} (2 M_w)^{1/2r}`.
    pub chain_weak_rhs: f64,
    /// `actual <= min(chain_rhs, chain_weak_rhs)`; both are theorems given
    /// the measured quantities.
    pub chain_ok: bool,
    pub m2_pass: bool,
    pub m2_sharp_pass: bool,
    pub overlap_pass: bool,
    /// `actual <= strong_bound` (unit-constant sweep policy).
    pub pass: bool,
}

/// Sweep-policy thresholds on the second moments and overlap counts.
pub const M2_FACTOR: f64 = 10.0;
pub const OVERLAP_FACTOR: f64 = 50.0;

pub fn burgess_bound(
    params: &BurgessParams,
    chi: &DirichletChar,
) -> Result<ExperimentReport, BurgessError> {
    let q = params.q;
    debug_assert_eq!(chi.q(), q);
    let ls = build_l(params);
    if ls.is_empty() {
        return Err(BurgessError::EmptyL);
    }
    let a_map = redundancy(params, &ls, false);
    let sharp_map = redundancy(params, &ls, true);
    let m2 = second_moment(&a_map);
    let m2_sharp = second_moment(&sharp_map);
    let w = params.window();
    let k_sharp = 2 * w - 1;
    let m_sharp = maximal_sum_norm(chi, k_sharp, params.r)?;
    let m_weak = maximal_sum_norm(chi, w.max(2), params.r)?;
    let overlap = overlap_count(&ls, 1, params.n0, q, params.l_real)?;

    let actual = if chi.is_quadratic() {
        short_sum_quadratic(chi, params.n0, params.h).abs() as f64
    } else {
        short_sum(chi, params.n0, params.h).norm()
    };
    let qf = q as f64;
    let hf = params.h as f64;
    let rf = params.r as f64;
    let log2q = qf.ln() * qf.ln();
    let weak_shape = hf.powf(1.0 - 1.0 / rf) * qf.powf((rf + 2.0) / (4.0 * rf * rf));
    let strong_shape = hf.powf(1.0 - 1.0 / rf) * qf.powf((rf + 1.0) / (4.0 * rf * rf));
    let weak_bound = weak_shape * log2q;
    let strong_bound = strong_shape * log2q;

    let p = 2.0 * rf;
    let chain_factor_prefix = 2.0 / (w as f64 * ls.len() as f64);
    let chain_factor_moment = (m2_sharp as f64).powf(1.0 - 1.0 / p);
    let chain_factor_max = (3.0 * m_sharp.exact_pow as f64).powf(1.0 / p);
    let chain_rhs = chain_factor_prefix * chain_factor_moment * chain_factor_max;
    let chain_weak_rhs = (1.0 / ls.len() as f64)
        * (m2 as f64).powf(1.0 - 1.0 / p)
        * (2.0 * m_weak.exact_pow as f64).powf(1.0 / p);

    let m2_bound = M2_FACTOR * params.l_real * params.l_real;
    let m2_sharp_bound = M2_FACTOR * hf * params.l_real;
    let overlap_bound = OVERLAP_FACTOR * params.l_real * params.l_real;
    Ok(ExperimentReport {
        q,
        n0: params.n0,
        h: params.h,
        r: params.r,
        l_real: params.l_real,
        l_count: ls.len(),
        window: w,
        k_sharp,
        actual,
        weak_bound,
        strong_bound,
        weak_bound_single_log: weak_shape * qf.ln(),
        strong_bound_single_log: strong_shape * qf.ln(),
        ratio_weak: actual / weak_bound,
        ratio_strong: actual / strong_bound,
        m2,
        m2_bound,
        m2_sharp,
        m2_sharp_bound,
        overlap,
        overlap_bound,
        chain_factor_prefix,
        chain_factor_moment,
        chain_factor_max,
        chain_rhs,
        chain_weak_rhs,
        chain_ok: actual <= chain_rhs && actual <= chain_weak_rhs,
        m2_pass: (m2 as f64) <= m2_bound,
        m2_sharp_pass: (m2_sharp as f64) <= m2_sharp_bound,
        overlap_pass: (overlap as f64) <= overlap_bound,
        pass: actual <= strong_bound,
    })
}

/// Least `n >= 2` with `chi_quad(n) = -1`.
pub fn least_nonresidue(q: u64) -> u64 {
    debug_assert!(is_prime(q) && q > 2);
    let chi = DirichletChar::quadratic(q).expect("odd prime");
    (2..q)
        .find(|&n| chi.eval_quadratic(n as i64) == -1)
        .expect("every odd prime has a nonresidue")
}

/// Deterministic geometric grid of primes in `[qmin, qmax]` for sweeps.
pub fn sweep_primes(qmin: u64, qmax: u64, count: usize) -> Vec<u64> {
    assert!(qmin >= 2 && qmax > qmin && count >= 1);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    let lo = qmin as f64;
    let hi = qmax as f64;
    for k in 0..count {
        let frac = if count == 1 {
            0.0
        } else {
            k as f64 / (count - 1) as f64
        };
        let target = (lo * (hi / lo).powf(frac)).round() as u64;
        let mut p = next_prime(target);
        if let Some(&prev) = out.last() {
            if p <= prev {
                p = next_prime(prev + 1);
            }
        }
        out.push(p);
    }
    out
}

/// Default sweep H: `2 * ceil(q^{0.3})`.
pub fn default_h(q: u64) -> u64 {
    2 * (q as f64).powf(0.3).ceil() as u64
}
