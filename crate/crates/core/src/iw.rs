//! Reduced-fraction frequency sets on the circle and the discrete
//! frequency-projection machinery built on them: the splitting and
//! factorization identities, band projections `f_{a/q}` on `Z/NZ`,
//! exact-support vanishing tests for products with denominator or
//! numerator uniqueness, the separated exponential-sum bound with its
//! Parseval case, and the sampling-kernel `l^1` computation.
//!
//! `Z/NZ` stands in for `Z` throughout: when every denominator divides
//! `N`, each fraction `a/q` is an exact grid frequency and every
//! Fourier-support argument goes through unchanged.

use crate::dyadic::Rat;
use crate::primes::factorize;
use crate::rng::SplitMix64;
use crate::tuplecheck::{satisfies, tuples, OrthoClass};
use crate::zmodn::{dft, idft};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum IwError {
    #[error("denominator {0} must exceed 1")]
    DenominatorOne(u64),
    #[error("set is not pairwise coprime: gcd({0},{1}) > 1")]
    NotCoprime(u64, u64),
    #[error("denominator {q} does not divide the grid size {n}")]
    DenominatorGrid { q: u64, n: usize },
    #[error("eps {eps} is not below the vanishing threshold {threshold}")]
    EpsTooLarge { eps: f64, threshold: f64 },
    #[error("function support exceeds |xi| <= delta/2 at grid offset {0}")]
    SupportViolation(usize),
    #[error("delta must satisfy delta <= q^-2")]
    DeltaTooLarge,
    #[error("points are not delta-separated")]
    NotSeparated,
    #[error("signal length {got} does not match the grid size {want}")]
    SignalLength { want: usize, got: usize },
    #[error("kernel needs delta * Q <= 1 and Q | N")]
    KernelParams,
    #[error("empty input")]
    Empty,
}

/// A fraction reduced mod 1: `0 <= num < den`, `gcd(num, den) = 1`.
/// The zero class is `0/1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(a: u64, q: u64) -> Self {
        assert!(q > 0);
        let a = a % q;
        if a == 0 {
            return Fraction { num: 0, den: 1 };
        }
        let g = a.gcd(&q);
        Fraction {
            num: a / g,
            den: q / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> Ratio<i64> {
        Ratio::new(self.num as i64, self.den as i64)
    }

    /// Circular distance to zero, in `[0, 1/2]`.
    pub fn circ_norm(&self) -> Ratio<i64> {
        let v = self.value();
        let other = Ratio::one() - v;
        v.min(other)
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FreqKind {
    /// `R(Z)`: irreducible fractions with denominators in `Z`.
    Reduced,
    /// `F(q)`: all fractions `a/q`, `1 <= a <= q`, mod 1.
    Full,
    /// `D(q)`: the reducible fractions with denominator `q`, mod 1.
    Reducible,
}

/// A finite set of fractions mod 1 with its provenance.
#[derive(Clone, Debug)]
pub struct FreqSet {
    pub kind: FreqKind,
    pub fractions: Vec<Fraction>,
    pub q_max: u64,
}

/// `R(Z)` for a set of denominators, each `> 1`.
pub fn reduced_set(zs: &[u64]) -> Result<FreqSet, IwError> {
    if zs.is_empty() {
        return Err(IwError::Empty);
    }
    let mut fractions = Vec::new();
    let mut q_max = 0;
    for &q in zs {
        if q <= 1 {
            return Err(IwError::DenominatorOne(q));
        }
        q_max = q_max.max(q);
        for a in 1..q {
            if a.gcd(&q) == 1 {
                fractions.push(Fraction { num: a, den: q });
            }
        }
    }
    fractions.sort_by_key(|f| f.value());
    Ok(FreqSet {
        kind: FreqKind::Reduced,
        fractions,
        q_max,
    })
}

/// `F(q)`, stored in reduced form mod 1.
pub fn full_set(q: u64) -> Result<FreqSet, IwError> {
    if q <= 1 {
        return Err(IwError::DenominatorOne(q));
    }
    let mut fractions: Vec<Fraction> = (1..=q).map(|a| Fraction::new(a, q)).collect();
    fractions.sort_by_key(|f| f.value());
    Ok(FreqSet {
        kind: FreqKind::Full,
        fractions,
        q_max: q,
    })
}

/// `D(q)`, stored in reduced form mod 1.
pub fn reducible_set(q: u64) -> Result<FreqSet, IwError> {
    if q <= 1 {
        return Err(IwError::DenominatorOne(q));
    }
    let mut fractions: Vec<Fraction> = (1..=q)
        .filter(|a| a.gcd(&q) > 1)
        .map(|a| Fraction::new(a, q))
        .collect();
    fractions.sort_by_key(|f| f.value());
    Ok(FreqSet {
        kind: FreqKind::Reducible,
        fractions,
        q_max: q,
    })
}

/// Exact minimal circular gap between distinct points of the set; `1` for
/// singletons.
pub fn separation(set: &FreqSet) -> Ratio<i64> {
    let mut vals: Vec<Ratio<i64>> = set.fractions.iter().map(|f| f.value()).collect();
    vals.sort();
    vals.dedup();
    if vals.len() < 2 {
        return Ratio::one();
    }
    let mut best = Ratio::one() + vals[0] - vals[vals.len() - 1];
    for w in vals.windows(2) {
        best = best.min(w[1] - w[0]);
    }
    best
}

/// The inclusion-exclusion identity
/// `sum_{u in R(q)} h(u) = sum_eps (-1)^{|eps|} sum_{w in F(q_eps)} h(w)`
/// over the prime factorization of `q`, with exact rational values.
pub fn split_identity_check(q: u64, h: &dyn Fn(&Fraction) -> Rat) -> Result<bool, IwError> {
    let r = reduced_set(&[q])?;
    let lhs: Rat = r.fractions.iter().map(h).sum();
    let factors = factorize(q);
    let k = factors.len();
    let mut rhs = Rat::zero();
    for mask in 0..1u32 << k {
        let mut q_eps = 1u64;
        for (j, &(p, alpha)) in factors.iter().enumerate() {
            let drop = mask >> j & 1;
            q_eps *= p.pow(alpha - drop);
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        let inner: Rat = (1..=q_eps).map(|a| h(&Fraction::new(a, q_eps))).sum();
        rhs += inner * Rat::from_integer(sign.into());
    }
    Ok(lhs == rhs)
}

/// The factorization identity on the grid `Z/nZ`:
/// `sum_{u in R(q)} mu(xi-u) phi(xi-u)
///  = (sum_{w in F(q)} mu(xi-w)) (sum_{u in R(q)} phi(xi-u))`
/// for `mu, phi` supported in `|xi| <= delta/2` with `delta <= q^-2`.
pub fn factor_identity_check(
    q: u64,
    n: usize,
    delta: Ratio<i64>,
    mu: &[f64],
    phi: &[f64],
) -> Result<bool, IwError> {
    if q <= 1 {
        return Err(IwError::DenominatorOne(q));
    }
    if n as u64 % q != 0 {
        return Err(IwError::DenominatorGrid { q, n });
    }
    if delta > Ratio::new(1, (q * q) as i64) {
        return Err(IwError::DeltaTooLarge);
    }
    if mu.len() != n || phi.len() != n {
        return Err(IwError::SignalLength {
            want: n,
            got: mu.len().min(phi.len()),
        });
    }
    // Support check: nonzero only within circular distance delta/2 of 0.
    let half = delta / Ratio::new(2, 1);
    for j in 0..n {
        let dist = Ratio::new(j.min(n - j) as i64, n as i64);
        if dist > half && (mu[j] != 0.0 || phi[j] != 0.0) {
            return Err(IwError::SupportViolation(j));
        }
    }
    let grid = |f: &Fraction| -> usize { (f.num * (n as u64 / f.den)) as usize };
    let window: Vec<usize> = (0..n)
        .filter(|&j| Ratio::new(j.min(n - j) as i64, n as i64) <= half)
        .collect();
    let scatter = |centers: &[usize], src: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for &c in centers {
            for &j in &window {
                out[(c + j) % n] += src[j];
            }
        }
        out
    };
    let r_centers: Vec<usize> = reduced_set(&[q])?.fractions.iter().map(grid).collect();
    let f_centers: Vec<usize> = full_set(q)?.fractions.iter().map(grid).collect();
    // Left side scatters the pointwise product.
    let prod: Vec<f64> = mu.iter().zip(phi.iter()).map(|(a, b)| a * b).collect();
    let lhs = scatter(&r_centers, &prod);
    let mu_f = scatter(&f_centers, mu);
    let phi_r = scatter(&r_centers, phi);
    let scale = mu
        .iter()
        .chain(phi.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1.0);
    Ok((0..n).all(|xi| (lhs[xi] - mu_f[xi] * phi_r[xi]).abs() <= 1e-12 * scale * scale))
}

/// Grid, bandwidth, and signal for the band projections `f_{a/q}`.
///
/// The multiplier is the 0/1 band indicator of halfwidth `floor(eps*N/2)`
/// grid frequencies; exact band edges are what the vanishing arguments
/// need.
#[derive(Clone, Debug)]
pub struct ProjectionSpec {
    pub n: usize,
    pub eps: f64,
    pub signal: Vec<Complex64>,
}

impl ProjectionSpec {
    pub fn new(n: usize, eps: f64, signal: Vec<Complex64>) -> Result<Self, IwError> {
        if signal.len() != n {
            return Err(IwError::SignalLength {
                want: n,
                got: signal.len(),
            });
        }
        Ok(ProjectionSpec { n, eps, signal })
    }

    /// Unit impulse at 0: its DFT is identically 1, so every band is live.
    pub fn impulse(n: usize, eps: f64) -> Self {
        let mut signal = vec![Complex64::new(0.0, 0.0); n];
        signal[0] = Complex64::new(1.0, 0.0);
        ProjectionSpec { n, eps, signal }
    }

    pub fn band_halfwidth(&self) -> usize {
        (self.eps * self.n as f64 / 2.0).floor() as usize
    }
}

/// The vanishing-test threshold `r^{-1} q(Z)^{-2r}`.
pub fn eps_threshold(r: u32, q_max: u64) -> f64 {
    1.0 / (r as f64 * (q_max as f64).powi(2 * r as i32))
}

/// The band projection `f_{a/q}`: inverse DFT of the band indicator
/// centered at frequency `a N / q` times the DFT of the signal.
pub fn project(spec: &ProjectionSpec, frac: Fraction) -> Result<Vec<Complex64>, IwError> {
    if spec.n as u64 % frac.den != 0 {
        return Err(IwError::DenominatorGrid {
            q: frac.den,
            n: spec.n,
        });
    }
    let n = spec.n;
    let center = (frac.num * (n as u64 / frac.den)) as usize;
    let w = spec.band_halfwidth();
    let mut hat = dft(&spec.signal);
    for (xi, v) in hat.iter_mut().enumerate() {
        let off = (xi + n - center) % n;
        if off.min(n - off) > w {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    Ok(idft(&hat))
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishViolation {
    pub tuple: Vec<String>,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishReport {
    pub n: usize,
    pub r: u32,
    pub eps: f64,
    pub tolerance: f64,
    pub tuples_checked: u64,
    pub qualifying: u64,
    pub max_ratio: f64,
    pub violations: Vec<VanishViolation>,
}

impl VanishReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Relative-size tolerance for the floating vanishing tests.
pub const VANISH_TOLERANCE: f64 = 1e-8;

fn holder_norm_2r(v: &[Complex64], r: u32) -> f64 {
    let p = 2 * r as i32;
    let sum: f64 = v.iter().map(|z| z.norm().powi(p)).sum();
    sum.powf(1.0 / f64::from(p))
}

/// Alternately conjugated spatial product sum over the grid.
fn product_sum(projs: &[Vec<Complex64>], idx: &[usize], n: usize) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for x in 0..n {
        let mut term = Complex64::new(1.0, 0.0);
        for (pos, &j) in idx.iter().enumerate() {
            let v = projs[j][x];
            term *= if pos % 2 == 0 { v } else { v.conj() };
        }
        total += term;
    }
    total
}

fn validate_coprime_set(zs: &[u64], n: usize) -> Result<u64, IwError> {
    if zs.is_empty() {
        return Err(IwError::Empty);
    }
    let mut q_max = 0;
    for (i, &q) in zs.iter().enumerate() {
        if q <= 1 {
            return Err(IwError::DenominatorOne(q));
        }
        if n as u64 % q != 0 {
            return Err(IwError::DenominatorGrid { q, n });
        }
        q_max = q_max.max(q);
        for &p in &zs[i + 1..] {
            if q.gcd(&p) > 1 {
                return Err(IwError::NotCoprime(q, p));
            }
        }
    }
    Ok(q_max)
}

/// Step-1 vanishing: over all `2r`-tuples from `R(Z)` whose tuple of
/// denominators has the uniqueness property, the alternately conjugated
/// product sums vanish, provided `eps < r^{-1} q(Z)^{-2r}`.
pub fn denom_vanishing_test(
    spec: &ProjectionSpec,
    zs: &[u64],
    r: u32,
) -> Result<VanishReport, IwError> {
    let q_max = validate_coprime_set(zs, spec.n)?;
    let threshold = eps_threshold(r, q_max);
    if spec.eps >= threshold {
        return Err(IwError::EpsTooLarge {
            eps: spec.eps,
            threshold,
        });
    }
    denom_vanishing_probe(spec, zs, r)
}

/// The same enumeration as [`denom_vanishing_test`] without the bandwidth
/// precondition: the sharpness probe, run at inflated `eps` to exhibit
/// non-vanishing tuples.
pub fn denom_vanishing_probe(
    spec: &ProjectionSpec,
    zs: &[u64],
    r: u32,
) -> Result<VanishReport, IwError> {
    validate_coprime_set(zs, spec.n)?;
    let set = reduced_set(zs)?;
    let dens: Vec<u64> = set.fractions.iter().map(|f| f.den()).collect();
    let projs: Vec<Vec<Complex64>> = set
        .fractions
        .iter()
        .map(|&f| project(spec, f))
        .collect::<Result<_, _>>()?;
    let norms: Vec<f64> = projs.iter().map(|p| holder_norm_2r(p, r)).collect();
    let mut report = VanishReport {
        n: spec.n,
        r,
        eps: spec.eps,
        tolerance: VANISH_TOLERANCE,
        tuples_checked: 0,
        qualifying: 0,
        max_ratio: 0.0,
        violations: Vec::new(),
    };
    for idx in tuples(set.fractions.len(), 2 * r as usize) {
        report.tuples_checked += 1;
        let labels: Vec<u64> = idx.iter().map(|&j| dens[j]).collect();
        if !satisfies(&labels, &OrthoClass::TypeII) {
            continue;
        }
        report.qualifying += 1;
        let scale: f64 = idx.iter().map(|&j| norms[j]).product();
        let ratio = if scale == 0.0 {
            0.0
        } else {
            product_sum(&projs, &idx, spec.n).norm() / scale
        };
        report.max_ratio = report.max_ratio.max(ratio);
        if ratio > VANISH_TOLERANCE {
            report.violations.push(VanishViolation {
                tuple: idx.iter().map(|&j| set.fractions[j].to_string()).collect(),
                ratio,
            });
        }
    }
    Ok(report)
}

/// Step-2 vanishing (the r-linear setup): slot `i` draws its two fractions
/// from `R(q_i)` with pairwise coprime `q_i`, and the tuple of all `2r`
/// fractions must have the uniqueness property; the mixed product sums
/// then vanish for `eps < r^{-1} max(q_i)^{-2r}`.
pub fn numer_vanishing_test(
    spec: &ProjectionSpec,
    qs: &[u64],
    r: u32,
) -> Result<VanishReport, IwError> {
    if qs.len() != r as usize {
        return Err(IwError::Empty);
    }
    let q_max = validate_coprime_set(qs, spec.n)?;
    let threshold = eps_threshold(r, q_max);
    if spec.eps >= threshold {
        return Err(IwError::EpsTooLarge {
            eps: spec.eps,
            threshold,
        });
    }
    let per_slot: Vec<Vec<Fraction>> = qs
        .iter()
        .map(|&q| reduced_set(&[q]).map(|s| s.fractions))
        .collect::<Result<_, _>>()?;
    let mut fractions = Vec::new();
    let mut slot_start = Vec::new();
    for fr in &per_slot {
        slot_start.push(fractions.len());
        fractions.extend_from_slice(fr);
    }
    let projs: Vec<Vec<Complex64>> = fractions
        .iter()
        .map(|&f| project(spec, f))
        .collect::<Result<_, _>>()?;
    let norms: Vec<f64> = projs.iter().map(|p| holder_norm_2r(p, r)).collect();
    let mut report = VanishReport {
        n: spec.n,
        r,
        eps: spec.eps,
        tolerance: VANISH_TOLERANCE,
        tuples_checked: 0,
        qualifying: 0,
        max_ratio: 0.0,
        violations: Vec::new(),
    };
    // Mixed-radix counter over (u_1(0), u_1(1), ..., u_r(0), u_r(1)).
    let sizes: Vec<usize> = (0..2 * r as usize).map(|pos| per_slot[pos / 2].len()).collect();
    let mut counter = vec![0usize; 2 * r as usize];
    loop {
        report.tuples_checked += 1;
        let idx: Vec<usize> = counter
            .iter()
            .enumerate()
            .map(|(pos, &c)| slot_start[pos / 2] + c)
            .collect();
        // Uniqueness among the 2r fractions themselves.
        let labels: Vec<u64> = idx
            .iter()
            .map(|&j| fractions[j].num() << 32 | fractions[j].den())
            .collect();
        if satisfies(&labels, &OrthoClass::TypeII) {
            report.qualifying += 1;
            let scale: f64 = idx.iter().map(|&j| norms[j]).product();
            let ratio = if scale == 0.0 {
                0.0
            } else {
                product_sum(&projs, &idx, spec.n).norm() / scale
            };
            report.max_ratio = report.max_ratio.max(ratio);
            if ratio > VANISH_TOLERANCE {
                report.violations.push(VanishViolation {
                    tuple: idx.iter().map(|&j| fractions[j].to_string()).collect(),
                    ratio,
                });
            }
        }
        let mut pos = counter.len();
        loop {
            if pos == 0 {
                return Ok(report);
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < sizes[pos] {
                break;
            }
            counter[pos] = 0;
        }
    }
}

/// Empirical operator ratios on `Z/NZ` for the sum-of-projections
/// operator: the direct inequality against its two right-hand terms, and
/// the two converse inequalities, the second with the `(2^Omega(Z))^{1-1/r}`
/// factor on the bound side. Constants are recorded, not asserted.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorRatios {
    pub n: usize,
    pub r: u32,
    pub eps: f64,
    pub omega_z: u32,
    /// `||sum_u f_u||_{2r}`.
    pub op_norm: f64,
    /// `||(sum_u |f_u|^2)^{1/2}||_{2r}`.
    pub sq_norm: f64,
    /// `||(sum_q |F_q|^{2r})^{1/(2r)}||_{2r}`.
    pub diag_norm: f64,
    /// `||f||_{2r}`.
    pub signal_norm: f64,
    pub direct_ratio: f64,
    pub converse1_ratio: f64,
    pub converse2_ratio: f64,
}

pub fn operator_ratios(
    spec: &ProjectionSpec,
    zs: &[u64],
    r: u32,
) -> Result<OperatorRatios, IwError> {
    validate_coprime_set(zs, spec.n)?;
    let set = reduced_set(zs)?;
    let projs: Vec<Vec<Complex64>> = set
        .fractions
        .iter()
        .map(|&f| project(spec, f))
        .collect::<Result<_, _>>()?;
    let p = 2 * r as i32;
    let n = spec.n;
    let mut op_pow = 0.0;
    let mut sq_pow = 0.0;
    let mut diag_pow = 0.0;
    let mut signal_pow = 0.0;
    for x in 0..n {
        let total: Complex64 = projs.iter().map(|v| v[x]).sum();
        op_pow += total.norm().powi(p);
        let sq: f64 = projs.iter().map(|v| v[x].norm_sqr()).sum();
        sq_pow += sq.powf(r as f64);
        for &q in zs {
            let fq: Complex64 = set
                .fractions
                .iter()
                .zip(projs.iter())
                .filter(|(f, _)| f.den() == q)
                .map(|(_, v)| v[x])
                .sum();
            diag_pow += fq.norm().powi(p);
        }
        signal_pow += spec.signal[x].norm().powi(p);
    }
    let root = |pow: f64| pow.powf(1.0 / p as f64);
    let (op_norm, sq_norm, diag_norm, signal_norm) =
        (root(op_pow), root(sq_pow), root(diag_pow), root(signal_pow));
    let omega_z = zs.iter().map(|&q| factorize(q).len() as u32).max().unwrap_or(0);
    let amplification = (2.0f64.powi(omega_z as i32)).powf(1.0 - 1.0 / r as f64);
    let guard = |x: f64| if x == 0.0 { f64::NAN } else { x };
    Ok(OperatorRatios {
        n,
        r,
        eps: spec.eps,
        omega_z,
        op_norm,
        sq_norm,
        diag_norm,
        signal_norm,
        direct_ratio: op_norm / guard(sq_norm + diag_norm),
        converse1_ratio: sq_norm / guard(signal_norm),
        converse2_ratio: diag_norm / guard(amplification * signal_norm),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpSumReport {
    pub delta: f64,
    pub points: usize,
    pub lhs: f64,
    pub rhs_unit: f64,
    pub c_emp: f64,
    pub pass: bool,
}

/// Empirical-constant threshold for the separated exponential-sum bound;
/// the large-sieve form guarantees `c <= 2` for windows of length `1/delta`.
pub const EXPSUM_C_THRESHOLD: f64 = 4.0;

/// `sum_{n in J} |sum_j a_j e(xi_j n)|^2 <= (c/delta) sum |a_j|^2` over an
/// integer window `J` of length `1/delta` starting at `j0`.
pub fn expsum_bound(
    a: &[Complex64],
    xi: &[f64],
    delta: f64,
    j0: i64,
) -> Result<ExpSumReport, IwError> {
    if a.is_empty() || a.len() != xi.len() {
        return Err(IwError::Empty);
    }
    // delta-separation on the circle.
    let mut sorted: Vec<f64> = xi.iter().map(|x| x.rem_euclid(1.0)).collect();
    sorted.sort_by(|p, q| p.partial_cmp(q).unwrap());
    for i in 0..sorted.len() {
        let next = if i + 1 == sorted.len() {
            sorted[0] + 1.0
        } else {
            sorted[i + 1]
        };
        if sorted.len() > 1 && next - sorted[i] < delta - 1e-12 {
            return Err(IwError::NotSeparated);
        }
    }
    let window = (1.0 / delta).floor() as i64;
    let mut lhs = 0.0;
    for n in j0..j0 + window {
        let mut s = Complex64::new(0.0, 0.0);
        for (aj, &xj) in a.iter().zip(xi.iter()) {
            let theta = 2.0 * PI * xj * n as f64;
            s += aj * Complex64::new(theta.cos(), theta.sin());
        }
        lhs += s.norm_sqr();
    }
    let coeff_energy: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let rhs_unit = coeff_energy / delta;
    let c_emp = if coeff_energy == 0.0 { 0.0 } else { lhs / rhs_unit };
    Ok(ExpSumReport {
        delta,
        points: a.len(),
        lhs,
        rhs_unit,
        c_emp,
        pass: c_emp <= EXPSUM_C_THRESHOLD,
    })
}

/// The `xi_j = j/N` case of the exponential-sum bound is the exact
/// Parseval-Plancherel identity on `Z/NZ`; checked to 1e-9 relative with
/// seeded coefficients.
pub fn parseval_case(n: usize, seed: u64) -> bool {
    let mut rng = SplitMix64::new(seed);
    let a: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.f64() - 0.5, rng.f64() - 0.5))
        .collect();
    let mut lhs = 0.0;
    for m in 1..=n {
        let mut s = Complex64::new(0.0, 0.0);
        for (j, aj) in a.iter().enumerate() {
            let theta = 2.0 * PI * (j + 1) as f64 * m as f64 / n as f64;
            s += aj * Complex64::new(theta.cos(), theta.sin());
        }
        lhs += s.norm_sqr();
    }
    let rhs = n as f64 * a.iter().map(|z| z.norm_sqr()).sum::<f64>();
    (lhs - rhs).abs() <= 1e-9 * rhs.max(1.0)
}

/// Bump profiles for the sampling kernel, given by the closed form of the
/// inverse transform `psi` of a multiplier supported in `(-1/2, 1/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelProfile {
    /// `Psi(xi) = exp(-32 xi^2)`, so `psi(x) = sqrt(pi/32) exp(-pi^2 x^2 / 32)`.
    Gaussian,
    /// A transform concentrating `psi` at the single grid point 0.
    DiscreteDelta,
}

impl KernelProfile {
    fn psi(&self, x: f64) -> f64 {
        match self {
            KernelProfile::Gaussian => (PI / 32.0).sqrt() * (-PI * PI * x * x / 32.0).exp(),
            KernelProfile::DiscreteDelta => {
                if x == 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gaussian" => Some(KernelProfile::Gaussian),
            "delta" | "discretedelta" => Some(KernelProfile::DiscreteDelta),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub q: u64,
    pub delta: f64,
    pub n: u64,
    pub l1: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Uniform `l^1` threshold asserted for the Gaussian-profile default.
pub const KERNEL_L1_BOUND: f64 = 10.0;

/// `K(n) = Q 1_{Q|n}(n) * delta * psi(delta n)` on the grid
/// `(-N/2, N/2]`; reports `sum |K(n)|`, which stays bounded uniformly in
/// `Q` and `delta` as long as `delta Q <= 1`.
pub fn sampling_kernel_l1(
    q: u64,
    delta: f64,
    profile: KernelProfile,
    n: u64,
) -> Result<KernelReport, IwError> {
    if q == 0 || n == 0 || n % q != 0 || delta <= 0.0 || delta * q as f64 > 1.0 {
        return Err(IwError::KernelParams);
    }
    let half = n as i64 / 2;
    let mut l1 = 0.0;
    let mut m = -(half / q as i64) - 1;
    while m * q as i64 <= half {
        let x = m * q as i64;
        if x > -half {
            l1 += q as f64 * delta * profile.psi(delta * x as f64).abs();
        }
        m += 1;
    }
    Ok(KernelReport {
        q,
        delta,
        n,
        l1,
        bound: KERNEL_L1_BOUND,
        pass: l1 <= KERNEL_L1_BOUND,
    })
}
