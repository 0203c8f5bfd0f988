//! Exact `L^{2r}` norms of dyadic step functions and the inequality suite:
//! the direct inequality with its combinatorial constant, Khintchine,
//! nonconcentration, the bisection (Menchov-Rademacher) bound with its
//! maximal-norm corollary, the factorial sandwich, and square-function
//! ratios for Walsh partial-sum differences.
//!
//! Comparisons are made on `p`-th powers so everything stays rational.

use crate::dyadic::{rat, DyadicStep, Rat};
use crate::report::ser_rat;
use crate::tuplecheck::{self, OrthoClass};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NormError {
    #[error("p = {0} is odd; exact norms need even p")]
    OddP(u32),
    #[error("p must be a positive even integer, got {0}")]
    BadP(u32),
    #[error("negative entry in a non-negativity-constrained input")]
    NegativeEntry,
    #[error("sequence length {got} does not match 2^t + 1 = {want}")]
    BadBisectionLength { want: usize, got: usize },
    #[error("alpha * p must be an integer >= 1")]
    BadAlpha,
    #[error("need partial sums S_0..S_{want} for K = {k}, got {got}")]
    TooFewPartials { k: usize, want: usize, got: usize },
    #[error("partial-sum increments fail the hypothesized norm bound at ({k1},{k2})")]
    IncrementHypothesis { k1: usize, k2: usize },
    #[error("family is not Type I*: {violations} violating tuple(s)")]
    NotTypeIStar { violations: usize },
}

/// Two-sided norm comparison at the `p`-th power.
#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    pub p: u32,
    #[serde(serialize_with = "ser_rat")]
    pub lhs_pow: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub rhs_pow: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub ratio_bound: Rat,
    pub pass: bool,
}

/// Exact `\int |f|^p` for even `p`.
pub fn lp_pow(f: &DyadicStep, p: u32) -> Result<Rat, NormError> {
    if p == 0 {
        return Err(NormError::BadP(p));
    }
    if p % 2 != 0 {
        return Err(NormError::OddP(p));
    }
    Ok(int_pow(f, p))
}

/// Exact `\int f^n` for natural `n` (no absolute value).
fn int_pow(f: &DyadicStep, n: u32) -> Rat {
    let mut sum = Rat::zero();
    for v in f.values() {
        sum += pow_rat(v, n);
    }
    sum / rat(1i64 << f.level())
}

fn pow_rat(v: &Rat, n: u32) -> Rat {
    Rat::new(v.numer().pow(n), v.denom().pow(n))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// The direct-inequality constant `(2r)! / (r! 2^r)`.
pub fn direct_constant(r: u32) -> Rat {
    Rat::new(
        factorial(2 * r as u64),
        factorial(r as u64) * BigInt::from(2u64).pow(r),
    )
}

/// Exact square-function power `\int (sum_n f_n^2)^r`.
pub fn square_function_pow(family: &[DyadicStep], r: u32) -> Rat {
    let mut sq = DyadicStep::zero();
    for f in family {
        sq = sq.add(&f.mul(f));
    }
    int_pow(&sq, r)
}

/// Direct inequality `\int (sum f_n)^{2r} <= C_r \int (sum f_n^2)^r` with
/// `C_r = (2r)!/(r! 2^r)`. The caller is responsible for the family being
/// Type I (the inequality is a theorem in that case).
pub fn direct_check(family: &[DyadicStep], r: u32) -> NormReport {
    let mut sum = DyadicStep::zero();
    for f in family {
        sum = sum.add(f);
    }
    let lhs = int_pow(&sum, 2 * r);
    let c = direct_constant(r);
    let rhs = &c * square_function_pow(family, r);
    NormReport {
        p: 2 * r,
        pass: lhs <= rhs,
        lhs_pow: lhs,
        rhs_pow: rhs,
        ratio_bound: c,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KhintchineReport {
    #[serde(serialize_with = "ser_rat")]
    pub l2_lhs: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub l2_rhs: Rat,
    pub l2_exact: bool,
    pub norm: NormReport,
}

impl KhintchineReport {
    pub fn passed(&self) -> bool {
        self.l2_exact && self.norm.pass
    }
}

/// Khintchine for `f = sum a_n r_n`: the exact `L^2` identity
/// `\int f^2 = sum a_n^2`, and the direct inequality
/// `\int f^{2r} <= C_r (sum a_n^2)^r`.
pub fn khintchine_check(coeffs: &[Rat], r: u32) -> KhintchineReport {
    let mut f = DyadicStep::zero();
    for (n, a) in coeffs.iter().enumerate() {
        f = f.add(&DyadicStep::rademacher(n as u32).scale(a));
    }
    let sum_sq: Rat = coeffs.iter().map(|a| a * a).sum();
    let l2_lhs = int_pow(&f, 2);
    let lhs = int_pow(&f, 2 * r);
    let c = direct_constant(r);
    let rhs = &c * pow_rat(&sum_sq, r);
    KhintchineReport {
        l2_exact: l2_lhs == sum_sq,
        l2_lhs,
        l2_rhs: sum_sq,
        norm: NormReport {
            p: 2 * r,
            pass: lhs <= rhs,
            lhs_pow: lhs,
            rhs_pow: rhs,
            ratio_bound: c,
        },
    }
}

/// Elementary symmetric polynomial `e_r` of the entries.
fn elementary_symmetric(a: &[Rat], r: usize) -> Rat {
    let mut e = vec![Rat::zero(); r + 1];
    e[0] = Rat::one();
    for x in a {
        for j in (1..=r).rev() {
            let inc = &e[j - 1] * x;
            e[j] += inc;
        }
    }
    e[r].clone()
}

/// Nonconcentration inequality for non-negative entries:
/// `(sum a_n)^r <= (r(r-1))^{r-1} sum a_n^r + 2 sum^# a_{n_1}...a_{n_r}`,
/// where the sharp sum runs over ordered tuples with pairwise distinct
/// indices (equal to `r! e_r`).
pub fn nonconcentration_check(a: &[Rat], r: u32) -> Result<bool, NormError> {
    if a.iter().any(|x| x.is_negative()) {
        return Err(NormError::NegativeEntry);
    }
    let total: Rat = a.iter().sum();
    let lhs = pow_rat(&total, r);
    let coeff = pow_rat(&rat((r as i64) * (r as i64 - 1)), r - 1);
    let power_sum: Rat = a.iter().map(|x| pow_rat(x, r)).sum();
    let sharp = Rat::from_integer(factorial(r as u64))
        * elementary_symmetric(a, r as usize);
    Ok(lhs <= coeff * power_sum + rat(2) * sharp)
}

/// The bisection inequality: for `b(0..=2^t)`,
/// `max_n |b(n)-b(0)|^p <= (t+1)^{p-1} sum_i sum_v |block increment|^p`.
pub fn menchov_rademacher_check(b: &[Rat], t: u32, p: u32) -> Result<bool, NormError> {
    let want = (1usize << t) + 1;
    if b.len() != want {
        return Err(NormError::BadBisectionLength { want, got: b.len() });
    }
    if p == 0 {
        return Err(NormError::BadP(p));
    }
    let lhs = b
        .iter()
        .map(|v| pow_rat(&(v - &b[0]).abs(), p))
        .max()
        .unwrap();
    let mut rhs = Rat::zero();
    for i in 0..=t {
        let step = 1usize << (t - i);
        for v in 0..1usize << i {
            let inc = (&b[(v + 1) * step] - &b[v * step]).abs();
            rhs += pow_rat(&inc, p);
        }
    }
    rhs *= pow_rat(&rat(t as i64 + 1), p - 1);
    Ok(lhs <= rhs)
}

/// Maximal partial-sum norm bound derived from the bisection lemma, with
/// the proof's explicit constant: given partial sums `S_0..S_{2^t}` whose
/// increments satisfy `||S_{k2}-S_{k1}||_p^p <= c^p (k2-k1)^{p alpha}`,
/// then `||max_{0<=k<=K} |S_k|\,||_p^p <= c^p (t+1)^p 2^{t p alpha}` where
/// `2^{t-1} <= K <= 2^t`.
pub fn maximal_norm_bound(
    partials: &[DyadicStep],
    k: usize,
    p: u32,
    alpha: &Rat,
    c: &Rat,
) -> Result<NormReport, NormError> {
    if p == 0 || p % 2 != 0 {
        return Err(NormError::BadP(p));
    }
    let pa = alpha * rat(p as i64);
    if !pa.is_integer() || pa < Rat::one() {
        return Err(NormError::BadAlpha);
    }
    let pa: u32 = pa
        .to_integer()
        .try_into()
        .map_err(|_| NormError::BadAlpha)?;
    let mut t = 0u32;
    while (1usize << t) < k {
        t += 1;
    }
    let top = 1usize << t;
    if partials.len() <= top {
        return Err(NormError::TooFewPartials {
            k,
            want: top,
            got: partials.len(),
        });
    }
    let cp = pow_rat(c, p);
    for k1 in 0..top {
        for k2 in (k1 + 1)..=top {
            let inc = lp_pow(&partials[k2].sub(&partials[k1]), p)?;
            let bound = &cp * pow_rat(&rat((k2 - k1) as i64), pa);
            if inc > bound {
                return Err(NormError::IncrementHypothesis { k1, k2 });
            }
        }
    }
    let mut running_max = partials[0].abs();
    for s in partials.iter().take(k + 1).skip(1) {
        running_max = running_max.max_with(&s.abs());
    }
    let lhs = int_pow(&running_max, p);
    let rhs = cp
        * pow_rat(&rat(t as i64 + 1), p)
        * Rat::from_integer(BigInt::from(2u64).pow(t * pa));
    Ok(NormReport {
        p,
        pass: lhs <= rhs,
        lhs_pow: lhs,
        rhs_pow: rhs,
        ratio_bound: pow_rat(&rat(t as i64 + 1), p),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub p: u32,
    #[serde(serialize_with = "ser_rat")]
    pub lower_pow: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub middle_pow: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub upper_pow: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub factor: Rat,
    pub pass: bool,
}

/// The factorial sandwich for a Type I* family:
/// `\int (sum f_n^2)^r <= \int (sum f_n)^{2r} <= r! \int (sum f_n^2)^r`.
/// Rejects families that fail the Type I* verification.
pub fn type1star_sandwich(family: &[DyadicStep], r: u32) -> Result<SandwichReport, NormError> {
    let check = tuplecheck::verify_family(family, r as usize, &OrthoClass::TypeIStar);
    if !check.passed() {
        return Err(NormError::NotTypeIStar {
            violations: check.violations.len(),
        });
    }
    let mut sum = DyadicStep::zero();
    for f in family {
        sum = sum.add(f);
    }
    let middle = int_pow(&sum, 2 * r);
    let lower = square_function_pow(family, r);
    let factor = Rat::from_integer(factorial(r as u64));
    let upper = &factor * &lower;
    Ok(SandwichReport {
        p: 2 * r,
        pass: lower <= middle && middle <= upper,
        lower_pow: lower,
        middle_pow: middle,
        upper_pow: upper,
        factor,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PaleyReport {
    pub p: u32,
    #[serde(serialize_with = "ser_rat")]
    pub sq_pow: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub f_pow: Rat,
    /// `p`-th power of the empirical direct constant `||f||_p / ||Sf||_p`.
    pub ratio_direct_pow: Option<f64>,
    /// `p`-th power of the empirical converse constant `||Sf||_p / ||f||_p`.
    pub ratio_converse_pow: Option<f64>,
}

/// Both square-function ratios for the dyadic differences of `f`. The
/// constants are recorded, not asserted: only finiteness is claimed.
pub fn paley_ratio(f: &DyadicStep, p: u32) -> Result<PaleyReport, NormError> {
    if p == 0 || p % 2 != 0 {
        return Err(NormError::BadP(p));
    }
    let r = p / 2;
    let diffs: Vec<DyadicStep> = (0..=f.level())
        .map(|n| f.dyadic_diff(n).expect("index within machine width"))
        .collect();
    let sq_pow = square_function_pow(&diffs, r);
    let f_pow = lp_pow(f, p)?;
    let to_f64 = |x: &Rat| -> f64 {
        let n: f64 = x.numer().to_string().parse().unwrap_or(f64::INFINITY);
        let d: f64 = x.denom().to_string().parse().unwrap_or(f64::INFINITY);
        n / d
    };
    let (ratio_direct_pow, ratio_converse_pow) = if sq_pow.is_zero() || f_pow.is_zero() {
        (None, None)
    } else {
        (
            Some(to_f64(&f_pow) / to_f64(&sq_pow)),
            Some(to_f64(&sq_pow) / to_f64(&f_pow)),
        )
    };
    Ok(PaleyReport {
        p,
        sq_pow,
        f_pow,
        ratio_direct_pow,
        ratio_converse_pow,
    })
}
