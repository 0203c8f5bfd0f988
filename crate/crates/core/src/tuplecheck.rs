//! Vanishing predicates on index tuples and the exhaustive verification
//! engine over finite function families.
//!
//! A family is superorthogonal of a given type when the alternately
//! conjugated product of any `2r`-tuple of members integrates to zero
//! whenever the tuple of indices satisfies the type predicate. For
//! real-valued step functions conjugation is the identity; the engine is
//! also reused by the finite-field module through [`tuples`].

use crate::dyadic::{fmt_rat, DyadicStep, FamilyGrid};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TupleCheckError {
    #[error("tuple length {0} is not even")]
    OddLength(usize),
    #[error("tuple has a value of multiplicity one; the sorting lemma does not apply")]
    UniquenessPresent,
    #[error("unknown orthogonality class {0:?}")]
    UnknownClass(String),
}

/// The superorthogonality type predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrthoClass {
    /// Some value appears an odd number of times.
    TypeI,
    /// Some value appears precisely once (the uniqueness property).
    TypeII,
    /// A strict unique maximum exists.
    TypeIII,
    /// Some entry exceeds every other by at least `c`.
    TypeIIIPrime(u32),
    /// The odd-position subtuple is not a permutation of the even-position one.
    TypeIStar,
    /// Product of odd-position entries differs from product of even-position entries.
    MultiplicativeDiagonal,
}

impl OrthoClass {
    pub fn name(&self) -> String {
        match self {
            OrthoClass::TypeI => "type1".into(),
            OrthoClass::TypeII => "type2".into(),
            OrthoClass::TypeIII => "type3".into(),
            OrthoClass::TypeIIIPrime(c) => format!("type3p:{c}"),
            OrthoClass::TypeIStar => "type1star".into(),
            OrthoClass::MultiplicativeDiagonal => "multdiag".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self, TupleCheckError> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "type1" | "i" => Ok(OrthoClass::TypeI),
            "type2" | "ii" => Ok(OrthoClass::TypeII),
            "type3" | "iii" => Ok(OrthoClass::TypeIII),
            "type1star" | "istar" => Ok(OrthoClass::TypeIStar),
            "multdiag" => Ok(OrthoClass::MultiplicativeDiagonal),
            _ => {
                if let Some(c) = s.strip_prefix("type3p:") {
                    let c: u32 = c
                        .parse()
                        .map_err(|_| TupleCheckError::UnknownClass(s.clone()))?;
                    if c >= 1 {
                        return Ok(OrthoClass::TypeIIIPrime(c));
                    }
                }
                Err(TupleCheckError::UnknownClass(s))
            }
        }
    }
}

/// An ordered tuple of `2r` indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTuple {
    entries: Vec<u64>,
}

impl IndexTuple {
    pub fn new(entries: Vec<u64>) -> Result<Self, TupleCheckError> {
        if entries.len() % 2 != 0 || entries.is_empty() {
            return Err(TupleCheckError::OddLength(entries.len()));
        }
        Ok(IndexTuple { entries })
    }

    pub fn r(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn satisfies(&self, class: &OrthoClass) -> bool {
        satisfies(&self.entries, class)
    }
}

/// Does the tuple meet the vanishing condition of the class?
pub fn satisfies(entries: &[u64], class: &OrthoClass) -> bool {
    debug_assert!(entries.len() % 2 == 0 && !entries.is_empty());
    match class {
        OrthoClass::TypeI => {
            let mut counts = HashMap::new();
            for &e in entries {
                *counts.entry(e).or_insert(0u32) += 1;
            }
            counts.values().any(|&c| c % 2 == 1)
        }
        OrthoClass::TypeII => {
            let mut counts = HashMap::new();
            for &e in entries {
                *counts.entry(e).or_insert(0u32) += 1;
            }
            counts.values().any(|&c| c == 1)
        }
        OrthoClass::TypeIII => {
            let max = *entries.iter().max().unwrap();
            entries.iter().filter(|&&e| e == max).count() == 1
        }
        OrthoClass::TypeIIIPrime(c) => {
            let max = *entries.iter().max().unwrap();
            if entries.iter().filter(|&&e| e == max).count() != 1 {
                return false;
            }
            entries
                .iter()
                .filter(|&&e| e != max)
                .all(|&e| max >= e + u64::from(*c))
        }
        OrthoClass::TypeIStar => {
            let (mut odd, mut even) = split_positions(entries);
            odd.sort_unstable();
            even.sort_unstable();
            odd != even
        }
        OrthoClass::MultiplicativeDiagonal => {
            let (odd, even) = split_positions(entries);
            let p1: BigUint = odd.iter().map(|&e| BigUint::from(e)).product();
            let p2: BigUint = even.iter().map(|&e| BigUint::from(e)).product();
            p1 != p2
        }
    }
}

/// Entries at odd and even positions (1-based), i.e. `(n_1,n_3,...)` and
/// `(n_2,n_4,...)`.
fn split_positions(entries: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let odd = entries.iter().step_by(2).copied().collect();
    let even = entries.iter().skip(1).step_by(2).copied().collect();
    (odd, even)
}

/// Lexicographic iterator over all tuples in `{0..base}^len`.
pub struct TupleIter {
    base: usize,
    current: Vec<usize>,
    done: bool,
}

pub fn tuples(base: usize, len: usize) -> TupleIter {
    TupleIter {
        base,
        current: vec![0; len],
        done: base == 0 || len == 0,
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // Advance the mixed-radix counter, most significant digit first.
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.base {
                break;
            }
            self.current[i] = 0;
        }
        Some(out)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub tuple: Vec<u64>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub class: String,
    pub r: usize,
    pub family_size: usize,
    pub tuples_checked: u64,
    pub satisfying: u64,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively verify superorthogonality of a step-function family.
/// Indices are the positions `0..family.len()`.
pub fn verify_family(family: &[DyadicStep], r: usize, class: &OrthoClass) -> VerificationReport {
    let labels: Vec<u64> = (0..family.len() as u64).collect();
    verify_family_labeled(family, &labels, r, class)
}

/// As [`verify_family`], with explicit index labels (the predicates and the
/// reported tuples use the labels, e.g. Walsh indices).
pub fn verify_family_labeled(
    family: &[DyadicStep],
    labels: &[u64],
    r: usize,
    class: &OrthoClass,
) -> VerificationReport {
    assert_eq!(family.len(), labels.len());
    let grid = FamilyGrid::new(family, 2 * r);
    let mut report = VerificationReport {
        class: class.name(),
        r,
        family_size: family.len(),
        tuples_checked: 0,
        satisfying: 0,
        violations: Vec::new(),
    };
    let mut labeled = vec![0u64; 2 * r];
    for idx in tuples(family.len(), 2 * r) {
        report.tuples_checked += 1;
        for (slot, &j) in labeled.iter_mut().zip(idx.iter()) {
            *slot = labels[j];
        }
        if !satisfies(&labeled, class) {
            continue;
        }
        report.satisfying += 1;
        let integral = grid.product_integral(&idx);
        if !integral.is_zero() {
            report.violations.push(Violation {
                tuple: labeled.clone(),
                value: fmt_rat(&integral),
            });
        }
    }
    report
}

/// The sorting map of the marriage lemma: split `r` pairs without the
/// uniqueness property into two `r`-selections that each cover the full
/// value set. Returns `kappa` with `kappa[i]` selecting `pairs[i].0` or
/// `pairs[i].1` for the first selection.
pub fn hall_sort(pairs: &[(u64, u64)]) -> Result<Vec<u8>, TupleCheckError> {
    let r = pairs.len();
    let mut counts: HashMap<u64, u32> = HashMap::new();
    for &(a, b) in pairs {
        *counts.entry(a).or_insert(0) += 1;
        *counts.entry(b).or_insert(0) += 1;
    }
    if counts.values().any(|&c| c == 1) {
        return Err(TupleCheckError::UniquenessPresent);
    }
    let mut slots: Vec<[u64; 2]> = pairs.iter().map(|&(a, b)| [a, b]).collect();
    let mut fresh = pairs
        .iter()
        .map(|&(a, b)| a.max(b))
        .max()
        .unwrap_or(0)
        .wrapping_add(1);

    // Multiplicity reduction: rewrite slots until every value appears
    // exactly twice. Each step keeps the no-uniqueness property, and the
    // final coloring pulls back to the original pairs.
    loop {
        let mut counts: HashMap<u64, u32> = HashMap::new();
        for s in &slots {
            *counts.entry(s[0]).or_insert(0) += 1;
            *counts.entry(s[1]).or_insert(0) += 1;
        }
        if counts.len() == r {
            break;
        }
        if let Some((&v, _)) = counts.iter().filter(|(_, &c)| c >= 4).min_by_key(|(v, _)| **v) {
            let mut changed = 0;
            'outer: for s in slots.iter_mut() {
                for side in 0..2 {
                    if s[side] == v {
                        s[side] = fresh;
                        changed += 1;
                        if changed == 2 {
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            let mut triples: Vec<u64> = counts
                .iter()
                .filter(|(_, &c)| c >= 3)
                .map(|(&v, _)| v)
                .collect();
            triples.sort_unstable();
            let (v1, v2) = (triples[0], triples[1]);
            for target in [v1, v2] {
                'scan: for s in slots.iter_mut() {
                    for side in 0..2 {
                        if s[side] == target {
                            s[side] = fresh;
                            break 'scan;
                        }
                    }
                }
            }
        }
        fresh = fresh.wrapping_add(1);
    }

    // Every value now has exactly two incident slots; the pair/value
    // bipartite graph is a union of even cycles. Walk each cycle,
    // alternating red (selected) and blue edges.
    let mut slot_of: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (i, s) in slots.iter().enumerate() {
        slot_of.entry(s[0]).or_default().push((i, 0));
        slot_of.entry(s[1]).or_default().push((i, 1));
    }
    let mut visited = vec![false; r];
    let mut kappa = vec![0u8; r];
    for start in 0..r {
        if visited[start] {
            continue;
        }
        let mut i = start;
        let mut red_side = 0usize;
        loop {
            visited[i] = true;
            kappa[i] = red_side as u8;
            let blue_side = 1 - red_side;
            let v = slots[i][blue_side];
            let ends = &slot_of[&v];
            let (j, sj) = if ends[0] == (i, blue_side) {
                ends[1]
            } else {
                ends[0]
            };
            if visited[j] {
                break;
            }
            // The partner edge of a blue edge is red at its pair.
            i = j;
            red_side = sj;
        }
    }
    Ok(kappa)
}

/// Check that both selections of a `kappa` cover the full value set.
pub fn hall_sort_valid(pairs: &[(u64, u64)], kappa: &[u8]) -> bool {
    let full: std::collections::BTreeSet<u64> =
        pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let pick = |flip: u8| -> std::collections::BTreeSet<u64> {
        pairs
            .iter()
            .zip(kappa.iter())
            .map(|(&(a, b), &k)| if k ^ flip == 0 { a } else { b })
            .collect()
    };
    pick(0) == full && pick(1) == full
}

/// Exhaustively confirm the predicate containment chain
/// `TypeIII => TypeII => TypeI` over all tuples with entries below the bound.
pub fn predicate_implications(r: usize, index_bound: u64) -> bool {
    for idx in tuples(index_bound as usize, 2 * r) {
        let t: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
        let t3 = satisfies(&t, &OrthoClass::TypeIII);
        let t2 = satisfies(&t, &OrthoClass::TypeII);
        let t1 = satisfies(&t, &OrthoClass::TypeI);
        if (t3 && !t2) || (t2 && !t1) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn predicate_examples() {
        assert!(satisfies(&[1, 1, 2, 3], &OrthoClass::TypeII));
        assert!(!satisfies(&[1, 1, 2, 2], &OrthoClass::TypeI));
        assert!(satisfies(&[7, 1, 2, 5], &OrthoClass::TypeIII));
        assert!(!satisfies(&[5, 1, 2, 5], &OrthoClass::TypeIII));
        let t = IndexTuple::new(vec![1, 1, 2, 3]).unwrap();
        assert_eq!(t.r(), 2);
        assert!(t.satisfies(&OrthoClass::TypeII));
        assert!(IndexTuple::new(vec![1, 2, 3]).is_err());
    }

    #[test]
    fn type3prime_needs_gap() {
        assert!(satisfies(&[8, 2, 3, 1], &OrthoClass::TypeIIIPrime(4)));
        assert!(!satisfies(&[8, 2, 3, 1], &OrthoClass::TypeIIIPrime(6)));
        // A repeated maximum never qualifies.
        assert!(!satisfies(&[8, 8, 1, 1], &OrthoClass::TypeIIIPrime(2)));
    }

    #[test]
    fn type1star_and_multdiag() {
        assert!(satisfies(&[1, 2, 1, 2], &OrthoClass::TypeIStar));
        assert!(!satisfies(&[1, 1, 2, 2], &OrthoClass::TypeIStar));
        assert!(!satisfies(&[1, 2, 2, 1], &OrthoClass::TypeIStar));
        assert!(satisfies(&[2, 3, 4, 5], &OrthoClass::MultiplicativeDiagonal));
        assert!(!satisfies(&[2, 4, 6, 3], &OrthoClass::MultiplicativeDiagonal));
    }

    #[test]
    fn class_names_round_trip() {
        for class in [
            OrthoClass::TypeI,
            OrthoClass::TypeII,
            OrthoClass::TypeIII,
            OrthoClass::TypeIIIPrime(4),
            OrthoClass::TypeIStar,
            OrthoClass::MultiplicativeDiagonal,
        ] {
            assert_eq!(OrthoClass::parse(&class.name()).unwrap(), class);
        }
        assert!(OrthoClass::parse("type9").is_err());
    }

    #[test]
    fn rademacher_family_is_type1() {
        let family: Vec<DyadicStep> = (0..4).map(DyadicStep::rademacher).collect();
        let report = verify_family(&family, 2, &OrthoClass::TypeI);
        assert_eq!(report.tuples_checked, 256);
        assert!(report.passed());
    }

    #[test]
    fn walsh_family_witnesses_type2_failure() {
        let labels = [1u64, 2, 4, 7];
        let family: Vec<DyadicStep> = labels
            .iter()
            .map(|&n| DyadicStep::walsh(n).unwrap())
            .collect();
        let report = verify_family_labeled(&family, &labels, 2, &OrthoClass::TypeII);
        assert!(!report.passed());
        let witness = report
            .violations
            .iter()
            .find(|v| v.tuple == vec![1, 2, 4, 7])
            .expect("the XOR obstruction tuple must appear");
        assert_eq!(witness.value, "1/1");
    }

    #[test]
    fn dyadic_differences_are_type3() {
        // Dyadic differences of a small step function, Type III, r = 1.
        let f = DyadicStep::from_values(
            3,
            (0..8).map(|i| crate::dyadic::ratio(i as i64 - 3, 2)).collect(),
        )
        .unwrap();
        let family: Vec<DyadicStep> = (0..=3).map(|n| f.dyadic_diff(n).unwrap()).collect();
        let report = verify_family(&family, 1, &OrthoClass::TypeIII);
        assert!(report.passed());
    }

    #[test]
    fn hall_sort_examples() {
        let pairs = [(1, 1), (2, 2)];
        let kappa = hall_sort(&pairs).unwrap();
        assert!(hall_sort_valid(&pairs, &kappa));

        let pairs = [(1, 2), (2, 1)];
        let kappa = hall_sort(&pairs).unwrap();
        assert!(hall_sort_valid(&pairs, &kappa));

        // Multiplicity reduction case; checked against the exhaustive oracle.
        let pairs = [(1, 1), (1, 1), (2, 3), (3, 2)];
        let kappa = hall_sort(&pairs).unwrap();
        assert!(hall_sort_valid(&pairs, &kappa));
        let oracle_has_valid = (0..16u8).any(|mask| {
            let k: Vec<u8> = (0..4).map(|i| mask >> i & 1).collect();
            hall_sort_valid(&pairs, &k)
        });
        assert!(oracle_has_valid);

        assert_eq!(
            hall_sort(&[(1, 2), (2, 2)]),
            Err(TupleCheckError::UniquenessPresent)
        );
    }

    #[test]
    fn hall_sort_random_no_uniqueness_tuples() {
        let mut rng = SplitMix64::new(42);
        let mut found = 0;
        while found < 200 {
            let r = 2 + (rng.below(4) as usize);
            let entries: Vec<u64> = (0..2 * r).map(|_| rng.below(4)).collect();
            if satisfies(&entries, &OrthoClass::TypeII) {
                continue;
            }
            let pairs: Vec<(u64, u64)> =
                entries.chunks(2).map(|c| (c[0], c[1])).collect();
            let kappa = hall_sort(&pairs).unwrap();
            assert!(hall_sort_valid(&pairs, &kappa), "pairs {pairs:?}");
            found += 1;
        }
    }

    #[test]
    fn implication_chain_holds() {
        assert!(predicate_implications(2, 4));
        assert!(predicate_implications(3, 4));
        assert!(predicate_implications(1, 3));
    }

    #[test]
    fn type1_implies_type1star_exhaustively() {
        // A value of odd total multiplicity forces the two position
        // multisets apart, so the Type I predicate is contained in the
        // Type I* predicate; this is what makes a Type I* family Type I.
        // (The reverse containment fails, e.g. at (0,1,0,1).)
        for r in 1..=3usize {
            for idx in tuples(6, 2 * r) {
                let t: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
                if satisfies(&t, &OrthoClass::TypeI) {
                    assert!(satisfies(&t, &OrthoClass::TypeIStar), "tuple {t:?}");
                }
            }
        }
        assert!(satisfies(&[0, 1, 0, 1], &OrthoClass::TypeIStar));
        assert!(!satisfies(&[0, 1, 0, 1], &OrthoClass::TypeI));
    }

    #[test]
    fn family_containment_for_passing_types() {
        // A family passing Type I passes Type II and Type III: there are
        // fewer satisfying tuples to check.
        let family: Vec<DyadicStep> = (0..3).map(DyadicStep::rademacher).collect();
        let t1 = verify_family(&family, 2, &OrthoClass::TypeI);
        let t2 = verify_family(&family, 2, &OrthoClass::TypeII);
        let t3 = verify_family(&family, 2, &OrthoClass::TypeIII);
        assert!(t1.passed() && t2.passed() && t3.passed());
        assert!(t3.satisfying <= t2.satisfying);
        assert!(t2.satisfying <= t1.satisfying);
    }

    #[test]
    fn empty_family_passes_vacuously() {
        let report = verify_family(&[], 2, &OrthoClass::TypeI);
        assert!(report.passed());
        assert_eq!(report.tuples_checked, 0);
    }

    #[test]
    fn report_serializes_to_expected_shape() {
        let family: Vec<DyadicStep> = (0..2).map(DyadicStep::rademacher).collect();
        let report = verify_family(&family, 1, &OrthoClass::TypeI);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"class\":\"type1\""));
        assert!(json.contains("\"violations\":[]"));
    }
}
