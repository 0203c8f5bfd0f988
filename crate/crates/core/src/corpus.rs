//! Seeded generators for experiment corpora: random step functions,
//! disjointly supported families, and rational coefficient vectors.
//! Everything is driven by [`SplitMix64`] so corpora are reproducible
//! byte-for-byte from a seed.

use crate::dyadic::{DyadicStep, Rat};
use crate::rng::SplitMix64;

/// Random step function at the given level with values `k / den`,
/// `k` uniform in `[-num_bound, num_bound]`.
pub fn random_step(level: u32, num_bound: i64, den: i64, rng: &mut SplitMix64) -> DyadicStep {
    let values: Vec<Rat> = (0..1usize << level)
        .map(|_| rng.rational(num_bound, den))
        .collect();
    DyadicStep::from_values(level, values).expect("length matches level")
}

/// A family of `parts` functions supported on consecutive disjoint blocks
/// of the level grid. Pairwise products vanish identically, which makes
/// the family superorthogonal in every positional sense.
pub fn disjoint_family(
    level: u32,
    parts: usize,
    num_bound: i64,
    den: i64,
    rng: &mut SplitMix64,
) -> Vec<DyadicStep> {
    let cells = 1usize << level;
    assert!(parts >= 1 && parts <= cells);
    let block = cells / parts;
    (0..parts)
        .map(|p| {
            let mut values = vec![Rat::from_integer(0.into()); cells];
            let hi = if p + 1 == parts { cells } else { (p + 1) * block };
            for v in values.iter_mut().take(hi).skip(p * block) {
                *v = rng.rational(num_bound, den);
            }
            DyadicStep::from_values(level, values).expect("length matches level")
        })
        .collect()
}

/// Random rational coefficient vector.
pub fn random_coeffs(len: usize, num_bound: i64, den: i64, rng: &mut SplitMix64) -> Vec<Rat> {
    (0..len).map(|_| rng.rational(num_bound, den)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn disjoint_family_products_vanish() {
        let mut rng = SplitMix64::new(2);
        let fam = disjoint_family(4, 3, 9, 4, &mut rng);
        for i in 0..fam.len() {
            for j in 0..fam.len() {
                if i != j {
                    assert!(fam[i].mul(&fam[j]).integrate().is_zero());
                }
            }
        }
    }

    #[test]
    fn corpus_is_seed_deterministic() {
        let a = random_step(5, 8, 8, &mut SplitMix64::new(7));
        let b = random_step(5, 8, 8, &mut SplitMix64::new(7));
        assert_eq!(a, b);
    }
}
