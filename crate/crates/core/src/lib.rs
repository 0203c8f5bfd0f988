//! Exact-arithmetic and empirical verification toolkit for square-function
//! inequalities and their arithmetic relatives.
//!
//! The crate is organized around the objects it computes with:
//!
//! - [`dyadic`] — exact step functions on `[0,1)` with Rademacher and Walsh
//!   functions, Walsh partial sums, and the Hardy-Littlewood maximal function;
//! - [`tuplecheck`] — vanishing predicates on index tuples and an exhaustive
//!   verification engine over finite function families;
//! - [`norms`] — exact `L^{2r}` norms and the inequality suite (Khintchine,
//!   nonconcentration, Menchov-Rademacher, the factorial sandwich);
//! - [`zmodn`] — Dirichlet characters, complete character sums with Weil
//!   certificates, Gauss/Kloosterman sums, DFT on `Z/NZ`;
//! - [`iw`] — reduced-fraction frequency sets, splitting and factorization
//!   identities, band projections and their vanishing tests;
//! - [`burgess`] — the short character sum pipeline: prime set, redundancy
//!   counts, second moments, maximal partial-sum norms, final bounds;
//! - [`vino`] — power-sum system solution counting and the equal-power-sums
//!   search.
//!
//! Everything that can be exact is exact (arbitrary-precision rationals or
//! integers); floating point appears only where transcendental values force
//! it, always with a stated tolerance.

// Parity tests read better as `% 2 == 0`, and the grid loops index several
// arrays at once.
#![allow(clippy::manual_is_multiple_of)]
#![allow(clippy::needless_range_loop)]

pub mod burgess;
pub mod corpus;
pub mod dyadic;
pub mod iw;
pub mod norms;
pub mod primes;
pub mod report;
pub mod rng;
pub mod tuplecheck;
pub mod vino;
pub mod zmodn;

pub use dyadic::{DyadicStep, Rat};
