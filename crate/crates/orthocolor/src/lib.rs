//! Exact orthogonality graphs and colorings on the unit sphere.
//!
//! Everything correctness-bearing in this crate is computed over arbitrary
//! precision rational numbers: dot products, orthogonality, octant
//! classification, 2-adic valuations. Floating point appears only inside
//! sampling heuristics (random great circles, angular grids), and every
//! stochastic counterexample is re-verified exactly before it is reported.
//!
//! Modules:
//!
//! * [`numerics`] — rational scalars/vectors, the triple-product sign, the
//!   2-adic valuation.
//! * [`sphere`] — rational points on the unit sphere as primitive integer
//!   quadruples, enumeration by height, orthogonal pairs.
//! * [`graph`] — orthogonality graphs of vector configurations, including the
//!   built-in 13-vector configuration.
//! * [`solver`] — exact chromatic number, coloring validation, a brute-force
//!   oracle, and 010-colorability search.
//! * [`octahedral`] — octahedral / locally-octahedral predicates and the
//!   explicit octant 4-coloring.
//! * [`valuation`] — the 2-adic 3-coloring of the rational sphere and the
//!   9-set orthogonal covering, with exact verification harnesses.
//! * [`geometry`] — great circles, spherical regions, the domination
//!   falsifier, and the two-arc structure check on the circle.

pub mod geometry;
pub mod graph;
pub mod numerics;
pub mod octahedral;
pub mod solver;
pub mod sphere;
pub mod valuation;

/// Outcome of a predicate that either holds or is refuted by a witness.
///
/// Witnesses are always concrete (an edge, a triple of indices, a circle) so
/// that callers can re-verify every refutation independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Refuted(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Refuted(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Holds => None,
            Verdict::Refuted(w) => Some(w),
        }
    }
}
