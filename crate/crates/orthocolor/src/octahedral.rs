//! Octahedral and locally-octahedral predicates, and the explicit octant
//! 4-coloring.
//!
//! The four half-open octant cells, in the coordinates of a chosen
//! orthonormal basis, are
//!
//! ```text
//! A₁: x > 0, y ≥ 0, z ≥ 0        A₃: x ≤ 0, y ≤ 0, z > 0
//! A₂: x ≤ 0, y > 0, z ≥ 0        A₄: x > 0, y < 0, z > 0
//! ```
//!
//! and each color class is `A_i ∪ (−A_i)`. Exactly one class matches every
//! nonzero point, the classification is exact (no tolerances), and the
//! resulting 4-coloring is orthogonal: no class contains an orthogonal pair.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::numerics::{sign, triple_sign, Rational, RationalVector};
use crate::sphere::{enumerate_points, HeightBound};
use crate::Verdict;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OctahedralError {
    #[error("basis vectors are not exactly orthonormal ({0})")]
    NotOrthonormal(&'static str),
}

/// Three exactly orthonormal rational vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthonormalBasis {
    u1: RationalVector,
    u2: RationalVector,
    u3: RationalVector,
}

impl OrthonormalBasis {
    pub fn new(
        u1: RationalVector,
        u2: RationalVector,
        u3: RationalVector,
    ) -> Result<Self, OctahedralError> {
        if !u1.is_unit() || !u2.is_unit() || !u3.is_unit() {
            return Err(OctahedralError::NotOrthonormal("a vector is not unit length"));
        }
        if !u1.dot(&u2).is_zero() || !u1.dot(&u3).is_zero() || !u2.dot(&u3).is_zero() {
            return Err(OctahedralError::NotOrthonormal("a pair is not orthogonal"));
        }
        Ok(Self { u1, u2, u3 })
    }

    pub fn standard() -> Self {
        Self {
            u1: RationalVector::from_integers(1, 0, 0),
            u2: RationalVector::from_integers(0, 1, 0),
            u3: RationalVector::from_integers(0, 0, 1),
        }
    }

    pub fn u1(&self) -> &RationalVector {
        &self.u1
    }

    pub fn u2(&self) -> &RationalVector {
        &self.u2
    }

    pub fn u3(&self) -> &RationalVector {
        &self.u3
    }

    pub fn vectors(&self) -> [&RationalVector; 3] {
        [&self.u1, &self.u2, &self.u3]
    }

    /// Exact coordinates of `p` in this basis.
    pub fn coords(&self, p: &RationalVector) -> (Rational, Rational, Rational) {
        (p.dot(&self.u1), p.dot(&self.u2), p.dot(&self.u3))
    }
}

/// One of the four octant color classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OctaClass(u8);

impl OctaClass {
    pub fn new(label: u8) -> Option<Self> {
        (1..=4).contains(&label).then_some(Self(label))
    }

    pub fn label(&self) -> u8 {
        self.0
    }
}

impl std::fmt::Display for OctaClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn cell_matches(i: u8, sx: i8, sy: i8, sz: i8) -> bool {
    match i {
        1 => sx > 0 && sy >= 0 && sz >= 0,
        2 => sx <= 0 && sy > 0 && sz >= 0,
        3 => sx <= 0 && sy <= 0 && sz > 0,
        4 => sx > 0 && sy < 0 && sz > 0,
        _ => unreachable!(),
    }
}

/// Octant class of `p` with respect to `basis`.
///
/// The sign conditions are scale invariant, so any nonzero `p` classifies;
/// exactly one of the eight cells `±A_i` matches, which is asserted.
pub fn octa_class(p: &RationalVector, basis: &OrthonormalBasis) -> OctaClass {
    assert!(!p.is_zero(), "cannot classify the zero vector");
    let (x, y, z) = basis.coords(p);
    let (sx, sy, sz) = (sign(&x), sign(&y), sign(&z));
    let mut found = None;
    for i in 1..=4u8 {
        if cell_matches(i, sx, sy, sz) || cell_matches(i, -sx, -sy, -sz) {
            assert!(
                found.is_none(),
                "octant cells must be disjoint; {p} matched {found:?} and {i}"
            );
            found = Some(i);
        }
    }
    let label = found.expect("octant cells cover every nonzero point");
    OctaClass(label)
}

/// Holds iff `(u·v)(u·w)(v·w) ≥ 0` for every triple; otherwise refuted by
/// the lexicographically first violating index triple.
pub fn is_locally_octahedral(points: &[RationalVector]) -> Verdict<(usize, usize, usize)> {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            for k in (j + 1)..points.len() {
                if triple_sign(&points[i], &points[j], &points[k]) < 0 {
                    return Verdict::Refuted((i, j, k));
                }
            }
        }
    }
    Verdict::Holds
}

/// Holds iff every point, or its negation, has all coordinates ≥ 0 in the
/// basis; refuted by the first failing point index.
pub fn is_octahedral_wrt(points: &[RationalVector], basis: &OrthonormalBasis) -> Verdict<usize> {
    for (idx, p) in points.iter().enumerate() {
        let (x, y, z) = basis.coords(p);
        let (sx, sy, sz) = (sign(&x), sign(&y), sign(&z));
        let nonneg = sx >= 0 && sy >= 0 && sz >= 0;
        let nonpos = sx <= 0 && sy <= 0 && sz <= 0;
        if !(nonneg || nonpos) {
            return Verdict::Refuted(idx);
        }
    }
    Verdict::Holds
}

/// Scales a vector to the unit sphere when its length is rational.
fn rational_unit(v: &RationalVector) -> Option<RationalVector> {
    if v.is_zero() {
        return None;
    }
    let norm_sq = v.norm_sq();
    // |v| is rational iff numerator and denominator of |v|² are both squares.
    let num_root = norm_sq.numer().sqrt();
    let den_root = norm_sq.denom().sqrt();
    if &(&num_root * &num_root) != norm_sq.numer() || &(&den_root * &den_root) != norm_sq.denom()
    {
        return None;
    }
    let inv_len = Rational::new(den_root, num_root);
    Some(v.scaled(&inv_len))
}

/// All sign variants `(±u1, ±u2, ±u3)` of a basis, deterministically ordered.
fn sign_variants(basis: &OrthonormalBasis) -> Vec<OrthonormalBasis> {
    let mut out = Vec::with_capacity(8);
    for mask in 0u8..8 {
        let pick = |v: &RationalVector, bit: u8| {
            if mask >> bit & 1 == 1 {
                v.negated()
            } else {
                v.clone()
            }
        };
        out.push(OrthonormalBasis {
            u1: pick(&basis.u1, 0),
            u2: pick(&basis.u2, 1),
            u3: pick(&basis.u3, 2),
        });
    }
    out
}

fn first_nonzero_positive(v: &RationalVector) -> bool {
    v.coords().iter().find(|c| !c.is_zero()).map(|c| c.is_positive()) == Some(true)
}

/// Rational orthonormal bases assembled from mutually orthogonal rational
/// sphere points of height at most `h`, one per unordered triple of lines.
fn basis_catalog(h: i64) -> Vec<OrthonormalBasis> {
    let points = enumerate_points(HeightBound::new(h).expect("h ≥ 1"));
    let reps: Vec<RationalVector> = points
        .iter()
        .map(|p| p.to_vector())
        .filter(first_nonzero_positive)
        .collect();
    let mut out = Vec::new();
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            if !reps[i].dot(&reps[j]).is_zero() {
                continue;
            }
            // Cross of orthogonal rational unit vectors is again a rational
            // unit vector; orient it like the catalog representatives.
            let mut third = reps[i].cross(&reps[j]);
            if !first_nonzero_positive(&third) {
                third = third.negated();
            }
            if let Some(k) = reps.iter().position(|r| *r == third) {
                if k > j {
                    out.push(OrthonormalBasis {
                        u1: reps[i].clone(),
                        u2: reps[j].clone(),
                        u3: third,
                    });
                }
            }
        }
    }
    out
}

/// Searches for a basis witnessing that the set is octahedral.
///
/// Sound: any returned basis re-verifies with [`is_octahedral_wrt`].
/// Complete only over its candidate family: bases assembled from pairwise
/// orthogonal triples among the points and their cross products, sign
/// variants of the standard basis, a catalog of rational orthonormal bases
/// of small height, and a floating-point rotation scan whose proposals are
/// snapped to catalog bases and re-verified exactly. A `None` result does
/// not prove the set is non-octahedral.
pub fn search_octahedral_basis(points: &[RationalVector]) -> Option<OrthonormalBasis> {
    if points.is_empty() {
        return Some(OrthonormalBasis::standard());
    }
    // Locally octahedral is necessary, so a negative triple settles it.
    if !is_locally_octahedral(points).holds() {
        return None;
    }

    let verify = |basis: &OrthonormalBasis| is_octahedral_wrt(points, basis).holds();

    // Point-derived candidates: orthogonal pairs among the points plus their
    // cross product, when all three directions have rational length.
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if !points[i].dot(&points[j]).is_zero() {
                continue;
            }
            let a = rational_unit(&points[i]);
            let b = rational_unit(&points[j]);
            let c = rational_unit(&points[i].cross(&points[j]));
            if let (Some(a), Some(b), Some(c)) = (a, b, c) {
                let base = OrthonormalBasis { u1: a, u2: b, u3: c };
                for candidate in sign_variants(&base) {
                    if verify(&candidate) {
                        return Some(candidate);
                    }
                }
            }
        }
    }

    // Signed standard bases handle singletons and axis-aligned sets.
    for candidate in sign_variants(&OrthonormalBasis::standard()) {
        if verify(&candidate) {
            return Some(candidate);
        }
    }

    // Small-height catalog, exhaustively.
    for base in basis_catalog(9) {
        for candidate in sign_variants(&base) {
            if verify(&candidate) {
                return Some(candidate);
            }
        }
    }

    // Rotation refinement: score each wider-catalog basis in floating point
    // (how many points land in one closed octant, with slack), then verify
    // only the best-ranked proposals exactly. Float never decides; it only
    // orders and prunes the exact checks.
    let wide_catalog = basis_catalog(25);
    let float_points: Vec<[f64; 3]> = points.iter().map(RationalVector::to_f64).collect();
    let mut ranked: Vec<(i64, usize)> = wide_catalog
        .iter()
        .enumerate()
        .map(|(idx, base)| {
            let axes: Vec<[f64; 3]> = base.vectors().iter().map(|v| v.to_f64()).collect();
            let mut score = 0i64;
            for p in &float_points {
                let c: Vec<f64> = axes
                    .iter()
                    .map(|u| u[0] * p[0] + u[1] * p[1] + u[2] * p[2])
                    .collect();
                let eps = 1e-12;
                if c.iter().all(|&v| v >= -eps) || c.iter().all(|&v| v <= eps) {
                    score += 1;
                }
            }
            (-score, idx)
        })
        .collect();
    ranked.sort_unstable();
    for &(_, idx) in ranked.iter().take(64) {
        for candidate in sign_variants(&wide_catalog[idx]) {
            if verify(&candidate) {
                return Some(candidate);
            }
        }
    }
    None
}

/// A monochromatic triple with negative triple product, if one exists.
///
/// Scans index triples `i < j < k` lexicographically and returns the class
/// together with the first violating triple.
pub fn find_negative_triple<L: PartialEq + Clone>(
    points: &[RationalVector],
    labels: &[L],
) -> Option<(L, (usize, usize, usize))> {
    assert_eq!(points.len(), labels.len(), "one label per point");
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if labels[i] != labels[j] {
                continue;
            }
            for k in (j + 1)..points.len() {
                if labels[j] != labels[k] {
                    continue;
                }
                if triple_sign(&points[i], &points[j], &points[k]) < 0 {
                    return Some((labels[i].clone(), (i, j, k)));
                }
            }
        }
    }
    None
}
