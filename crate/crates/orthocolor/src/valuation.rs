//! Valuation-based colorings of the rational sphere.
//!
//! Two constructions, both verified exactly rather than trusted:
//!
//! * The 2-adic 3-coloring: a primitive quadruple has exactly one odd
//!   coordinate, and coloring each point by that coordinate's index is an
//!   orthogonal 3-coloring of S² ∩ Q³.
//! * The 9-set covering: with ν the 2-adic absolute value, the sets
//!   `X_i = {ν(x_i) > ν(x_k), k ≠ i}` and `Y_j = {ν(x_j) ≥ ν(x_k), k ≠ j}`
//!   combine with an orthogonal 4-coloring `A₁..A₄` into the nine sets
//!   `C_jk = (Y_j ∩ A_k) ∪ (X_j \ A_k)` (j = 1,2; k = 1..4) plus `X₃`,
//!   which cover the sphere with no orthogonal pair inside any one set.
//!
//! ν is realized through the exact 2-adic valuation on rationals, so the
//! covering here is a desk-scale model over the rational sphere; on those
//! points the odd coordinate strictly ν-dominates, which makes `Y_j \ X_j`
//! empty, but the `Y_j` branch is implemented per the definitions anyway.
//! The partition refines the covering through a fixed priority order
//! `C₁₁..C₁₄, C₂₁..C₂₄, X₃`; density of the reduced classes is not claimed.

use serde::Serialize;

use crate::numerics::{two_adic, TwoAdicValue};
use crate::octahedral::{octa_class, OctaClass, OrthonormalBasis};
use crate::sphere::PrimitiveQuadruple;

/// Color class of the 2-adic 3-coloring: the index (1..3) of the odd
/// coordinate of the primitive quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GZClass(u8);

impl GZClass {
    pub fn label(&self) -> u8 {
        self.0
    }
}

impl std::fmt::Display for GZClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of the unique odd coordinate; equivalently the coordinate of
/// strictly maximal 2-adic absolute value.
pub fn gz_color(p: &PrimitiveQuadruple) -> GZClass {
    let odd: Vec<u8> = p
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.rem_euclid(2) == 1)
        .map(|(i, _)| i as u8 + 1)
        .collect();
    assert_eq!(odd.len(), 1, "primitive quadruple has exactly one odd coordinate");
    GZClass(odd[0])
}

/// Cap census entry of the density probe: which classes appear in the cap
/// of the given center.
#[derive(Clone, Debug, Serialize)]
pub struct CapCensus {
    pub center: String,
    pub classes_present: [bool; 3],
}

/// Density probe configuration: cap centers and an angular radius (radians).
#[derive(Clone, Debug)]
pub struct GzDensityProbe {
    pub centers: Vec<PrimitiveQuadruple>,
    pub radius: f64,
}

/// Report of the exact pair scan plus the optional density probe.
#[derive(Clone, Debug, Serialize)]
pub struct GzReport {
    pub points: usize,
    pub pairs_checked: u64,
    pub orthogonal_pairs: u64,
    /// Orthogonal pairs sharing a class — provably empty, but verified.
    pub violations: Vec<(usize, usize)>,
    pub cap_census: Vec<CapCensus>,
}

impl GzReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact verification that the 2-adic coloring is orthogonal on `points`,
/// plus an optional floating-point cap census (heuristic, not a verdict).
pub fn verify_gz(points: &[PrimitiveQuadruple], probe: Option<&GzDensityProbe>) -> GzReport {
    let classes: Vec<GZClass> = points.iter().map(gz_color).collect();
    let mut pairs_checked = 0u64;
    let mut orthogonal = 0u64;
    let mut violations = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            pairs_checked += 1;
            if points[i].is_orthogonal_to(&points[j]) {
                orthogonal += 1;
                if classes[i] == classes[j] {
                    violations.push((i, j));
                }
            }
        }
    }
    let cap_census = probe.map_or_else(Vec::new, |probe| {
        let cos_radius = probe.radius.cos();
        probe
            .centers
            .iter()
            .map(|center| {
                let mut present = [false; 3];
                for (p, class) in points.iter().zip(&classes) {
                    // cos(angle) = dot / (n_p · n_c); float is fine here,
                    // the census is a probe rather than a verdict.
                    let cos_angle =
                        p.dot_int(center) as f64 / (p.n() as f64 * center.n() as f64);
                    if cos_angle >= cos_radius {
                        present[(class.label() - 1) as usize] = true;
                    }
                }
                CapCensus {
                    center: center.to_string(),
                    classes_present: present,
                }
            })
            .collect()
    });
    GzReport {
        points: points.len(),
        pairs_checked,
        orthogonal_pairs: orthogonal,
        violations,
        cap_census,
    }
}

/// Exact density calibration: the largest cosine `m` such that some cap of
/// angular radius `acos(m)` centered at one of `centers` still misses a
/// class among `points`.
///
/// Concretely `m = min over centers c, classes g of (max over points p of
/// class g of cos ∠(c, p))`, computed as an exact rational; every cap of
/// radius `≥ acos(m)` at every center contains all three classes. Growing
/// the point set can only increase `m`, which is the monotonicity the
/// density claim is probed with. Returns `None` when some class is empty.
pub fn gz_density_threshold(
    points: &[PrimitiveQuadruple],
    centers: &[PrimitiveQuadruple],
) -> Option<crate::numerics::Rational> {
    use crate::numerics::ratio;
    let classes: Vec<GZClass> = points.iter().map(gz_color).collect();
    let mut worst: Option<(i64, i64)> = None; // cos as (num, den), den > 0
    for c in centers {
        for g in 1..=3u8 {
            // max over points of class g of dot/(n_p n_c)
            let mut best: Option<(i64, i64)> = None;
            for (p, class) in points.iter().zip(&classes) {
                if class.label() != g {
                    continue;
                }
                let num = p.dot_int(c);
                let den = p.n() * c.n();
                let better = match best {
                    None => true,
                    // num/den > bn/bd  ⇔  num·bd > bn·den (dens positive)
                    Some((bn, bd)) => (num as i128) * (bd as i128) > (bn as i128) * (den as i128),
                };
                if better {
                    best = Some((num, den));
                }
            }
            let (num, den) = best?;
            let smaller = match worst {
                None => true,
                Some((wn, wd)) => (num as i128) * (wd as i128) < (wn as i128) * (den as i128),
            };
            if smaller {
                worst = Some((num, den));
            }
        }
    }
    worst.map(|(num, den)| ratio(num, den))
}

/// One of the nine covering sets: `C_jk` or `X₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaekSetId {
    C { j: u8, k: u8 },
    X3,
}

impl BaekSetId {
    /// All nine identifiers in priority order `C₁₁..C₂₄, X₃`.
    pub fn all() -> [BaekSetId; 9] {
        [
            BaekSetId::C { j: 1, k: 1 },
            BaekSetId::C { j: 1, k: 2 },
            BaekSetId::C { j: 1, k: 3 },
            BaekSetId::C { j: 1, k: 4 },
            BaekSetId::C { j: 2, k: 1 },
            BaekSetId::C { j: 2, k: 2 },
            BaekSetId::C { j: 2, k: 3 },
            BaekSetId::C { j: 2, k: 4 },
            BaekSetId::X3,
        ]
    }

    pub fn name(&self) -> String {
        match self {
            BaekSetId::C { j, k } => format!("C{j}{k}"),
            BaekSetId::X3 => "X3".to_string(),
        }
    }
}

impl std::fmt::Display for BaekSetId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Serialize for BaekSetId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

/// ν-comparison memberships of a point: `in_x[i]` means ν(x_{i+1}) is
/// strictly maximal, `in_y[j]` means ν(x_{j+1}) is weakly maximal (j < 2).
fn xy_membership(p: &PrimitiveQuadruple) -> ([bool; 3], [bool; 2]) {
    let v = p.to_vector();
    let nus: [TwoAdicValue; 3] = [two_adic(&v.x), two_adic(&v.y), two_adic(&v.z)];
    let mut in_x = [false; 3];
    let mut in_y = [false; 2];
    for i in 0..3 {
        in_x[i] = (0..3).all(|k| k == i || nus[i].nu_exceeds(&nus[k]));
    }
    for j in 0..2 {
        in_y[j] = (0..3).all(|k| k == j || nus[j].nu_at_least(&nus[k]));
    }
    (in_x, in_y)
}

/// Strict/weak ν-maximality memberships `(X₁,X₂,X₃; Y₁,Y₂)` of a point.
pub fn baek_xy_membership(p: &PrimitiveQuadruple) -> ([bool; 3], [bool; 2]) {
    xy_membership(p)
}

/// Every covering set containing `p`, in priority order. Non-empty for all
/// rational sphere points.
pub fn baek_set(p: &PrimitiveQuadruple, base: &OrthonormalBasis) -> Vec<BaekSetId> {
    let (in_x, in_y) = xy_membership(p);
    let octa: OctaClass = octa_class(&p.to_vector(), base);
    let mut out = Vec::new();
    for j in 1..=2u8 {
        for k in 1..=4u8 {
            let in_a = octa.label() == k;
            let in_yj = in_y[(j - 1) as usize];
            let in_xj = in_x[(j - 1) as usize];
            if (in_yj && in_a) || (in_xj && !in_a) {
                out.push(BaekSetId::C { j, k });
            }
        }
    }
    if in_x[2] {
        out.push(BaekSetId::X3);
    }
    out
}

/// First containing set in the priority order; a partition refining the
/// covering.
pub fn baek_partition(
    points: &[PrimitiveQuadruple],
    base: &OrthonormalBasis,
) -> Vec<BaekSetId> {
    points
        .iter()
        .map(|p| {
            *baek_set(p, base)
                .first()
                .expect("every rational sphere point lies in some covering set")
        })
        .collect()
}

/// A violating orthogonal pair and the set or label it shares.
#[derive(Clone, Debug, Serialize)]
pub struct BaekViolation {
    pub i: usize,
    pub j: usize,
    pub shared: BaekSetId,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaekReport {
    pub points: usize,
    pub pairs_checked: u64,
    pub orthogonal_pairs: u64,
    /// Points contained in none of the nine sets — provably none.
    pub coverage_holes: Vec<usize>,
    /// Orthogonal pairs sharing a covering set — provably none.
    pub covering_violations: Vec<BaekViolation>,
    /// Orthogonal pairs sharing a partition label — provably none.
    pub partition_violations: Vec<BaekViolation>,
}

impl BaekReport {
    pub fn is_valid(&self) -> bool {
        self.coverage_holes.is_empty()
            && self.covering_violations.is_empty()
            && self.partition_violations.is_empty()
    }
}

/// Exact verification of the covering and partition properties over a
/// point set: full coverage, and no orthogonal pair shares any covering
/// set (nor, a fortiori, a partition label).
pub fn verify_baek(points: &[PrimitiveQuadruple], base: &OrthonormalBasis) -> BaekReport {
    let order = BaekSetId::all();
    // Memberships as 9-bit masks in priority order.
    let masks: Vec<u16> = points
        .iter()
        .map(|p| {
            let sets = baek_set(p, base);
            let mut mask = 0u16;
            for id in sets {
                let bit = order.iter().position(|o| *o == id).expect("known id");
                mask |= 1 << bit;
            }
            mask
        })
        .collect();
    let coverage_holes: Vec<usize> = masks
        .iter()
        .enumerate()
        .filter(|(_, m)| **m == 0)
        .map(|(i, _)| i)
        .collect();
    let labels: Vec<u16> = masks
        .iter()
        .map(|m| if *m == 0 { 0 } else { 1 << m.trailing_zeros() })
        .collect();

    let mut pairs_checked = 0u64;
    let mut orthogonal = 0u64;
    let mut covering_violations = Vec::new();
    let mut partition_violations = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            pairs_checked += 1;
            if !points[i].is_orthogonal_to(&points[j]) {
                continue;
            }
            orthogonal += 1;
            let shared = masks[i] & masks[j];
            if shared != 0 {
                covering_violations.push(BaekViolation {
                    i,
                    j,
                    shared: order[shared.trailing_zeros() as usize],
                });
            }
            let shared_label = labels[i] & labels[j];
            if shared_label != 0 {
                partition_violations.push(BaekViolation {
                    i,
                    j,
                    shared: order[shared_label.trailing_zeros() as usize],
                });
            }
        }
    }
    BaekReport {
        points: points.len(),
        pairs_checked,
        orthogonal_pairs: orthogonal,
        coverage_holes,
        covering_violations,
        partition_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octahedral::find_negative_triple;
    use crate::sphere::{enumerate_points, orthogonal_pairs, HeightBound};

    fn quad(x: i64, y: i64, z: i64, n: i64) -> PrimitiveQuadruple {
        PrimitiveQuadruple::new(x, y, z, n).unwrap()
    }

    fn points(h: i64) -> Vec<PrimitiveQuadruple> {
        enumerate_points(HeightBound::new(h).unwrap())
    }

    #[test]
    fn gz_color_picks_the_odd_coordinate() {
        assert_eq!(gz_color(&quad(1, 2, 2, 3)).label(), 1);
        assert_eq!(gz_color(&quad(2, 1, -2, 3)).label(), 2);
        assert_eq!(gz_color(&quad(0, 3, 4, 5)).label(), 2);
    }

    #[test]
    fn gz_is_orthogonal_at_height_5() {
        let report = verify_gz(&points(5), None);
        assert!(report.is_valid());
        assert!(report.orthogonal_pairs > 0);
    }

    #[test]
    fn gz_example_pair_differs() {
        let a = quad(1, 2, 2, 3);
        let b = quad(2, 1, -2, 3);
        assert!(a.is_orthogonal_to(&b));
        assert_ne!(gz_color(&a), gz_color(&b));
        let report = verify_gz(&[a, b], None);
        assert!(report.is_valid());
        assert_eq!(report.orthogonal_pairs, 1);
    }

    #[test]
    fn single_point_is_vacuously_valid() {
        let report = verify_gz(&[quad(1, 0, 0, 1)], None);
        assert!(report.is_valid());
        assert_eq!(report.pairs_checked, 0);
    }

    #[test]
    fn density_probe_reports_classes() {
        let pts = points(25);
        let probe = GzDensityProbe {
            centers: points(1),
            radius: 1.0,
        };
        let report = verify_gz(&pts, Some(&probe));
        assert_eq!(report.cap_census.len(), 6);
        for census in &report.cap_census {
            assert!(census.classes_present.iter().all(|&b| b));
        }
    }

    #[test]
    fn density_threshold_is_monotone_in_height() {
        let centers = points(5);
        let m25 = gz_density_threshold(&points(25), &centers).unwrap();
        let m50 = gz_density_threshold(&points(50), &centers).unwrap();
        assert!(m25 <= m50, "threshold cosine must not decrease: {m25} vs {m50}");
    }

    #[test]
    fn gz_classes_are_not_locally_octahedral() {
        let pts = points(5);
        let vectors: Vec<_> = pts.iter().map(|p| p.to_vector()).collect();
        let labels: Vec<GZClass> = pts.iter().map(gz_color).collect();
        let (class, (i, j, k)) =
            find_negative_triple(&vectors, &labels).expect("a negative triple exists");
        assert_eq!(labels[i], class);
        assert_eq!(labels[j], class);
        assert_eq!(labels[k], class);
        use crate::numerics::triple_sign;
        assert_eq!(triple_sign(&vectors[i], &vectors[j], &vectors[k]), -1);
    }

    #[test]
    fn baek_memberships_for_odd_first_coordinate() {
        let basis = OrthonormalBasis::standard();
        // (1,2,2;3): in X₁ ∩ Y₁, octant class 1.
        let p = quad(1, 2, 2, 3);
        let (in_x, in_y) = baek_xy_membership(&p);
        assert_eq!(in_x, [true, false, false]);
        assert_eq!(in_y, [true, false]);
        let sets = baek_set(&p, &basis);
        let names: Vec<String> = sets.iter().map(|s| s.name()).collect();
        assert_eq!(names, ["C11", "C12", "C13", "C14"]);
    }

    #[test]
    fn baek_membership_for_axis_z() {
        let basis = OrthonormalBasis::standard();
        let p = quad(0, 0, 1, 1);
        let sets = baek_set(&p, &basis);
        assert_eq!(sets, vec![BaekSetId::X3]);
    }

    #[test]
    fn baek_partition_picks_first_set() {
        let basis = OrthonormalBasis::standard();
        let pts = [quad(1, 2, 2, 3), quad(0, 0, 1, 1)];
        let labels = baek_partition(&pts, &basis);
        assert_eq!(labels[0], BaekSetId::C { j: 1, k: 1 });
        assert_eq!(labels[1], BaekSetId::X3);
        assert!(baek_partition(&[], &basis).is_empty());
    }

    #[test]
    fn every_point_is_covered_and_labels_refine() {
        let basis = OrthonormalBasis::standard();
        for p in points(25) {
            let sets = baek_set(&p, &basis);
            assert!(!sets.is_empty(), "{p} must be covered");
            let label = baek_partition(&[p], &basis)[0];
            assert!(sets.contains(&label));
        }
    }

    #[test]
    fn baek_verification_at_height_10() {
        let basis = OrthonormalBasis::standard();
        let report = verify_baek(&points(10), &basis);
        assert!(report.is_valid());
        assert!(report.orthogonal_pairs > 0);
    }

    #[test]
    fn x_sets_and_xy_pairs_have_no_orthogonal_conflicts() {
        let pts = points(10);
        let memberships: Vec<([bool; 3], [bool; 2])> =
            pts.iter().map(baek_xy_membership).collect();
        for (i, j) in orthogonal_pairs(&pts) {
            let (xi, yi) = memberships[i];
            let (xj, yj) = memberships[j];
            // No X_i contains an orthogonal pair.
            for t in 0..3 {
                assert!(!(xi[t] && xj[t]), "{} ⊥ {} both in X{}", pts[i], pts[j], t + 1);
            }
            // x ∈ X_j and y ∈ Y_j implies x·y ≠ 0, checked contrapositively.
            for t in 0..2 {
                assert!(!(xi[t] && yj[t]), "{} ⊥ {} in X{} × Y{}", pts[i], pts[j], t + 1, t + 1);
                assert!(!(xj[t] && yi[t]), "{} ⊥ {} in Y{} × X{}", pts[i], pts[j], t + 1, t + 1);
            }
        }
    }

    #[test]
    fn y_minus_x_is_empty_on_rational_points() {
        for p in points(15) {
            let (in_x, in_y) = baek_xy_membership(&p);
            for j in 0..2 {
                assert_eq!(in_x[j], in_y[j], "Y_j \\ X_j must be empty at {p}");
            }
        }
    }

    #[test]
    fn priority_order_is_the_declared_one() {
        let names: Vec<String> = BaekSetId::all().iter().map(|s| s.name()).collect();
        assert_eq!(
            names,
            ["C11", "C12", "C13", "C14", "C21", "C22", "C23", "C24", "X3"]
        );
        let mut sorted = BaekSetId::all();
        sorted.sort();
        assert_eq!(sorted, BaekSetId::all());
    }
}
