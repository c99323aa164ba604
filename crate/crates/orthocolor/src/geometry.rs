//! Great circles, spherical regions, the domination falsifier, and the
//! two-arc structure check on the circle.
//!
//! Region membership of a great circle is decided exactly: cap tests reduce
//! to one rational inequality (against the exact rational value of the
//! float `sin ρ`), triangle tests to vertex sign tests. Sampling in
//! [`dominates`] uses floating point to propose circles, but every proposed
//! circle is rationalized losslessly and judged by the exact predicates, so
//! a `Refuted` witness always re-verifies.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::numerics::{parse_rational, rational_from_f64, sign, Rational, RationalVector};

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("great circle normal must be nonzero")]
    ZeroNormal,
    #[error("region must contain at least one primitive")]
    EmptyRegion,
    #[error("cap radius must lie in (0, π), got {0}")]
    BadRadius(f64),
    #[error("cap center must be nonzero")]
    ZeroCenter,
    #[error("triangle vertices must be nonzero and pairwise non-parallel")]
    DegenerateTriangle,
    #[error("arc endpoints must be finite and distinct modulo 2π")]
    DegenerateArc,
    #[error("arc union must be non-empty")]
    EmptyArcUnion,
    #[error("arc sets do not cover the circle: grid point {index} (angle {angle}) is uncovered")]
    NotACover { index: usize, angle: f64 },
    #[error("bad coordinate `{0}`")]
    BadCoordinate(String),
    #[error("grid must have at least 8 points, got {0}")]
    BadGrid(usize),
}

/// A great circle `{p ∈ S² : p · normal = 0}`; two circles are the same iff
/// their normals are parallel.
#[derive(Clone, Debug)]
pub struct GreatCircle {
    normal: RationalVector,
}

impl GreatCircle {
    pub fn new(normal: RationalVector) -> Result<Self, GeometryError> {
        if normal.is_zero() {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(Self { normal })
    }

    pub fn normal(&self) -> &RationalVector {
        &self.normal
    }

    pub fn same_circle(&self, other: &Self) -> bool {
        self.normal.is_parallel(&other.normal)
    }
}

/// A spherical cap or triangle, the region vocabulary of the checker.
///
/// A triangle is the set of positive combinations of its vertices on the
/// sphere (the geodesic convex hull); coplanar vertices are allowed and
/// describe a geodesic arc chain, which is how thin sets like pieces of the
/// equator are expressed.
#[derive(Clone, Debug)]
pub enum RegionPrimitive {
    Cap {
        center: RationalVector,
        /// Angular radius in radians, in (0, π).
        radius: f64,
    },
    Triangle {
        vertices: [RationalVector; 3],
    },
}

/// A finite union of primitives, optionally closed under the antipodal map.
#[derive(Clone, Debug)]
pub struct RegionSpec {
    primitives: Vec<RegionPrimitive>,
    antipodal: bool,
}

impl RegionSpec {
    pub fn new(primitives: Vec<RegionPrimitive>, antipodal: bool) -> Result<Self, GeometryError> {
        if primitives.is_empty() {
            return Err(GeometryError::EmptyRegion);
        }
        for p in &primitives {
            match p {
                RegionPrimitive::Cap { center, radius } => {
                    if center.is_zero() {
                        return Err(GeometryError::ZeroCenter);
                    }
                    if !radius.is_finite() || *radius <= 0.0 || *radius >= std::f64::consts::PI {
                        return Err(GeometryError::BadRadius(*radius));
                    }
                }
                RegionPrimitive::Triangle { vertices } => {
                    let [a, b, c] = vertices;
                    if a.is_zero() || b.is_zero() || c.is_zero() {
                        return Err(GeometryError::DegenerateTriangle);
                    }
                    if a.is_parallel(b) || a.is_parallel(c) || b.is_parallel(c) {
                        return Err(GeometryError::DegenerateTriangle);
                    }
                }
            }
        }
        Ok(Self {
            primitives,
            antipodal,
        })
    }

    pub fn primitives(&self) -> &[RegionPrimitive] {
        &self.primitives
    }

    pub fn antipodal(&self) -> bool {
        self.antipodal
    }
}

/// `sin ρ` of the float radius, as the exact rational of that float.
fn sin_as_rational(radius: f64) -> Rational {
    rational_from_f64(radius.sin()).expect("sin of a radius in (0, π) is finite")
}

fn circle_meets_cap(circle: &GreatCircle, center: &RationalVector, radius: f64) -> bool {
    // The angle between a point and a plane is at most π/2, so caps at
    // least that wide meet every great circle.
    if radius >= std::f64::consts::FRAC_PI_2 {
        return true;
    }
    // meets ⇔ |q·n| / (|q||n|) ≤ sin ρ, squared to stay rational.
    let n = &circle.normal;
    let qn = center.dot(n);
    let s = sin_as_rational(radius);
    &qn * &qn <= &s * &s * center.norm_sq() * n.norm_sq()
}

fn circle_meets_triangle(circle: &GreatCircle, vertices: &[RationalVector; 3]) -> bool {
    // The triangle is the positive span of its vertices; the circle misses
    // it exactly when all vertices are strictly on one side of the plane
    // (mixed signs force an edge crossing by the intermediate value of the
    // dot product along the edge).
    let signs: Vec<i8> = vertices.iter().map(|v| sign(&v.dot(&circle.normal))).collect();
    let all_pos = signs.iter().all(|&s| s > 0);
    let all_neg = signs.iter().all(|&s| s < 0);
    !(all_pos || all_neg)
}

/// Exact intersection test between a great circle and a region.
///
/// Great circles are centrally symmetric, so the antipodal closure flag
/// never changes this verdict; it is honored anyway for clarity.
pub fn circle_meets_region(circle: &GreatCircle, region: &RegionSpec) -> bool {
    let meets_primitive = |p: &RegionPrimitive, negate: bool| match p {
        RegionPrimitive::Cap { center, radius } => {
            let c = if negate { center.negated() } else { center.clone() };
            circle_meets_cap(circle, &c, *radius)
        }
        RegionPrimitive::Triangle { vertices } => {
            if negate {
                let neg = [
                    vertices[0].negated(),
                    vertices[1].negated(),
                    vertices[2].negated(),
                ];
                circle_meets_triangle(circle, &neg)
            } else {
                circle_meets_triangle(circle, vertices)
            }
        }
    };
    region.primitives.iter().any(|p| {
        meets_primitive(p, false) || (region.antipodal && meets_primitive(p, true))
    })
}

/// Outcome of the sampling falsifier for “D dominates S”.
///
/// Sampling can refute domination with a concrete witness circle but can
/// never prove it; an `Unrefuted` verdict reports only how many circles
/// meeting D were tried.
#[derive(Clone, Debug)]
pub enum DominationOutcome {
    Refuted {
        witness: GreatCircle,
        samples_used: u64,
    },
    Unrefuted {
        samples: u64,
    },
}

impl DominationOutcome {
    pub fn is_refuted(&self) -> bool {
        matches!(self, DominationOutcome::Refuted { .. })
    }
}

/// Samples great circles meeting `d` (uniform over normals, conditioned on
/// intersection via rejection) and reports the first circle missing `s`.
///
/// Every candidate normal is rationalized losslessly before both membership
/// tests, so acceptance and refutation are decided by the exact predicates
/// and a witness always passes [`circle_meets_region`] re-verification.
/// Fully deterministic for a fixed `(sample_count, seed)` pair.
pub fn dominates(
    d: &RegionSpec,
    s: &RegionSpec,
    sample_count: u64,
    seed: u64,
) -> DominationOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0u64;
    let mut attempts = 0u64;
    let max_attempts = sample_count.saturating_mul(1_000).max(1_000);
    while accepted < sample_count && attempts < max_attempts {
        attempts += 1;
        let normal = random_direction(&mut rng);
        let circle = GreatCircle::new(normal).expect("sampled normal is nonzero");
        if !circle_meets_region(&circle, d) {
            continue;
        }
        accepted += 1;
        if !circle_meets_region(&circle, s) {
            return DominationOutcome::Refuted {
                witness: circle,
                samples_used: accepted,
            };
        }
    }
    DominationOutcome::Unrefuted { samples: accepted }
}

/// Uniform random direction via ball rejection, rationalized losslessly.
fn random_direction(rng: &mut ChaCha8Rng) -> RationalVector {
    loop {
        let x: f64 = rng.gen_range(-1.0..1.0);
        let y: f64 = rng.gen_range(-1.0..1.0);
        let z: f64 = rng.gen_range(-1.0..1.0);
        let norm_sq = x * x + y * y + z * z;
        if norm_sq < 1e-4 || norm_sq > 1.0 {
            continue;
        }
        let v = RationalVector::new(
            rational_from_f64(x).expect("finite"),
            rational_from_f64(y).expect("finite"),
            rational_from_f64(z).expect("finite"),
        );
        return v;
    }
}

const TAU: f64 = std::f64::consts::TAU;

/// A closed arc on S¹ from `start` counterclockwise to `end`, both stored
/// in [0, 2π); wrap-around arcs are allowed.
#[derive(Clone, Copy, Debug)]
pub struct Arc {
    start: f64,
    end: f64,
}

impl Arc {
    pub fn new(start: f64, end: f64) -> Result<Self, GeometryError> {
        if !start.is_finite() || !end.is_finite() {
            return Err(GeometryError::DegenerateArc);
        }
        let start = start.rem_euclid(TAU);
        let end = end.rem_euclid(TAU);
        if (start - end).abs() < 1e-12 {
            return Err(GeometryError::DegenerateArc);
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    /// Arc length in (0, 2π).
    pub fn length(&self) -> f64 {
        (self.end - self.start).rem_euclid(TAU)
    }

    /// Closed containment with a small tolerance for the endpoints.
    pub fn contains(&self, theta: f64, eps: f64) -> bool {
        let offset = (theta - self.start).rem_euclid(TAU);
        offset <= self.length() + eps || offset >= TAU - eps
    }
}

/// A finite union of closed arcs.
#[derive(Clone, Debug)]
pub struct ArcUnion {
    arcs: Vec<Arc>,
}

impl ArcUnion {
    pub fn new(arcs: Vec<Arc>) -> Result<Self, GeometryError> {
        if arcs.is_empty() {
            return Err(GeometryError::EmptyArcUnion);
        }
        Ok(Self { arcs })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn contains(&self, theta: f64, eps: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(theta, eps))
    }
}

/// Outcome of the two-arc structure check.
#[derive(Clone, Debug)]
pub enum Circle2Outcome {
    /// The triple hypothesis holds on the grid and the structural
    /// conclusion verifies: each set is two antipodal closed arcs of length
    /// π/2 and the sets meet in four square corners at `θ₀ + mπ/2`.
    Confirmed { theta0: f64, corners: [f64; 4] },
    /// A sampled triple inside one set has negative product.
    HypothesisFailed { set: u8, angles: [f64; 3] },
    /// The hypothesis held on the grid but the two-arc structure did not
    /// materialize at grid resolution.
    StructureMismatch { reason: String },
}

impl Circle2Outcome {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Circle2Outcome::Confirmed { .. })
    }
}

/// Maximal circular runs of `true` entries, as (start index, count).
fn circular_runs(membership: &[bool]) -> Vec<(usize, usize)> {
    let n = membership.len();
    if membership.iter().all(|&m| m) {
        return vec![(0, n)];
    }
    let mut runs = Vec::new();
    for i in 0..n {
        let prev = membership[(i + n - 1) % n];
        if membership[i] && !prev {
            let mut len = 0;
            while membership[(i + len) % n] {
                len += 1;
            }
            runs.push((i, len));
        }
    }
    runs.sort_unstable();
    runs
}

/// Checks the triple hypothesis `(u·v)(u·w)(v·w) ≥ 0` within each arc set
/// on an angular grid, and on success asserts the structural conclusion.
///
/// Default grid is 720 points; structural tolerances are one to two grid
/// steps. When inputs are rational multiples of π/2 the arc endpoints land
/// on grid points and the run-length comparisons are exact integer counts.
pub fn circle2_structure(
    b1: &ArcUnion,
    b2: &ArcUnion,
    grid: usize,
) -> Result<Circle2Outcome, GeometryError> {
    if grid < 8 {
        return Err(GeometryError::BadGrid(grid));
    }
    let step = TAU / grid as f64;
    let eps = 1e-9;
    let angle = |i: usize| i as f64 * step;

    let m1: Vec<bool> = (0..grid).map(|i| b1.contains(angle(i), eps)).collect();
    let m2: Vec<bool> = (0..grid).map(|i| b2.contains(angle(i), eps)).collect();
    if let Some(i) = (0..grid).find(|&i| !m1[i] && !m2[i]) {
        return Err(GeometryError::NotACover {
            index: i,
            angle: angle(i),
        });
    }

    // Pairwise dots of grid directions depend only on the index difference.
    let cos_table: Vec<f64> = (0..grid).map(|d| (d as f64 * step).cos()).collect();
    let dot_sign = |i: usize, j: usize| -> i8 {
        let c = cos_table[(i + grid - j) % grid];
        if c.abs() <= eps {
            0
        } else if c > 0.0 {
            1
        } else {
            -1
        }
    };

    for (set_id, membership) in [(1u8, &m1), (2u8, &m2)] {
        let members: Vec<usize> = (0..grid).filter(|&i| membership[i]).collect();
        for a in 0..members.len() {
            for b in (a + 1)..members.len() {
                let sab = dot_sign(members[a], members[b]);
                if sab == 0 {
                    continue;
                }
                for c in (b + 1)..members.len() {
                    let s = sab
                        * dot_sign(members[a], members[c])
                        * dot_sign(members[b], members[c]);
                    if s < 0 {
                        return Ok(Circle2Outcome::HypothesisFailed {
                            set: set_id,
                            angles: [
                                angle(members[a]),
                                angle(members[b]),
                                angle(members[c]),
                            ],
                        });
                    }
                }
            }
        }
    }

    // Structural conclusion: two antipodal runs of length π/2 per set...
    let mismatch = |reason: String| Ok(Circle2Outcome::StructureMismatch { reason });
    let mut endpoints: Vec<Vec<(usize, usize)>> = Vec::new();
    for (set_id, membership) in [(1u8, &m1), (2u8, &m2)] {
        let runs = circular_runs(membership);
        if runs.len() != 2 {
            return mismatch(format!(
                "set {set_id} splits into {} grid runs instead of 2",
                runs.len()
            ));
        }
        let quarter = grid / 4;
        for &(_, count) in &runs {
            // A closed quarter arc spans `quarter` steps between endpoints.
            if (count as i64 - 1 - quarter as i64).abs() > 2 {
                return mismatch(format!(
                    "set {set_id} has a run of {} steps, expected ≈ {}",
                    count - 1,
                    quarter
                ));
            }
        }
        let gap = (runs[1].0 + grid - runs[0].0) % grid;
        if (gap as i64 - (grid / 2) as i64).abs() > 2 {
            return mismatch(format!(
                "set {set_id} runs are not antipodal (start gap {gap} steps)"
            ));
        }
        endpoints.push(
            runs.iter()
                .map(|&(start, count)| (start, (start + count - 1) % grid))
                .collect(),
        );
    }

    // ...meeting in four corners spaced π/2 apart: each B₁ run endpoint must
    // sit within a step or two of a B₂ run endpoint, and the corner angles
    // must form an arithmetic progression with difference π/2.
    let close = |a: usize, b: usize| {
        let d = (a + grid - b) % grid;
        d <= 2 || d >= grid - 2
    };
    let mut corners: Vec<usize> = Vec::new();
    for &(s1, e1) in &endpoints[0] {
        for &idx in &[s1, e1] {
            let matched = endpoints[1]
                .iter()
                .any(|&(s2, e2)| close(idx, s2) || close(idx, e2));
            if !matched {
                return mismatch(format!(
                    "arc endpoint at grid index {idx} of set 1 has no matching endpoint in set 2"
                ));
            }
            corners.push(idx);
        }
    }
    corners.sort_unstable();
    corners.dedup();
    if corners.len() != 4 {
        return mismatch(format!("expected 4 corners, found {}", corners.len()));
    }
    let quarter = grid / 4;
    for w in 0..4 {
        let a = corners[w];
        let b = corners[(w + 1) % 4];
        let d = (b + grid - a) % grid;
        if (d as i64 - quarter as i64).abs() > 2 {
            return mismatch(format!(
                "corner spacing {d} steps between indices {a} and {b}, expected ≈ {quarter}"
            ));
        }
    }
    let theta0 = angle(corners[0]).rem_euclid(std::f64::consts::FRAC_PI_2);
    Ok(Circle2Outcome::Confirmed {
        theta0,
        corners: [
            angle(corners[0]),
            angle(corners[1]),
            angle(corners[2]),
            angle(corners[3]),
        ],
    })
}

// ---------------------------------------------------------------------------
// File schemas (deserialized by the CLI; validation happens in TryFrom).

/// One coordinate in a region file: integer, float, or rational string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CoordSpec {
    Int(i64),
    Float(f64),
    Str(String),
}

impl CoordSpec {
    fn to_rational(&self) -> Result<Rational, GeometryError> {
        match self {
            CoordSpec::Int(v) => Ok(Rational::from_integer((*v).into())),
            CoordSpec::Float(v) => {
                rational_from_f64(*v).ok_or_else(|| GeometryError::BadCoordinate(v.to_string()))
            }
            CoordSpec::Str(s) => {
                parse_rational(s).map_err(|_| GeometryError::BadCoordinate(s.clone()))
            }
        }
    }
}

fn vector_from_spec(spec: &[CoordSpec; 3]) -> Result<RationalVector, GeometryError> {
    Ok(RationalVector::new(
        spec[0].to_rational()?,
        spec[1].to_rational()?,
        spec[2].to_rational()?,
    ))
}

/// Region file schema: `{"primitives": [...], "antipodal": bool}` where each
/// primitive is `{"type": "cap", "center": [x,y,z], "radius": r}` or
/// `{"type": "triangle", "vertices": [[..],[..],[..]]}`.
#[derive(Clone, Debug, Deserialize)]
pub struct RegionFileSpec {
    pub primitives: Vec<PrimitiveFileSpec>,
    #[serde(default)]
    pub antipodal: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PrimitiveFileSpec {
    Cap {
        center: [CoordSpec; 3],
        radius: f64,
    },
    Triangle {
        vertices: [[CoordSpec; 3]; 3],
    },
}

impl TryFrom<RegionFileSpec> for RegionSpec {
    type Error = GeometryError;

    fn try_from(spec: RegionFileSpec) -> Result<Self, Self::Error> {
        let mut primitives = Vec::new();
        for p in &spec.primitives {
            primitives.push(match p {
                PrimitiveFileSpec::Cap { center, radius } => RegionPrimitive::Cap {
                    center: vector_from_spec(center)?,
                    radius: *radius,
                },
                PrimitiveFileSpec::Triangle { vertices } => RegionPrimitive::Triangle {
                    vertices: [
                        vector_from_spec(&vertices[0])?,
                        vector_from_spec(&vertices[1])?,
                        vector_from_spec(&vertices[2])?,
                    ],
                },
            });
        }
        RegionSpec::new(primitives, spec.antipodal)
    }
}

/// Arcs file schema: `{"b1": [[start,end],...], "b2": [[start,end],...]}`.
#[derive(Clone, Debug, Deserialize)]
pub struct ArcsFileSpec {
    pub b1: Vec<[f64; 2]>,
    pub b2: Vec<[f64; 2]>,
}

impl ArcsFileSpec {
    pub fn to_unions(&self) -> Result<(ArcUnion, ArcUnion), GeometryError> {
        let build = |spec: &[[f64; 2]]| -> Result<ArcUnion, GeometryError> {
            let arcs = spec
                .iter()
                .map(|&[s, e]| Arc::new(s, e))
                .collect::<Result<Vec<_>, _>>()?;
            ArcUnion::new(arcs)
        };
        Ok((build(&self.b1)?, build(&self.b2)?))
    }
}
