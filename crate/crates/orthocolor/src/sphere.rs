//! Rational points on the unit sphere as primitive integer quadruples.
//!
//! A point of S² with rational coordinates has a unique representation
//! `(x/n, y/n, z/n)` with `x² + y² + z² = n²`, `n ≥ 1`, `gcd(x,y,z) = 1`.
//! Primitivity forces `n` odd and exactly one of `x, y, z` odd; both facts
//! are asserted on every constructed quadruple.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::numerics::{ratio, Rational, RationalVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SphereError {
    #[error("vector is not on the unit sphere (|v|² = {0})")]
    NotOnSphere(Rational),
    #[error("quadruple ({x},{y},{z};{n}) violates x²+y²+z²=n², n ≥ 1, gcd=1")]
    InvalidQuadruple { x: i64, y: i64, z: i64, n: i64 },
    #[error("coordinates exceed the supported integer range")]
    CoordinateOverflow,
    #[error("height bound must be at least 1, got {0}")]
    InvalidHeight(i64),
}

/// Canonical integer form of a rational unit vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitiveQuadruple {
    x: i64,
    y: i64,
    z: i64,
    n: i64,
}

impl PrimitiveQuadruple {
    pub fn new(x: i64, y: i64, z: i64, n: i64) -> Result<Self, SphereError> {
        let err = SphereError::InvalidQuadruple { x, y, z, n };
        if n < 1 {
            return Err(err);
        }
        let (sx, sy, sz, sn) = (x as i128, y as i128, z as i128, n as i128);
        if sx * sx + sy * sy + sz * sz != sn * sn {
            return Err(err);
        }
        if gcd3(x, y, z) != 1 {
            return Err(err);
        }
        let q = Self { x, y, z, n };
        q.assert_parity();
        Ok(q)
    }

    // Primitivity makes n odd and exactly one coordinate odd; a violation
    // here is a bug, not bad input.
    fn assert_parity(&self) {
        let odd = [self.x, self.y, self.z]
            .iter()
            .filter(|c| c.rem_euclid(2) == 1)
            .count();
        assert_eq!(odd, 1, "primitive quadruple must have exactly one odd coordinate: {self:?}");
        assert_eq!(self.n.rem_euclid(2), 1, "primitive quadruple must have odd n: {self:?}");
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn y(&self) -> i64 {
        self.y
    }

    pub fn z(&self) -> i64 {
        self.z
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn coords(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    /// The unit vector `(x/n, y/n, z/n)`.
    pub fn to_vector(&self) -> RationalVector {
        RationalVector::new(
            ratio(self.x, self.n),
            ratio(self.y, self.n),
            ratio(self.z, self.n),
        )
    }

    /// Integer dot product `x₁x₂ + y₁y₂ + z₁z₂`; zero iff the unit vectors
    /// are orthogonal.
    pub fn dot_int(&self, other: &Self) -> i64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.dot_int(other) == 0
    }

    pub fn negated(&self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            z: -self.z,
            n: self.n,
        }
    }

    fn key(&self) -> (i64, i64, i64, i64) {
        (self.n, self.x, self.y, self.z)
    }
}

impl std::fmt::Display for PrimitiveQuadruple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{};{})", self.x, self.y, self.z, self.n)
    }
}

fn gcd3(x: i64, y: i64, z: i64) -> i64 {
    x.abs().gcd(&y.abs()).gcd(&z.abs())
}

/// Maximum allowed denominator `n` when enumerating rational sphere points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeightBound(i64);

impl HeightBound {
    pub fn new(h: i64) -> Result<Self, SphereError> {
        if h < 1 {
            return Err(SphereError::InvalidHeight(h));
        }
        Ok(Self(h))
    }

    pub fn get(&self) -> i64 {
        self.0
    }
}

/// Canonical primitive form of a rational unit vector.
pub fn canonicalize(v: &RationalVector) -> Result<PrimitiveQuadruple, SphereError> {
    let norm_sq = v.norm_sq();
    if !norm_sq.is_one() {
        return Err(SphereError::NotOnSphere(norm_sq));
    }
    let mut n = BigInt::one();
    for c in v.coords() {
        n = n.lcm(c.denom());
    }
    let mut ints = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (slot, c) in ints.iter_mut().zip(v.coords()) {
        *slot = c.numer() * (&n / c.denom());
    }
    // The lcm construction already yields gcd 1; reduce defensively anyway.
    let mut g = ints[0].gcd(&ints[1]).gcd(&ints[2]);
    if g.is_zero() {
        g = BigInt::one();
    }
    let to_i64 = |b: &BigInt| b.to_i64().ok_or(SphereError::CoordinateOverflow);
    let x = to_i64(&(&ints[0] / &g))?;
    let y = to_i64(&(&ints[1] / &g))?;
    let z = to_i64(&(&ints[2] / &g))?;
    let n = to_i64(&(&n / &g))?;
    PrimitiveQuadruple::new(x, y, z, n)
}

/// All primitive quadruples with `1 ≤ n ≤ H`, sorted by `(n, x, y, z)`.
///
/// Direct triple loop over `|x|,|y|,|z| ≤ H` testing `x²+y²+z²` for being a
/// perfect square; exactness over cleverness at desk scale (`H ≤ 200` or so).
pub fn enumerate_points(bound: HeightBound) -> Vec<PrimitiveQuadruple> {
    let h = bound.get();
    let mut out = Vec::new();
    for x in -h..=h {
        for y in -h..=h {
            for z in -h..=h {
                let s = x * x + y * y + z * z;
                if s == 0 {
                    continue;
                }
                let n = s.isqrt();
                if n * n != s || n > h {
                    continue;
                }
                if gcd3(x, y, z) != 1 {
                    continue;
                }
                let q = PrimitiveQuadruple { x, y, z, n };
                q.assert_parity();
                out.push(q);
            }
        }
    }
    out.sort_by_key(|q| q.key());
    out
}

/// All unordered index pairs `(i, j)`, `i < j`, with orthogonal points.
pub fn orthogonal_pairs(points: &[PrimitiveQuadruple]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].is_orthogonal_to(&points[j]) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}
