//! Exact rational scalars, 3-vectors, and the 2-adic valuation.
//!
//! All predicates here are exact: a dot product is zero if and only if the
//! rational arithmetic says so. `Rational` values are always held in lowest
//! terms with a positive denominator (the representation `num-rational`
//! guarantees).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p`, `-p`, or `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer = BigInt::from_str(num_str.trim())
        .map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
    let denom = match den_str {
        Some(d) => {
            BigInt::from_str(d.trim()).map_err(|_| ParseRationalError::Malformed(s.to_string()))?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// Shorthand for a rational from an integer pair. Panics on `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A 3-vector with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl RationalVector {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Self { x, y, z }
    }

    pub fn from_integers(x: i64, y: i64, z: i64) -> Self {
        Self::new(ratio(x, 1), ratio(y, 1), ratio(z, 1))
    }

    pub fn zero() -> Self {
        Self::from_integers(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Exact standard dot product.
    pub fn dot(&self, other: &Self) -> Rational {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    /// True when `x² + y² + z² = 1` exactly.
    pub fn is_unit(&self) -> bool {
        self.norm_sq().is_one()
    }

    pub fn negated(&self) -> Self {
        Self::new(-&self.x, -&self.y, -&self.z)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self::new(&self.x * factor, &self.y * factor, &self.z * factor)
    }

    /// True when the vectors span the same line through the origin.
    pub fn is_parallel(&self, other: &Self) -> bool {
        self.cross(other).is_zero()
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Coordinates as `f64`, for sampling heuristics only.
    pub fn to_f64(&self) -> [f64; 3] {
        [
            rational_to_f64(&self.x),
            rational_to_f64(&self.y),
            rational_to_f64(&self.z),
        ]
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Converts a finite `f64` to the exact rational it represents.
///
/// Every finite double is a dyadic rational, so this conversion is lossless;
/// it is how sampled witnesses get re-verified exactly.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Sign of exact rational: -1, 0, or +1.
pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact sign of `(u·v)(u·w)(v·w)`.
///
/// This is the local octahedrality quantity: a set is locally octahedral
/// exactly when no triple makes this negative.
pub fn triple_sign(u: &RationalVector, v: &RationalVector, w: &RationalVector) -> i8 {
    sign(&u.dot(v)) * sign(&u.dot(w)) * sign(&v.dot(w))
}

/// The 2-adic valuation `v₂(q)`, with `+∞` for `q = 0`.
///
/// The associated absolute value is `ν(q) = 2^(−v₂(q))` with `ν(0) = 0`.
/// `Infinite` sorts above every finite valuation, so comparisons of ν reduce
/// to reversed comparisons of `TwoAdicValue`: `ν(a) > ν(b) ⇔ v₂(a) < v₂(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwoAdicValue {
    Finite(i64),
    Infinite,
}

impl TwoAdicValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, TwoAdicValue::Infinite)
    }

    /// `ν(self) > ν(other)` in the 2-adic absolute value.
    pub fn nu_exceeds(&self, other: &Self) -> bool {
        self < other
    }

    /// `ν(self) ≥ ν(other)` in the 2-adic absolute value.
    pub fn nu_at_least(&self, other: &Self) -> bool {
        self <= other
    }
}

impl fmt::Display for TwoAdicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoAdicValue::Finite(v) => write!(f, "{v}"),
            TwoAdicValue::Infinite => write!(f, "+inf"),
        }
    }
}

fn v2_bigint(n: &BigInt) -> Option<i64> {
    n.trailing_zeros().map(|z| z as i64)
}

/// Exact 2-adic valuation of a rational: `v₂(a/b) = v₂(a) − v₂(b)`.
pub fn two_adic(q: &Rational) -> TwoAdicValue {
    match v2_bigint(q.numer()) {
        None => TwoAdicValue::Infinite,
        Some(vn) => {
            let vd = v2_bigint(q.denom()).expect("denominator is nonzero");
            TwoAdicValue::Finite(vn - vd)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(coords: [(i64, i64); 3]) -> RationalVector {
        RationalVector::new(
            ratio(coords[0].0, coords[0].1),
            ratio(coords[1].0, coords[1].1),
            ratio(coords[2].0, coords[2].1),
        )
    }

    #[test]
    fn dot_orthonormal_basis_vectors() {
        let e1 = RationalVector::from_integers(1, 0, 0);
        let e2 = RationalVector::from_integers(0, 1, 0);
        assert!(e1.dot(&e2).is_zero());
    }

    #[test]
    fn dot_unit_self_product() {
        let u = rv([(1, 3), (2, 3), (2, 3)]);
        assert!(u.is_unit());
        assert!(u.dot(&u).is_one());
    }

    #[test]
    fn dot_mixed_rational() {
        // (1/3,2/3,2/3)·(−3/5,4/5,0) = −3/15 + 8/15 = 1/3
        let u = rv([(1, 3), (2, 3), (2, 3)]);
        let v = rv([(-3, 5), (4, 5), (0, 1)]);
        assert_eq!(u.dot(&v), ratio(1, 3));
    }

    #[test]
    fn triple_sign_all_orthogonal() {
        let e1 = RationalVector::from_integers(1, 0, 0);
        let e2 = RationalVector::from_integers(0, 1, 0);
        let e3 = RationalVector::from_integers(0, 0, 1);
        assert_eq!(triple_sign(&e1, &e2, &e3), 0);
    }

    #[test]
    fn triple_sign_negative_triple() {
        // (3/5)(−3/5)(7/25) < 0
        let u = RationalVector::from_integers(1, 0, 0);
        let v = rv([(3, 5), (4, 5), (0, 1)]);
        let w = rv([(-3, 5), (4, 5), (0, 1)]);
        assert_eq!(triple_sign(&u, &v, &w), -1);
    }

    #[test]
    fn triple_sign_repeated_vector() {
        let u = RationalVector::from_integers(1, 0, 0);
        assert_eq!(triple_sign(&u, &u, &u), 1);
    }

    #[test]
    fn two_adic_examples() {
        assert_eq!(two_adic(&ratio(4, 3)), TwoAdicValue::Finite(2));
        assert_eq!(two_adic(&ratio(3, 8)), TwoAdicValue::Finite(-3));
        assert_eq!(two_adic(&ratio(0, 1)), TwoAdicValue::Infinite);
    }

    #[test]
    fn infinite_valuation_is_smallest_nu() {
        let zero = TwoAdicValue::Infinite;
        let odd = TwoAdicValue::Finite(0);
        assert!(odd.nu_exceeds(&zero));
        assert!(!zero.nu_exceeds(&odd));
        assert!(zero.nu_at_least(&zero));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert_eq!(parse_rational("6/8").unwrap(), ratio(3, 4));
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(matches!(
            parse_rational("0.5"),
            Err(ParseRationalError::Malformed(_))
        ));
        assert!(matches!(parse_rational(""), Err(ParseRationalError::Empty)));
    }

    #[test]
    fn f64_round_trip_is_exact() {
        let q = rational_from_f64(0.375).unwrap();
        assert_eq!(q, ratio(3, 8));
    }
}
