//! Real quadratic fields `Q(sqrt(d))` for square-free `d >= 2`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{scale_ratio, OrderedField, OrderedGroup};

/// Descriptor of the field `Q(sqrt(d))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    d: u64,
}

impl QuadraticField {
    /// Fails unless `d` is square-free and at least 2.
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDescriptor(format!(
                "radicand {d} must be at least 2"
            )));
        }
        if !is_squarefree(d) {
            return Err(Error::InvalidDescriptor(format!(
                "radicand {d} is not square-free"
            )));
        }
        Ok(Self { d })
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn element(&self, a: BigRational, b: BigRational) -> Quadratic {
        Quadratic { a, b, d: self.d }
    }

    pub fn from_rational(&self, a: BigRational) -> Quadratic {
        self.element(a, BigRational::zero())
    }

    pub fn zero(&self) -> Quadratic {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> Quadratic {
        self.from_rational(BigRational::one())
    }

    /// The element `sqrt(d)` itself.
    pub fn root(&self) -> Quadratic {
        self.element(BigRational::zero(), BigRational::one())
    }
}

fn is_squarefree(d: u64) -> bool {
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// The element `a + b·sqrt(d)`.
///
/// Since `sqrt(d)` is irrational the pair `(a, b)` is canonical, so equality is
/// structural. Operations between elements of different fields panic; use the
/// checked helpers in [`crate::scalar`] or [`crate::ordered_structures::Element`] when
/// the carriers are not known to agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quadratic {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Quadratic {
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn field(&self) -> QuadraticField {
        QuadraticField { d: self.d }
    }

    fn d_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d))
    }

    /// Field norm `a^2 - d·b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - self.d_rational() * &self.b * &self.b
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Exact sign of `a + b·sqrt(d)`, by integer comparisons only.
    pub fn signum(&self) -> Ordering {
        // denominators are positive, so numerators carry the signs
        sign_of(
            self.a.numer(),
            self.a.denom(),
            self.b.numer(),
            self.b.denom(),
            self.d,
        )
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.d, other.d,
            "mixed quadratic fields Q(sqrt({})) and Q(sqrt({}))",
            self.d, other.d
        );
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt({})", self.a, sign, self.b.abs(), self.d)
    }
}

impl Add for Quadratic {
    type Output = Quadratic;

    fn add(self, rhs: Self) -> Self {
        self.assert_same_field(&rhs);
        Self {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            d: self.d,
        }
    }
}

impl Sub for Quadratic {
    type Output = Quadratic;

    fn sub(self, rhs: Self) -> Self {
        self.assert_same_field(&rhs);
        Self {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            d: self.d,
        }
    }
}

impl Neg for Quadratic {
    type Output = Quadratic;

    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for Quadratic {
    type Output = Quadratic;

    fn mul(self, rhs: Self) -> Self {
        self.assert_same_field(&rhs);
        let d = self.d_rational();
        Self {
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &rhs.a * &self.b,
            d: self.d,
        }
    }
}

/// Sign of `na/da + (nb/db)·sqrt(d)` for positive `da`, `db`.
///
/// Same-sign components decide directly. Otherwise the component with the
/// larger square dominates (`na^2·db^2` against `d·nb^2·da^2`); the squares
/// never tie because `sqrt(d)` is irrational.
fn sign_of(na: &BigInt, da: &BigInt, nb: &BigInt, db: &BigInt, d: u64) -> Ordering {
    let sa = na.sign().cmp(&num_bigint::Sign::NoSign);
    let sb = nb.sign().cmp(&num_bigint::Sign::NoSign);
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        _ => {
            let left = na * db;
            let right = nb * da;
            if &left * &left > &right * &right * BigInt::from(d) {
                sa
            } else {
                sb
            }
        }
    }
}

impl PartialOrd for Quadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quadratic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.assert_same_field(other);
        // sign of the difference, on unreduced fractions
        let cross = |x: &BigRational, y: &BigRational| {
            (
                x.numer() * y.denom() - y.numer() * x.denom(),
                x.denom() * y.denom(),
            )
        };
        let (na, da) = cross(&self.a, &other.a);
        let (nb, db) = cross(&self.b, &other.b);
        sign_of(&na, &da, &nb, &db, self.d)
    }
}

impl OrderedGroup for Quadratic {
    const DENSE: bool = true;

    fn carrier_name(&self) -> String {
        format!("Qsqrt:{}", self.d)
    }

    fn zero_like(&self) -> Self {
        self.field().zero()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.d == other.d
    }

    fn int_scale(&self, n: &BigInt) -> Self {
        Self {
            a: scale_ratio(&self.a, n),
            b: scale_ratio(&self.b, n),
            d: self.d,
        }
    }

    fn cmp_multiple(&self, n: &BigInt, other: &Self) -> Ordering {
        self.assert_same_field(other);
        // sign of other - n·self, on unreduced fractions
        let cross = |x: &BigRational, y: &BigRational| {
            (
                y.numer() * x.denom() - n * x.numer() * y.denom(),
                x.denom() * y.denom(),
            )
        };
        let (na, da) = cross(&self.a, &other.a);
        let (nb, db) = cross(&self.b, &other.b);
        sign_of(&na, &da, &nb, &db, self.d)
    }

    fn between(&self, other: &Self) -> Option<Self> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        Some(Self {
            a: (&self.a + &other.a) * &half,
            b: (&self.b + &other.b) * &half,
            d: self.d,
        })
    }
}

impl OrderedField for Quadratic {
    fn one_like(&self) -> Self {
        self.field().one()
    }

    fn rational_like(&self, q: &BigRational) -> Self {
        self.field().from_rational(q.clone())
    }

    fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt2(a: i64, b: i64) -> Quadratic {
        QuadraticField::new(2).unwrap().element(q(a, 1), q(b, 1))
    }

    #[test]
    fn descriptor_validation() {
        assert!(QuadraticField::new(2).is_ok());
        assert!(QuadraticField::new(6).is_ok());
        assert!(QuadraticField::new(1).is_err());
        assert!(QuadraticField::new(0).is_err());
        assert!(QuadraticField::new(8).is_err());
        assert!(QuadraticField::new(18).is_err());
    }

    #[test]
    fn componentwise_sum() {
        assert_eq!(sqrt2(1, 2) + sqrt2(3, -2), sqrt2(4, 0));
    }

    #[test]
    fn sign_decisions() {
        assert_eq!(sqrt2(1, -1).signum(), Ordering::Less);
        assert_eq!(sqrt2(-1, 1).signum(), Ordering::Greater);
        assert_eq!(sqrt2(0, 0).signum(), Ordering::Equal);
        // 7 - 4 sqrt(2) > 1 because 36 > 32
        assert_eq!(sqrt2(7, -4).cmp(&sqrt2(1, 0)), Ordering::Greater);
        assert_eq!(sqrt2(3, -2).signum(), Ordering::Greater);
        assert_eq!(sqrt2(-3, 2).signum(), Ordering::Less);
    }

    #[test]
    fn conjugate_product_and_inverse() {
        assert_eq!(sqrt2(1, 1) * sqrt2(1, -1), sqrt2(-1, 0));
        let inv = sqrt2(1, 1).inverse().unwrap();
        assert_eq!(inv, sqrt2(-1, 1));
        assert_eq!(inv * sqrt2(1, 1), sqrt2(1, 0));
        assert_eq!(sqrt2(0, 0).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn int_scale_negation() {
        assert_eq!(sqrt2(1, 1).int_scale(&BigInt::from(-2)), sqrt2(-2, -2));
    }

    #[test]
    fn midpoint_is_between() {
        let lo = sqrt2(1, 0);
        let hi = sqrt2(0, 1);
        let mid = lo.between(&hi).unwrap();
        assert_eq!(
            mid,
            QuadraticField::new(2).unwrap().element(q(1, 2), q(1, 2))
        );
        assert!(lo < mid && mid < hi);
    }

    #[test]
    fn display_forms() {
        assert_eq!(sqrt2(1, 2).to_string(), "1+2*sqrt(2)");
        assert_eq!(sqrt2(1, -1).to_string(), "1-1*sqrt(2)");
        assert_eq!(sqrt2(4, 0).to_string(), "4");
        assert_eq!(sqrt2(0, 1).to_string(), "0+1*sqrt(2)");
        let f = QuadraticField::new(3).unwrap();
        assert_eq!(f.element(q(-1, 2), q(3, 4)).to_string(), "-1/2+3/4*sqrt(3)");
    }

    #[test]
    #[should_panic(expected = "mixed quadratic fields")]
    fn mixing_fields_panics_in_operators() {
        let a = QuadraticField::new(2).unwrap().one();
        let b = QuadraticField::new(3).unwrap().one();
        let _ = a + b;
    }
}
