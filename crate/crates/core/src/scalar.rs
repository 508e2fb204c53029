//! Scalar-type contracts for Archimedean ordered abelian groups and fields.
//!
//! Every carrier is exact. The algorithms in [`crate::division`],
//! [`crate::interval`], [`crate::extension`] and [`crate::uniqueness`] are
//! written against these traits only, so they run unchanged over the
//! integers, the rationals and the real quadratic fields.
//!
//! Carriers whose elements depend on runtime parameters (the radicand of a
//! quadratic field) cannot produce a context-free zero, so the constants are
//! taken "like" an existing element instead of through [`num_traits::Zero`].

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An Archimedean totally ordered abelian group with exact arithmetic.
///
/// `Ord` must be compatible with addition: `x < y` implies `x + z < y + z`.
pub trait OrderedGroup:
    Clone
    + Ord
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    /// Whether every nonempty open interval `]a,b[` has an element.
    const DENSE: bool;

    /// Short carrier tag, as accepted by the `--carrier` flag.
    fn carrier_name(&self) -> String;

    /// The additive identity of the carrier `self` lives in.
    fn zero_like(&self) -> Self;

    /// Whether `self` and `other` live in the same carrier.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    /// `n·self`: repeated addition of `self` (or of `-self` for negative `n`).
    fn int_scale(&self, n: &BigInt) -> Self {
        let base = if n.is_negative() {
            -self.clone()
        } else {
            self.clone()
        };
        let mut k = n.abs();
        let mut acc = self.zero_like();
        let mut power = base;
        while !k.is_zero() {
            if k.bit(0) {
                acc = acc + power.clone();
            }
            power = power.clone() + power;
            k >>= 1;
        }
        acc
    }

    /// How `other` compares with `n·self`. Carriers may override this with
    /// something cheaper than building the multiple.
    fn cmp_multiple(&self, n: &BigInt, other: &Self) -> Ordering {
        other.cmp(&self.int_scale(n))
    }

    /// An element strictly between `self` and `other`, or `None` when the
    /// carrier is not dense. Only called with `self < other`.
    fn between(&self, other: &Self) -> Option<Self>;

    fn is_zero_element(&self) -> bool {
        *self == self.zero_like()
    }

    fn is_positive(&self) -> bool {
        *self > self.zero_like()
    }

    fn is_negative_element(&self) -> bool {
        *self < self.zero_like()
    }

    /// `|x| := max{x, -x}`.
    fn abs_value(&self) -> Self {
        let neg = -self.clone();
        if neg > *self {
            neg
        } else {
            self.clone()
        }
    }
}

/// An Archimedean ordered field.
pub trait OrderedField: OrderedGroup + Mul<Output = Self> {
    fn one_like(&self) -> Self;

    /// Embeds a rational constant into the field `self` lives in.
    fn rational_like(&self, q: &BigRational) -> Self;

    fn inverse(&self) -> Result<Self>;

    fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inverse()?)
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// `self^e` for any integer exponent; `self` must be nonzero when `e < 0`.
    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut power = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * power.clone();
            }
            k >>= 1;
            if k > 0 {
                power = power.clone() * power;
            }
        }
        Ok(acc)
    }
}

impl OrderedGroup for BigInt {
    const DENSE: bool = false;

    fn carrier_name(&self) -> String {
        "Z".to_string()
    }

    fn zero_like(&self) -> Self {
        BigInt::zero()
    }

    fn int_scale(&self, n: &BigInt) -> Self {
        self * n
    }

    fn between(&self, _other: &Self) -> Option<Self> {
        None
    }
}

impl OrderedGroup for BigRational {
    const DENSE: bool = true;

    fn carrier_name(&self) -> String {
        "Q".to_string()
    }

    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn int_scale(&self, n: &BigInt) -> Self {
        scale_ratio(self, n)
    }

    fn cmp_multiple(&self, n: &BigInt, other: &Self) -> Ordering {
        // denominators are positive
        (other.numer() * self.denom()).cmp(&(n * self.numer() * other.denom()))
    }

    fn between(&self, other: &Self) -> Option<Self> {
        Some((self + other) / BigRational::from_integer(BigInt::from(2)))
    }
}

/// `n·q` in lowest terms. Only `n` and the denominator can share factors,
/// so one gcd suffices.
pub(crate) fn scale_ratio(q: &BigRational, n: &BigInt) -> BigRational {
    if n.is_zero() {
        return BigRational::zero();
    }
    let g = n.gcd(q.denom());
    BigRational::new_raw(q.numer() * (n / &g), q.denom() / &g)
}

impl OrderedField for BigRational {
    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn rational_like(&self, q: &BigRational) -> Self {
        q.clone()
    }

    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// Checks two elements share a carrier.
pub fn ensure_compatible<T: OrderedGroup>(x: &T, y: &T) -> Result<()> {
    if x.compatible(y) {
        Ok(())
    } else {
        Err(Error::DescriptorMismatch {
            left: x.carrier_name(),
            right: y.carrier_name(),
        })
    }
}

/// Total-order comparison that reports a carrier mismatch instead of panicking.
pub fn checked_cmp<T: OrderedGroup>(x: &T, y: &T) -> Result<Ordering> {
    ensure_compatible(x, y)?;
    Ok(x.cmp(y))
}

/// Returns some `w` with `a < w < b`. For field carriers this is the midpoint.
pub fn dense_witness<T: OrderedGroup>(a: &T, b: &T) -> Result<T> {
    ensure_compatible(a, b)?;
    if !T::DENSE {
        return Err(Error::NotDense(a.carrier_name()));
    }
    if a >= b {
        return Err(Error::EmptyInterval(format!("]{a},{b}[")));
    }
    a.between(b)
        .ok_or_else(|| Error::NotDense(a.carrier_name()))
}
