//! Exact intervals and the four interval laws of ordered groups and fields:
//! translation, sums, homotheties and products.

use std::fmt;

use crate::error::{Error, Result};
use crate::ordered_structures::{Element, GroupDescriptor};
use crate::scalar::{dense_witness, ensure_compatible, OrderedField, OrderedGroup};

/// An interval with exact endpoints.
///
/// Public algebra works on open intervals `]lo,hi[`; the half-open form
/// `[lo,hi[` only shows up as the remainder window of Euclidean division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
    lo_open: bool,
    hi_open: bool,
}

impl<T: OrderedGroup> Interval<T> {
    /// `]lo,hi[`, which must be nonempty.
    pub fn open(lo: T, hi: T) -> Result<Self> {
        Self::with_bounds(lo, hi, true, true)
    }

    /// `[lo,hi[`, which must be nonempty.
    pub fn half_open(lo: T, hi: T) -> Result<Self> {
        Self::with_bounds(lo, hi, false, true)
    }

    /// General constructor. `lo = hi` is only allowed for `[lo,lo]`.
    pub fn with_bounds(lo: T, hi: T, lo_open: bool, hi_open: bool) -> Result<Self> {
        ensure_compatible(&lo, &hi)?;
        let degenerate_ok = lo == hi && !lo_open && !hi_open;
        if lo > hi || (lo == hi && !degenerate_ok) {
            return Err(Error::EmptyInterval(format_bounds(
                &lo, &hi, lo_open, hi_open,
            )));
        }
        Ok(Self {
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn is_open(&self) -> bool {
        self.lo_open && self.hi_open
    }

    pub fn contains(&self, x: &T) -> bool {
        let above = if self.lo_open {
            *x > self.lo
        } else {
            *x >= self.lo
        };
        let below = if self.hi_open {
            *x < self.hi
        } else {
            *x <= self.hi
        };
        above && below
    }

    /// Membership that reports a carrier mismatch instead of panicking.
    pub fn try_contains(&self, x: &T) -> Result<bool> {
        ensure_compatible(&self.lo, x)?;
        Ok(self.contains(x))
    }

    fn require_open(&self) -> Result<()> {
        if self.is_open() {
            Ok(())
        } else {
            Err(Error::HypothesisViolated(format!(
                "{self} is not an open interval"
            )))
        }
    }
}

fn format_bounds<T: fmt::Display>(lo: &T, hi: &T, lo_open: bool, hi_open: bool) -> String {
    format!(
        "{}{lo},{hi}{}",
        if lo_open { ']' } else { '[' },
        if hi_open { '[' } else { ']' }
    )
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bounds(
            &self.lo,
            &self.hi,
            self.lo_open,
            self.hi_open,
        ))
    }
}

/// Parses `]lo,hi[`, `[lo,hi[`, `]lo,hi]` or `[lo,hi]` in the given carrier.
pub fn parse_interval<T>(desc: &GroupDescriptor, text: &str) -> Result<Interval<T>>
where
    T: OrderedGroup + TryFrom<Element, Error = Error>,
{
    let bad = || Error::Parse(format!("invalid interval {text:?}"));
    let mut chars = text.chars();
    let first = chars.next().ok_or_else(bad)?;
    let last = chars.next_back().ok_or_else(bad)?;
    let lo_open = match first {
        ']' => true,
        '[' => false,
        _ => return Err(bad()),
    };
    let hi_open = match last {
        '[' => true,
        ']' => false,
        _ => return Err(bad()),
    };
    let (lo, hi) = chars.as_str().split_once(',').ok_or_else(bad)?;
    let lo = T::try_from(desc.parse(lo)?)?;
    let hi = T::try_from(desc.parse(hi)?)?;
    Interval::with_bounds(lo, hi, lo_open, hi_open)
}

/// `γ + ]α,β[ = ]γ+α, γ+β[`, keeping the openness of each end.
pub fn translate<T: OrderedGroup>(shift: &T, interval: &Interval<T>) -> Result<Interval<T>> {
    ensure_compatible(shift, &interval.lo)?;
    Interval::with_bounds(
        shift.clone() + interval.lo.clone(),
        shift.clone() + interval.hi.clone(),
        interval.lo_open,
        interval.hi_open,
    )
}

/// `]α,β[ + ]γ,δ[ = ]α+γ, β+δ[`.
///
/// The identity needs a dense carrier: in `Z`, `]0,2[ + ]0,2[ = {2}` while
/// `]0,4[` also contains 1 and 3, so the integers are refused.
pub fn interval_sum<T: OrderedGroup>(i: &Interval<T>, j: &Interval<T>) -> Result<Interval<T>> {
    ensure_compatible(&i.lo, &j.lo)?;
    if !T::DENSE {
        return Err(Error::NotDense(i.lo.carrier_name()));
    }
    i.require_open()?;
    j.require_open()?;
    Interval::open(i.lo.clone() + j.lo.clone(), i.hi.clone() + j.hi.clone())
}

/// Writes `x` in `I + J` as `u + v` with `u ∈ I`, `v ∈ J`.
///
/// The admissible `u` form the open interval
/// `]max(lo_I, x - hi_J), min(hi_I, x - lo_J)[`, which is nonempty whenever
/// `x` lies in the sum; `u` is its dense witness (the midpoint).
pub fn split_sum<T: OrderedGroup>(x: &T, i: &Interval<T>, j: &Interval<T>) -> Result<(T, T)> {
    let sum = interval_sum(i, j)?;
    if !sum.try_contains(x)? {
        return Err(Error::NotInInterval {
            value: x.to_string(),
            interval: sum.to_string(),
        });
    }
    let lower = (i.lo.clone()).max(x.clone() - j.hi.clone());
    let upper = (i.hi.clone()).min(x.clone() - j.lo.clone());
    let u = dense_witness(&lower, &upper)?;
    let v = x.clone() - u.clone();
    Ok((u, v))
}

/// `γ·]α,β[ = ]γα, γβ[` for `γ > 0`.
pub fn scale<T: OrderedField>(factor: &T, interval: &Interval<T>) -> Result<Interval<T>> {
    ensure_compatible(factor, &interval.lo)?;
    if !factor.is_positive() {
        return Err(Error::NotPositive(factor.to_string()));
    }
    Interval::with_bounds(
        factor.clone() * interval.lo.clone(),
        factor.clone() * interval.hi.clone(),
        interval.lo_open,
        interval.hi_open,
    )
}

fn require_positive_open<T: OrderedField>(i: &Interval<T>) -> Result<()> {
    i.require_open()?;
    if !i.lo.is_positive() {
        return Err(Error::NotPositive(i.lo.to_string()));
    }
    Ok(())
}

/// `]α,β[·]γ,δ[ = ]αγ, βδ[` for `0 < α < β`, `0 < γ < δ`.
pub fn interval_product<T: OrderedField>(i: &Interval<T>, j: &Interval<T>) -> Result<Interval<T>> {
    ensure_compatible(&i.lo, &j.lo)?;
    require_positive_open(i)?;
    require_positive_open(j)?;
    Interval::open(i.lo.clone() * j.lo.clone(), i.hi.clone() * j.hi.clone())
}

/// Writes `x` in `I·J` as `u·v` with `u ∈ I`, `v ∈ J`.
///
/// `u` is the midpoint of `]max(α, x/δ), min(β, x/γ)[` and `v = x/u`.
pub fn split_product<T: OrderedField>(x: &T, i: &Interval<T>, j: &Interval<T>) -> Result<(T, T)> {
    let product = interval_product(i, j)?;
    if !product.try_contains(x)? {
        return Err(Error::NotInInterval {
            value: x.to_string(),
            interval: product.to_string(),
        });
    }
    let lower = i.lo.clone().max(x.checked_div(&j.hi)?);
    let upper = i.hi.clone().min(x.checked_div(&j.lo)?);
    let u = dense_witness(&lower, &upper)?;
    let v = x.checked_div(&u)?;
    Ok((u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn open(lo: BigRational, hi: BigRational) -> Interval<BigRational> {
        Interval::open(lo, hi).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(Interval::open(q(1, 1), q(1, 1)).is_err());
        assert!(Interval::open(q(2, 1), q(1, 1)).is_err());
        assert!(Interval::half_open(q(1, 1), q(1, 1)).is_err());
        assert!(Interval::with_bounds(q(1, 1), q(1, 1), false, false).is_ok());
        let h = Interval::half_open(q(0, 1), q(1, 1)).unwrap();
        assert!(h.contains(&q(0, 1)));
        assert!(!h.contains(&q(1, 1)));
        assert_eq!(h.to_string(), "[0,1[");
    }

    #[test]
    fn translate_examples() {
        assert_eq!(
            translate(&q(2, 1), &open(q(0, 1), q(1, 1))).unwrap(),
            open(q(2, 1), q(3, 1))
        );
        let (a, b) = (q(3, 2), q(11, 4));
        assert_eq!(
            translate(&-a.clone(), &open(a.clone(), b.clone())).unwrap(),
            open(q(0, 1), b - a)
        );
        let i = open(q(-1, 3), q(5, 7));
        assert_eq!(translate(&q(0, 1), &i).unwrap(), i);
    }

    #[test]
    fn sum_examples() {
        let unit = open(q(-1, 1), q(1, 1));
        assert_eq!(interval_sum(&unit, &unit).unwrap(), open(q(-2, 1), q(2, 1)));
        assert_eq!(
            interval_sum(&open(q(0, 1), q(1, 1)), &open(q(1, 1), q(2, 1))).unwrap(),
            open(q(1, 1), q(3, 1))
        );
        let z = Interval::open(BigInt::from(0), BigInt::from(1)).unwrap();
        assert!(matches!(interval_sum(&z, &z), Err(Error::NotDense(_))));
    }

    #[test]
    fn integers_break_the_sum_law() {
        // ]0,2[ + ]0,2[ only reaches 2 in Z, yet ]0,4[ holds 1, 2 and 3.
        let members: Vec<i64> = (1..2).collect();
        let sums: Vec<i64> = members
            .iter()
            .flat_map(|u| members.iter().map(move |v| u + v))
            .collect();
        assert_eq!(sums, vec![2]);
        let z = Interval::open(BigInt::from(0), BigInt::from(2)).unwrap();
        assert!(interval_sum(&z, &z).is_err());
        assert!(split_sum(&BigInt::from(2), &z, &z).is_err());
    }

    #[test]
    fn split_sum_examples() {
        let unit = open(q(-1, 1), q(1, 1));
        assert_eq!(
            split_sum(&q(3, 2), &unit, &unit).unwrap(),
            (q(3, 4), q(3, 4))
        );
        assert_eq!(
            split_sum(&q(0, 1), &unit, &unit).unwrap(),
            (q(0, 1), q(0, 1))
        );
        assert!(matches!(
            split_sum(&q(5, 1), &unit, &unit),
            Err(Error::NotInInterval { .. })
        ));
        assert!(split_sum(&q(2, 1), &unit, &unit).is_err());
    }

    #[test]
    fn scale_examples() {
        assert_eq!(
            scale(&q(2, 1), &open(q(1, 1), q(3, 1))).unwrap(),
            open(q(2, 1), q(6, 1))
        );
        let (a, b) = (q(3, 2), q(7, 2));
        assert_eq!(
            scale(&a.recip(), &open(a.clone(), b.clone())).unwrap(),
            open(q(1, 1), b / a)
        );
        let i = open(q(-1, 3), q(5, 7));
        assert_eq!(scale(&q(1, 1), &i).unwrap(), i);
        assert!(matches!(scale(&q(0, 1), &i), Err(Error::NotPositive(_))));
        assert!(matches!(scale(&q(-1, 1), &i), Err(Error::NotPositive(_))));
    }

    #[test]
    fn product_examples() {
        let i = open(q(1, 1), q(2, 1));
        assert_eq!(interval_product(&i, &i).unwrap(), open(q(1, 1), q(4, 1)));
        let half_two = open(q(1, 2), q(2, 1));
        let (u, v) = split_product(&q(2, 1), &half_two, &half_two).unwrap();
        assert_eq!((u.clone(), v.clone()), (q(3, 2), q(4, 3)));
        assert!(half_two.contains(&u) && half_two.contains(&v));
        assert_eq!(u * v, q(2, 1));
        assert!(matches!(
            interval_product(&open(q(-1, 1), q(1, 1)), &i),
            Err(Error::NotPositive(_))
        ));
        assert!(split_product(&q(5, 1), &i, &i).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        let d = GroupDescriptor::Rationals;
        let i: Interval<BigRational> = parse_interval(&d, "]-1/2,3[").unwrap();
        assert_eq!(i, open(q(-1, 2), q(3, 1)));
        assert_eq!(i.to_string(), "]-1/2,3[");
        assert!(parse_interval::<BigRational>(&d, "]3,1[").is_err());
        assert!(parse_interval::<BigRational>(&d, "(0,1)").is_err());
        let r2 = GroupDescriptor::quadratic(2).unwrap();
        let j: Interval<crate::Quadratic> = parse_interval(&r2, "]1,0+1*sqrt(2)[").unwrap();
        assert_eq!(j.to_string(), "]1,0+1*sqrt(2)[");
    }
}
