//! Euclidean division in Archimedean ordered groups, and its multiplicative
//! analogue on the positive cone of an Archimedean ordered field.
//!
//! Only comparisons and the carrier operations are used; quotients are found
//! by exponential bracketing followed by bisection, so every search costs
//! `O(log |q|)` exact operations and terminates by the Archimedean property.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::scalar::{ensure_compatible, OrderedField, OrderedGroup};

/// `x = q·y + r` (additive) or `x = y^q · r` (multiplicative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionResult<T> {
    pub quotient: BigInt,
    pub remainder: T,
}

/// Least `n >= 1` with `y < n·x`, for `x, y > 0`.
pub fn archimedean_bound<T: OrderedGroup>(x: &T, y: &T) -> Result<BigInt> {
    ensure_compatible(x, y)?;
    for v in [x, y] {
        if !v.is_positive() {
            return Err(Error::NotPositive(v.to_string()));
        }
    }
    let exceeds = |n: &BigInt| x.cmp_multiple(n, y) == Ordering::Less;

    // invariant: lo == 0 or lo·x <= y, and y < hi·x once the loop exits
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one();
    while !exceeds(&hi) {
        lo = hi.clone();
        hi <<= 1;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if exceeds(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// The unique `(q, r)` with `x = q·y + r` and `0 <= r < |y|`.
pub fn euclidean_div<T: OrderedGroup>(x: &T, y: &T) -> Result<DivisionResult<T>> {
    ensure_compatible(x, y)?;
    if y.is_zero_element() {
        return Err(Error::DivisionByZero);
    }
    let m = y.abs_value();
    // quotient with respect to |y|
    let q = if !x.is_negative_element() {
        if *x < m {
            BigInt::zero()
        } else {
            archimedean_bound(&m, x)? - 1
        }
    } else {
        // -x < k·m and -x >= (k-1)·m, so x lands in ]-k·m, -(k-1)·m]
        let k = archimedean_bound(&m, &-x.clone())?;
        let candidate: BigInt = 1 - k.clone();
        if m.int_scale(&candidate) == *x {
            candidate
        } else {
            -k
        }
    };
    let remainder = x.clone() - m.int_scale(&q);
    let quotient = if y.is_negative_element() { -q } else { q };
    Ok(DivisionResult {
        quotient,
        remainder,
    })
}

/// Integers `m < n` such that `y` lies strictly between `x^m` and `x^n`.
///
/// For `x > 1` this reads `x^m < y < x^n`; for `x < 1` the powers decrease,
/// so `x^n < y < x^m`. The bracket is the tightest one: `n - m` is 1, or 2
/// when `y` is itself a power of `x`.
pub fn bernoulli_bounds<T: OrderedField>(x: &T, y: &T) -> Result<(i64, i64)> {
    ensure_compatible(x, y)?;
    for v in [x, y] {
        if !v.is_positive() {
            return Err(Error::NotPositive(v.to_string()));
        }
    }
    if x.is_one() {
        return Err(Error::UnitBase);
    }
    let one = x.one_like();
    let flipped = *x < one;
    let base = if flipped { x.inverse()? } else { x.clone() };

    let (m, n) = tight_bracket(&base, y)?;
    Ok(if flipped { (-n, -m) } else { (m, n) })
}

/// For `base > 1`: the greatest `m` with `base^m < y` and least `n` with
/// `y < base^n`.
fn tight_bracket<T: OrderedField>(base: &T, y: &T) -> Result<(i64, i64)> {
    let at_most = |e: i64| -> Result<bool> { Ok(base.powi(e)? <= *y) };

    // bracket lo < hi with base^lo <= y < base^hi
    let (mut lo, mut hi) = if at_most(0)? {
        let mut hi = 1i64;
        while at_most(hi)? {
            hi = hi.checked_mul(2).ok_or_else(overflow)?;
        }
        (hi / 2, hi)
    } else {
        let mut lo = -1i64;
        while !at_most(lo)? {
            lo = lo.checked_mul(2).ok_or_else(overflow)?;
        }
        (lo, lo / 2)
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if at_most(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if base.powi(lo)? == *y {
        Ok((lo - 1, lo + 1))
    } else {
        Ok((lo, hi))
    }
}

fn overflow() -> Error {
    Error::HypothesisViolated("exponent search overflowed i64".to_string())
}

/// The canonical remainder window of [`multiplicative_div`]: `[1,y[` when
/// `y > 1` and `]y,1]` when `y < 1`.
pub fn remainder_window<T: OrderedField>(y: &T) -> Result<Interval<T>> {
    let one = y.one_like();
    if *y > one {
        Interval::half_open(one, y.clone())
    } else {
        Interval::with_bounds(y.clone(), one, true, false)
    }
}

/// The unique `(z, r)` with `x = y^z · r` and `r` in [`remainder_window`].
///
/// Exact powers `x = y^z` get `r = 1`.
pub fn multiplicative_div<T: OrderedField>(x: &T, y: &T) -> Result<DivisionResult<T>> {
    if !y.is_positive() {
        return Err(Error::NotPositive(y.to_string()));
    }
    if y.is_one() {
        return Err(Error::UnitBase);
    }
    let (m, n) = bernoulli_bounds(y, x)?;
    let (z, remainder) = if n - m == 2 {
        (m + 1, x.one_like())
    } else {
        (m, x.checked_div(&y.powi(m)?)?)
    };
    Ok(DivisionResult {
        quotient: BigInt::from(z),
        remainder,
    })
}

/// Floor of `x / y` for rationals, used as an independent cross-check.
pub fn rational_floor_quotient(
    x: &num_rational::BigRational,
    y: &num_rational::BigRational,
) -> BigInt {
    let ratio = x / y;
    ratio.numer().div_floor(ratio.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::QuadraticField;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Brute-force scan for every q in a window with `x = q·y + r`, `0 <= r < |y|`.
    fn scan_quotients(x: &BigRational, y: &BigRational, window: i64) -> Vec<(i64, BigRational)> {
        let m = if *y < q(0, 1) { -y.clone() } else { y.clone() };
        (-window..=window)
            .filter_map(|k| {
                let r = x - y * q(k, 1);
                (r >= q(0, 1) && r < m).then_some((k, r))
            })
            .collect()
    }

    fn scan_exponents(x: &BigRational, y: &BigRational, window: i64) -> Vec<(i64, BigRational)> {
        (-window..=window)
            .filter_map(|z| {
                let r = x / y.powi(z).unwrap();
                let in_window = if *y > q(1, 1) {
                    r >= q(1, 1) && r < *y
                } else {
                    r > *y && r <= q(1, 1)
                };
                in_window.then_some((z, r))
            })
            .collect()
    }

    #[test]
    fn archimedean_bound_examples() {
        assert_eq!(
            archimedean_bound(&q(1, 1), &q(10, 1)).unwrap(),
            BigInt::from(11)
        );
        let linear = (1..100).find(|n| q(10, 1) < q(*n, 1)).unwrap();
        assert_eq!(linear, 11);
        let x = q(7, 3);
        assert_eq!(archimedean_bound(&x, &x).unwrap(), BigInt::from(2));
        assert_eq!(
            archimedean_bound(&q(2, 1), &q(1, 1)).unwrap(),
            BigInt::from(1)
        );
        assert!(matches!(
            archimedean_bound(&q(0, 1), &q(1, 1)),
            Err(Error::NotPositive(_))
        ));
        assert!(archimedean_bound(&q(1, 1), &q(-1, 1)).is_err());
    }

    #[test]
    fn euclidean_div_examples() {
        assert_eq!(scan_quotients(&q(7, 2), &q(1, 1), 8), vec![(3, q(1, 2))]);
        let r = euclidean_div(&q(7, 2), &q(1, 1)).unwrap();
        assert_eq!((r.quotient, r.remainder), (BigInt::from(3), q(1, 2)));

        let r = euclidean_div(&q(0, 1), &q(-5, 3)).unwrap();
        assert_eq!((r.quotient, r.remainder), (BigInt::from(0), q(0, 1)));

        assert_eq!(scan_quotients(&q(-1, 3), &q(1, 2), 8), vec![(-1, q(1, 6))]);
        let r = euclidean_div(&q(-1, 3), &q(1, 2)).unwrap();
        assert_eq!((r.quotient, r.remainder), (BigInt::from(-1), q(1, 6)));

        let r = euclidean_div(&BigInt::from(5), &BigInt::from(-2)).unwrap();
        assert_eq!(
            (r.quotient, r.remainder),
            (BigInt::from(-2), BigInt::from(1))
        );

        assert_eq!(
            euclidean_div(&q(1, 1), &q(0, 1)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn euclidean_div_on_negative_multiples() {
        for (x, y, expect) in [(-3, 1, -3), (-4, 2, -2), (-4, -2, 2), (4, -2, -2)] {
            let r = euclidean_div(&BigInt::from(x), &BigInt::from(y)).unwrap();
            assert_eq!(r.quotient, BigInt::from(expect));
            assert_eq!(r.remainder, BigInt::from(0));
        }
    }

    #[test]
    fn euclidean_div_matches_scan_on_grid() {
        for xn in -30..=30 {
            for yn in [-7, -3, -1, 1, 2, 5] {
                let (x, y) = (q(xn, 4), q(yn, 3));
                let found = scan_quotients(&x, &y, 40);
                assert_eq!(found.len(), 1);
                let r = euclidean_div(&x, &y).unwrap();
                assert_eq!(
                    (r.quotient, r.remainder),
                    (BigInt::from(found[0].0), found[0].1.clone())
                );
            }
        }
    }

    #[test]
    fn bernoulli_examples() {
        let check = |x: BigRational, y: BigRational, expect: (i64, i64)| {
            let (m, n) = bernoulli_bounds(&x, &y).unwrap();
            assert_eq!((m, n), expect);
            let (pm, pn) = (x.powi(m).unwrap(), x.powi(n).unwrap());
            let between = (pm < y && y < pn) || (pn < y && y < pm);
            assert!(between);
        };
        check(q(2, 1), q(5, 1), (2, 3));
        check(q(2, 1), q(1, 5), (-3, -2));
        check(q(1, 2), q(5, 1), (-3, -2));
        check(q(2, 1), q(8, 1), (2, 4));
        check(q(3, 2), q(1, 1), (-1, 1));
        assert_eq!(bernoulli_bounds(&q(1, 1), &q(5, 1)), Err(Error::UnitBase));
        assert!(bernoulli_bounds(&q(-2, 1), &q(5, 1)).is_err());
        assert!(bernoulli_bounds(&q(2, 1), &q(0, 1)).is_err());
    }

    #[test]
    fn multiplicative_div_examples() {
        let r = multiplicative_div(&q(8, 1), &q(2, 1)).unwrap();
        assert_eq!((r.quotient, r.remainder), (BigInt::from(3), q(1, 1)));

        assert_eq!(scan_exponents(&q(5, 1), &q(2, 1), 10), vec![(2, q(5, 4))]);
        let r = multiplicative_div(&q(5, 1), &q(2, 1)).unwrap();
        assert_eq!((r.quotient, r.remainder), (BigInt::from(2), q(5, 4)));

        assert_eq!(scan_exponents(&q(1, 5), &q(2, 1), 10), vec![(-3, q(8, 5))]);
        let r = multiplicative_div(&q(1, 5), &q(2, 1)).unwrap();
        assert_eq!((r.quotient, r.remainder), (BigInt::from(-3), q(8, 5)));

        let f = QuadraticField::new(2).unwrap();
        let x = f.element(q(3, 1), q(2, 1));
        let y = f.element(q(1, 1), q(1, 1));
        assert_eq!(y.clone() * y.clone(), x);
        let r = multiplicative_div(&x, &y).unwrap();
        assert_eq!((r.quotient, r.remainder), (BigInt::from(2), f.one()));
    }

    #[test]
    fn multiplicative_div_below_one() {
        // y < 1: remainder in ]y,1], exact powers give r = 1
        let y = q(1, 3);
        let r = multiplicative_div(&q(9, 1), &y).unwrap();
        assert_eq!((r.quotient, r.remainder), (BigInt::from(-2), q(1, 1)));
        let r = multiplicative_div(&q(5, 1), &y).unwrap();
        assert_eq!(scan_exponents(&q(5, 1), &y, 10), vec![(-2, q(5, 9))]);
        assert_eq!(r.quotient, BigInt::from(-2));
        assert_eq!(r.remainder, q(5, 9));
        assert!(remainder_window(&y).unwrap().contains(&r.remainder));
    }

    #[test]
    fn multiplicative_div_errors() {
        assert_eq!(multiplicative_div(&q(3, 1), &q(1, 1)), Err(Error::UnitBase));
        assert!(multiplicative_div(&q(0, 1), &q(2, 1)).is_err());
        assert!(multiplicative_div(&q(3, 1), &q(-2, 1)).is_err());
    }

    #[test]
    fn floor_cross_check() {
        assert_eq!(
            rational_floor_quotient(&q(-1, 3), &q(1, 2)),
            BigInt::from(-1)
        );
        assert_eq!(rational_floor_quotient(&q(7, 2), &q(1, 1)), BigInt::from(3));
    }
}
