//! Concrete function families usable as oracles.
//!
//! Additive maps on these carriers that can actually be written down are
//! `Q`-linear; the logarithmic ones are built from p-adic valuations of the
//! (absolute) field norm. Everything here is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::codomain::IntVector;
use crate::extension::{oracle, Oracle};
use crate::quadratic::Quadratic;
use crate::scalar::{OrderedField, OrderedGroup};

/// `x ↦ λx`.
pub fn linear<T: OrderedField>(lambda: T) -> Oracle<T, T> {
    oracle(move |x: &T| lambda.clone() * x.clone())
}

/// `x ↦ n·x`, for carriers without multiplication.
pub fn integer_multiple<T: OrderedGroup>(n: BigInt) -> Oracle<T, T> {
    oracle(move |x: &T| x.int_scale(&n))
}

/// `a + b·sqrt(d) ↦ λ1·a + λ2·b`, additive from the field into `Q`.
pub fn quadratic_coordinates(l1: BigRational, l2: BigRational) -> Oracle<Quadratic, BigRational> {
    oracle(move |x: &Quadratic| &l1 * x.rational_part() + &l2 * x.radical_part())
}

/// `x ↦ floor(x)`: not additive, used as a negative control.
pub fn floor() -> Oracle<BigRational, BigInt> {
    oracle(|x: &BigRational| x.numer().div_floor(x.denom()))
}

/// The function of the classic quasi-extension example: 0 on `]0,1[`, 1 on
/// `]1,3[`. It is meant to be queried there only; elsewhere it reads 0.
pub fn aczel_example<T: OrderedField>() -> Oracle<T, T> {
    oracle(|x: &T| {
        let one = x.one_like();
        let three = x.rational_like(&BigRational::from_integer(BigInt::from(3)));
        if *x > one && *x < three {
            one
        } else {
            x.zero_like()
        }
    })
}

/// Field elements with a multiplicative rational absolute norm.
pub trait RationalNorm {
    /// `|N(x)|`, multiplicative: `|N(xy)| = |N(x)|·|N(y)|`.
    fn abs_norm(&self) -> BigRational;
}

impl RationalNorm for BigRational {
    fn abs_norm(&self) -> BigRational {
        self.abs()
    }
}

impl RationalNorm for Quadratic {
    fn abs_norm(&self) -> BigRational {
        self.norm().abs()
    }
}

fn integer_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// The p-adic valuation `ν_p(q)` of a nonzero rational; 0 at zero.
pub fn valuation(q: &BigRational, p: u64) -> i64 {
    if q.is_zero() {
        return 0;
    }
    let p = BigInt::from(p);
    integer_valuation(q.numer(), &p) - integer_valuation(q.denom(), &p)
}

/// `x ↦ ν_2(|N(x)|)`, logarithmic on the positive cone. On `Q` this is the
/// 2-adic valuation, so `2^k·u ↦ k` for odd-over-odd `u`.
pub fn dyadic_log<T: OrderedField + RationalNorm>() -> Oracle<T, BigInt> {
    oracle(|x: &T| BigInt::from(valuation(&x.abs_norm(), 2)))
}

/// The dyadic log as a rational, for the `Q` codomain.
pub fn dyadic_log_rational<T: OrderedField + RationalNorm>() -> Oracle<T, BigRational> {
    oracle(|x: &T| BigRational::from_integer(BigInt::from(valuation(&x.abs_norm(), 2))))
}

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    (2u64..)
        .filter(|k| (2..*k).take_while(|p| p * p <= *k).all(|p| k % p != 0))
        .take(n)
        .collect()
}

/// `x ↦ (ν_2, ν_3, ν_5, ...)(|N(x)|)` over the first `n` primes, into `Z^n`.
pub fn valuation_vector<T: OrderedField + RationalNorm>(n: usize) -> Oracle<T, IntVector> {
    let primes = first_primes(n);
    oracle(move |x: &T| {
        let norm = x.abs_norm();
        IntVector::new(
            primes
                .iter()
                .map(|&p| BigInt::from(valuation(&norm, p)))
                .collect(),
        )
    })
}
