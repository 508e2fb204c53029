//! Seeded random generation of exact carrier elements for sampled checks.

use num_bigint::{BigInt, RandBigInt};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::quadratic::Quadratic;
use crate::scalar::{OrderedField, OrderedGroup};

/// The generator behind every sampled check. A seed fixes the whole run.
pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Carriers that can draw random exact elements.
pub trait RandomElement: OrderedGroup {
    /// A random element of `]lo,hi[`, or `None` when that interval has no
    /// elements (possible only in a non-dense carrier).
    fn random_between<R: Rng + ?Sized>(rng: &mut R, lo: &Self, hi: &Self) -> Option<Self>;

    /// A random element of the carrier of `like`, of magnitude at most about
    /// `bound`.
    fn random_around<R: Rng + ?Sized>(rng: &mut R, like: &Self, bound: u64) -> Self;
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: u64, max_den: u64) -> BigRational {
    let den = rng.gen_range(1..=max_den);
    let span = BigInt::from(bound) * BigInt::from(den);
    let num = rng.gen_bigint_range(&-span.clone(), &(span + 1u32));
    BigRational::new(num, BigInt::from(den))
}

/// A random rational strictly inside `]0,1[`.
fn random_unit_fraction<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let den: u64 = rng.gen_range(2..=997);
    let num: u64 = rng.gen_range(1..den);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl RandomElement for BigInt {
    fn random_between<R: Rng + ?Sized>(rng: &mut R, lo: &Self, hi: &Self) -> Option<Self> {
        let first = lo + 1u32;
        if &first >= hi {
            return None;
        }
        Some(rng.gen_bigint_range(&first, hi))
    }

    fn random_around<R: Rng + ?Sized>(rng: &mut R, _like: &Self, bound: u64) -> Self {
        let b = BigInt::from(bound);
        rng.gen_bigint_range(&-b.clone(), &(b + 1u32))
    }
}

impl RandomElement for BigRational {
    fn random_between<R: Rng + ?Sized>(rng: &mut R, lo: &Self, hi: &Self) -> Option<Self> {
        if lo >= hi {
            return None;
        }
        let t = random_unit_fraction(rng);
        Some(lo + (hi - lo) * t)
    }

    fn random_around<R: Rng + ?Sized>(rng: &mut R, _like: &Self, bound: u64) -> Self {
        random_rational(rng, bound, 60)
    }
}

/// A random quadratic element strictly inside `]0,1[` with, usually, a
/// nonzero radical part. Floating point only proposes candidates; acceptance
/// is decided exactly.
fn random_unit_quadratic<R: Rng + ?Sized>(rng: &mut R, like: &Quadratic) -> Quadratic {
    let field = like.field();
    let root = (field.radicand() as f64).sqrt();
    loop {
        let b = random_rational(rng, 3, 16);
        let b_approx = ratio_to_f64(&b) * root;
        let target: f64 = rng.gen_range(0.02..0.98);
        let den: i64 = rng.gen_range(2..=64);
        let a_num = ((target - b_approx) * den as f64).round() as i64;
        let a = BigRational::new(BigInt::from(a_num), BigInt::from(den));
        let t = field.element(a, b);
        if t.is_positive() && t < field.one() {
            return t;
        }
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(0.0)
}

impl RandomElement for Quadratic {
    fn random_between<R: Rng + ?Sized>(rng: &mut R, lo: &Self, hi: &Self) -> Option<Self> {
        if lo >= hi {
            return None;
        }
        let t = random_unit_quadratic(rng, lo);
        Some(lo.clone() + (hi.clone() - lo.clone()) * t)
    }

    fn random_around<R: Rng + ?Sized>(rng: &mut R, like: &Self, bound: u64) -> Self {
        let field = like.field();
        let root = (field.radicand() as f64).sqrt().ceil() as u64;
        let a = random_rational(rng, bound / 2 + 1, 40);
        let b = random_rational(rng, bound / (2 * root) + 1, 40);
        field.element(a, b)
    }
}

/// A random nonzero element of magnitude at most about `bound`.
pub fn random_nonzero<T: RandomElement, R: Rng + ?Sized>(rng: &mut R, like: &T, bound: u64) -> T {
    loop {
        let x = T::random_around(rng, like, bound);
        if !x.is_zero_element() {
            return x;
        }
    }
}

/// A random element of `]1/bound, bound[` in a field carrier, `bound > 1`.
pub fn random_positive<T, R>(rng: &mut R, like: &T, bound: u64) -> T
where
    T: RandomElement + OrderedField,
    R: Rng + ?Sized,
{
    let b = like.rational_like(&BigRational::from_integer(BigInt::from(bound)));
    let lo = b.inverse().expect("bound is nonzero");
    // skew towards both sides of 1
    if rng.gen_bool(0.5) {
        T::random_between(rng, &lo, &like.one_like()).expect("dense")
    } else {
        T::random_between(rng, &like.one_like(), &b).expect("dense")
    }
}

/// Fixed probe points of `]lo,hi[` used before random draws: the midpoint,
/// then the two quarter points.
pub fn probe_points<T: OrderedGroup>(lo: &T, hi: &T) -> Vec<T> {
    let Some(mid) = lo.between(hi) else {
        return Vec::new();
    };
    let mut points = vec![mid.clone()];
    points.extend(lo.between(&mid));
    points.extend(mid.between(hi));
    points
}
