//! Abelian codomain groups `Y` for additive and logarithmic maps.

use std::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalar::OrderedGroup;

/// An abelian group with exact arithmetic, used as the value space of the
/// functions being extended or checked.
pub trait AbelianGroup: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    /// `n·self`.
    fn times(&self, n: &BigInt) -> Self;

    fn is_zero_value(&self) -> bool {
        *self == self.zero_like()
    }
}

impl<T: OrderedGroup> AbelianGroup for T {
    fn zero_like(&self) -> Self {
        OrderedGroup::zero_like(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn negated(&self) -> Self {
        -self.clone()
    }

    fn times(&self, n: &BigInt) -> Self {
        self.int_scale(n)
    }
}

/// A fixed-length vector of integers under componentwise addition (`Z^n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(components: Vec<BigInt>) -> Self {
        Self(components)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![BigInt::zero(); len])
    }

    pub fn components(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Self(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }
}

impl Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl AbelianGroup for IntVector {
    fn zero_like(&self) -> Self {
        Self::zeros(self.len())
    }

    fn plus(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    fn negated(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    fn times(&self, n: &BigInt) -> Self {
        Self(self.0.iter().map(|a| a * n).collect())
    }
}
