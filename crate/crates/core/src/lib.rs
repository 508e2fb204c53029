//! Exact Euclidean division in Archimedean ordered groups and fields, and the
//! extension of restricted additive and logarithmic functional equations to
//! total homomorphisms.
//!
//! All arithmetic is exact. The algorithms are generic over
//! [`OrderedGroup`]/[`OrderedField`] and run over three concrete carriers:
//! [`Integer`] (not dense), [`Rational`] and [`Quadratic`] (`Q(sqrt(d))`).

pub mod cli;
pub mod codomain;
pub mod division;
pub mod error;
pub mod extension;
pub mod families;
pub mod interval;
pub mod ordered_structures;
pub mod quadratic;
pub mod sampling;
pub mod scalar;
pub mod uniqueness;

pub use codomain::{AbelianGroup, IntVector};
pub use error::{Error, Result};
pub use interval::Interval;
pub use ordered_structures::{Element, GroupDescriptor};
pub use quadratic::{Quadratic, QuadraticField};
pub use scalar::{OrderedField, OrderedGroup};

/// The integers, an Archimedean ordered group that is not dense.
pub type Integer = num_bigint::BigInt;

/// Arbitrary-precision rationals, always in lowest terms.
pub type Rational = num_rational::BigRational;
