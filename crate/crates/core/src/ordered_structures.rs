//! Runtime-tagged carriers: descriptors, dynamically typed elements and the
//! canonical text format shared by the CLI and golden files.
//!
//! Text grammar (no whitespace):
//!
//! ```text
//! integer   := [+-]?[0-9]+
//! rational  := integer | integer "/" [0-9]+
//! quadratic := rational | rational ("+"|"-") rational "*sqrt(" [0-9]+ ")"
//! ```
//!
//! Output is canonical: fractions reduced with positive denominator, the
//! denominator omitted when it is 1, and a quadratic element with zero radical
//! part printed as its rational part.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quadratic::{Quadratic, QuadraticField};
use crate::scalar::{self, OrderedField, OrderedGroup};

/// Which concrete carrier an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Integers,
    Rationals,
    Quadratic(QuadraticField),
}

impl GroupDescriptor {
    pub fn quadratic(d: u64) -> Result<Self> {
        QuadraticField::new(d).map(Self::Quadratic)
    }

    pub fn is_dense(&self) -> bool {
        !matches!(self, Self::Integers)
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Self::Integers)
    }

    pub fn zero(&self) -> Element {
        match self {
            Self::Integers => Element::Int(BigInt::zero()),
            Self::Rationals => Element::Rat(BigRational::zero()),
            Self::Quadratic(f) => Element::Quad(f.zero()),
        }
    }

    /// Parses an element of this carrier from its text form.
    pub fn parse(&self, text: &str) -> Result<Element> {
        match self {
            Self::Integers => parse_integer(text).map(Element::Int),
            Self::Rationals => parse_rational(text).map(Element::Rat),
            Self::Quadratic(f) => parse_quadratic(f, text).map(Element::Quad),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Integers => f.write_str("Z"),
            Self::Rationals => f.write_str("Q"),
            Self::Quadratic(q) => write!(f, "Qsqrt:{}", q.radicand()),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(Self::Integers),
            "Q" => Ok(Self::Rationals),
            _ => {
                let d = s
                    .strip_prefix("Qsqrt:")
                    .ok_or_else(|| Error::InvalidDescriptor(s.to_string()))?;
                let d: u64 = d
                    .parse()
                    .map_err(|_| Error::InvalidDescriptor(s.to_string()))?;
                Self::quadratic(d)
            }
        }
    }
}

/// An element of one of the concrete carriers, tagged with its carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Int(BigInt),
    Rat(BigRational),
    Quad(Quadratic),
}

macro_rules! same_carrier {
    ($x:expr, $y:expr, |$a:ident, $b:ident| $body:expr) => {
        match ($x, $y) {
            (Element::Int($a), Element::Int($b)) => {
                scalar::ensure_compatible($a, $b)?;
                $body
            }
            (Element::Rat($a), Element::Rat($b)) => {
                scalar::ensure_compatible($a, $b)?;
                $body
            }
            (Element::Quad($a), Element::Quad($b)) => {
                scalar::ensure_compatible($a, $b)?;
                $body
            }
            (x, y) => {
                return Err(Error::DescriptorMismatch {
                    left: x.descriptor().to_string(),
                    right: y.descriptor().to_string(),
                })
            }
        }
    };
}

impl Element {
    pub fn descriptor(&self) -> GroupDescriptor {
        match self {
            Self::Int(_) => GroupDescriptor::Integers,
            Self::Rat(_) => GroupDescriptor::Rationals,
            Self::Quad(q) => GroupDescriptor::Quadratic(q.field()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(same_carrier!(self, other, |a, b| Self::from(
            a.clone() + b.clone()
        )))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(same_carrier!(self, other, |a, b| Self::from(
            a.clone() - b.clone()
        )))
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Int(a) => Self::Int(-a.clone()),
            Self::Rat(a) => Self::Rat(-a.clone()),
            Self::Quad(a) => Self::Quad(-a.clone()),
        }
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        Ok(same_carrier!(self, other, |a, b| a.cmp(b)))
    }

    pub fn int_scale(&self, n: &BigInt) -> Self {
        match self {
            Self::Int(a) => Self::Int(a.int_scale(n)),
            Self::Rat(a) => Self::Rat(a.int_scale(n)),
            Self::Quad(a) => Self::Quad(a.int_scale(n)),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Self::Int(a) => Self::Int(a.abs_value()),
            Self::Rat(a) => Self::Rat(a.abs_value()),
            Self::Quad(a) => Self::Quad(a.abs_value()),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Self::Int(_), Self::Int(_)) => Err(Error::NotAField("Z".into())),
            _ => Ok(same_carrier!(self, other, |a, b| Self::from(
                a.clone() * b.clone()
            ))),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match self {
            Self::Int(_) => Err(Error::NotAField("Z".into())),
            Self::Rat(a) => a.inverse().map(Self::Rat),
            Self::Quad(a) => a.inverse().map(Self::Quad),
        }
    }

    /// Some element strictly between `self` and `upper` (the midpoint).
    pub fn dense_witness(&self, upper: &Self) -> Result<Self> {
        Ok(same_carrier!(self, upper, |a, b| Self::from(
            scalar::dense_witness(a, b)?
        )))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Int(a) => write!(f, "{a}"),
            Self::Rat(a) => write!(f, "{a}"),
            Self::Quad(a) => write!(f, "{a}"),
        }
    }
}

impl From<BigInt> for Element {
    fn from(v: BigInt) -> Self {
        Self::Int(v)
    }
}

impl From<BigRational> for Element {
    fn from(v: BigRational) -> Self {
        Self::Rat(v)
    }
}

impl From<Quadratic> for Element {
    fn from(v: Quadratic) -> Self {
        Self::Quad(v)
    }
}

fn mismatch(expected: &str, got: &Element) -> Error {
    Error::DescriptorMismatch {
        left: expected.to_string(),
        right: got.descriptor().to_string(),
    }
}

impl TryFrom<Element> for BigInt {
    type Error = Error;

    fn try_from(e: Element) -> Result<Self> {
        match e {
            Element::Int(v) => Ok(v),
            other => Err(mismatch("Z", &other)),
        }
    }
}

impl TryFrom<Element> for BigRational {
    type Error = Error;

    fn try_from(e: Element) -> Result<Self> {
        match e {
            Element::Rat(v) => Ok(v),
            other => Err(mismatch("Q", &other)),
        }
    }
}

impl TryFrom<Element> for Quadratic {
    type Error = Error;

    fn try_from(e: Element) -> Result<Self> {
        match e {
            Element::Quad(v) => Ok(v),
            other => Err(mismatch("Qsqrt", &other)),
        }
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

pub fn parse_integer(text: &str) -> Result<BigInt> {
    let digits = text
        .strip_prefix('-')
        .or_else(|| text.strip_prefix('+'))
        .unwrap_or(text);
    if !is_digits(digits) {
        return Err(Error::Parse(format!("invalid integer {text:?}")));
    }
    let magnitude: BigInt = digits
        .parse()
        .map_err(|_| Error::Parse(format!("invalid integer {text:?}")))?;
    Ok(if text.starts_with('-') {
        -magnitude
    } else {
        magnitude
    })
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    match text.split_once('/') {
        None => parse_integer(text).map(BigRational::from_integer),
        Some((num, den)) => {
            if !is_digits(den) {
                return Err(Error::Parse(format!("invalid denominator in {text:?}")));
            }
            let num = parse_integer(num)?;
            let den: BigInt = den
                .parse()
                .map_err(|_| Error::Parse(format!("invalid rational {text:?}")))?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

pub fn parse_quadratic(field: &QuadraticField, text: &str) -> Result<Quadratic> {
    let Some((body, rest)) = text.split_once("*sqrt(") else {
        return parse_rational(text).map(|a| field.from_rational(a));
    };
    let radicand = rest
        .strip_suffix(')')
        .filter(|r| is_digits(r))
        .ok_or_else(|| Error::Parse(format!("invalid radical in {text:?}")))?;
    let d: u64 = radicand
        .parse()
        .map_err(|_| Error::Parse(format!("invalid radicand in {text:?}")))?;
    if d != field.radicand() {
        return Err(Error::DescriptorMismatch {
            left: format!("Qsqrt:{}", field.radicand()),
            right: format!("Qsqrt:{d}"),
        });
    }
    // Rationals carry at most a leading sign, so the split is the last sign
    // that is not in position 0.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .last()
        .ok_or_else(|| Error::Parse(format!("missing rational part in {text:?}")))?;
    let a = parse_rational(&body[..split])?;
    let b_text = &body[split + 1..];
    if b_text.starts_with(['+', '-']) {
        return Err(Error::Parse(format!("doubled sign in {text:?}")));
    }
    let b = parse_rational(b_text)?;
    let b = if body[split..].starts_with('-') {
        -b
    } else {
        b
    };
    Ok(field.element(a, b))
}
