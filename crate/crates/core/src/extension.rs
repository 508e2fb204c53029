//! Extension of restricted additive and logarithmic functional equations.
//!
//! A function `f` known on `]-2ε,2ε[` and additive on `]-ε,ε[` extends to an
//! additive `a` on the whole carrier by
//!
//! ```text
//! a(x) = n·f(y0) + f(r)    where x = n·y0 + r, 0 <= r < y0, 0 < y0 < ε
//! ```
//!
//! and, multiplicatively, `f` known on `]ε^-2,ε^2[` and logarithmic on
//! `]ε^-1,ε[` extends to `l(x) = n·f(y0) + f(r)` with `x = y0^n·r`,
//! `1 <= r < y0`, `1 < y0 < ε`.
//!
//! The module also has the restricted-equation samplers, the projections
//! `D_x`, `D_y`, `D_{x+y}` of a domain `D`, and the quasi-extension check.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::codomain::AbelianGroup;
use crate::division::{euclidean_div, multiplicative_div};
use crate::error::{Error, Result};
use crate::interval::{interval_sum, Interval};
use crate::sampling::{probe_points, rng_from_seed, RandomElement};
use crate::scalar::{OrderedField, OrderedGroup};

/// An exact evaluation oracle.
pub type Oracle<T, Y> = Arc<dyn Fn(&T) -> Y + Send + Sync>;

pub fn oracle<T, Y>(f: impl Fn(&T) -> Y + Send + Sync + 'static) -> Oracle<T, Y> {
    Arc::new(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    /// Known on `]-2ε,2ε[`, equation on `]-ε,ε[`.
    Additive,
    /// Known on `]ε^-2,ε^2[`, equation on `]ε^-1,ε[`, with `ε > 1`.
    Logarithmic,
}

/// A function given only on an interval around the identity.
#[derive(Clone)]
pub struct PartialFunction<T, Y> {
    epsilon: T,
    kind: DomainKind,
    domain: Interval<T>,
    equation_interval: Interval<T>,
    oracle: Oracle<T, Y>,
}

impl<T: OrderedGroup, Y: AbelianGroup> PartialFunction<T, Y> {
    /// `f` on `]-2ε,2ε[`; needs `ε > 0`.
    pub fn additive(epsilon: T, oracle: Oracle<T, Y>) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::NotPositive(epsilon.to_string()));
        }
        let two = num_bigint::BigInt::from(2);
        let wide = epsilon.int_scale(&two);
        Ok(Self {
            domain: Interval::open(-wide.clone(), wide)?,
            equation_interval: Interval::open(-epsilon.clone(), epsilon.clone())?,
            epsilon,
            kind: DomainKind::Additive,
            oracle,
        })
    }

    pub fn epsilon(&self) -> &T {
        &self.epsilon
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    /// Where `f` may be evaluated.
    pub fn domain(&self) -> &Interval<T> {
        &self.domain
    }

    /// Where the restricted equation is required to hold.
    pub fn equation_interval(&self) -> &Interval<T> {
        &self.equation_interval
    }

    /// Evaluates `f`, refusing arguments outside its domain.
    pub fn eval(&self, x: &T) -> Result<Y> {
        if !self.domain.try_contains(x)? {
            return Err(Error::OutOfDomain {
                value: x.to_string(),
                domain: self.domain.to_string(),
            });
        }
        Ok((self.oracle)(x))
    }
}

impl<T: OrderedField, Y: AbelianGroup> PartialFunction<T, Y> {
    /// `f` on `]ε^-2,ε^2[`; needs `ε > 1` so that `]ε^-1,ε[` is an interval
    /// around 1.
    pub fn logarithmic(epsilon: T, oracle: Oracle<T, Y>) -> Result<Self> {
        if epsilon <= epsilon.one_like() {
            return Err(Error::HypothesisViolated(format!(
                "logarithmic radius {epsilon} must exceed 1"
            )));
        }
        let inv = epsilon.inverse()?;
        Ok(Self {
            domain: Interval::open(inv.clone() * inv.clone(), epsilon.clone() * epsilon.clone())?,
            equation_interval: Interval::open(inv, epsilon.clone())?,
            epsilon,
            kind: DomainKind::Logarithmic,
            oracle,
        })
    }
}

impl<T: fmt::Display, Y> fmt::Debug for PartialFunction<T, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialFunction")
            .field("kind", &self.kind)
            .field("domain", &self.domain.to_string())
            .finish_non_exhaustive()
    }
}

/// One failure of the restricted equation: `f(x∘y) != f(x) + f(y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquationViolation<T, Y> {
    pub x: T,
    pub y: T,
    pub combined: Y,
    pub sum: Y,
}

/// Outcome of sampling the restricted equation. No violations means pass.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedCheckReport<T, Y> {
    pub samples: usize,
    pub violations: Vec<EquationViolation<T, Y>>,
}

impl<T, Y> RestrictedCheckReport<T, Y> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pairs drawn from `]lo,hi[`: first the grid of probe points, then random.
fn sample_pairs<T: RandomElement, R: Rng>(
    rng: &mut R,
    lo: &T,
    hi: &T,
    count: usize,
) -> Vec<(T, T)> {
    let probes = probe_points(lo, hi);
    let mut pairs: Vec<(T, T)> = probes
        .iter()
        .flat_map(|u| probes.iter().map(move |v| (u.clone(), v.clone())))
        .take(count)
        .collect();
    while pairs.len() < count {
        let (Some(u), Some(v)) = (
            T::random_between(rng, lo, hi),
            T::random_between(rng, lo, hi),
        ) else {
            break;
        };
        pairs.push((u, v));
    }
    pairs
}

/// Samples `f(x+y) = f(x) + f(y)` for `x, y ∈ ]-ε,ε[`.
pub fn verify_restricted_additive<T, Y>(
    f: &PartialFunction<T, Y>,
    samples: usize,
    seed: u64,
) -> Result<RestrictedCheckReport<T, Y>>
where
    T: RandomElement,
    Y: AbelianGroup,
{
    if f.kind != DomainKind::Additive {
        return Err(Error::HypothesisViolated(
            "expected an additive domain".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let eq = &f.equation_interval;
    let mut violations = Vec::new();
    let pairs = sample_pairs(&mut rng, eq.lo(), eq.hi(), samples);
    for (x, y) in &pairs {
        let combined = f.eval(&(x.clone() + y.clone()))?;
        let sum = f.eval(x)?.plus(&f.eval(y)?);
        if combined != sum {
            violations.push(EquationViolation {
                x: x.clone(),
                y: y.clone(),
                combined,
                sum,
            });
        }
    }
    Ok(RestrictedCheckReport {
        samples: pairs.len(),
        violations,
    })
}

/// Samples `f(xy) = f(x) + f(y)` for `x, y ∈ ]ε^-1,ε[`.
pub fn verify_restricted_logarithmic<T, Y>(
    f: &PartialFunction<T, Y>,
    samples: usize,
    seed: u64,
) -> Result<RestrictedCheckReport<T, Y>>
where
    T: RandomElement + OrderedField,
    Y: AbelianGroup,
{
    if f.kind != DomainKind::Logarithmic {
        return Err(Error::HypothesisViolated(
            "expected a logarithmic domain".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let eq = &f.equation_interval;
    let mut violations = Vec::new();
    let pairs = sample_pairs(&mut rng, eq.lo(), eq.hi(), samples);
    for (x, y) in &pairs {
        let combined = f.eval(&(x.clone() * y.clone()))?;
        let sum = f.eval(x)?.plus(&f.eval(y)?);
        if combined != sum {
            violations.push(EquationViolation {
                x: x.clone(),
                y: y.clone(),
                combined,
                sum,
            });
        }
    }
    Ok(RestrictedCheckReport {
        samples: pairs.len(),
        violations,
    })
}

/// How the caller vouches for the restricted equation, which cannot be
/// checked exhaustively.
pub enum Hypothesis<'a, T, Y> {
    /// The caller asserts the equation holds.
    Asserted,
    /// A sampled check; it must have passed.
    Sampled(&'a RestrictedCheckReport<T, Y>),
}

impl<T, Y> Hypothesis<'_, T, Y> {
    fn require(&self) -> Result<()> {
        match self {
            Hypothesis::Asserted => Ok(()),
            Hypothesis::Sampled(report) if report.passed() => Ok(()),
            Hypothesis::Sampled(report) => Err(Error::HypothesisViolated(format!(
                "restricted equation fails on {} of {} sampled pairs",
                report.violations.len(),
                report.samples
            ))),
        }
    }
}

/// The total homomorphism built from a partial function and a base point.
#[derive(Clone)]
pub struct ExtendedFunction<T, Y> {
    f: PartialFunction<T, Y>,
    base_point: T,
    base_value: Y,
}

impl<T: fmt::Display + fmt::Debug, Y: fmt::Debug> fmt::Debug for ExtendedFunction<T, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtendedFunction")
            .field("f", &self.f)
            .field("base_point", &self.base_point)
            .field("base_value", &self.base_value)
            .finish()
    }
}

impl<T: OrderedGroup, Y: AbelianGroup> ExtendedFunction<T, Y> {
    pub fn base_point(&self) -> &T {
        &self.base_point
    }

    pub fn kind(&self) -> DomainKind {
        self.f.kind
    }

    pub fn partial(&self) -> &PartialFunction<T, Y> {
        &self.f
    }

    fn combine(&self, n: &num_bigint::BigInt, r: &T) -> Result<Y> {
        Ok(self.base_value.times(n).plus(&self.f.eval(r)?))
    }
}

impl<T: OrderedGroup, Y: AbelianGroup> ExtendedFunction<T, Y> {
    /// `a(x) = n·f(y0) + f(r)` with `x = n·y0 + r`.
    pub fn eval_additive(&self, x: &T) -> Result<Y> {
        let d = euclidean_div(x, &self.base_point)?;
        self.combine(&d.quotient, &d.remainder)
    }
}

impl<T: OrderedField, Y: AbelianGroup> ExtendedFunction<T, Y> {
    /// Evaluates on the whole carrier (additive) or positive cone (logarithmic).
    pub fn eval(&self, x: &T) -> Result<Y> {
        match self.f.kind {
            DomainKind::Additive => self.eval_additive(x),
            DomainKind::Logarithmic => {
                if !x.is_positive() {
                    return Err(Error::NotPositive(x.to_string()));
                }
                let d = multiplicative_div(x, &self.base_point)?;
                self.combine(&d.quotient, &d.remainder)
            }
        }
    }
}

/// Extends an additive-type partial function from base point `y0 ∈ ]0,ε[`.
///
/// Needs a dense carrier: in `Z` the equation on `]-ε,ε[` says nothing about
/// `]-2ε,2ε[`, and the construction can disagree with `f` there.
pub fn extend_additive<T, Y>(
    f: &PartialFunction<T, Y>,
    y0: &T,
    hypothesis: Hypothesis<'_, T, Y>,
) -> Result<ExtendedFunction<T, Y>>
where
    T: OrderedGroup,
    Y: AbelianGroup,
{
    if f.kind != DomainKind::Additive {
        return Err(Error::HypothesisViolated(
            "expected an additive domain".into(),
        ));
    }
    if !T::DENSE {
        return Err(Error::NotDense(y0.carrier_name()));
    }
    let window = Interval::open(y0.zero_like(), f.epsilon.clone())?;
    if !window.try_contains(y0)? {
        return Err(Error::NotInInterval {
            value: y0.to_string(),
            interval: window.to_string(),
        });
    }
    hypothesis.require()?;
    Ok(ExtendedFunction {
        base_value: f.eval(y0)?,
        f: f.clone(),
        base_point: y0.clone(),
    })
}

/// Extends a logarithmic-type partial function from base point `y0 ∈ ]1,ε[`.
pub fn extend_logarithmic<T, Y>(
    f: &PartialFunction<T, Y>,
    y0: &T,
    hypothesis: Hypothesis<'_, T, Y>,
) -> Result<ExtendedFunction<T, Y>>
where
    T: OrderedField,
    Y: AbelianGroup,
{
    if f.kind != DomainKind::Logarithmic {
        return Err(Error::HypothesisViolated(
            "expected a logarithmic domain".into(),
        ));
    }
    let window = Interval::open(y0.one_like(), f.epsilon.clone())?;
    if !window.try_contains(y0)? {
        return Err(Error::NotInInterval {
            value: y0.to_string(),
            interval: window.to_string(),
        });
    }
    hypothesis.require()?;
    Ok(ExtendedFunction {
        base_value: f.eval(y0)?,
        f: f.clone(),
        base_point: y0.clone(),
    })
}

/// A set `D` of pairs: a rectangle `I × J` or an explicit finite set.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainSet<T> {
    Rectangle {
        x_side: Interval<T>,
        y_side: Interval<T>,
    },
    Finite(Vec<(T, T)>),
}

/// One projection of `D`.
#[derive(Debug, Clone, PartialEq)]
pub enum Projection<T> {
    Interval(Interval<T>),
    Points(BTreeSet<T>),
}

impl<T: OrderedGroup> Projection<T> {
    pub fn contains(&self, x: &T) -> bool {
        match self {
            Projection::Interval(i) => i.contains(x),
            Projection::Points(p) => p.contains(x),
        }
    }

    /// Probe points followed by random members (intervals) or every point
    /// (finite sets).
    fn sample<R: Rng>(&self, rng: &mut R, count: usize) -> Vec<T>
    where
        T: RandomElement,
    {
        match self {
            Projection::Points(p) => p.iter().cloned().collect(),
            Projection::Interval(i) => {
                let mut points: Vec<T> = probe_points(i.lo(), i.hi());
                points.truncate(count);
                while points.len() < count {
                    match T::random_between(rng, i.lo(), i.hi()) {
                        Some(x) => points.push(x),
                        None => break,
                    }
                }
                points
            }
        }
    }
}

impl<T: fmt::Display> fmt::Display for Projection<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Projection::Interval(i) => write!(f, "{i}"),
            Projection::Points(p) => {
                f.write_str("{")?;
                for (k, x) in p.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// `D_x`, `D_y` and `D_{x+y}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projections<T> {
    pub x: Projection<T>,
    pub y: Projection<T>,
    pub sum: Projection<T>,
}

pub fn project_domain<T: OrderedGroup>(domain: &DomainSet<T>) -> Result<Projections<T>> {
    match domain {
        DomainSet::Rectangle { x_side, y_side } => Ok(Projections {
            x: Projection::Interval(x_side.clone()),
            y: Projection::Interval(y_side.clone()),
            sum: Projection::Interval(interval_sum(x_side, y_side)?),
        }),
        DomainSet::Finite(pairs) => {
            if pairs.is_empty() {
                return Err(Error::EmptyDomain);
            }
            for (u, v) in pairs {
                crate::scalar::ensure_compatible(u, v)?;
                crate::scalar::ensure_compatible(&pairs[0].0, u)?;
            }
            Ok(Projections {
                x: Projection::Points(pairs.iter().map(|(u, _)| u.clone()).collect()),
                y: Projection::Points(pairs.iter().map(|(_, v)| v.clone()).collect()),
                sum: Projection::Points(pairs.iter().map(|(u, v)| u.clone() + v.clone()).collect()),
            })
        }
    }
}

/// Sampled pairs of `D`.
fn sample_domain<T: RandomElement, R: Rng>(
    rng: &mut R,
    domain: &DomainSet<T>,
    count: usize,
) -> Vec<(T, T)> {
    match domain {
        DomainSet::Finite(pairs) => pairs.clone(),
        DomainSet::Rectangle { x_side, y_side } => {
            let xs = Projection::Interval(x_side.clone()).sample(rng, count);
            let ys = Projection::Interval(y_side.clone()).sample(rng, count);
            xs.into_iter().zip(ys).collect()
        }
    }
}

/// An additive `a` and constants with `f = a + c1` on `D_x`, `f = a + c2` on
/// `D_y` and `f = a + c1 + c2` on `D_{x+y}`.
#[derive(Clone)]
pub struct QuasiExtensionCertificate<T, Y> {
    pub additive: Oracle<T, Y>,
    pub c1: Y,
    pub c2: Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionSide {
    X,
    Y,
    Sum,
}

impl fmt::Display for ProjectionSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectionSide::X => "Dx",
            ProjectionSide::Y => "Dy",
            ProjectionSide::Sum => "Dx+y",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointViolation<T, Y> {
    pub side: ProjectionSide,
    pub point: T,
    pub value: Y,
    pub expected: Y,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiExtensionReport<T, Y> {
    pub samples: usize,
    /// Pairs where the certificate's `a` fails additivity.
    pub additivity_violations: Vec<(T, T)>,
    /// Pairs of `D` where `f(u+v) != f(u) + f(v)`.
    pub restricted_violations: Vec<(T, T)>,
    pub violations: Vec<PointViolation<T, Y>>,
}

impl<T, Y> QuasiExtensionReport<T, Y> {
    pub fn passed(&self) -> bool {
        self.additivity_violations.is_empty()
            && self.restricted_violations.is_empty()
            && self.violations.is_empty()
    }

    pub fn violations_on(&self, side: ProjectionSide) -> usize {
        self.violations.iter().filter(|v| v.side == side).count()
    }
}

/// Samples the three quasi-extension identities on the projections of `D`.
///
/// `f` is a piecewise oracle meant to be queried on `D_x ∪ D_y ∪ D_{x+y}`
/// only. Each interval projection gets `samples` points; finite projections
/// are checked exhaustively.
pub fn check_quasi_extension<T, Y>(
    f: &Oracle<T, Y>,
    domain: &DomainSet<T>,
    cert: &QuasiExtensionCertificate<T, Y>,
    samples: usize,
    seed: u64,
) -> Result<QuasiExtensionReport<T, Y>>
where
    T: RandomElement,
    Y: AbelianGroup,
{
    let projections = project_domain(domain)?;
    let mut rng = rng_from_seed(seed);
    let a = &cert.additive;

    let pairs = sample_domain(&mut rng, domain, samples);
    let mut additivity_violations = Vec::new();
    let mut restricted_violations = Vec::new();
    for (u, v) in &pairs {
        let s = u.clone() + v.clone();
        if a(&s) != a(u).plus(&a(v)) {
            additivity_violations.push((u.clone(), v.clone()));
        }
        if f(&s) != f(u).plus(&f(v)) {
            restricted_violations.push((u.clone(), v.clone()));
        }
    }

    let both = cert.c1.plus(&cert.c2);
    let sides = [
        (ProjectionSide::X, &projections.x, &cert.c1),
        (ProjectionSide::Y, &projections.y, &cert.c2),
        (ProjectionSide::Sum, &projections.sum, &both),
    ];
    let mut violations = Vec::new();
    let mut checked = 0;
    for (side, projection, constant) in sides {
        for point in projection.sample(&mut rng, samples) {
            checked += 1;
            let value = f(&point);
            let expected = a(&point).plus(constant);
            if value != expected {
                violations.push(PointViolation {
                    side,
                    point,
                    value,
                    expected,
                });
            }
        }
    }
    Ok(QuasiExtensionReport {
        samples: checked,
        additivity_violations,
        restricted_violations,
        violations,
    })
}
