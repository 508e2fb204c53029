//! Sampled checks of the uniqueness theorems: an additive (logarithmic) map
//! that is constant on a nonempty open interval vanishes everywhere, and two
//! such maps that differ by a constant on an interval coincide.
//!
//! Constancy of an oracle is not decidable, so every check is a semi-decision
//! at a fixed sample count. Reports separate "the hypothesis fails, here is a
//! witness" from "passed at N samples".

use num_bigint::BigInt;
use rand::Rng;

use crate::codomain::AbelianGroup;
use crate::division::{euclidean_div, multiplicative_div};
use crate::error::{Error, Result};
use crate::extension::{oracle, DomainKind, Oracle};
use crate::sampling::{probe_points, random_positive, rng_from_seed, RandomElement, SampleRng};
use crate::scalar::{dense_witness, ensure_compatible, OrderedField, OrderedGroup};

/// Magnitude of the carrier-wide sample points in the additive checks.
const WIDE_BOUND: u64 = 1_000_000;
/// Positive-cone samples are drawn from `]1/B, B[`.
const CONE_BOUND: u64 = 10_000;

/// An oracle claimed to be additive (on the carrier) or logarithmic (on the
/// positive cone).
#[derive(Clone)]
pub struct HomomorphismUnderTest<T, Y> {
    pub kind: DomainKind,
    pub eval: Oracle<T, Y>,
}

impl<T: 'static, Y: AbelianGroup> HomomorphismUnderTest<T, Y> {
    pub fn additive(eval: Oracle<T, Y>) -> Self {
        Self {
            kind: DomainKind::Additive,
            eval,
        }
    }

    pub fn logarithmic(eval: Oracle<T, Y>) -> Self {
        Self {
            kind: DomainKind::Logarithmic,
            eval,
        }
    }

    /// `x ↦ self(x) - other(x)`; again a homomorphism of the same kind.
    pub fn difference(&self, other: &Self) -> Self {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        Self {
            kind: self.kind,
            eval: oracle(move |x: &T| a(x).minus(&b(x))),
        }
    }
}

/// How the constancy hypothesis came out.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstancyOutcome<T, Y> {
    /// Two interval points with different values: the theorem does not apply.
    HypothesisNotMet { witness: (T, T), values: (Y, Y) },
    /// Constant on the sampled interval points and zero on every sampled
    /// carrier point.
    Pass { constant: Y },
    /// Constant on the interval, but some consequence of that fails at
    /// `counterexample`: either a nonzero value, or the translated constant
    /// at the pivot. Only possible when the oracle is not a homomorphism.
    Refuted {
        constant: Y,
        counterexample: T,
        value: Y,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstancyReport<T, Y> {
    pub samples: usize,
    /// Sampled pairs on which the homomorphism law itself fails.
    pub precondition_violations: Vec<(T, T)>,
    pub outcome: ConstancyOutcome<T, Y>,
    /// A constant the caller expected, if any, and whether it matched.
    pub claimed: Option<Y>,
    /// The value on the translated interval, `d = c - a(α)` (or
    /// `c - l(α)`), and whether `d = d + d` was observed at the pivot.
    pub shifted_constant: Option<Y>,
    pub doubling_holds: bool,
    /// The pivot `ε'` used for the carrier-wide decomposition.
    pub pivot: Option<T>,
    /// Points where `a(x) = q·a(ε') + a(r)` failed.
    pub proof_path_failures: Vec<T>,
}

impl<T, Y: PartialEq> ConstancyReport<T, Y> {
    pub fn precondition_met(&self) -> bool {
        self.precondition_violations.is_empty()
    }

    pub fn passed(&self) -> bool {
        matches!(self.outcome, ConstancyOutcome::Pass { .. })
    }

    /// Whether the observed constant matches the claimed one, when a claim
    /// was made and the interval turned out constant.
    pub fn claim_consistent(&self) -> Option<bool> {
        let observed = match &self.outcome {
            ConstancyOutcome::Pass { constant } | ConstancyOutcome::Refuted { constant, .. } => {
                constant
            }
            ConstancyOutcome::HypothesisNotMet { .. } => return None,
        };
        self.claimed.as_ref().map(|c| c == observed)
    }
}

/// Probe points, then random members of `]lo,hi[`, `count` in total.
fn interval_points<T: RandomElement>(rng: &mut SampleRng, lo: &T, hi: &T, count: usize) -> Vec<T> {
    let mut points = probe_points(lo, hi);
    points.truncate(count.max(2));
    while points.len() < count.max(2) {
        match T::random_between(rng, lo, hi) {
            Some(x) => points.push(x),
            None => break,
        }
    }
    points
}

/// Two points and their differing values.
type Witness<T, Y> = ((T, T), (Y, Y));

/// Returns the first pair of points with different values, else the common value.
fn find_constant<T: Clone, Y: AbelianGroup>(
    points: &[T],
    eval: &Oracle<T, Y>,
) -> std::result::Result<Y, Witness<T, Y>> {
    let first = &points[0];
    let value = eval(first);
    for p in &points[1..] {
        let v = eval(p);
        if v != value {
            return Err(((first.clone(), p.clone()), (value, v)));
        }
    }
    Ok(value)
}

/// Additive constancy check on `]α,β[`.
///
/// Phase one samples `]α,β[` for a constant value `c`. If one is found,
/// phase two follows the proof: the translated value `d = c - a(α)` on
/// `]0,β-α[` satisfies `d = a(ε') = a(ε'-δ) + a(δ) = 2d`, and every carrier
/// point `x = q·ε' + r` has `a(x) = q·a(ε') + a(r)`, which must be zero.
pub fn constancy_implies_zero_additive<T, Y>(
    a: &HomomorphismUnderTest<T, Y>,
    alpha: &T,
    beta: &T,
    claimed: Option<Y>,
    samples: usize,
    seed: u64,
) -> Result<ConstancyReport<T, Y>>
where
    T: RandomElement,
    Y: AbelianGroup,
{
    ensure_compatible(alpha, beta)?;
    if alpha >= beta {
        return Err(Error::EmptyInterval(format!("]{alpha},{beta}[")));
    }
    let eval = &a.eval;
    let mut rng = rng_from_seed(seed);

    let mut precondition_violations = Vec::new();
    for _ in 0..samples {
        let x = T::random_around(&mut rng, alpha, WIDE_BOUND);
        let y = T::random_around(&mut rng, alpha, WIDE_BOUND);
        if eval(&(x.clone() + y.clone())) != eval(&x).plus(&eval(&y)) {
            precondition_violations.push((x, y));
        }
    }

    let points = interval_points(&mut rng, alpha, beta, samples);
    let mut report = ConstancyReport {
        samples: points.len(),
        precondition_violations,
        outcome: ConstancyOutcome::Pass {
            constant: eval(alpha).zero_like(),
        },
        claimed,
        shifted_constant: None,
        doubling_holds: false,
        pivot: None,
        proof_path_failures: Vec::new(),
    };
    let constant = match find_constant(&points, eval) {
        Ok(c) => c,
        Err((witness, values)) => {
            report.outcome = ConstancyOutcome::HypothesisNotMet { witness, values };
            return Ok(report);
        }
    };

    let width = beta.clone() - alpha.clone();
    let zero = alpha.zero_like();
    let pivot = dense_witness(&zero, &width)?;
    let step = dense_witness(&zero, &pivot)?;
    let d = constant.minus(&eval(alpha));
    let at_pivot = eval(&pivot);
    report.doubling_holds = at_pivot == d
        && at_pivot == eval(&(pivot.clone() - step.clone())).plus(&eval(&step))
        && d == d.plus(&d);
    report.shifted_constant = Some(d);

    let mut outcome = if report.doubling_holds {
        ConstancyOutcome::Pass {
            constant: constant.clone(),
        }
    } else {
        ConstancyOutcome::Refuted {
            constant: constant.clone(),
            counterexample: pivot.clone(),
            value: at_pivot.clone(),
        }
    };
    for _ in 0..samples {
        let x = T::random_around(&mut rng, alpha, WIDE_BOUND);
        let div = euclidean_div(&x, &pivot)?;
        let value = eval(&x);
        if value != at_pivot.times(&div.quotient).plus(&eval(&div.remainder)) {
            report.proof_path_failures.push(x.clone());
        }
        if !value.is_zero_value() && matches!(outcome, ConstancyOutcome::Pass { .. }) {
            outcome = ConstancyOutcome::Refuted {
                constant: constant.clone(),
                counterexample: x,
                value,
            };
        }
    }
    report.pivot = Some(pivot);
    report.outcome = outcome;
    Ok(report)
}

/// Logarithmic constancy check on `]a,b[ ⊂ F_+`, mirroring the additive one
/// through the homothety `]a,b[ ↦ ]1,b/a[` and multiplicative division.
pub fn constancy_implies_zero_logarithmic<T, Y>(
    l: &HomomorphismUnderTest<T, Y>,
    lo: &T,
    hi: &T,
    claimed: Option<Y>,
    samples: usize,
    seed: u64,
) -> Result<ConstancyReport<T, Y>>
where
    T: RandomElement + OrderedField,
    Y: AbelianGroup,
{
    ensure_compatible(lo, hi)?;
    if !lo.is_positive() {
        return Err(Error::NotPositive(lo.to_string()));
    }
    if lo >= hi {
        return Err(Error::EmptyInterval(format!("]{lo},{hi}[")));
    }
    let eval = &l.eval;
    let mut rng = rng_from_seed(seed);

    let mut precondition_violations = Vec::new();
    for _ in 0..samples {
        let x = random_positive(&mut rng, lo, CONE_BOUND);
        let y = random_positive(&mut rng, lo, CONE_BOUND);
        if eval(&(x.clone() * y.clone())) != eval(&x).plus(&eval(&y)) {
            precondition_violations.push((x, y));
        }
    }

    let points = interval_points(&mut rng, lo, hi, samples);
    let mut report = ConstancyReport {
        samples: points.len(),
        precondition_violations,
        outcome: ConstancyOutcome::Pass {
            constant: eval(lo).zero_like(),
        },
        claimed,
        shifted_constant: None,
        doubling_holds: false,
        pivot: None,
        proof_path_failures: Vec::new(),
    };
    let constant = match find_constant(&points, eval) {
        Ok(c) => c,
        Err((witness, values)) => {
            report.outcome = ConstancyOutcome::HypothesisNotMet { witness, values };
            return Ok(report);
        }
    };

    let one = lo.one_like();
    let ratio = hi.checked_div(lo)?;
    let pivot = dense_witness(&one, &ratio)?;
    let step = dense_witness(&one, &pivot)?;
    let d = constant.minus(&eval(lo));
    let at_pivot = eval(&pivot);
    report.doubling_holds = at_pivot == d
        && at_pivot == eval(&pivot.checked_div(&step)?).plus(&eval(&step))
        && d == d.plus(&d);
    report.shifted_constant = Some(d);

    let mut outcome = if report.doubling_holds {
        ConstancyOutcome::Pass {
            constant: constant.clone(),
        }
    } else {
        ConstancyOutcome::Refuted {
            constant: constant.clone(),
            counterexample: pivot.clone(),
            value: at_pivot.clone(),
        }
    };
    for _ in 0..samples {
        let x = random_positive(&mut rng, lo, CONE_BOUND);
        let div = multiplicative_div(&x, &pivot)?;
        let value = eval(&x);
        if value != at_pivot.times(&div.quotient).plus(&eval(&div.remainder)) {
            report.proof_path_failures.push(x.clone());
        }
        if !value.is_zero_value() && matches!(outcome, ConstancyOutcome::Pass { .. }) {
            outcome = ConstancyOutcome::Refuted {
                constant: constant.clone(),
                counterexample: x,
                value,
            };
        }
    }
    report.pivot = Some(pivot);
    report.outcome = outcome;
    Ok(report)
}

/// Result of comparing two homomorphisms that may differ by a constant on
/// an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport<T, Y> {
    /// The constancy check run on `a1 - a2`.
    pub difference: ConstancyReport<T, Y>,
    /// `a1 = a2` on every sampled point (only when the difference passed).
    pub agree_everywhere: bool,
    /// Whether `a1` and `a2` are also both zero on those points. The
    /// hypotheses do not force this; it is reported, not required.
    pub both_zero_on_samples: bool,
}

fn agreement<T, Y>(
    a1: &HomomorphismUnderTest<T, Y>,
    a2: &HomomorphismUnderTest<T, Y>,
    difference: ConstancyReport<T, Y>,
    probes: &[T],
) -> AgreementReport<T, Y>
where
    T: OrderedGroup,
    Y: AbelianGroup,
{
    let agree_everywhere = difference.passed() && difference.proof_path_failures.is_empty();
    let both_zero_on_samples = agree_everywhere
        && probes
            .iter()
            .all(|x| (a1.eval)(x).is_zero_value() && (a2.eval)(x).is_zero_value());
    AgreementReport {
        difference,
        agree_everywhere,
        both_zero_on_samples,
    }
}

/// If `a1 = a2 + c` on `]α,β[`, the difference is constant there, so it is
/// zero everywhere and `a1 = a2`.
pub fn agreement_up_to_constant_additive<T, Y>(
    a1: &HomomorphismUnderTest<T, Y>,
    a2: &HomomorphismUnderTest<T, Y>,
    alpha: &T,
    beta: &T,
    samples: usize,
    seed: u64,
) -> Result<AgreementReport<T, Y>>
where
    T: RandomElement,
    Y: AbelianGroup,
{
    let diff = a1.difference(a2);
    let report = constancy_implies_zero_additive(&diff, alpha, beta, None, samples, seed)?;
    let mut rng = rng_from_seed(seed ^ 0x5eed);
    let probes: Vec<T> = (0..samples.min(64))
        .map(|_| T::random_around(&mut rng, alpha, WIDE_BOUND))
        .collect();
    Ok(agreement(a1, a2, report, &probes))
}

/// Logarithmic counterpart of [`agreement_up_to_constant_additive`].
pub fn agreement_up_to_constant_logarithmic<T, Y>(
    l1: &HomomorphismUnderTest<T, Y>,
    l2: &HomomorphismUnderTest<T, Y>,
    lo: &T,
    hi: &T,
    samples: usize,
    seed: u64,
) -> Result<AgreementReport<T, Y>>
where
    T: RandomElement + OrderedField,
    Y: AbelianGroup,
{
    let diff = l1.difference(l2);
    let report = constancy_implies_zero_logarithmic(&diff, lo, hi, None, samples, seed)?;
    let mut rng = rng_from_seed(seed ^ 0x5eed);
    let probes: Vec<T> = (0..samples.min(64))
        .map(|_| random_positive(&mut rng, lo, CONE_BOUND))
        .collect();
    Ok(agreement(l1, l2, report, &probes))
}

/// Both sides of `a(x) = q·a(ε') + a(r)` with `(q, r) = euclidean_div(x, ε')`.
pub fn additive_proof_path<T: OrderedGroup, Y: AbelianGroup>(
    a: &Oracle<T, Y>,
    x: &T,
    pivot: &T,
) -> Result<(Y, Y)> {
    let d = euclidean_div(x, pivot)?;
    Ok((a(x), a(pivot).times(&d.quotient).plus(&a(&d.remainder))))
}

/// Both sides of `l(x) = q·l(ε') + l(r)` with `(q, r) = multiplicative_div(x, ε')`.
pub fn logarithmic_proof_path<T: OrderedField, Y: AbelianGroup>(
    l: &Oracle<T, Y>,
    x: &T,
    pivot: &T,
) -> Result<(Y, Y)> {
    let d = multiplicative_div(x, pivot)?;
    Ok((l(x), l(pivot).times(&d.quotient).plus(&l(&d.remainder))))
}

/// Draws a random integer in `[-bound, bound]`; handy for picking slopes.
pub fn random_small_integer<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> BigInt {
    BigInt::from(rng.gen_range(-bound..=bound))
}
