//! Command-line front end. [`run`] is pure: it takes the argument list and
//! returns exit code and captured output, so golden tests need no process.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
//! 3 domain error or unmet hypothesis.

use std::fmt::Display;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::codomain::{AbelianGroup, IntVector};
use crate::division::{euclidean_div, multiplicative_div};
use crate::error::{Error, Result};
use crate::extension::{
    check_quasi_extension, extend_additive, extend_logarithmic, oracle, project_domain,
    verify_restricted_additive, verify_restricted_logarithmic, DomainKind, DomainSet, Hypothesis,
    Oracle, PartialFunction, ProjectionSide, QuasiExtensionCertificate,
};
use crate::families::{self, RationalNorm};
use crate::interval::{parse_interval, Interval};
use crate::ordered_structures::{
    parse_integer, parse_quadratic, parse_rational, Element, GroupDescriptor,
};
use crate::quadratic::Quadratic;
use crate::sampling::RandomElement;
use crate::scalar::{OrderedField, OrderedGroup};
use crate::uniqueness::{
    agreement_up_to_constant_additive, agreement_up_to_constant_logarithmic,
    constancy_implies_zero_additive, constancy_implies_zero_logarithmic, ConstancyOutcome,
    ConstancyReport, HomomorphismUnderTest,
};

#[derive(Debug, Parser)]
#[command(
    name = "archext",
    version,
    about = "Exact division and functional-equation extension in Archimedean ordered groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Z, Q or Qsqrt:<d>
    #[arg(long, global = true, default_value = "Q")]
    pub carrier: GroupDescriptor,
    /// Q, Z or vec:<n>; defaults to what the family maps into
    #[arg(long, global = true)]
    pub codomain: Option<CodomainSpec>,
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit one "RESULT key=value" line per fact
    #[arg(long, global = true)]
    pub machine: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euclidean division x = q*y + r, 0 <= r < |y|
    Div {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Multiplicative division x = y^z * r
    Mdiv {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Extend a restricted solution to a homomorphism and evaluate it
    Extend {
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
        #[arg(long, allow_hyphen_values = true)]
        y0: String,
        #[arg(long)]
        family: Family,
        #[arg(long)]
        kind: Option<Kind>,
        #[arg(long, required = true, allow_hyphen_values = true)]
        eval: Vec<String>,
    },
    /// Projections Dx, Dy and Dx+y of a domain
    Project {
        #[arg(long, requires = "y", conflicts_with = "point")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        y: Option<String>,
        /// A pair u,v of the domain; repeatable
        #[arg(long, allow_hyphen_values = true)]
        point: Vec<String>,
    },
    /// Sample the quasi-extension identities of a built-in example
    QuasiCheck {
        #[arg(long)]
        builtin: Builtin,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c1: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c2: String,
    },
    /// Constancy on an interval forces a homomorphism to vanish
    UniqCheck {
        #[arg(long)]
        kind: Kind,
        #[arg(long)]
        interval: String,
        #[arg(long)]
        family: Family,
        /// Compare against a second family instead (agreement up to a constant)
        #[arg(long)]
        against: Option<Family>,
        /// Expected constant value on the interval
        #[arg(long, allow_hyphen_values = true)]
        claim: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Additive,
    Logarithmic,
}

impl From<Kind> for DomainKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Additive => DomainKind::Additive,
            Kind::Logarithmic => DomainKind::Logarithmic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    AczelExample,
}

/// Named function families; the only way to give an oracle on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `x ↦ λx`, λ in carrier text format.
    Linear(String),
    DyadicLog,
    Floor,
    Zero,
}

impl Family {
    fn default_kind(&self) -> Kind {
        match self {
            Family::DyadicLog => Kind::Logarithmic,
            _ => Kind::Additive,
        }
    }

    fn default_codomain(&self) -> CodomainSpec {
        match self {
            Family::DyadicLog | Family::Floor => CodomainSpec::Z,
            _ => CodomainSpec::Carrier,
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dyadic-log" => Ok(Family::DyadicLog),
            "floor" => Ok(Family::Floor),
            "zero" => Ok(Family::Zero),
            _ => match s.strip_prefix("linear:") {
                Some(l) if !l.is_empty() => Ok(Family::Linear(l.to_string())),
                _ => Err(format!(
                    "unknown family {s:?} (expected linear:<λ>, dyadic-log, floor or zero)"
                )),
            },
        }
    }
}

impl Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Linear(l) => write!(f, "linear:{l}"),
            Family::DyadicLog => f.write_str("dyadic-log"),
            Family::Floor => f.write_str("floor"),
            Family::Zero => f.write_str("zero"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodomainSpec {
    /// The carrier itself.
    Carrier,
    Z,
    Q,
    Vec(usize),
}

impl FromStr for CodomainSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Z" => Ok(CodomainSpec::Z),
            "Q" => Ok(CodomainSpec::Q),
            _ => s
                .strip_prefix("vec:")
                .and_then(|n| n.parse().ok())
                .filter(|&n| n > 0)
                .map(CodomainSpec::Vec)
                .ok_or_else(|| format!("unknown codomain {s:?} (expected Q, Z or vec:<n>)")),
        }
    }
}

impl CodomainSpec {
    fn normalized(self, carrier: &GroupDescriptor) -> Self {
        match (self, carrier) {
            (CodomainSpec::Z, GroupDescriptor::Integers)
            | (CodomainSpec::Q, GroupDescriptor::Rationals) => CodomainSpec::Carrier,
            _ => self,
        }
    }

    fn vec_len(self) -> usize {
        match self {
            CodomainSpec::Vec(n) => n,
            _ => 0,
        }
    }
}

/// Exit code plus captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    lines: Vec<String>,
}

impl Report {
    fn ok(lines: Vec<String>) -> Self {
        Report { code: 0, lines }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidDescriptor(_) | Error::DescriptorMismatch { .. } => 2,
        _ => 3,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => CliOutput {
            code: report.code,
            stdout: report.lines.iter().map(|l| format!("{l}\n")).collect(),
            stderr: String::new(),
        },
        Err(e) => CliOutput {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs an already-parsed command line.
fn execute(cli: &Cli) -> Result<Report> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Div { x, y } => cmd_div(cfg, x, y),
        Command::Mdiv { x, y } => cmd_mdiv(cfg, x, y),
        Command::Extend {
            epsilon,
            y0,
            family,
            kind,
            eval,
        } => {
            let args = ExtendArgs {
                epsilon,
                y0,
                family,
                eval,
            };
            match kind.unwrap_or_else(|| family.default_kind()) {
                Kind::Additive => dispatch_additive!(cfg, family, extend_additive_cmd, &args),
                Kind::Logarithmic => dispatch_field!(cfg, family, extend_logarithmic_cmd, &args),
            }
        }
        Command::Project { x, y, point } => cmd_project(cfg, x.as_deref(), y.as_deref(), point),
        Command::QuasiCheck { builtin, c1, c2 } => match cfg.carrier {
            GroupDescriptor::Integers => Err(Error::NotAField("Z".into())),
            GroupDescriptor::Rationals => quasi_check::<BigRational>(cfg, *builtin, c1, c2),
            GroupDescriptor::Quadratic(_) => quasi_check::<Quadratic>(cfg, *builtin, c1, c2),
        },
        Command::UniqCheck {
            kind,
            interval,
            family,
            against,
            claim,
        } => {
            let args = UniqArgs {
                interval,
                family,
                against: against.as_ref(),
                claim: claim.as_deref(),
            };
            match kind {
                Kind::Additive => dispatch_additive!(cfg, family, uniq_additive_cmd, &args),
                Kind::Logarithmic => dispatch_field!(cfg, family, uniq_logarithmic_cmd, &args),
            }
        }
    }
}

/// Picks the codomain type for an additive command over any carrier.
macro_rules! dispatch_additive {
    ($cfg:expr, $family:expr, $f:ident, $args:expr) => {{
        let cod = $cfg
            .codomain
            .unwrap_or_else(|| $family.default_codomain())
            .normalized(&$cfg.carrier);
        match &$cfg.carrier {
            GroupDescriptor::Integers => dispatch_codomain!(BigInt, cod, $f, $cfg, $args),
            GroupDescriptor::Rationals => dispatch_codomain!(BigRational, cod, $f, $cfg, $args),
            GroupDescriptor::Quadratic(_) => dispatch_codomain!(Quadratic, cod, $f, $cfg, $args),
        }
    }};
}

/// Same, for commands that need a field carrier.
macro_rules! dispatch_field {
    ($cfg:expr, $family:expr, $f:ident, $args:expr) => {{
        let cod = $cfg
            .codomain
            .unwrap_or_else(|| $family.default_codomain())
            .normalized(&$cfg.carrier);
        match &$cfg.carrier {
            GroupDescriptor::Integers => Err(Error::NotAField("Z".into())),
            GroupDescriptor::Rationals => dispatch_codomain!(BigRational, cod, $f, $cfg, $args),
            GroupDescriptor::Quadratic(_) => dispatch_codomain!(Quadratic, cod, $f, $cfg, $args),
        }
    }};
}

macro_rules! dispatch_codomain {
    ($t:ty, $cod:expr, $f:ident, $cfg:expr, $args:expr) => {
        match $cod {
            CodomainSpec::Carrier => $f::<$t, $t>($cfg, $cod, $args),
            CodomainSpec::Z => $f::<$t, BigInt>($cfg, $cod, $args),
            CodomainSpec::Q => $f::<$t, BigRational>($cfg, $cod, $args),
            CodomainSpec::Vec(_) => $f::<$t, IntVector>($cfg, $cod, $args),
        }
    };
}

use {dispatch_additive, dispatch_codomain, dispatch_field};

/// Carriers reachable from the command line.
pub trait CliCarrier: RandomElement + TryFrom<Element, Error = Error> + Into<Element> {
    fn linear_family(lambda: Self) -> Oracle<Self, Self>;

    /// The integer floor, where the carrier has one worth testing.
    fn floor_family() -> Option<Oracle<Self, BigInt>> {
        None
    }
}

impl CliCarrier for BigInt {
    fn linear_family(lambda: Self) -> Oracle<Self, Self> {
        families::integer_multiple(lambda)
    }
}

impl CliCarrier for BigRational {
    fn linear_family(lambda: Self) -> Oracle<Self, Self> {
        families::linear(lambda)
    }

    fn floor_family() -> Option<Oracle<Self, BigInt>> {
        Some(families::floor())
    }
}

impl CliCarrier for Quadratic {
    fn linear_family(lambda: Self) -> Oracle<Self, Self> {
        families::linear(lambda)
    }
}

/// Field carriers with a norm, for logarithmic commands.
pub trait CliField: CliCarrier + OrderedField + RationalNorm {}
impl CliField for BigRational {}
impl CliField for Quadratic {}

/// A codomain `Y` for oracles on carrier `T`.
pub trait Codomain<T>: AbelianGroup {
    fn family(family: &Family, like: &T, vec_len: usize) -> Result<Oracle<T, Self>>;
    fn parse_value(text: &str, like: &T, vec_len: usize) -> Result<Self>;
}

fn unsupported<T>(family: &Family, codomain: &str) -> Result<T> {
    Err(Error::InvalidDescriptor(format!(
        "family {family} does not map into codomain {codomain}"
    )))
}

fn carrier_value<T: CliCarrier>(like: &T, text: &str) -> Result<T> {
    let desc: GroupDescriptor = like.carrier_name().parse()?;
    T::try_from(desc.parse(text)?)
}

impl Codomain<BigInt> for BigInt {
    fn family(family: &Family, like: &BigInt, _: usize) -> Result<Oracle<BigInt, Self>> {
        match family {
            Family::Linear(l) => Ok(BigInt::linear_family(carrier_value(like, l)?)),
            Family::Floor => Ok(oracle(|x: &BigInt| x.clone())),
            Family::Zero => Ok(oracle(|_: &BigInt| BigInt::zero())),
            Family::DyadicLog => Err(Error::NotAField("Z".into())),
        }
    }

    fn parse_value(text: &str, _: &BigInt, _: usize) -> Result<Self> {
        parse_integer(text)
    }
}

impl Codomain<BigInt> for BigRational {
    fn family(family: &Family, _: &BigInt, _: usize) -> Result<Oracle<BigInt, Self>> {
        match family {
            Family::Linear(l) => {
                let lambda = parse_rational(l)?;
                Ok(oracle(move |x: &BigInt| {
                    &lambda * BigRational::from_integer(x.clone())
                }))
            }
            Family::Zero => Ok(oracle(|_: &BigInt| BigRational::zero())),
            Family::DyadicLog => Err(Error::NotAField("Z".into())),
            Family::Floor => unsupported(family, "Q"),
        }
    }

    fn parse_value(text: &str, _: &BigInt, _: usize) -> Result<Self> {
        parse_rational(text)
    }
}

impl Codomain<BigRational> for BigRational {
    fn family(family: &Family, _: &BigRational, _: usize) -> Result<Oracle<BigRational, Self>> {
        match family {
            Family::Linear(l) => Ok(families::linear(parse_rational(l)?)),
            Family::Floor => {
                let floor = families::floor();
                Ok(oracle(move |x: &BigRational| {
                    BigRational::from_integer(floor(x))
                }))
            }
            Family::Zero => Ok(oracle(|_: &BigRational| BigRational::zero())),
            Family::DyadicLog => Ok(families::dyadic_log_rational()),
        }
    }

    fn parse_value(text: &str, _: &BigRational, _: usize) -> Result<Self> {
        parse_rational(text)
    }
}

impl Codomain<Quadratic> for Quadratic {
    fn family(family: &Family, like: &Quadratic, _: usize) -> Result<Oracle<Quadratic, Self>> {
        match family {
            Family::Linear(l) => Ok(families::linear(carrier_value(like, l)?)),
            Family::Zero => {
                let zero = like.field().zero();
                Ok(oracle(move |_: &Quadratic| zero.clone()))
            }
            Family::DyadicLog | Family::Floor => unsupported(family, &like.carrier_name()),
        }
    }

    fn parse_value(text: &str, like: &Quadratic, _: usize) -> Result<Self> {
        parse_quadratic(&like.field(), text)
    }
}

macro_rules! field_into_integers {
    ($t:ty) => {
        impl Codomain<$t> for BigInt {
            fn family(family: &Family, _: &$t, _: usize) -> Result<Oracle<$t, Self>> {
                match family {
                    Family::DyadicLog => Ok(families::dyadic_log()),
                    Family::Zero => Ok(oracle(|_: &$t| BigInt::zero())),
                    Family::Floor => {
                        <$t>::floor_family().map_or_else(|| unsupported(family, "Z"), Ok)
                    }
                    Family::Linear(_) => unsupported(family, "Z"),
                }
            }

            fn parse_value(text: &str, _: &$t, _: usize) -> Result<Self> {
                parse_integer(text)
            }
        }

        impl Codomain<$t> for IntVector {
            fn family(family: &Family, _: &$t, n: usize) -> Result<Oracle<$t, Self>> {
                match family {
                    Family::DyadicLog => Ok(families::valuation_vector(n)),
                    Family::Zero => Ok(oracle(move |_: &$t| IntVector::zeros(n))),
                    _ => unsupported(family, &format!("vec:{n}")),
                }
            }

            fn parse_value(text: &str, _: &$t, n: usize) -> Result<Self> {
                parse_vector(text, n)
            }
        }
    };
}

field_into_integers!(BigRational);
field_into_integers!(Quadratic);

impl Codomain<Quadratic> for BigRational {
    fn family(family: &Family, _: &Quadratic, _: usize) -> Result<Oracle<Quadratic, Self>> {
        match family {
            Family::DyadicLog => Ok(families::dyadic_log_rational()),
            Family::Zero => Ok(oracle(|_: &Quadratic| BigRational::zero())),
            _ => unsupported(family, "Q"),
        }
    }

    fn parse_value(text: &str, _: &Quadratic, _: usize) -> Result<Self> {
        parse_rational(text)
    }
}

impl Codomain<BigInt> for IntVector {
    fn family(family: &Family, _: &BigInt, n: usize) -> Result<Oracle<BigInt, Self>> {
        match family {
            Family::Zero => Ok(oracle(move |_: &BigInt| IntVector::zeros(n))),
            Family::DyadicLog => Err(Error::NotAField("Z".into())),
            _ => unsupported(family, &format!("vec:{n}")),
        }
    }

    fn parse_value(text: &str, _: &BigInt, n: usize) -> Result<Self> {
        parse_vector(text, n)
    }
}

/// Parses `(a,b,...)` with exactly `n` integer components.
fn parse_vector(text: &str, n: usize) -> Result<IntVector> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("invalid vector {text:?}")))?;
    let parts = inner
        .split(',')
        .map(parse_integer)
        .collect::<Result<Vec<_>>>()?;
    if parts.len() != n {
        return Err(Error::Parse(format!("expected {n} components in {text:?}")));
    }
    Ok(IntVector::new(parts))
}

fn parse_as<T: TryFrom<Element, Error = Error>>(desc: &GroupDescriptor, text: &str) -> Result<T> {
    T::try_from(desc.parse(text)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_div(cfg: &CliConfig, x: &str, y: &str) -> Result<Report> {
    let (x, y) = (cfg.carrier.parse(x)?, cfg.carrier.parse(y)?);
    let (q, r) = match (x, y) {
        (Element::Int(x), Element::Int(y)) => {
            let d = euclidean_div(&x, &y)?;
            (d.quotient, d.remainder.to_string())
        }
        (Element::Rat(x), Element::Rat(y)) => {
            let d = euclidean_div(&x, &y)?;
            (d.quotient, d.remainder.to_string())
        }
        (Element::Quad(x), Element::Quad(y)) => {
            let d = euclidean_div(&x, &y)?;
            (d.quotient, d.remainder.to_string())
        }
        (x, y) => {
            return Err(Error::DescriptorMismatch {
                left: x.descriptor().to_string(),
                right: y.descriptor().to_string(),
            })
        }
    };
    Ok(Report::ok(if cfg.machine {
        vec![format!("RESULT q={q}"), format!("RESULT r={r}")]
    } else {
        vec![format!("q={q} r={r}")]
    }))
}

fn cmd_mdiv(cfg: &CliConfig, x: &str, y: &str) -> Result<Report> {
    let (x, y) = (cfg.carrier.parse(x)?, cfg.carrier.parse(y)?);
    let (z, r) = match (x, y) {
        (Element::Rat(x), Element::Rat(y)) => {
            let d = multiplicative_div(&x, &y)?;
            (d.quotient, d.remainder.to_string())
        }
        (Element::Quad(x), Element::Quad(y)) => {
            let d = multiplicative_div(&x, &y)?;
            (d.quotient, d.remainder.to_string())
        }
        _ => return Err(Error::NotAField(cfg.carrier.to_string())),
    };
    Ok(Report::ok(if cfg.machine {
        vec![format!("RESULT z={z}"), format!("RESULT r={r}")]
    } else {
        vec![format!("z={z} r={r}")]
    }))
}

struct ExtendArgs<'a> {
    epsilon: &'a str,
    y0: &'a str,
    family: &'a Family,
    eval: &'a [String],
}

fn restricted_failure<T: Display, Y: Display>(
    report: &crate::extension::RestrictedCheckReport<T, Y>,
    op: &str,
) -> Error {
    let v = &report.violations[0];
    Error::HypothesisViolated(format!(
        "restricted equation fails on {} of {} sampled pairs, first at x={} y={}: f(x{op}y)={} but f(x)+f(y)={}",
        report.violations.len(),
        report.samples,
        v.x,
        v.y,
        v.combined,
        v.sum
    ))
}

fn extend_additive_cmd<T: CliCarrier, Y: Codomain<T>>(
    cfg: &CliConfig,
    cod: CodomainSpec,
    args: &ExtendArgs<'_>,
) -> Result<Report> {
    let epsilon: T = parse_as(&cfg.carrier, args.epsilon)?;
    let y0: T = parse_as(&cfg.carrier, args.y0)?;
    let points = args
        .eval
        .iter()
        .map(|x| parse_as::<T>(&cfg.carrier, x))
        .collect::<Result<Vec<_>>>()?;
    let f = PartialFunction::additive(
        epsilon.clone(),
        Y::family(args.family, &epsilon, cod.vec_len())?,
    )?;
    let check = verify_restricted_additive(&f, cfg.samples, cfg.seed)?;
    if !check.passed() {
        return Err(restricted_failure(&check, "+"));
    }
    let a = extend_additive(&f, &y0, Hypothesis::Sampled(&check))?;
    let mut lines = Vec::new();
    if cfg.machine {
        lines.push(format!("RESULT restricted_samples={}", check.samples));
    }
    for x in &points {
        let v = a.eval_additive(x)?;
        lines.push(if cfg.machine {
            format!("RESULT a({x})={v}")
        } else {
            format!("a({x})={v}")
        });
    }
    Ok(Report::ok(lines))
}

fn extend_logarithmic_cmd<T: CliField, Y: Codomain<T>>(
    cfg: &CliConfig,
    cod: CodomainSpec,
    args: &ExtendArgs<'_>,
) -> Result<Report> {
    let epsilon: T = parse_as(&cfg.carrier, args.epsilon)?;
    let y0: T = parse_as(&cfg.carrier, args.y0)?;
    let points = args
        .eval
        .iter()
        .map(|x| parse_as::<T>(&cfg.carrier, x))
        .collect::<Result<Vec<_>>>()?;
    let f = PartialFunction::logarithmic(
        epsilon.clone(),
        Y::family(args.family, &epsilon, cod.vec_len())?,
    )?;
    let check = verify_restricted_logarithmic(&f, cfg.samples, cfg.seed)?;
    if !check.passed() {
        return Err(restricted_failure(&check, "*"));
    }
    let l = extend_logarithmic(&f, &y0, Hypothesis::Sampled(&check))?;
    let mut lines = Vec::new();
    if cfg.machine {
        lines.push(format!("RESULT restricted_samples={}", check.samples));
    }
    for x in &points {
        let v = l.eval(x)?;
        lines.push(if cfg.machine {
            format!("RESULT l({x})={v}")
        } else {
            format!("l({x})={v}")
        });
    }
    Ok(Report::ok(lines))
}

fn cmd_project(
    cfg: &CliConfig,
    x: Option<&str>,
    y: Option<&str>,
    points: &[String],
) -> Result<Report> {
    match &cfg.carrier {
        GroupDescriptor::Integers => project::<BigInt>(cfg, x, y, points),
        GroupDescriptor::Rationals => project::<BigRational>(cfg, x, y, points),
        GroupDescriptor::Quadratic(_) => project::<Quadratic>(cfg, x, y, points),
    }
}

fn project<T: CliCarrier>(
    cfg: &CliConfig,
    x: Option<&str>,
    y: Option<&str>,
    points: &[String],
) -> Result<Report> {
    let domain = match (x, y) {
        (Some(x), Some(y)) => DomainSet::Rectangle {
            x_side: parse_interval(&cfg.carrier, x)?,
            y_side: parse_interval(&cfg.carrier, y)?,
        },
        _ => DomainSet::Finite(
            points
                .iter()
                .map(|p| {
                    let (u, v) = p.split_once(',').ok_or_else(|| {
                        Error::Parse(format!("invalid point {p:?}, expected u,v"))
                    })?;
                    Ok((parse_as(&cfg.carrier, u)?, parse_as(&cfg.carrier, v)?))
                })
                .collect::<Result<Vec<(T, T)>>>()?,
        ),
    };
    let p = project_domain(&domain)?;
    let prefix = if cfg.machine { "RESULT " } else { "" };
    Ok(Report::ok(vec![
        format!("{prefix}Dx={}", p.x),
        format!("{prefix}Dy={}", p.y),
        format!("{prefix}Dx+y={}", p.sum),
    ]))
}

fn quasi_check<T: CliField>(
    cfg: &CliConfig,
    builtin: Builtin,
    c1: &str,
    c2: &str,
) -> Result<Report> {
    let Builtin::AczelExample = builtin;
    let c1: T = parse_as(&cfg.carrier, c1)?;
    let c2: T = parse_as(&cfg.carrier, c2)?;
    let like = c1.zero_like();
    let at = |n: i64| like.rational_like(&BigRational::from_integer(n.into()));
    let domain = DomainSet::Rectangle {
        x_side: Interval::open(at(0), at(1))?,
        y_side: Interval::open(at(1), at(2))?,
    };
    let cert = QuasiExtensionCertificate {
        additive: oracle(|x: &T| x.zero_like()),
        c1: c1.clone(),
        c2: c2.clone(),
    };
    let report = check_quasi_extension(
        &families::aczel_example(),
        &domain,
        &cert,
        cfg.samples,
        cfg.seed,
    )?;
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    let counts = [ProjectionSide::X, ProjectionSide::Y, ProjectionSide::Sum]
        .map(|s| (s, report.violations_on(s)));
    let mut lines = Vec::new();
    if cfg.machine {
        lines.push("RESULT builtin=aczel-example".to_string());
        lines.push(format!("RESULT c1={c1}"));
        lines.push(format!("RESULT c2={c2}"));
        lines.push(format!("RESULT samples={}", report.samples));
        lines.push(format!(
            "RESULT additivity_violations={}",
            report.additivity_violations.len()
        ));
        lines.push(format!(
            "RESULT restricted_violations={}",
            report.restricted_violations.len()
        ));
        for (side, n) in counts {
            lines.push(format!("RESULT violations_{side}={n}"));
        }
        lines.push(format!("RESULT verdict={}", verdict.to_lowercase()));
    } else if report.passed() {
        lines.push(format!("PASS c1={c1} c2={c2}"));
    } else {
        let detail: Vec<String> = counts.iter().map(|(s, n)| format!("{s}:{n}")).collect();
        lines.push(format!(
            "FAIL c1={c1} c2={c2} violations {}",
            detail.join(" ")
        ));
        if let Some(v) = report.violations.first() {
            lines.push(format!(
                "first violation on {}: f({})={} but a+c={}",
                v.side, v.point, v.value, v.expected
            ));
        }
    }
    Ok(Report {
        code: if report.passed() { 0 } else { 1 },
        lines,
    })
}

struct UniqArgs<'a> {
    interval: &'a str,
    family: &'a Family,
    against: Option<&'a Family>,
    claim: Option<&'a str>,
}

fn open_bounds<T: CliCarrier>(cfg: &CliConfig, text: &str) -> Result<(T, T)> {
    let i: Interval<T> = parse_interval(&cfg.carrier, text)?;
    if !i.is_open() {
        return Err(Error::Parse(format!(
            "expected an open interval ]lo,hi[, got {text:?}"
        )));
    }
    Ok((i.lo().clone(), i.hi().clone()))
}

fn uniq_additive_cmd<T: CliCarrier, Y: Codomain<T>>(
    cfg: &CliConfig,
    cod: CodomainSpec,
    args: &UniqArgs<'_>,
) -> Result<Report> {
    let (lo, hi) = open_bounds::<T>(cfg, args.interval)?;
    let n = cod.vec_len();
    let a = HomomorphismUnderTest::additive(Y::family(args.family, &lo, n)?);
    let claimed = args.claim.map(|c| Y::parse_value(c, &lo, n)).transpose()?;
    let header = (Kind::Additive, args.interval);
    match args.against {
        None => {
            let report =
                constancy_implies_zero_additive(&a, &lo, &hi, claimed, cfg.samples, cfg.seed)?;
            Ok(render_constancy(cfg, header, "a", &report, None))
        }
        Some(other) => {
            let b = HomomorphismUnderTest::additive(Y::family(other, &lo, n)?);
            let report =
                agreement_up_to_constant_additive(&a, &b, &lo, &hi, cfg.samples, cfg.seed)?;
            let extra = (report.agree_everywhere, report.both_zero_on_samples);
            Ok(render_constancy(
                cfg,
                header,
                "(a1-a2)",
                &report.difference,
                Some(extra),
            ))
        }
    }
}

fn uniq_logarithmic_cmd<T: CliField, Y: Codomain<T>>(
    cfg: &CliConfig,
    cod: CodomainSpec,
    args: &UniqArgs<'_>,
) -> Result<Report> {
    let (lo, hi) = open_bounds::<T>(cfg, args.interval)?;
    let n = cod.vec_len();
    let l = HomomorphismUnderTest::logarithmic(Y::family(args.family, &lo, n)?);
    let claimed = args.claim.map(|c| Y::parse_value(c, &lo, n)).transpose()?;
    let header = (Kind::Logarithmic, args.interval);
    match args.against {
        None => {
            let report =
                constancy_implies_zero_logarithmic(&l, &lo, &hi, claimed, cfg.samples, cfg.seed)?;
            Ok(render_constancy(cfg, header, "l", &report, None))
        }
        Some(other) => {
            let m = HomomorphismUnderTest::logarithmic(Y::family(other, &lo, n)?);
            let report =
                agreement_up_to_constant_logarithmic(&l, &m, &lo, &hi, cfg.samples, cfg.seed)?;
            let extra = (report.agree_everywhere, report.both_zero_on_samples);
            Ok(render_constancy(
                cfg,
                header,
                "(l1-l2)",
                &report.difference,
                Some(extra),
            ))
        }
    }
}

/// Renders a constancy report. `agreement` carries (agree everywhere, both
/// zero) when the report is about a difference.
fn render_constancy<T: OrderedGroup, Y: AbelianGroup>(
    cfg: &CliConfig,
    (kind, interval): (Kind, &str),
    name: &str,
    r: &ConstancyReport<T, Y>,
    agreement: Option<(bool, bool)>,
) -> Report {
    let op = match kind {
        Kind::Additive => "+",
        Kind::Logarithmic => "*",
    };
    let (verdict, code) = if !r.precondition_met() {
        ("hypothesis-not-met", 3)
    } else {
        match &r.outcome {
            ConstancyOutcome::Pass { .. } => ("pass", 0),
            ConstancyOutcome::HypothesisNotMet { .. } => ("hypothesis-not-met", 3),
            ConstancyOutcome::Refuted { .. } => ("refuted", 1),
        }
    };

    let mut facts: Vec<(String, String)> = vec![
        ("kind".into(), format!("{kind:?}").to_lowercase()),
        ("interval".into(), interval.to_string()),
        ("samples".into(), r.samples.to_string()),
        (
            "precondition".into(),
            if r.precondition_met() { "pass" } else { "fail" }.into(),
        ),
    ];
    if let Some((x, y)) = r.precondition_violations.first() {
        facts.push(("precondition_witness".into(), format!("{x},{y}")));
    }
    match &r.outcome {
        ConstancyOutcome::HypothesisNotMet { witness, values } => {
            facts.push(("constant".into(), "no".into()));
            facts.push(("witness".into(), format!("{},{}", witness.0, witness.1)));
            facts.push((
                "witness_values".into(),
                format!("{},{}", values.0, values.1),
            ));
        }
        ConstancyOutcome::Pass { constant } | ConstancyOutcome::Refuted { constant, .. } => {
            facts.push(("constant".into(), "yes".into()));
            facts.push(("value".into(), constant.to_string()));
            if let Some(p) = &r.pivot {
                facts.push(("pivot".into(), p.to_string()));
            }
            facts.push(("doubling".into(), yes_no(r.doubling_holds).into()));
            facts.push((
                "proof_path_failures".into(),
                r.proof_path_failures.len().to_string(),
            ));
            facts.push(("zero_everywhere".into(), yes_no(r.passed()).into()));
            if let ConstancyOutcome::Refuted {
                counterexample,
                value,
                ..
            } = &r.outcome
            {
                facts.push(("counterexample".into(), format!("{counterexample}")));
                facts.push(("counterexample_value".into(), value.to_string()));
            }
        }
    }
    if let Some(c) = &r.claimed {
        facts.push(("claim".into(), c.to_string()));
        if let Some(ok) = r.claim_consistent() {
            facts.push(("claim_consistent".into(), yes_no(ok).into()));
        }
    }
    if let Some((agree, both_zero)) = agreement {
        facts.push(("agree_everywhere".into(), yes_no(agree).into()));
        facts.push(("both_zero".into(), yes_no(both_zero).into()));
    }
    facts.push(("verdict".into(), verdict.into()));

    if cfg.machine {
        return Report {
            code,
            lines: facts
                .iter()
                .map(|(k, v)| format!("RESULT {k}={v}"))
                .collect(),
        };
    }

    let mut lines = Vec::new();
    if let Some((x, y)) = r.precondition_violations.first() {
        lines.push(format!(
            "HYPOTHESIS NOT MET: {name} is not a homomorphism, {name}(x{op}y) != {name}(x)+{name}(y) at x={x} y={y}"
        ));
    }
    match &r.outcome {
        ConstancyOutcome::HypothesisNotMet { witness, values } => lines.push(format!(
            "HYPOTHESIS NOT MET: {name} is not constant on {interval}, {name}({})={} but {name}({})={}",
            witness.0, values.0, witness.1, values.1
        )),
        ConstancyOutcome::Pass { constant } if r.precondition_met() => {
            let tail = match agreement {
                Some((agree, both_zero)) => format!(
                    " agree_everywhere={} both_zero={}",
                    yes_no(agree),
                    yes_no(both_zero)
                ),
                None => String::new(),
            };
            lines.push(format!(
                "PASS {name} constant={constant} on {interval}, zero everywhere at {} samples{tail}",
                r.samples
            ));
        }
        ConstancyOutcome::Pass { .. } => {}
        ConstancyOutcome::Refuted {
            constant,
            counterexample,
            value,
        } => lines.push(format!(
            "FAIL {name} constant={constant} on {interval} but {name}({counterexample})={value}"
        )),
    }
    if let (Some(c), Some(false)) = (&r.claimed, r.claim_consistent()) {
        if let ConstancyOutcome::Pass { constant } | ConstancyOutcome::Refuted { constant, .. } =
            &r.outcome
        {
            lines.push(format!("NOTE claimed constant {c} but observed {constant}"));
        }
    }
    Report { code, lines }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &str) -> CliOutput {
        run(std::iter::once("archext").chain(args.split_whitespace()))
    }

    #[test]
    fn div_examples() {
        assert_eq!(cli("div --carrier Q 7/2 1").stdout, "q=3 r=1/2\n");
        assert_eq!(cli("div --carrier Q 0 5").stdout, "q=0 r=0\n");
        assert_eq!(cli("div --carrier Z 5 -2").stdout, "q=-2 r=1\n");
        assert_eq!(cli("div --carrier Q -1/3 1/2").stdout, "q=-1 r=1/6\n");
        let out = cli("div --carrier Q 1 0");
        assert_eq!(out.code, 3);
        assert!(out.stderr.contains("division by zero element"));
        assert_eq!(cli("div --carrier Q 1/0 1").code, 2);
        assert_eq!(cli("div --carrier Z 1/2 1").code, 2);
        assert_eq!(
            cli("div --machine 7/2 1").stdout,
            "RESULT q=3\nRESULT r=1/2\n"
        );
    }

    #[test]
    fn mdiv_examples() {
        assert_eq!(cli("mdiv --carrier Q 5 2").stdout, "z=2 r=5/4\n");
        assert_eq!(cli("mdiv --carrier Q 8 2").stdout, "z=3 r=1\n");
        assert_eq!(
            cli("mdiv --carrier Qsqrt:2 3+2*sqrt(2) 1+1*sqrt(2)").stdout,
            "z=2 r=1\n"
        );
        assert_eq!(cli("mdiv --carrier Z 8 2").code, 3);
        assert_eq!(cli("mdiv --carrier Q 5 1").code, 3);
    }

    #[test]
    fn extend_examples() {
        let out = cli("extend --carrier Q --epsilon 1 --y0 1/2 --family linear:2 --eval 5");
        assert_eq!(out.stdout, "a(5)=10\n", "{out:?}");
        let out = cli("extend --epsilon 2 --y0 3/2 --family dyadic-log --eval 32 --eval 5/96");
        assert_eq!(out.stdout, "l(32)=5\nl(5/96)=-5\n", "{out:?}");
        let out = cli("extend --epsilon 1 --y0 1/2 --family floor --eval 5");
        assert_eq!(out.code, 3);
        assert!(out.stderr.contains("restricted equation fails"));
        assert_eq!(
            cli("extend --carrier Z --epsilon 4 --y0 1 --family linear:2 --eval 5").code,
            3
        );
        assert_eq!(
            cli("extend --epsilon 1 --y0 2 --family linear:2 --eval 5").code,
            3
        );
        assert_eq!(
            cli("extend --epsilon 1 --y0 1/2 --family bogus --eval 5").code,
            2
        );
    }

    #[test]
    fn project_examples() {
        assert_eq!(
            cli("project --x ]0,1[ --y ]1,2[").stdout,
            "Dx=]0,1[\nDy=]1,2[\nDx+y=]1,3[\n"
        );
        assert_eq!(
            cli("project --point 0,1 --point 1,2 --point 0,2").stdout,
            "Dx={0,1}\nDy={1,2}\nDx+y={1,2,3}\n"
        );
        assert_eq!(cli("project --carrier Z --x ]0,3[ --y ]1,2[").code, 3);
        assert_eq!(cli("project").code, 3);
    }

    #[test]
    fn quasi_check_examples() {
        let out = cli("quasi-check --builtin aczel-example --samples 500 --seed 1");
        assert_eq!(out.stdout, "PASS c1=0 c2=1\n");
        assert_eq!(out.code, 0);
        let out = cli("quasi-check --builtin aczel-example --c2 0 --samples 500 --seed 1");
        assert_eq!(out.code, 1);
        assert!(out
            .stdout
            .starts_with("FAIL c1=0 c2=0 violations Dx:0 Dy:500 Dx+y:500\n"));
    }

    #[test]
    fn uniq_check_examples() {
        let out = cli(
            "uniq-check --kind additive --interval ]1,2[ --family linear:0 --samples 1000 --seed 7",
        );
        assert_eq!(out.code, 0, "{out:?}");
        assert_eq!(
            out.stdout,
            "PASS a constant=0 on ]1,2[, zero everywhere at 1000 samples\n"
        );
        let out = cli("uniq-check --kind additive --interval ]1,2[ --family linear:3 --seed 7");
        assert_eq!(out.code, 3);
        assert_eq!(
            out.stdout,
            "HYPOTHESIS NOT MET: a is not constant on ]1,2[, a(3/2)=9/2 but a(5/4)=15/4\n"
        );
        let out =
            cli("uniq-check --machine --kind logarithmic --interval ]2,3[ --family dyadic-log");
        assert_eq!(out.code, 3);
        assert!(out
            .stdout
            .contains("RESULT witness=5/2,9/4\nRESULT witness_values=-1,-2\n"));
        assert_eq!(
            cli("uniq-check --kind logarithmic --interval ]3,2[ --family zero").code,
            3
        );
        let out = cli("uniq-check --kind additive --interval ]1,2[ --family linear:0 --claim 1");
        assert!(out
            .stdout
            .contains("NOTE claimed constant 1 but observed 0"));
        let out = cli("uniq-check --kind additive --interval ]1,2[ --family linear:2 --against linear:2 --machine");
        assert!(out
            .stdout
            .contains("RESULT agree_everywhere=yes\nRESULT both_zero=no\n"));
        let out = cli("uniq-check --kind additive --interval ]1,2[ --family floor");
        assert_eq!(out.code, 3);
        assert!(out.stdout.contains("is not a homomorphism"));
    }

    #[test]
    fn codomains() {
        let out = cli("extend --carrier Qsqrt:2 --codomain vec:2 --epsilon 2 --y0 3/2 --family dyadic-log --eval 0+1*sqrt(2) --eval 9");
        assert_eq!(out.stdout, "l(0+1*sqrt(2))=(1,0)\nl(9)=(0,4)\n", "{out:?}");
        assert_eq!(
            cli("extend --codomain vec:0 --epsilon 2 --y0 3/2 --family dyadic-log --eval 2").code,
            2
        );
        assert_eq!(
            cli("extend --codomain Z --epsilon 1 --y0 1/2 --family linear:2 --eval 1").code,
            2
        );
    }
}
