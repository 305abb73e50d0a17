//! Triangular norm families, their capability flags, exact images of
//! interval sets, and generator-defined operations.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monotone::Approach;
use crate::numeric::{half, in_unit, one, parse_rational, to_f64, zero, Bound, Interval, IntervalSet, Rational};
use crate::value::{BinaryOp, Value};

/// Registered additive generators `g : [0,1] → [0,∞]` with `g(0) = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `g(x) = -ln x`
    NegLog,
    /// `g(x) = 1 - ln x`
    OneMinusLog,
}

impl Generator {
    pub const ALL: [Generator; 2] = [Generator::NegLog, Generator::OneMinusLog];

    pub fn name(self) -> &'static str {
        match self {
            Generator::NegLog => "neglog",
            Generator::OneMinusLog => "one-minus-log",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Generator::NegLog => "-ln x",
            Generator::OneMinusLog => "1 - ln x",
        }
    }

    /// The generator formula, extended analytically past 1.
    pub fn g(self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::INFINITY;
        }
        match self {
            Generator::NegLog => -x.ln(),
            Generator::OneMinusLog => 1.0 - x.ln(),
        }
    }

    /// Analytic inverse of [`Generator::g`].
    pub fn g_inv(self, u: f64) -> f64 {
        if u == f64::INFINITY {
            return 0.0;
        }
        match self {
            Generator::NegLog => (-u).exp(),
            Generator::OneMinusLog => (1.0 - u).exp(),
        }
    }

    /// Pseudo-inverse on `[0,∞]`: `sup{x ∈ [0,1] : g(x) > u}`.
    pub fn pseudo_inverse(self, u: f64) -> f64 {
        self.g_inv(u).min(1.0)
    }

    pub fn at_one(self) -> f64 {
        self.g(1.0)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Syntax { what: "generator", input: s.to_string() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub generator: Generator,
    /// Decimal digits the evaluation promises (used for rendering).
    pub digits: usize,
}

impl GeneratorSpec {
    pub const DEFAULT_DIGITS: usize = 15;

    pub fn new(generator: Generator) -> Self {
        GeneratorSpec { generator, digits: Self::DEFAULT_DIGITS }
    }

    /// `g⁽⁻¹⁾(g(x) + g(y))` with a rounding-error radius.
    pub fn combine(&self, x: &Rational, y: &Rational) -> Value {
        if x.is_zero() || y.is_zero() {
            return Value::Exact(zero());
        }
        let g = self.generator;
        let u = g.g(to_f64(x)) + g.g(to_f64(y));
        let mid = g.pseudo_inverse(u);
        Value::approx(mid, rounding_radius(mid, u))
    }
}

/// Error bound for `exp`-type evaluation after summing two logarithms.
fn rounding_radius(mid: f64, u: f64) -> f64 {
    mid.abs() * 8.0 * f64::EPSILON * (u.abs() + 2.0) + f64::MIN_POSITIVE
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Product,
    Minimum,
    /// `xy / (2 - (x + y - xy))`
    Hamacher,
    /// `xy/2` on `[0,1/2]²`, `xy` elsewhere.
    HalfProduct,
    Additive(GeneratorSpec),
    /// `t(x) = g(x/λ)` for `x < 1`, `t(1) = 0`, combined additively on
    /// `[0,1)²` and by `min` elsewhere.
    Lambda(GeneratorSpec, Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Flags {
    pub strictly_monotone: bool,
    pub continuous: bool,
    pub exact: bool,
    pub associative: bool,
    pub neutral_one: bool,
}

impl Flags {
    pub fn strict(&self) -> bool {
        self.strictly_monotone && self.continuous
    }

    pub fn is_tnorm(&self) -> bool {
        self.associative && self.neutral_one
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TNormDescriptor {
    pub family: Family,
    pub flags: Flags,
}

impl TNormDescriptor {
    pub fn new(family: Family) -> Result<Self> {
        let flags = |strictly_monotone, continuous, exact, associative, neutral_one| Flags {
            strictly_monotone,
            continuous,
            exact,
            associative,
            neutral_one,
        };
        let flags = match &family {
            Family::Product | Family::Hamacher => flags(true, true, true, true, true),
            Family::Minimum => flags(false, true, true, true, true),
            // T(T(3/5,3/5),1/2) = 9/100 but T(3/5,T(3/5,1/2)) = 9/50
            Family::HalfProduct => flags(true, false, true, false, true),
            Family::Additive(g) => flags(true, true, false, true, g.generator.at_one() == 0.0),
            Family::Lambda(_, lambda) => {
                if !(lambda > &zero() && lambda < &one()) {
                    return Err(Error::Parameter(format!("lambda must lie in (0,1), got {lambda}")));
                }
                flags(true, false, false, true, true)
            }
        };
        Ok(TNormDescriptor { family, flags })
    }

    pub fn product() -> Self {
        Self::new(Family::Product).unwrap()
    }

    pub fn minimum() -> Self {
        Self::new(Family::Minimum).unwrap()
    }

    pub fn hamacher() -> Self {
        Self::new(Family::Hamacher).unwrap()
    }

    pub fn half_product() -> Self {
        Self::new(Family::HalfProduct).unwrap()
    }

    /// Registered named families, generator variants included.
    pub fn registry() -> Vec<Self> {
        let mut v = vec![Self::product(), Self::minimum(), Self::hamacher(), Self::half_product()];
        v.extend(Generator::ALL.into_iter().map(generator_tnorm));
        v
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Result<Value> {
        for a in [x, y] {
            if !in_unit(a) {
                return Err(Error::Domain(a.clone()));
            }
        }
        Ok(self.apply_unchecked(x, y))
    }

    fn apply_unchecked(&self, x: &Rational, y: &Rational) -> Value {
        if let Some(v) = self.eval_exact(x, y) {
            return Value::Exact(v);
        }
        match &self.family {
            Family::Additive(g) => g.combine(x, y),
            Family::Lambda(g, lambda) => lambda_combine(g, lambda, x, y),
            _ => unreachable!("exact families handled above"),
        }
    }

    /// Exact value for exact families.
    pub fn eval_exact(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        Some(match &self.family {
            Family::Product => x * y,
            Family::Minimum => x.min(y).clone(),
            Family::Hamacher => hamacher(x, y),
            Family::HalfProduct => {
                let h = half();
                if x <= &h && y <= &h {
                    x * y / Rational::from_integer(2.into())
                } else {
                    x * y
                }
            }
            _ => return None,
        })
    }

    /// Evaluation on possibly inexact arguments; the result radius absorbs
    /// the argument radii (every family here is 1-Lipschitz on the region
    /// where it is used).
    pub fn eval_value(&self, x: &Value, y: &Value) -> Value {
        match (x, y) {
            (Value::Exact(a), Value::Exact(b)) => self.apply_unchecked(a, b),
            _ => {
                let clamp = |v: f64| v.clamp(0.0, 1.0);
                let (a, b) = (clamp(x.to_f64()), clamp(y.to_f64()));
                let (ra, rb) = (crate::numeric::from_f64(a).unwrap(), crate::numeric::from_f64(b).unwrap());
                let v = self.apply_unchecked(&ra, &rb);
                Value::approx(v.to_f64(), v.radius() + x.radius() + y.radius() + f64::EPSILON)
            }
        }
    }

    /// `x` combined with itself `n` times, left-associated.
    pub fn power(&self, x: &Rational, n: u32) -> Result<Value> {
        let first = Value::Exact(x.clone());
        let mut acc = first.clone();
        if !in_unit(x) {
            return Err(Error::Domain(x.clone()));
        }
        for _ in 1..n.max(1) {
            acc = self.eval_value(&acc, &first);
        }
        Ok(acc)
    }

    /// Exact image `T(A, B)` for exact families.
    pub fn image(&self, a: &IntervalSet, b: &IntervalSet) -> Option<IntervalSet> {
        if !self.flags.exact {
            return None;
        }
        let mut out = IntervalSet::empty();
        for pa in a.parts() {
            for pb in b.parts() {
                for (ba, bb, scale) in self.blocks(pa, pb) {
                    let piece = match self.family {
                        Family::Minimum => min_image(&ba, &bb),
                        _ => monotone_image(&ba, &bb, |x, y| self.block_formula(x, y, &scale)),
                    };
                    if let Some(i) = piece {
                        out = out.union(&IntervalSet::from_interval(i));
                    }
                }
            }
        }
        Some(out)
    }

    fn block_formula(&self, x: &Rational, y: &Rational, scale: &Rational) -> Rational {
        match self.family {
            Family::Hamacher => hamacher(x, y),
            _ => x * y * scale,
        }
    }

    /// Splits a pair of parts into regions where one formula applies.
    fn blocks(&self, a: &Interval, b: &Interval) -> Vec<(Interval, Interval, Rational)> {
        if self.family != Family::HalfProduct {
            return vec![(a.clone(), b.clone(), one())];
        }
        let low = Interval::closed(zero(), half()).unwrap();
        let high = Interval::new(Bound::open(half()), Bound::closed(one())).unwrap();
        let mut out = Vec::new();
        for (ra, la) in [(&low, true), (&high, false)] {
            for (rb, lb) in [(&low, true), (&high, false)] {
                if let (Some(x), Some(y)) = (a.intersect(ra), b.intersect(rb)) {
                    let scale = if la && lb { half() } else { one() };
                    out.push((x, y, scale));
                }
            }
        }
        out
    }

    /// Limit of `T(u', v)` as `u'` tends to `u` in the given manner, with the
    /// manner in which the values approach it. Exact families only.
    pub fn approach(&self, u: &Rational, how: Approach, v: &Rational) -> Option<(Rational, Approach)> {
        if !self.flags.exact {
            return None;
        }
        let h = half();
        let same = |w: Rational| Some((w, how));
        match how {
            Approach::Constant => Some((self.eval_exact(u, v)?, Approach::Constant)),
            _ if v.is_zero() => Some((zero(), Approach::Constant)),
            _ => match self.family {
                Family::Product | Family::Hamacher => same(self.eval_exact(u, v)?),
                Family::Minimum => {
                    let saturated = match how {
                        Approach::FromBelow => u > v,
                        _ => u >= v,
                    };
                    if saturated {
                        Some((v.clone(), Approach::Constant))
                    } else {
                        same(u.clone())
                    }
                }
                Family::HalfProduct => {
                    let low_block = v <= &h
                        && match how {
                            Approach::FromBelow => u <= &h,
                            _ => u < &h,
                        };
                    same(if low_block { u * v * &h } else { u * v })
                }
                _ => None,
            },
        }
    }

    /// Some `x ∈ [0,1]` with `T(x, y) = w`, exact families only.
    pub fn solve_left(&self, w: &Rational, y: &Rational) -> Option<Rational> {
        let candidates: Vec<Rational> = match self.family {
            Family::Product if !y.is_zero() => vec![w / y],
            Family::Minimum => vec![w.clone(), y.clone()],
            Family::Hamacher => {
                let d = y + w - w * y;
                if d.is_zero() {
                    vec![]
                } else {
                    vec![w * (Rational::from_integer(2.into()) - y) / d]
                }
            }
            Family::HalfProduct if !y.is_zero() => {
                vec![Rational::from_integer(2.into()) * w / y, w / y]
            }
            _ => vec![],
        };
        candidates
            .into_iter()
            .find(|x| in_unit(x) && self.eval_exact(x, y).as_ref() == Some(w))
    }
}

fn hamacher(x: &Rational, y: &Rational) -> Rational {
    let p = x * y;
    let d = Rational::from_integer(2.into()) - (x + y - &p);
    p / d
}

fn lambda_combine(g: &GeneratorSpec, lambda: &Rational, x: &Rational, y: &Rational) -> Value {
    if x.is_one() || y.is_one() {
        return Value::Exact(x.min(y).clone());
    }
    if x.is_zero() || y.is_zero() {
        return Value::Exact(zero());
    }
    let l = to_f64(lambda);
    let gen = g.generator;
    let u = gen.g(to_f64(x) / l) + gen.g(to_f64(y) / l);
    let mid = (l * gen.g_inv(u)).min(1.0);
    Value::approx(mid, rounding_radius(mid, u))
}

/// Image of `A × B` under a map increasing in each argument (strictly when
/// the other argument is positive) that vanishes when either argument is 0.
fn monotone_image(a: &Interval, b: &Interval, phi: impl Fn(&Rational, &Rational) -> Rational) -> Option<Interval> {
    let is_zero_point = |i: &Interval| i.is_point() && i.lo().value.is_zero();
    if is_zero_point(a) || is_zero_point(b) {
        return Some(Interval::point(zero()));
    }
    let closed_zero = |bd: &Bound| bd.closed && bd.value.is_zero();
    let (al, bl, ah, bh) = (a.lo(), b.lo(), a.hi(), b.hi());
    let lo = Bound {
        value: phi(&al.value, &bl.value),
        closed: (al.closed && bl.closed) || closed_zero(al) || closed_zero(bl),
    };
    let hi = Bound { value: phi(&ah.value, &bh.value), closed: ah.closed && bh.closed };
    Interval::new(lo, hi)
}

fn min_image(a: &Interval, b: &Interval) -> Option<Interval> {
    let pick = |x: &Bound, y: &Bound| match x.value.cmp(&y.value) {
        std::cmp::Ordering::Less => x.clone(),
        std::cmp::Ordering::Greater => y.clone(),
        std::cmp::Ordering::Equal => Bound { value: x.value.clone(), closed: false },
    };
    let mut lo = pick(a.lo(), b.lo());
    if a.lo().value == b.lo().value {
        lo.closed = a.lo().closed || b.lo().closed;
    }
    let mut hi = pick(a.hi(), b.hi());
    if a.hi().value == b.hi().value {
        hi.closed = a.hi().closed && b.hi().closed;
    }
    Interval::new(lo, hi)
}

/// The strict operation `g⁽⁻¹⁾(g(x) + g(y))` of a registered generator.
pub fn generator_tnorm(generator: Generator) -> TNormDescriptor {
    TNormDescriptor::new(Family::Additive(GeneratorSpec::new(generator))).unwrap()
}

impl BinaryOp for TNormDescriptor {
    fn apply(&self, x: &Rational, y: &Rational) -> Value {
        self.apply_unchecked(x, y)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TNormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Product => f.write_str("product"),
            Family::Minimum => f.write_str("min"),
            Family::Hamacher => f.write_str("hamacher2"),
            Family::HalfProduct => f.write_str("halfprod"),
            Family::Additive(g) => write!(f, "gen:{}", g.generator.name()),
            Family::Lambda(g, l) => write!(f, "lambda:{}:{l}", g.generator.name()),
        }
    }
}

impl FromStr for TNormDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = || Error::Syntax { what: "t-norm", input: s.to_string() };
        let family = match s.trim() {
            "product" => Family::Product,
            "min" => Family::Minimum,
            "hamacher2" => Family::Hamacher,
            "halfprod" => Family::HalfProduct,
            other => {
                if let Some(name) = other.strip_prefix("gen:") {
                    Family::Additive(GeneratorSpec::new(name.parse()?))
                } else if let Some(rest) = other.strip_prefix("lambda:") {
                    let (name, lambda) = rest.split_once(':').ok_or_else(syntax)?;
                    Family::Lambda(GeneratorSpec::new(name.parse()?), parse_rational(lambda)?)
                } else {
                    return Err(syntax());
                }
            }
        };
        TNormDescriptor::new(family)
    }
}
