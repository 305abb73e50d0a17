//! Exact scalars and sets of reals.
//!
//! Every membership question asked by the classifier is answered here, so
//! nothing in this module rounds. Intervals carry open/closed flags on both
//! ends and [`IntervalSet`] keeps its parts sorted, disjoint and maximally
//! merged, which makes structural equality coincide with set equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction in lowest terms.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

pub fn in_unit(x: &Rational) -> bool {
    !x.is_negative() && *x <= one()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact value of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Parses `p/q`, an integer, or a plain decimal such as `0.375`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Syntax { what: "rational", input: s.to_string() };
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let w: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| err())?
        };
        let f: BigInt = frac.parse().map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(w * &scale + f, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let p: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(p))
}

/// Decimal rendering rounded half away from zero to `digits` places.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x * Rational::from_integer(scale.clone());
    let neg = scaled.is_negative();
    let mag = scaled.abs();
    let (q, r) = mag.numer().div_rem(mag.denom());
    let rounded = if r * BigInt::from(2) >= *mag.denom() { q + 1 } else { q };
    let (ip, fp) = rounded.div_rem(&scale);
    let sign = if neg && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{ip}");
    }
    format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits)
}

/// One end of an interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bound {
    pub value: Rational,
    pub closed: bool,
}

impl Bound {
    pub fn closed(value: Rational) -> Self {
        Bound { value, closed: true }
    }

    pub fn open(value: Rational) -> Self {
        Bound { value, closed: false }
    }

    /// Orders lower bounds by how early the interval starts.
    fn cmp_as_lower(&self, other: &Bound) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| other.closed.cmp(&self.closed))
    }

    /// Orders upper bounds by how late the interval ends.
    fn cmp_as_upper(&self, other: &Bound) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| self.closed.cmp(&other.closed))
    }
}

/// A non-empty interval of the real line with rational ends.
///
/// Construction through [`Interval::new`] returns `None` for empty ranges,
/// including the degenerate open interval `(a,a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Option<Self> {
        match lo.value.cmp(&hi.value) {
            Ordering::Less => Some(Interval { lo, hi }),
            Ordering::Equal if lo.closed && hi.closed => Some(Interval { lo, hi }),
            _ => None,
        }
    }

    pub fn closed(a: Rational, b: Rational) -> Option<Self> {
        Self::new(Bound::closed(a), Bound::closed(b))
    }

    pub fn open(a: Rational, b: Rational) -> Option<Self> {
        Self::new(Bound::open(a), Bound::open(b))
    }

    pub fn point(a: Rational) -> Self {
        Interval { lo: Bound::closed(a.clone()), hi: Bound::closed(a) }
    }

    pub fn unit() -> Self {
        Interval { lo: Bound::closed(zero()), hi: Bound::closed(one()) }
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo.value == self.hi.value
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match x.cmp(&self.lo.value) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo.closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi.value) {
            Ordering::Less => true,
            Ordering::Equal => self.hi.closed,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = if self.lo.cmp_as_lower(&other.lo) == Ordering::Less {
            other.lo.clone()
        } else {
            self.lo.clone()
        };
        let hi = if self.hi.cmp_as_upper(&other.hi) == Ordering::Greater {
            other.hi.clone()
        } else {
            self.hi.clone()
        };
        Interval::new(lo, hi)
    }

    /// A deterministic member: the lower end when closed, else the midpoint.
    pub fn representative(&self) -> Rational {
        if self.lo.closed {
            self.lo.value.clone()
        } else if self.hi.closed && self.is_point() {
            self.hi.value.clone()
        } else {
            midpoint(&self.lo.value, &self.hi.value)
        }
    }

    pub fn midpoint(&self) -> Rational {
        midpoint(&self.lo.value, &self.hi.value)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo.value);
        }
        let l = if self.lo.closed { '[' } else { '(' };
        let r = if self.hi.closed { ']' } else { ')' };
        write!(f, "{l}{},{}{r}", self.lo.value, self.hi.value)
    }
}

/// Finite union of disjoint intervals in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn unit() -> Self {
        IntervalSet { parts: vec![Interval::unit()] }
    }

    pub fn point(x: Rational) -> Self {
        IntervalSet { parts: vec![Interval::point(x)] }
    }

    pub fn from_interval(i: Interval) -> Self {
        IntervalSet { parts: vec![i] }
    }

    pub fn from_points<I: IntoIterator<Item = Rational>>(points: I) -> Self {
        Self::new(points.into_iter().map(Interval::point).collect())
    }

    /// Closed interval `[a,b]`, empty when `a > b`.
    pub fn closed(a: Rational, b: Rational) -> Self {
        Interval::closed(a, b).map(Self::from_interval).unwrap_or_default()
    }

    pub fn new(parts: Vec<Interval>) -> Self {
        IntervalSet { parts: normalize(parts) }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_single_point(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].is_point()
    }

    /// True when the set has at least two distinct members.
    pub fn has_two_points(&self) -> bool {
        !self.is_empty() && !self.is_single_point()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        // parts are sorted; a linear scan is fine at the sizes used here
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn inf(&self) -> Option<&Rational> {
        self.parts.first().map(|p| &p.lo.value)
    }

    pub fn sup(&self) -> Option<&Rational> {
        self.parts.last().map(|p| &p.hi.value)
    }

    /// Greatest element, when attained.
    pub fn max(&self) -> Option<&Rational> {
        self.parts.last().filter(|p| p.hi.closed).map(|p| &p.hi.value)
    }

    pub fn min(&self) -> Option<&Rational> {
        self.parts.first().filter(|p| p.lo.closed).map(|p| &p.lo.value)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        IntervalSet::new(parts)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(i) = a.intersect(b) {
                    out.push(i);
                }
            }
        }
        IntervalSet::new(out)
    }

    pub fn intersect_interval(&self, other: &Interval) -> IntervalSet {
        IntervalSet::new(self.parts.iter().filter_map(|p| p.intersect(other)).collect())
    }

    /// Complement relative to `universe`.
    pub fn complement_in(&self, universe: &Interval) -> IntervalSet {
        let clipped = self.intersect_interval(universe);
        let mut out = Vec::new();
        let mut cursor = universe.lo.clone();
        for p in &clipped.parts {
            let end = Bound { value: p.lo.value.clone(), closed: !p.lo.closed };
            if let Some(i) = Interval::new(cursor.clone(), end) {
                out.push(i);
            }
            cursor = Bound { value: p.hi.value.clone(), closed: !p.hi.closed };
        }
        if let Some(i) = Interval::new(cursor, universe.hi.clone()) {
            out.push(i);
        }
        IntervalSet::new(out)
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        match self.closed_hull() {
            None => IntervalSet::empty(),
            Some(h) => self.intersect(&other.complement_in(&h)),
        }
    }

    pub fn remove_point(&self, x: &Rational) -> IntervalSet {
        self.difference(&IntervalSet::point(x.clone()))
    }

    fn closed_hull(&self) -> Option<Interval> {
        Interval::closed(self.inf()?.clone(), self.sup()?.clone())
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.subset_witness(other).is_none()
    }

    /// `None` when `self ⊆ other`; otherwise the least violating point that
    /// is an endpoint or midpoint of a violating sub-interval.
    pub fn subset_witness(&self, other: &IntervalSet) -> Option<Rational> {
        self.difference(other).parts.first().map(Interval::representative)
    }

    /// Union of the open intervals spanned by pairs of members, which is the
    /// open hull `(inf, sup)` once the set has two distinct points.
    pub fn o_hull(&self) -> IntervalSet {
        if !self.has_two_points() {
            return IntervalSet::empty();
        }
        let lo = self.inf().unwrap().clone();
        let hi = self.sup().unwrap().clone();
        Interval::open(lo, hi).map(IntervalSet::from_interval).unwrap_or_default()
    }

    /// All finite endpoints, ascending and deduplicated.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .parts
            .iter()
            .flat_map(|p| [p.lo.value.clone(), p.hi.value.clone()])
            .collect();
        v.dedup();
        v
    }
}

fn normalize(mut parts: Vec<Interval>) -> Vec<Interval> {
    parts.sort_by(|a, b| a.lo.cmp_as_lower(&b.lo).then_with(|| a.hi.cmp_as_upper(&b.hi)));
    let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
    for p in parts {
        if let Some(last) = out.last_mut() {
            let joins = match p.lo.value.cmp(&last.hi.value) {
                Ordering::Less => true,
                Ordering::Equal => p.lo.closed || last.hi.closed,
                Ordering::Greater => false,
            };
            if joins {
                if p.hi.cmp_as_upper(&last.hi) == Ordering::Greater {
                    last.hi = p.hi;
                }
                continue;
            }
        }
        out.push(p);
    }
    out
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "∪")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let set: IntervalSet = s.parse()?;
        match set.parts.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(Error::Syntax { what: "interval", input: s.to_string() }),
        }
    }
}

impl FromStr for IntervalSet {
    type Err = Error;

    /// Accepts the rendering produced by `Display`; parts may also be
    /// separated by commas, whitespace or `U`, and `{a,b}` lists points.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Syntax { what: "interval set", input: s.to_string() };
        let t = s.trim();
        if t == "∅" || t == "{}" {
            return Ok(IntervalSet::empty());
        }
        let mut parts = Vec::new();
        let mut rest = t;
        loop {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == '∪' || c == 'U');
            let Some(open) = rest.chars().next() else { break };
            let close_chars: &[char] = match open {
                '[' | '(' => &[']', ')'],
                '{' => &['}'],
                _ => return Err(err()),
            };
            let end = rest.find(close_chars).ok_or_else(err)?;
            let close = rest[end..].chars().next().unwrap();
            let body = &rest[1..end];
            if open == '{' {
                for p in body.split(',') {
                    parts.push(Interval::point(parse_rational(p)?));
                }
            } else {
                let (a, b) = body.split_once(',').ok_or_else(err)?;
                let lo = Bound { value: parse_rational(a)?, closed: open == '[' };
                let hi = Bound { value: parse_rational(b)?, closed: close == ']' };
                if lo.value > hi.value {
                    return Err(err());
                }
                if let Some(i) = Interval::new(lo, hi) {
                    parts.push(i);
                }
            }
            rest = &rest[end + close.len_utf8()..];
        }
        Ok(IntervalSet::new(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> IntervalSet {
        s.parse().unwrap()
    }

    #[test]
    fn union_merges_adjacent_half_open() {
        assert_eq!(set("[0,1/2)").union(&set("[1/2,1]")), set("[0,1]"));
        assert_eq!(IntervalSet::empty().union(&set("{3/4}")), set("{3/4}"));
    }

    #[test]
    fn union_keeps_excluded_shared_point() {
        let u = set("[0,1/2)").union(&set("(1/2,1]"));
        assert_eq!(u.parts().len(), 2);
        assert!(!u.contains(&half()));
    }

    #[test]
    fn union_of_separated_parts() {
        let u = set("[1/4,5/16]").union(&set("(7/16,1/2)"));
        assert_eq!(u.parts().len(), 2);
        assert!(!u.contains(&rat(3, 8)));
        assert!(u.contains(&rat(15, 32)));
    }

    #[test]
    fn intersections() {
        assert!(set("[0,1/2]").intersect(&set("(1/2,1]")).is_empty());
        assert_eq!(set("[1/8,3/16]").intersect(&set("[0,1/8)∪[3/16,1]")), set("{3/16}"));
        assert_eq!(set("[0,1]").intersect(&set("[0,1]")), set("[0,1]"));
    }

    #[test]
    fn subset_checks() {
        assert!(set("[1/4,1/2]").is_subset(&set("[0,1/2]")));
        assert!(set("(1/4,1]").is_subset(&set("[1/2,1]∪[0,1/2]")));
        assert_eq!(set("{1/8}").subset_witness(&set("[0,1/8)∪[3/16,1]")), Some(rat(1, 8)));
        // open violating part: midpoint is reported
        assert_eq!(set("[0,1]").subset_witness(&set("[0,1/2]")), Some(rat(3, 4)));
    }

    #[test]
    fn o_hull_cases() {
        assert!(IntervalSet::empty().o_hull().is_empty());
        assert!(set("{3/4}").o_hull().is_empty());
        assert_eq!(set("[1/4,5/16]∪{3/4}").o_hull(), set("(1/4,3/4)"));
    }

    #[test]
    fn complement_and_difference() {
        let m = set("[1/4,5/16]∪(7/16,1/2)∪{3/4}");
        let c = m.complement_in(&Interval::unit());
        assert_eq!(c, set("[0,1/4)∪(5/16,7/16]∪[1/2,3/4)∪(3/4,1]"));
        assert_eq!(set("[0,1]").difference(&set("(1/4,1/2)")), set("[0,1/4]∪[1/2,1]"));
    }

    #[test]
    fn degenerate_open_interval_is_empty() {
        assert!(Interval::open(half(), half()).is_none());
        assert!(set("(1/2,1/2)").is_empty());
    }

    #[test]
    fn rendering_round_trips() {
        for s in ["∅", "[0,1]", "[0,1/8)∪[3/16,1]", "(1/4,3/4)∪{1}", "{0}∪(1/3,1/2]"] {
            assert_eq!(set(s).to_string(), s);
        }
        assert_eq!(set("{1/4, 1/2}, [3/4,1]").to_string(), "{1/4}∪{1/2}∪[3/4,1]");
    }

    #[test]
    fn rational_parsing_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), half());
        assert_eq!(parse_rational("0.375").unwrap(), rat(3, 8));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(to_decimal(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&int(1), 2), "1.00");
    }
}
