//! Piecewise monotone functions on `[0,1]` with rational pieces.
//!
//! A function is a sorted list of [`Segment`]s whose domains partition
//! `[0,1]`. Isolated point values are segments with a one-point domain and a
//! constant shape; they are rendered as `point` directives.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{in_unit, midpoint, one, parse_rational, zero, Bound, Interval, IntervalSet, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::NonDecreasing => "nondecreasing",
            Direction::NonIncreasing => "nonincreasing",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// How a quantity tends to its limit as the argument approaches a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Approach {
    /// Eventually equal to the limit.
    Constant,
    FromBelow,
    FromAbove,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Linear { slope: Rational, intercept: Rational },
    Const(Rational),
}

impl Shape {
    pub fn at(&self, x: &Rational) -> Rational {
        match self {
            Shape::Linear { slope, intercept } => slope * x + intercept,
            Shape::Const(c) => c.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub domain: Interval,
    pub shape: Shape,
}

impl Segment {
    pub fn linear(domain: Interval, slope: Rational, intercept: Rational) -> Self {
        Segment { domain, shape: Shape::Linear { slope, intercept } }
    }

    pub fn constant(domain: Interval, value: Rational) -> Self {
        Segment { domain, shape: Shape::Const(value) }
    }

    /// Formula value at the left end (a limit when that end is open).
    pub fn lo_value(&self) -> Rational {
        self.shape.at(&self.domain.lo().value)
    }

    pub fn hi_value(&self) -> Rational {
        self.shape.at(&self.domain.hi().value)
    }

    pub fn is_point(&self) -> bool {
        self.domain.is_point()
    }

    pub fn image(&self) -> IntervalSet {
        match &self.shape {
            Shape::Const(c) => IntervalSet::point(c.clone()),
            Shape::Linear { slope, .. } => {
                let a = Bound { value: self.lo_value(), closed: self.domain.lo().closed };
                let b = Bound { value: self.hi_value(), closed: self.domain.hi().closed };
                let i = if slope.is_positive() { Interval::new(a, b) } else { Interval::new(b, a) };
                i.map(IntervalSet::from_interval).unwrap_or_default()
            }
        }
    }

    /// An argument in this piece mapped to `v`, if any.
    fn preimage(&self, v: &Rational) -> Option<Rational> {
        if !self.image().contains(v) {
            return None;
        }
        match &self.shape {
            Shape::Const(_) => Some(self.domain.representative()),
            Shape::Linear { slope, intercept } => Some((v - intercept) / slope),
        }
    }
}

/// A monotone map `[0,1] → [0,1]` with finitely many rational pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseMonotoneFn {
    direction: Direction,
    pieces: Vec<Segment>,
}

impl PiecewiseMonotoneFn {
    /// Validates coverage, value bounds and monotonicity.
    pub fn new(direction: Direction, segments: Vec<Segment>, points: Vec<(Rational, Rational)>) -> Result<Self> {
        let bad = |m: String| Error::InvalidFunction(m);
        let mut pieces: Vec<Segment> = segments
            .into_iter()
            .map(|s| {
                if s.is_point() {
                    let v = s.lo_value();
                    Segment::constant(s.domain, v)
                } else {
                    s
                }
            })
            .chain(points.into_iter().map(|(x, v)| Segment::constant(Interval::point(x), v)))
            .collect();
        if pieces.is_empty() {
            return Err(bad("no pieces".into()));
        }
        pieces.sort_by(|a, b| {
            let (la, lb) = (a.domain.lo(), b.domain.lo());
            la.value.cmp(&lb.value).then_with(|| lb.closed.cmp(&la.closed))
        });

        let first = pieces[0].domain.lo();
        if !(first.value.is_zero() && first.closed) {
            return Err(bad("domain must start with a closed end at 0".into()));
        }
        let last = pieces[pieces.len() - 1].domain.hi();
        if !(last.value == one() && last.closed) {
            return Err(bad("domain must end with a closed end at 1".into()));
        }
        for w in pieces.windows(2) {
            let (a, b) = (w[0].domain.hi(), w[1].domain.lo());
            if a.value != b.value || a.closed == b.closed {
                return Err(bad(format!(
                    "pieces {} and {} do not meet exactly once",
                    w[0].domain, w[1].domain
                )));
            }
        }
        for p in &pieces {
            if let Shape::Linear { slope, .. } = &p.shape {
                let ok = match direction {
                    Direction::NonDecreasing => slope.is_positive(),
                    Direction::NonIncreasing => slope.is_negative(),
                };
                if slope.is_zero() {
                    return Err(bad(format!("zero slope on {}; use a constant segment", p.domain)));
                }
                if !ok {
                    return Err(bad(format!("slope on {} contradicts {direction}", p.domain)));
                }
            }
            for v in [p.lo_value(), p.hi_value()] {
                if !in_unit(&v) {
                    return Err(bad(format!("value {v} on {} leaves [0,1]", p.domain)));
                }
            }
        }
        for w in pieces.windows(2) {
            let (a, b) = (w[0].hi_value(), w[1].lo_value());
            let ok = match direction {
                Direction::NonDecreasing => a <= b,
                Direction::NonIncreasing => a >= b,
            };
            if !ok {
                return Err(bad(format!(
                    "values {a} on {} and {b} on {} break monotonicity",
                    w[0].domain, w[1].domain
                )));
            }
        }
        Ok(PiecewiseMonotoneFn { direction, pieces })
    }

    pub fn identity() -> Self {
        Self::scaled(one()).unwrap()
    }

    /// `x ↦ λx` on `[0,1]`.
    pub fn scaled(lambda: Rational) -> Result<Self> {
        Self::new(
            Direction::NonDecreasing,
            vec![Segment::linear(Interval::unit(), lambda, zero())],
            vec![],
        )
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn pieces(&self) -> &[Segment] {
        &self.pieces
    }

    pub fn segments(&self) -> impl Iterator<Item = &Segment> {
        self.pieces.iter().filter(|p| !p.is_point())
    }

    /// Isolated point values `(x, f(x))`.
    pub fn points(&self) -> impl Iterator<Item = (&Rational, Rational)> {
        self.pieces.iter().filter(|p| p.is_point()).map(|p| (&p.domain.lo().value, p.lo_value()))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        self.pieces
            .iter()
            .find(|p| p.domain.contains(x))
            .map(|p| p.shape.at(x))
            .ok_or_else(|| Error::Domain(x.clone()))
    }

    /// `f(x)` for `x` known to lie in `[0,1]`.
    pub(crate) fn at(&self, x: &Rational) -> Rational {
        self.eval(x).expect("argument inside [0,1]")
    }

    /// One-sided limit, with `f(0⁻)` and `f(1⁺)` fixed by convention
    /// (0 and 1 for non-decreasing f, 1 and 0 for non-increasing f).
    pub fn side_limit(&self, a: &Rational, side: Side) -> Rational {
        let nd = self.direction == Direction::NonDecreasing;
        match side {
            Side::Left if a <= &zero() => return if nd { zero() } else { one() },
            Side::Right if a >= &one() => return if nd { one() } else { zero() },
            _ => {}
        }
        let piece = self.pieces.iter().find(|p| {
            let (lo, hi) = (&p.domain.lo().value, &p.domain.hi().value);
            match side {
                Side::Left => lo < a && a <= hi,
                Side::Right => lo <= a && a < hi,
            }
        });
        piece.expect("pieces cover [0,1]").shape.at(a)
    }

    /// The one-sided limit at `a` together with the direction the values
    /// take towards it. `None` when that side lies outside `[0,1]`.
    pub fn approach(&self, a: &Rational, side: Side) -> Option<(Rational, Approach)> {
        if (side == Side::Left && a <= &zero()) || (side == Side::Right && a >= &one()) {
            return None;
        }
        let piece = self.pieces.iter().find(|p| {
            let (lo, hi) = (&p.domain.lo().value, &p.domain.hi().value);
            lo != hi
                && match side {
                    Side::Left => lo < a && a <= hi,
                    Side::Right => lo <= a && a < hi,
                }
        })?;
        let how = match (&piece.shape, side) {
            (Shape::Const(_), _) => Approach::Constant,
            (Shape::Linear { slope, .. }, Side::Left) if slope.is_positive() => Approach::FromBelow,
            (Shape::Linear { .. }, Side::Left) => Approach::FromAbove,
            (Shape::Linear { slope, .. }, Side::Right) if slope.is_positive() => Approach::FromAbove,
            (Shape::Linear { .. }, Side::Right) => Approach::FromBelow,
        };
        Some((piece.shape.at(a), how))
    }

    /// All piece endpoints, ascending.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self
            .pieces
            .iter()
            .flat_map(|p| [p.domain.lo().value.clone(), p.domain.hi().value.clone()])
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn range(&self) -> IntervalSet {
        self.pieces.iter().fold(IntervalSet::empty(), |acc, p| acc.union(&p.image()))
    }

    /// Values attained at two or more arguments.
    pub fn plateau_set(&self) -> IntervalSet {
        let images: Vec<IntervalSet> = self.pieces.iter().map(Segment::image).collect();
        let mut q = IntervalSet::empty();
        for (i, p) in self.pieces.iter().enumerate() {
            if let (Shape::Const(c), false) = (&p.shape, p.is_point()) {
                q = q.union(&IntervalSet::point(c.clone()));
            }
            for img in &images[i + 1..] {
                q = q.union(&images[i].intersect(img));
            }
        }
        q
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.direction == Direction::NonDecreasing && self.is_strictly_monotone()
    }

    /// No value is taken twice, in either direction.
    pub fn is_strictly_monotone(&self) -> bool {
        self.plateau_set().is_empty()
    }

    /// Continuity on `[0,1]`, one-sided at the ends.
    pub fn is_continuous(&self) -> bool {
        self.breakpoints().into_iter().all(|a| {
            let v = self.at(&a);
            (a.is_zero() || self.side_limit(&a, Side::Left) == v) && (a >= one() || self.side_limit(&a, Side::Right) == v)
        })
    }

    pub fn is_right_continuous(&self) -> bool {
        self.breakpoints()
            .into_iter()
            .filter(|a| a < &one())
            .all(|a| self.side_limit(&a, Side::Right) == self.at(&a))
    }

    /// Some `x` with `f(x) = v`.
    pub fn preimage(&self, v: &Rational) -> Option<Rational> {
        self.pieces.iter().find_map(|p| p.preimage(v))
    }

    /// Two distinct arguments sharing the value `q`, smallest and largest found.
    pub fn plateau_preimages(&self, q: &Rational) -> Option<(Rational, Rational)> {
        let mut xs = Vec::new();
        for p in &self.pieces {
            if !p.image().contains(q) {
                continue;
            }
            match &p.shape {
                Shape::Const(_) if !p.is_point() => {
                    let (lo, hi) = (p.domain.lo(), p.domain.hi());
                    let a = if lo.closed { lo.value.clone() } else { p.domain.midpoint() };
                    let b = if hi.closed { hi.value.clone() } else { midpoint(&a, &hi.value) };
                    xs.push(a);
                    xs.push(b);
                }
                _ => xs.extend(p.preimage(q)),
            }
        }
        xs.sort();
        xs.dedup();
        match xs.len() {
            0 | 1 => None,
            n => Some((xs[0].clone(), xs[n - 1].clone())),
        }
    }

    /// Direct evaluation of the pseudo-inverse at `y`:
    /// `sup{x : f(x) < y}` for non-decreasing f, `sup{x : f(x) > y}` for
    /// non-increasing f, with `sup ∅ = 0`.
    pub fn pseudo_inverse_at(&self, y: &Rational) -> Rational {
        let below = |c: &Rational| match self.direction {
            Direction::NonDecreasing => c < y,
            Direction::NonIncreasing => c > y,
        };
        let mut best = zero();
        for p in &self.pieces {
            let (lo, hi) = (&p.domain.lo().value, &p.domain.hi().value);
            let s = match &p.shape {
                Shape::Const(c) => below(c).then(|| hi.clone()),
                // both directions reduce to x < (y - b) / m
                Shape::Linear { slope, intercept } => {
                    let cut = (y - intercept) / slope;
                    (lo < &cut).then(|| if &cut < hi { cut } else { hi.clone() })
                }
            };
            if let Some(s) = s {
                if s > best {
                    best = s;
                }
            }
        }
        best
    }

    /// Closed-form pseudo-inverse as another piecewise function on `[0,1]`.
    pub fn pseudo_inverse(&self) -> PiecewiseMonotoneFn {
        let mut ys: Vec<Rational> = vec![zero(), one()];
        for p in &self.pieces {
            ys.push(p.lo_value());
            ys.push(p.hi_value());
        }
        ys.retain(in_unit);
        ys.sort();
        ys.dedup();

        let mut pieces = Vec::new();
        for (i, y) in ys.iter().enumerate() {
            pieces.push(Segment::constant(Interval::point(y.clone()), self.pseudo_inverse_at(y)));
            let Some(next) = ys.get(i + 1) else { break };
            let mid = midpoint(y, next);
            let domain = Interval::open(y.clone(), next.clone()).unwrap();
            let through = self.pieces.iter().find_map(|p| match &p.shape {
                Shape::Linear { slope, intercept } => {
                    let (a, b) = (p.lo_value(), p.hi_value());
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    (lo < mid && mid < hi).then(|| (slope.clone(), intercept.clone()))
                }
                Shape::Const(_) => None,
            });
            pieces.push(match through {
                Some((m, b)) => Segment::linear(domain, m.recip(), -b / m),
                None => Segment::constant(domain, self.pseudo_inverse_at(&mid)),
            });
        }
        let pieces = merge_pieces(pieces);
        PiecewiseMonotoneFn::new(self.direction, pieces, vec![])
            .expect("pseudo-inverse of a valid function is valid")
    }

    /// Range decomposition into gaps and kept boundary points.
    pub fn decompose(&self) -> Decomposition {
        let m = self.range();
        let q = self.plateau_set();
        let f0plus = self.side_limit(&zero(), Side::Right);
        let f1minus = self.side_limit(&one(), Side::Left);
        let (gaps, c) = if m == IntervalSet::unit() {
            (vec![Gap { lo: one(), hi: one(), c: one() }], IntervalSet::point(one()))
        } else {
            let mut gaps = Vec::new();
            let mut c = IntervalSet::empty();
            for part in m.complement_in(&Interval::unit()).parts() {
                let (b, d) = (part.lo().value.clone(), part.hi().value.clone());
                if b == d {
                    continue;
                }
                let kept = m.intersect(&IntervalSet::closed(b.clone(), d.clone()));
                let rep = self.at(&self.pseudo_inverse_at(&midpoint(&b, &d)));
                c = c.union(&kept);
                gaps.push(Gap { lo: b, hi: d, c: rep });
            }
            (gaps, c)
        };
        let upsilon = q.max().cloned().unwrap_or_else(zero);
        let tau = if q.is_empty() { zero() } else { self.first_above(&upsilon) };
        let k1 = match q.max() {
            Some(mq) => (0..gaps.len()).filter(|&k| &gaps[k].lo >= mq).collect(),
            None => (0..gaps.len()).collect(),
        };
        Decomposition { m, gaps, c, q, f0plus, f1minus, tau, upsilon, k1 }
    }

    /// `inf{x : f(x) > v}`, or 1 when f never exceeds v.
    fn first_above(&self, v: &Rational) -> Rational {
        for p in &self.pieces {
            match &p.shape {
                Shape::Const(c) if c > v => return p.domain.lo().value.clone(),
                Shape::Linear { slope, intercept } if slope.is_positive() && &p.hi_value() > v => {
                    let cut = (v - intercept) / slope;
                    let lo = p.domain.lo().value.clone();
                    return if cut > lo { cut } else { lo };
                }
                _ => {}
            }
        }
        one()
    }
}

/// Joins neighbouring pieces that one formula describes.
fn merge_pieces(pieces: Vec<Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::with_capacity(pieces.len());
    for p in pieces {
        if let Some(last) = out.last_mut() {
            if let Some(joined) = join(last, &p) {
                *last = joined;
                continue;
            }
        }
        out.push(p);
    }
    out
}

fn join(a: &Segment, b: &Segment) -> Option<Segment> {
    let shape = match (a.is_point(), b.is_point()) {
        (true, true) => return None,
        (true, false) => (b.shape.at(&a.domain.lo().value) == a.lo_value()).then(|| b.shape.clone())?,
        (false, true) => (a.shape.at(&b.domain.lo().value) == b.lo_value()).then(|| a.shape.clone())?,
        (false, false) => (a.shape == b.shape).then(|| a.shape.clone())?,
    };
    let domain = Interval::new(a.domain.lo().clone(), b.domain.hi().clone())?;
    Some(Segment { domain, shape })
}

/// One closed gap `[b_k, d_k]` of the range and its kept value `c_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gap {
    pub lo: Rational,
    pub hi: Rational,
    pub c: Rational,
}

impl Gap {
    pub fn interval(&self) -> IntervalSet {
        IntervalSet::closed(self.lo.clone(), self.hi.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Range of f.
    pub m: IntervalSet,
    pub gaps: Vec<Gap>,
    /// Range points lying in some gap.
    pub c: IntervalSet,
    /// Plateau values.
    pub q: IntervalSet,
    pub f0plus: Rational,
    pub f1minus: Rational,
    pub tau: Rational,
    pub upsilon: Rational,
    /// Indices into `gaps` with `b_k ≥ max Q` (all of them when `Q = ∅`).
    pub k1: Vec<usize>,
}

impl Decomposition {
    pub fn m_minus_c(&self) -> IntervalSet {
        self.m.difference(&self.c)
    }

    /// `[0, f(0⁺)]`.
    pub fn low_band(&self) -> IntervalSet {
        IntervalSet::closed(zero(), self.f0plus.clone())
    }

    pub fn gaps_union(&self) -> IntervalSet {
        self.gaps.iter().fold(IntervalSet::empty(), |acc, g| acc.union(&g.interval()))
    }
}

fn render_points(set: &IntervalSet) -> String {
    if set.is_empty() {
        return "∅".into();
    }
    let pts: Vec<String> = set.endpoints().iter().map(ToString::to_string).collect();
    if set.parts().iter().all(Interval::is_point) {
        format!("{{{}}}", pts.join(","))
    } else {
        set.to_string()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.gaps.iter().map(|g| format!("[{},{}]", g.lo, g.hi)).collect();
        let cs: Vec<String> = self.gaps.iter().map(|g| g.c.to_string()).collect();
        let k1: Vec<String> = self.k1.iter().map(|k| (k + 1).to_string()).collect();
        write!(
            f,
            "M={} S={{{}}} C={} Q={} K1={} c=({}) tau={} upsilon={} f(0+)={} f(1-)={}",
            self.m,
            s.join(","),
            render_points(&self.c),
            render_points(&self.q),
            if k1.is_empty() { "∅".to_string() } else { format!("{{{}}}", k1.join(",")) },
            cs.join(","),
            self.tau,
            self.upsilon,
            self.f0plus,
            self.f1minus,
        )
    }
}

impl fmt::Display for PiecewiseMonotoneFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "monotone: {}", self.direction)?;
        for p in &self.pieces {
            match (&p.shape, p.is_point()) {
                (_, true) => writeln!(f, "point {} = {}", p.domain.lo().value, p.lo_value())?,
                (Shape::Const(c), false) => writeln!(f, "segment {} const {c}", p.domain)?,
                (Shape::Linear { slope, intercept }, false) => {
                    writeln!(f, "segment {} linear {slope} {intercept}", p.domain)?
                }
            }
        }
        Ok(())
    }
}

impl FromStr for PiecewiseMonotoneFn {
    type Err = Error;

    /// Parses the line-oriented function description format.
    fn from_str(s: &str) -> Result<Self> {
        let mut direction = None;
        let mut segments = Vec::new();
        let mut points = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let perr = |message: String| Error::Parse { line: line_no, message };
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let num = |t: &str| parse_rational(t).map_err(|e| perr(e.to_string()));
            if let Some(rest) = line.strip_prefix("monotone:") {
                if direction.is_some() {
                    return Err(perr("duplicate monotone directive".into()));
                }
                direction = Some(match rest.trim() {
                    "nondecreasing" => Direction::NonDecreasing,
                    "nonincreasing" => Direction::NonIncreasing,
                    other => return Err(perr(format!("unknown direction {other:?}"))),
                });
            } else if let Some(rest) = line.strip_prefix("segment") {
                let rest = rest.trim_start();
                let end = rest
                    .find([']', ')', '}'])
                    .ok_or_else(|| perr("unterminated interval".into()))?;
                let domain: Interval = rest[..=end].parse().map_err(|e: Error| perr(e.to_string()))?;
                let words: Vec<&str> = rest[end + 1..].split_whitespace().collect();
                let seg = match words.as_slice() {
                    ["linear", m, b] => Segment::linear(domain, num(m)?, num(b)?),
                    ["const", v] => Segment::constant(domain, num(v)?),
                    _ => return Err(perr(format!("expected `linear <slope> <intercept>` or `const <value>`, got {:?}", words.join(" ")))),
                };
                segments.push(seg);
            } else if let Some(rest) = line.strip_prefix("point") {
                let (x, v) = rest.split_once('=').ok_or_else(|| perr("expected `point <x> = <value>`".into()))?;
                points.push((num(x)?, num(v)?));
            } else {
                return Err(perr(format!("unknown directive {line:?}")));
            }
        }
        let direction = direction.ok_or(Error::Parse { line: 0, message: "missing monotone directive".into() })?;
        PiecewiseMonotoneFn::new(direction, segments, points)
    }
}

impl PartialOrd for Gap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.lo.cmp(&other.lo).then_with(|| self.hi.cmp(&other.hi)))
    }
}
