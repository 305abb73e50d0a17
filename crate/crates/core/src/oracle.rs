//! Brute-force verification of algebraic laws on finite rational grids.
//!
//! Every check is exhaustive over the supplied points and reports the first
//! counterexample in lexicographic order of the input tuple. Exact values are
//! compared exactly; approximate values only produce a counterexample when
//! the violation is certain, and overlapping enclosures make the check
//! undecided instead.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::numeric::{in_unit, one, zero, Rational};
use crate::value::{BinaryOp, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PropertyName {
    Commutativity,
    Monotonicity,
    BoundedByMin,
    Associativity,
    NeutralOne,
    ConditionalCancellation,
    Cancellation,
    StrictMonotonicity,
    /// Archimedean property probed with at most this many iterations.
    ArchimedeanAt(u32),
}

impl PropertyName {
    pub const DEFAULT_ARCHIMEDEAN_CAP: u32 = 256;

    pub fn all() -> [PropertyName; 9] {
        use PropertyName::*;
        [
            Commutativity,
            Monotonicity,
            BoundedByMin,
            Associativity,
            NeutralOne,
            ConditionalCancellation,
            Cancellation,
            StrictMonotonicity,
            ArchimedeanAt(Self::DEFAULT_ARCHIMEDEAN_CAP),
        ]
    }

    pub fn key(&self) -> &'static str {
        match self {
            PropertyName::Commutativity => "commutativity",
            PropertyName::Monotonicity => "monotonicity",
            PropertyName::BoundedByMin => "bounded_by_min",
            PropertyName::Associativity => "associativity",
            PropertyName::NeutralOne => "neutral_one",
            PropertyName::ConditionalCancellation => "conditional_cancellation",
            PropertyName::Cancellation => "cancellation",
            PropertyName::StrictMonotonicity => "strict_monotonicity",
            PropertyName::ArchimedeanAt(_) => "archimedean",
        }
    }
}

impl fmt::Display for PropertyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyName::ArchimedeanAt(n) => write!(f, "archimedean_at({n})"),
            p => f.write_str(p.key()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub property: PropertyName,
    pub inputs: Vec<Rational>,
    pub lhs: Value,
    pub rhs: Value,
}

impl Counterexample {
    /// The law as an equation or inequality between `lhs` and `rhs`.
    pub fn relation(&self) -> &'static str {
        match self.property {
            PropertyName::Commutativity => "F(x,y) = F(y,x)",
            PropertyName::Monotonicity => "F(x,y) <= F(x,z) (or in the first argument)",
            PropertyName::BoundedByMin => "F(x,y) <= min(x,y)",
            PropertyName::Associativity => "F(F(x,y),z) = F(x,F(y,z))",
            PropertyName::NeutralOne => "F(x,1) = x",
            PropertyName::ConditionalCancellation => "F(x,y) = F(x,z) > 0 forces y = z",
            PropertyName::Cancellation => "F(x,y) = F(x,z) forces x = 0 or y = z",
            PropertyName::StrictMonotonicity => "F(x,y) < F(x,z) for x > 0, y < z",
            PropertyName::ArchimedeanAt(_) => "some power of x drops below y",
        }
    }

    fn input_names(&self) -> &'static [&'static str] {
        match self.property {
            PropertyName::Commutativity | PropertyName::BoundedByMin | PropertyName::ArchimedeanAt(_) => &["x", "y"],
            PropertyName::NeutralOne => &["x"],
            _ => &["x", "y", "z"],
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self
            .input_names()
            .iter()
            .zip(&self.inputs)
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        write!(f, "{} violates {}: lhs={} rhs={}", args.join(", "), self.relation(), self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Holds,
    Fails(Counterexample),
    /// No certain violation, but some instance could not be decided.
    Undecided(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fails(_))
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Outcome::Fails(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Holds => "Ok",
            Outcome::Fails(_) => "Counterexample",
            Outcome::Undecided(_) => "Undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub property: PropertyName,
    pub outcome: Outcome,
    /// Number of input tuples examined.
    pub examined: u64,
}

/// `{0, 1/n, …, 1} ∪ extra`, restricted to `[0,1]`, sorted and deduplicated.
pub fn grid<I: IntoIterator<Item = Rational>>(n: u32, extra: I) -> Vec<Rational> {
    let n = n.max(1);
    let mut pts: Vec<Rational> = (0..=n).map(|i| Rational::new(i.into(), n.into())).collect();
    pts.extend(extra.into_iter().filter(in_unit));
    pts.sort();
    pts.dedup();
    pts
}

/// Evaluates with a possibly inexact first argument, using monotonicity of
/// the operation to enclose the result.
pub fn apply_value(op: &dyn BinaryOp, a: &Value, b: &Rational) -> Value {
    match a {
        Value::Exact(r) => op.apply(r, b),
        Value::Approx { .. } => {
            let (lo, hi) = a.rational_bounds();
            let clamp = |r: Rational| r.clamp(zero(), one());
            let (l, h) = (op.apply(&clamp(lo), b), op.apply(&clamp(hi), b));
            if let (Some(x), Some(y)) = (l.exact(), h.exact()) {
                if x == y {
                    return l;
                }
            }
            let (lo, _) = l.bounds();
            let (_, hi) = h.bounds();
            Value::approx((lo + hi) / 2.0, (hi - lo).abs() / 2.0)
        }
    }
}

/// Tracks the first certain violation and whether anything was undecided.
struct Scan {
    property: PropertyName,
    found: Option<Counterexample>,
    undecided: Option<String>,
    examined: u64,
}

impl Scan {
    fn new(property: PropertyName) -> Self {
        Scan { property, found: None, undecided: None, examined: 0 }
    }

    fn fail(&mut self, inputs: Vec<Rational>, lhs: Value, rhs: Value) {
        if self.found.is_none() {
            self.found = Some(Counterexample { property: self.property, inputs, lhs, rhs });
        }
    }

    fn unsure(&mut self, inputs: &[Rational]) {
        if self.undecided.is_none() {
            let shown: Vec<String> = inputs.iter().map(ToString::to_string).collect();
            self.undecided = Some(format!("enclosures overlap at ({})", shown.join(", ")));
        }
    }

    fn finish(self) -> CheckResult {
        let outcome = match (self.found, self.undecided) {
            (Some(c), _) => Outcome::Fails(c),
            (None, Some(r)) => Outcome::Undecided(r),
            (None, None) => Outcome::Holds,
        };
        CheckResult { property: self.property, outcome, examined: self.examined }
    }
}

fn table(op: &dyn BinaryOp, pts: &[Rational]) -> Vec<Vec<Value>> {
    pts.par_iter().map(|x| pts.iter().map(|y| op.apply(x, y)).collect()).collect()
}

pub fn check_property(op: &dyn BinaryOp, p: PropertyName, pts: &[Rational]) -> CheckResult {
    let m = pts.len();
    let mut s = Scan::new(p);
    match p {
        PropertyName::Associativity => return check_associativity(op, pts),
        PropertyName::ArchimedeanAt(cap) => return check_archimedean(op, pts, cap),
        PropertyName::NeutralOne => {
            for x in pts {
                s.examined += 1;
                let ex = Value::Exact(x.clone());
                for v in [op.apply(x, &one()), op.apply(&one(), x)] {
                    if v.certainly_ne(&ex) {
                        s.fail(vec![x.clone()], v, ex.clone());
                    }
                }
            }
            return s.finish();
        }
        _ => {}
    }
    let t = table(op, pts);
    for i in 0..m {
        if s.found.is_some() {
            break;
        }
        for j in 0..m {
            let (x, y) = (&pts[i], &pts[j]);
            match p {
                PropertyName::Commutativity => {
                    s.examined += 1;
                    if t[i][j].certainly_ne(&t[j][i]) {
                        s.fail(vec![x.clone(), y.clone()], t[i][j].clone(), t[j][i].clone());
                    }
                }
                PropertyName::BoundedByMin => {
                    s.examined += 1;
                    let bound = Value::Exact(x.min(y).clone());
                    if t[i][j].certainly_gt(&bound) {
                        s.fail(vec![x.clone(), y.clone()], t[i][j].clone(), bound);
                    }
                }
                _ => {
                    for k in j + 1..m {
                        s.examined += 1;
                        let z = &pts[k];
                        let inputs = || vec![x.clone(), y.clone(), z.clone()];
                        let (a, b) = (&t[i][j], &t[i][k]);
                        match p {
                            PropertyName::Monotonicity => {
                                if a.certainly_gt(b) {
                                    s.fail(inputs(), a.clone(), b.clone());
                                } else if t[j][i].certainly_gt(&t[k][i]) {
                                    s.fail(inputs(), t[j][i].clone(), t[k][i].clone());
                                }
                            }
                            PropertyName::StrictMonotonicity if !x.is_zero() => {
                                match a.certain_cmp(b) {
                                    Some(std::cmp::Ordering::Less) => {}
                                    Some(_) => s.fail(inputs(), a.clone(), b.clone()),
                                    None => s.unsure(&inputs()),
                                }
                            }
                            PropertyName::ConditionalCancellation => {
                                if a.certainly_eq(b) && a.certainly_positive() {
                                    s.fail(inputs(), a.clone(), b.clone());
                                } else if !a.certainly_ne(b) && !a.is_exact() && a.certainly_positive() {
                                    s.unsure(&inputs());
                                }
                            }
                            PropertyName::Cancellation if !x.is_zero() => {
                                if a.certainly_eq(b) {
                                    s.fail(inputs(), a.clone(), b.clone());
                                } else if !a.certainly_ne(b) {
                                    s.unsure(&inputs());
                                }
                            }
                            _ => {}
                        }
                        if s.found.is_some() {
                            break;
                        }
                    }
                }
            }
            if s.found.is_some() {
                break;
            }
        }
    }
    s.finish()
}

/// Exhaustive over all `m³` ordered triples; outer index split across threads.
fn check_associativity(op: &dyn BinaryOp, pts: &[Rational]) -> CheckResult {
    let m = pts.len();
    let t = table(op, pts);
    let per_x: Vec<Scan> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut s = Scan::new(PropertyName::Associativity);
            for j in 0..m {
                for k in 0..m {
                    s.examined += 1;
                    if s.found.is_some() {
                        continue;
                    }
                    let lhs = apply_value(op, &t[i][j], &pts[k]);
                    // F(x, F(y,z)) = F(F(y,z), x) needs commutativity, so evaluate directly
                    let rhs = match &t[j][k] {
                        Value::Exact(r) => op.apply(&pts[i], r),
                        v => swap_apply(op, &pts[i], v),
                    };
                    let inputs = || vec![pts[i].clone(), pts[j].clone(), pts[k].clone()];
                    if lhs.certainly_ne(&rhs) {
                        s.fail(inputs(), lhs, rhs);
                    }
                }
            }
            s
        })
        .collect();
    let examined: u64 = per_x.iter().map(|s| s.examined).sum();
    debug_assert_eq!(examined, (m as u64).pow(3));
    let mut merged = Scan::new(PropertyName::Associativity);
    merged.examined = examined;
    for s in per_x {
        if merged.found.is_none() {
            merged.found = s.found;
        }
        if merged.undecided.is_none() {
            merged.undecided = s.undecided;
        }
    }
    merged.finish()
}

fn swap_apply(op: &dyn BinaryOp, a: &Rational, b: &Value) -> Value {
    let (lo, hi) = b.rational_bounds();
    let clamp = |r: Rational| r.clamp(zero(), one());
    let (l, h) = (op.apply(a, &clamp(lo)), op.apply(a, &clamp(hi)));
    if l.is_exact() && l == h {
        return l;
    }
    let (lo, _) = l.bounds();
    let (_, hi) = h.bounds();
    Value::approx((lo + hi) / 2.0, (hi - lo).abs() / 2.0)
}

/// Powers `x, F(x,x), F(F(x,x),x), …` for grid pairs `0 < x, y < 1`.
/// An exact fixed point at or above `y` is a counterexample; running out of
/// iterations only leaves the check undecided.
fn check_archimedean(op: &dyn BinaryOp, pts: &[Rational], cap: u32) -> CheckResult {
    let inner: Vec<&Rational> = pts.iter().filter(|p| !p.is_zero() && !p.is_one()).collect();
    let mut s = Scan::new(PropertyName::ArchimedeanAt(cap));
    let floor = inner.first().map(|p| (*p).clone()).unwrap_or_else(zero);
    for x in &inner {
        let powers = power_sequence_until(op, x, cap, &floor);
        for y in &inner {
            s.examined += 1;
            let yv = Value::Exact((*y).clone());
            if powers.iter().any(|p| p.certainly_lt(&yv)) {
                continue;
            }
            let last = powers.last().unwrap();
            let stalled = powers.len() >= 2 && last.is_exact() && powers[powers.len() - 2] == *last;
            if stalled && !last.certainly_lt(&yv) {
                s.fail(vec![(*x).clone(), (*y).clone()], last.clone(), yv);
            } else {
                s.unsure(&[(*x).clone(), (*y).clone()]);
            }
            if s.found.is_some() {
                return s.finish();
            }
        }
    }
    s.finish()
}

/// Denominator size beyond which powers continue as floating enclosures.
const MAX_EXACT_BITS: u64 = 192;

/// Left-associated powers of `x`, stopping early at an exact fixed point.
pub fn power_sequence(op: &dyn BinaryOp, x: &Rational, cap: u32) -> Vec<Value> {
    power_sequence_until(op, x, cap, &zero())
}

/// Like [`power_sequence`], but also stops once a power is certainly below
/// `floor`, since every later power is then below it too.
pub fn power_sequence_until(op: &dyn BinaryOp, x: &Rational, cap: u32, floor: &Rational) -> Vec<Value> {
    let floor = Value::Exact(floor.clone());
    let mut out = vec![Value::Exact(x.clone())];
    for _ in 1..cap.max(1) {
        let next = match apply_value(op, out.last().unwrap(), x) {
            Value::Exact(r) if r.denom().bits() > MAX_EXACT_BITS => Value::enclose(&r),
            v => v,
        };
        let done = next.is_exact() && Some(&next) == out.last()
            || next.certainly_eq(&Value::Exact(zero()))
            || next.certainly_lt(&floor);
        out.push(next);
        if done {
            break;
        }
    }
    out
}

/// A jump of the operation in its first argument, found by probing.
#[derive(Clone, Debug, PartialEq)]
pub struct Jump {
    pub x: Rational,
    pub y: Rational,
    /// Probe offset on the side where the jump was seen (negative for left).
    pub offset: Rational,
    pub at: Value,
    pub near: Value,
}

impl fmt::Display for Jump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({},{})={} but F({},{})={}", self.x, self.y, self.at, &self.x + &self.offset, self.y, self.near)
    }
}

/// Scans for discontinuities in the first argument of `op`.
///
/// For each `y`, walks `x` over `{0, step, 2·step, …, 1} ∪ extra`. Every
/// neighbouring pair whose values differ by more than `tol` is bisected
/// up to `levels` times, keeping the half with the larger difference and
/// stopping once it falls to `tol`. A continuous piece of slope `s` leaves
/// a difference near `s·step/2^levels`, while a jump keeps its full height,
/// so a jump is reported when the final difference is above `tol` and above
/// a quarter of the initial one.
pub fn continuity_scan(
    op: &dyn BinaryOp,
    ys: &[Rational],
    step: &Rational,
    extra: &[Rational],
    levels: u32,
    tol: f64,
) -> Option<Jump> {
    let n = (one() / step).ceil().to_integer();
    let n = u32::try_from(n).unwrap_or(u32::MAX).max(1);
    let xs = grid(n, extra.iter().cloned());
    let gap = |a: &Value, b: &Value| (a.to_f64() - b.to_f64()).abs() - a.radius() - b.radius();
    ys.par_iter()
        .map(|y| {
            let vals: Vec<Value> = xs.iter().map(|x| op.apply(x, y)).collect();
            for i in 1..xs.len() {
                let initial = gap(&vals[i - 1], &vals[i]);
                if initial <= tol {
                    continue;
                }
                let (mut lo, mut hi) = (xs[i - 1].clone(), xs[i].clone());
                let (mut vlo, mut vhi) = (vals[i - 1].clone(), vals[i].clone());
                let mut last = initial;
                for _ in 0..levels {
                    let mid = (&lo + &hi) / Rational::from_integer(2.into());
                    let vm = op.apply(&mid, y);
                    if gap(&vlo, &vm) >= gap(&vm, &vhi) {
                        (hi, vhi) = (mid, vm);
                    } else {
                        (lo, vlo) = (mid, vm);
                    }
                    last = gap(&vlo, &vhi);
                    if last <= tol {
                        break;
                    }
                }
                if last > tol && last > initial / 4.0 {
                    let offset = &lo - &hi;
                    return Some(Jump { x: hi, y: y.clone(), offset, at: vhi, near: vlo });
                }
            }
            None
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generated::GeneratedOp;
    use crate::monotone::PiecewiseMonotoneFn;
    use crate::numeric::{half, rat};
    use crate::tnorm::TNormDescriptor;

    fn op(f: &str, t: TNormDescriptor) -> GeneratedOp {
        GeneratedOp::new(f.parse::<PiecewiseMonotoneFn>().unwrap(), t)
    }

    #[test]
    fn grids() {
        assert_eq!(grid(2, []), vec![zero(), half(), one()]);
        assert_eq!(
            grid(4, [rat(9, 10)]),
            vec![zero(), rat(1, 4), half(), rat(3, 4), rat(9, 10), one()]
        );
    }

    #[test]
    fn min_is_associative_with_full_count() {
        let pts = grid(10, []);
        let r = check_property(&TNormDescriptor::minimum(), PropertyName::Associativity, &pts);
        assert_eq!(r.outcome, Outcome::Holds);
        assert_eq!(r.examined, 11u64.pow(3));
    }

    #[test]
    fn min_with_lifted_identity_is_not_conditionally_cancellative() {
        let f = "monotone: nondecreasing\nsegment [0,1) linear 1/4 1/4\npoint 1 = 1";
        let pts = grid(8, [half(), rat(3, 4), one()]);
        let r = check_property(&op(f, TNormDescriptor::minimum()), PropertyName::ConditionalCancellation, &pts);
        let c = r.outcome.counterexample().unwrap();
        let g = op(f, TNormDescriptor::minimum());
        let (a, b) = (g.apply(&c.inputs[0], &c.inputs[1]), g.apply(&c.inputs[0], &c.inputs[2]));
        assert_eq!(a, b);
        assert!(a.certainly_positive() && c.inputs[1] != c.inputs[2]);
        // the triple named for this example is itself a counterexample
        assert_eq!(g.apply(&half(), &rat(3, 4)), g.apply(&half(), &one()));
        assert_eq!(g.apply(&half(), &one()), Value::Exact(half()));
    }

    #[test]
    fn product_passes_everything() {
        let pts = grid(8, []);
        for p in PropertyName::all() {
            let r = check_property(&TNormDescriptor::product(), p, &pts);
            assert_eq!(r.outcome, Outcome::Holds, "{p}");
        }
    }

    #[test]
    fn min_is_not_archimedean_or_strict() {
        let pts = grid(4, []);
        let t = TNormDescriptor::minimum();
        assert!(check_property(&t, PropertyName::ArchimedeanAt(16), &pts).outcome.is_fail());
        assert!(check_property(&t, PropertyName::StrictMonotonicity, &pts).outcome.is_fail());
        assert!(check_property(&t, PropertyName::Cancellation, &pts).outcome.is_fail());
    }

    #[test]
    fn half_product_associativity_counterexample_is_first_and_repeatable() {
        let pts = grid(10, []);
        let t = TNormDescriptor::half_product();
        let a = check_property(&t, PropertyName::Associativity, &pts);
        let b = check_property(&t, PropertyName::Associativity, &pts);
        assert_eq!(a, b);
        let c = a.outcome.counterexample().unwrap().clone();
        let e = |x: &Rational, y: &Rational| t.eval_exact(x, y).unwrap();
        let (x, y, z) = (&c.inputs[0], &c.inputs[1], &c.inputs[2]);
        assert_ne!(e(&e(x, y), z), e(x, &e(y, z)));
    }

    #[test]
    fn continuity_scan_sees_the_jump_at_one() {
        let ys = grid(8, []);
        let d = rat(1, 1000);
        let jump = op("monotone: nondecreasing\nsegment [0,1) linear 1/2 0\npoint 1 = 1", TNormDescriptor::product());
        let j = continuity_scan(&jump, &ys, &d, &[], 10, 1e-4).unwrap();
        assert_eq!(j.x, one());
        let smooth = op("monotone: nondecreasing\nsegment [0,1] linear 1 0", TNormDescriptor::product());
        assert!(continuity_scan(&smooth, &ys, &d, &[], 10, 1e-4).is_none());
        // steep but continuous: slope 100 near zero
        let steep = op("monotone: nondecreasing\nsegment [0,1/100] linear 50 0\nsegment (1/100,1] linear 50/99 49/99", TNormDescriptor::product());
        assert!(continuity_scan(&steep, &ys, &d, &[], 10, 1e-4).is_none());
    }

    #[test]
    fn generator_values_do_not_produce_false_counterexamples() {
        let t = crate::tnorm::generator_tnorm(crate::tnorm::Generator::NegLog);
        let pts = grid(6, []);
        for p in [PropertyName::Commutativity, PropertyName::Associativity, PropertyName::BoundedByMin, PropertyName::NeutralOne] {
            assert!(!check_property(&t, p, &pts).outcome.is_fail(), "{p}");
        }
    }
}
