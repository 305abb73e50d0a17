//! Deterministic random monotone functions for the integration tests.
//!
//! Functions are produced in the text grammar and parsed, so every test
//! exercises the parser as well. Breakpoints and values are rationals with
//! denominators at most 16.

#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subnorm_forge::monotone::{Direction, PiecewiseMonotoneFn};
use subnorm_forge::numeric::{rat, Rational};

#[derive(Clone, Copy, Debug, Default)]
pub struct Shape {
    /// Values strictly increase along every segment.
    pub strict: bool,
    /// No jumps anywhere; overrides `jump_at_one`.
    pub continuous: bool,
    /// Every breakpoint belongs to the segment on its right.
    pub right_continuous: bool,
    /// Start at `f(0) = 0`.
    pub zero_at_zero: bool,
    /// Non-increasing instead of non-decreasing.
    pub decreasing: bool,
    /// End at `f(1) = 1` (non-decreasing only).
    pub one_at_one: bool,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let d: i64 = rng.gen_range(1..=16);
    Rational::new(rng.gen_range(0..=d).into(), d.into())
}

/// `count` distinct points of `(0,1)` with denominators at most 16, sorted.
fn interior_points(rng: &mut impl Rng, count: usize) -> Vec<Rational> {
    let mut pts = Vec::new();
    while pts.len() < count {
        let d: i64 = rng.gen_range(2..=16);
        let p = Rational::new(rng.gen_range(1..d).into(), d.into());
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts.sort();
    pts
}

fn sorted_values(rng: &mut impl Rng, count: usize, strict_pairs: bool, zero_first: bool, one_last: bool) -> Vec<Rational> {
    loop {
        let mut v: Vec<Rational> = (0..count).map(|_| small_rational(rng)).collect();
        if zero_first {
            v[0] = Rational::from_integer(0.into());
        }
        if one_last {
            v[1] = Rational::from_integer(1.into());
        }
        v.sort();
        if !strict_pairs || v.chunks(2).all(|c| c.len() < 2 || c[0] < c[1]) {
            return v;
        }
    }
}

fn interval(lo: &Rational, hi: &Rational, left_closed: bool, right_closed: bool) -> String {
    format!("{}{},{}{}", if left_closed { '[' } else { '(' }, lo, hi, if right_closed { ']' } else { ')' })
}

fn piece(lo: &Rational, hi: &Rational, vl: &Rational, vr: &Rational) -> String {
    if vl == vr {
        format!("const {vl}")
    } else {
        let m = (vr - vl) / (hi - lo);
        let b = vl - &m * lo;
        format!("linear {m} {b}")
    }
}

/// Source text of a random monotone function with 1 to `max_segments` pieces.
pub fn random_fn_text(rng: &mut impl Rng, max_segments: usize, shape: Shape) -> String {
    let k = rng.gen_range(1..=max_segments);
    let mut cuts = vec![Rational::from_integer(0.into())];
    cuts.extend(interior_points(rng, k - 1));
    cuts.push(Rational::from_integer(1.into()));
    // segment i runs from vals[i].0 to vals[i].1
    let one_last = shape.one_at_one && !shape.decreasing;
    let vals: Vec<(Rational, Rational)> = if shape.continuous {
        let v = loop {
            let v = sorted_values(rng, k + 1, false, shape.zero_at_zero, one_last);
            if !shape.strict || v.windows(2).all(|w| w[0] < w[1]) {
                break v;
            }
        };
        v.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    } else {
        let v = sorted_values(rng, 2 * k, shape.strict, shape.zero_at_zero, one_last);
        v.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
    };
    let reflect = |v: &Rational| if shape.decreasing { Rational::from_integer(1.into()) - v } else { v.clone() };
    let mut lines = vec![format!("monotone: {}", if shape.decreasing { "nonincreasing" } else { "nondecreasing" })];
    // closedness of each interior breakpoint: true when it belongs to the right piece
    let owners: Vec<bool> = (1..k).map(|_| shape.right_continuous || shape.continuous || rng.gen_bool(0.5)).collect();
    let jump_at_one = !shape.continuous && !shape.decreasing && rng.gen_bool(0.25);
    for i in 0..k {
        let (lo, hi) = (&cuts[i], &cuts[i + 1]);
        let left_closed = i == 0 || owners[i - 1];
        let right_closed = if i + 1 == k { !jump_at_one } else { !owners[i] };
        let (vl, vr) = (reflect(&vals[i].0), reflect(&vals[i].1));
        lines.push(format!("segment {} {}", interval(lo, hi, left_closed, right_closed), piece(lo, hi, &vl, &vr)));
    }
    if jump_at_one {
        let last = &vals[k - 1].1;
        let top = [last.clone(), Rational::from_integer(1.into())];
        let mut v = small_rational(rng);
        if v < *last {
            v = top.choose(rng).unwrap().clone();
        }
        if one_last {
            v = Rational::from_integer(1.into());
        }
        lines.push(format!("point 1 = {v}"));
    }
    lines.join("\n")
}

pub fn random_fn(rng: &mut impl Rng, max_segments: usize, shape: Shape) -> PiecewiseMonotoneFn {
    let text = random_fn_text(rng, max_segments, shape);
    text.parse().unwrap_or_else(|e| panic!("generator produced an invalid function: {e}\n{text}"))
}

/// Exact points of `[0,1]` with denominators up to 64, for sampling.
pub fn random_point(rng: &mut impl Rng) -> Rational {
    let d: i64 = rng.gen_range(1..=64);
    Rational::new(rng.gen_range(0..=d).into(), d.into())
}

/// The simplest rational (least denominator) in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi && !lo.is_negative());
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // both ends share the integer part: recurse on reciprocals of the fractional parts
    let (a, b) = (lo - &fl, hi - &fl);
    fl + simplest_between(&b.recip(), &a.recip()).recip()
}

/// `sup{x : f(x) < y}` (or `> y` for non-increasing f) by bisection on the
/// defining predicate, rounded to the simplest rational in the final bracket.
pub fn sup_by_bisection(f: &PiecewiseMonotoneFn, y: &Rational) -> Rational {
    let below = |x: &Rational| {
        let v = f.eval(x).unwrap();
        match f.direction() {
            Direction::NonDecreasing => &v < y,
            Direction::NonIncreasing => &v > y,
        }
    };
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    if !below(&lo) {
        // only x = 0 could be in the set, and sup ∅ = 0 as well
        return lo;
    }
    if below(&hi) {
        return hi;
    }
    for _ in 0..72 {
        let mid = (&lo + &hi) / rat(2, 1);
        if below(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    simplest_between(&lo, &hi)
}
