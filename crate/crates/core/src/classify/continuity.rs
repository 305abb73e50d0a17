//! Continuity of generated operations.
//!
//! For strictly increasing f the pseudo-inverse is continuous, so `F` can
//! only jump in its first argument where f jumps. At such a point `a` the
//! one-sided limit of `F(·,y)` is `f⁽⁻¹⁾(T(f(a±), v))` with `v = f(y)`.
//! Between consecutive breakpoints both sides are Möbius functions of `v`
//! (linear for product and min), so agreement at three interior points of
//! every sub-interval settles agreement on the whole sub-interval exactly.

use num_traits::Zero;

use crate::generated::GeneratedOp;
use crate::monotone::{Direction, PiecewiseMonotoneFn, Side};
use crate::numeric::{half, in_unit, one, zero, Rational};
use crate::oracle::grid;
use crate::tnorm::{Family, TNormDescriptor};

use super::{Verdict, Witness};

/// Continuity verdict for `F` generated by `f` and `t`.
pub fn check_continuity(f: &PiecewiseMonotoneFn, t: &TNormDescriptor) -> Verdict {
    continuity(&GeneratedOp::new(f.clone(), t.clone()))
}

pub(crate) fn continuity(op: &GeneratedOp) -> Verdict {
    let (f, t) = (op.f(), op.t());
    if op.eval_exact(&one(), &one()).is_some_and(|v| v.is_zero()) {
        return Verdict::yes(["F ≡ 0"]);
    }
    if let Family::Lambda(_, lambda) = &t.family {
        if PiecewiseMonotoneFn::scaled(lambda.clone()).ok().as_ref() == Some(f) {
            return Verdict::yes(["F is additively generated by a continuous generator"]);
        }
    }
    let strict_f = f.is_strictly_increasing();
    if strict_f && f.is_continuous() && t.flags.continuous {
        return Verdict::yes(["f continuous and strictly increasing", "T continuous"]);
    }
    if strict_f && t.flags.continuous && t.flags.exact {
        return match jump_points_check(op) {
            None => Verdict::yes(["f strictly increasing", "F(·,y) continuous at every jump of f, for all y"]),
            Some(w) => Verdict::no(w),
        };
    }
    if !t.flags.exact {
        return Verdict::unknown("t-norm values are not exact and no structural route applies");
    }
    match candidate_jump(op) {
        Some(w) => Verdict::no(w),
        None => Verdict::unknown("no exact jump found among breakpoints, plateau ends and grid n=24"),
    }
}

/// Jumps of f: breakpoints where a one-sided limit differs from the value.
fn jumps(f: &PiecewiseMonotoneFn) -> Vec<(Rational, Side, Rational)> {
    let mut out = Vec::new();
    for a in f.breakpoints() {
        let fa = f.eval(&a).expect("breakpoint inside [0,1]");
        if a > zero() {
            let l = f.side_limit(&a, Side::Left);
            if l != fa {
                out.push((a.clone(), Side::Left, l));
            }
        }
        if a < one() {
            let u = f.side_limit(&a, Side::Right);
            if u != fa {
                out.push((a.clone(), Side::Right, u));
            }
        }
    }
    out
}

/// Exact sweep over `v ∈ M` at every jump of a strictly increasing f.
fn jump_points_check(op: &GeneratedOp) -> Option<Witness> {
    let (f, finv, t) = (op.f(), op.finv(), op.t());
    let m = f.range();
    let kinks = finv.breakpoints();
    for (a, side, lim) in jumps(f) {
        let fa = f.eval(&a).ok()?;
        let phi = |u: &Rational, v: &Rational| t.eval_exact(u, v).map(|w| finv.eval(&w).expect("inside [0,1]"));
        // v where either composition changes formula
        let mut cuts: Vec<Rational> = vec![zero(), one(), lim.clone(), fa.clone()];
        for w in &kinks {
            for u in [&lim, &fa] {
                cuts.extend(t.solve_left(w, u));
            }
        }
        cuts.retain(in_unit);
        cuts.sort();
        cuts.dedup();
        for part in m.parts() {
            let (lo, hi) = (part.lo(), part.hi());
            let mut probes = Vec::new();
            let mut marks = vec![lo.value.clone()];
            marks.extend(cuts.iter().filter(|c| *c > &lo.value && *c < &hi.value).cloned());
            marks.push(hi.value.clone());
            probes.extend(marks.iter().filter(|v| part.contains(v)).cloned());
            for pair in marks.windows(2) {
                let width = &pair[1] - &pair[0];
                for j in 1..=3 {
                    probes.push(&pair[0] + &width * Rational::new(j.into(), 4.into()));
                }
            }
            for v in probes {
                let (Some(left), Some(right)) = (phi(&lim, &v), phi(&fa, &v)) else { continue };
                if left == right {
                    continue;
                }
                let Some(y) = f.preimage(&v) else { continue };
                let (Some(value), Some(limit)) = (op.eval_exact(&a, &y), op.limit_first_arg(&a, &y, side)) else {
                    continue;
                };
                let w = Witness::Jump { x: a.clone(), y, side, value, limit };
                if w_ok(op, &w) {
                    return Some(w);
                }
            }
        }
    }
    None
}

fn w_ok(op: &GeneratedOp, w: &Witness) -> bool {
    w.recheck(op, super::Property::Continuous)
}

/// Exact jump search at arguments where `F` is likely to jump: breakpoints
/// of f, and arguments sending `T(f(x), f(y))` onto a jump of the
/// pseudo-inverse.
pub(crate) fn candidate_jump(op: &GeneratedOp) -> Option<Witness> {
    let (f, finv, t) = (op.f(), op.finv(), op.t());
    let mut ys = grid(24, f.breakpoints());
    for q in f.plateau_set().endpoints() {
        if let Some((a, b)) = f.plateau_preimages(&q) {
            ys.push(a);
            ys.push(b);
        }
    }
    ys.extend(f.preimage(&half()));
    ys.sort();
    ys.dedup();
    let finv_jumps: Vec<Rational> = finv
        .breakpoints()
        .into_iter()
        .filter(|q| {
            let v = finv.eval(q).expect("inside [0,1]");
            (q > &zero() && finv.side_limit(q, Side::Left) != v) || (q < &one() && finv.side_limit(q, Side::Right) != v)
        })
        .collect();
    let mut xs = f.breakpoints();
    for y in &ys {
        let fy = f.eval(y).ok()?;
        for q in &finv_jumps {
            let Some(s) = t.solve_left(q, &fy) else { continue };
            xs.extend(f.preimage(&s));
            if let Some((a, b)) = f.plateau_preimages(&s) {
                xs.push(a);
                xs.push(b);
            }
            if f.direction() == Direction::NonDecreasing {
                // the last argument reaching `s` sits at the right end of its level set
                xs.push(finv.side_limit(&s, Side::Right).min(one()));
            }
        }
    }
    xs.sort();
    xs.dedup();
    for x in &xs {
        for y in &ys {
            let Some(value) = op.eval_exact(x, y) else { continue };
            for side in [Side::Left, Side::Right] {
                let Some(limit) = op.limit_first_arg(x, y, side) else { continue };
                if limit != value {
                    let w = Witness::Jump { x: x.clone(), y: y.clone(), side, value: value.clone(), limit };
                    if w_ok(op, &w) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Status;
    use crate::numeric::rat;

    fn parse(s: &str) -> PiecewiseMonotoneFn {
        s.parse().unwrap()
    }

    #[test]
    fn continuous_strict_is_continuous() {
        let v = check_continuity(&PiecewiseMonotoneFn::identity(), &TNormDescriptor::product());
        assert_eq!(v.status, Status::Yes);
    }

    #[test]
    fn jump_at_one_with_product() {
        let f = parse("monotone: nondecreasing\nsegment [0,1) linear 1/2 0\npoint 1 = 1");
        let t = TNormDescriptor::product();
        let v = check_continuity(&f, &t);
        assert_eq!(v.status, Status::No, "{v}");
        let op = GeneratedOp::new(f, t);
        assert!(w_ok(&op, v.witness().unwrap()));
    }

    #[test]
    fn interior_jump_of_f_shows_in_f() {
        // F(1/2,3/4) = 3/8, but approaching from the right the product lands
        // in the gap (1/4,1/2) of the range, which pulls back to 1/2
        let f = parse("monotone: nondecreasing\nsegment [0,1/2] linear 1/2 0\nsegment (1/2,1] linear 1 0");
        let t = TNormDescriptor::product();
        let v = check_continuity(&f, &t);
        assert_eq!(v.status, Status::No, "{v}");
        let op = GeneratedOp::new(f, t);
        assert_eq!(op.eval_exact(&half(), &rat(3, 4)), Some(rat(3, 8)));
        assert_eq!(op.limit_first_arg(&half(), &rat(3, 4), Side::Right), Some(half()));
    }

    #[test]
    fn plateau_example_jumps() {
        let f = parse("monotone: nondecreasing\nsegment [0,1/2] const 1/2\nsegment (1/2,1] linear 1 0");
        let t = TNormDescriptor::product();
        let v = check_continuity(&f, &t);
        assert_eq!(v.status, Status::No, "{v}");
        let Some(Witness::Jump { x, y, .. }) = v.witness() else { panic!() };
        assert!(x > &zero() && y > &rat(1, 2) || x >= &rat(1, 2));
    }
}
