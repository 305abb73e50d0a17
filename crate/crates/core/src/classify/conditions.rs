//! Inclusion conditions on images of the t-norm, the `H_k` sets over the
//! gaps of the range, and the witness constructions that turn a failed
//! inclusion into concrete arguments of `F`.

use num_traits::Zero;

use crate::generated::GeneratedOp;
use crate::monotone::Decomposition;
use crate::numeric::{one, IntervalSet, Rational};
use crate::oracle::grid;
use crate::tnorm::TNormDescriptor;
use crate::value::BinaryOp;

use super::{ConditionRecord, Property, Verdict, Witness};

pub(crate) const COND_II: &str = "T(M∖C,M) ⊆ M ∪ [0,f(0+)]";
pub(crate) const COND_III: &str = "T(Q,M) ⊆ [0,f(0+)]";
pub(crate) const COND_TMM: &str = "T(M,M) ⊆ M";
pub(crate) const COND_TMM_LOW: &str = "T(M,M) ⊆ M ∪ [0,f(0+)]";
pub(crate) const COND_H_K1: &str = "T(∪_{k∈K1} H_k, M∖{0}) ∩ (M∖C) = ∅";
pub(crate) const COND_H_ALL: &str = "T(∪_k H_k, M∖{0}) ∩ (M∖C) = ∅";

/// Up to `k` interior points of each part plus its closed ends.
pub(crate) fn samples(set: &IntervalSet, k: u32) -> Vec<Rational> {
    let mut out = Vec::new();
    for p in set.parts() {
        let (lo, hi) = (p.lo(), p.hi());
        if p.is_point() {
            out.push(lo.value.clone());
            continue;
        }
        if lo.closed {
            out.push(lo.value.clone());
        }
        let width = &hi.value - &lo.value;
        for j in 1..=k {
            out.push(&lo.value + &width * Rational::new(j.into(), (k + 1).into()));
        }
        if hi.closed {
            out.push(hi.value.clone());
        }
    }
    out
}

/// Exact image `T(a,b)` compared with `target`, logged either way.
/// `None` when the t-norm is not exact.
fn inclusion(
    t: &TNormDescriptor,
    name: &str,
    a: &IntervalSet,
    b: &IntervalSet,
    target: &IntervalSet,
    log: &mut Vec<ConditionRecord>,
) -> Option<(Verdict, IntervalSet)> {
    let img = t.image(a, b)?;
    let violation = img.difference(target);
    let holds = violation.is_empty();
    log.push(ConditionRecord { name: name.into(), values: img, target: target.clone(), holds });
    if holds {
        return Some((Verdict::yes([name]), violation));
    }
    let verdict = match find_pair(t, a, b, &violation) {
        Some((x, y, w)) => Verdict::no(Witness::Condition {
            condition: name.into(),
            a: x,
            b: y,
            value: w,
            target: target.clone(),
            inside: false,
        }),
        None => Verdict::unknown(format!("{name} fails on {violation} but no exact preimage pair was found")),
    };
    Some((verdict, violation))
}

/// Some `(x, y, T(x,y))` with `x ∈ a`, `y ∈ b` and `T(x,y) ∈ hit`.
pub(crate) fn find_pair(
    t: &TNormDescriptor,
    a: &IntervalSet,
    b: &IntervalSet,
    hit: &IntervalSet,
) -> Option<(Rational, Rational, Rational)> {
    let bs = samples(b, 24);
    for w in samples(hit, 3) {
        for y in &bs {
            if let Some(x) = t.solve_left(&w, y) {
                if a.contains(&x) {
                    return Some((x, y.clone(), w));
                }
            }
        }
    }
    let as_ = samples(a, 24);
    for x in &as_ {
        for y in &bs {
            if let Some(w) = t.eval_exact(x, y) {
                if hit.contains(&w) {
                    return Some((x.clone(), y.clone(), w));
                }
            }
        }
    }
    None
}

/// Exact verdicts for the two inclusion conditions governing conditional
/// cancellation, in the order `(T(M∖C,M) ⊆ M ∪ [0,f(0+)], T(Q,M) ⊆ [0,f(0+)])`.
pub fn check_inclusion_conditions(t: &TNormDescriptor, d: &Decomposition) -> (Verdict, Verdict) {
    let mut log = Vec::new();
    let (ii, _) = inclusion_ii(t, d, &mut log);
    let (iii, _) = inclusion_iii(t, d, &mut log);
    (ii, iii)
}

fn not_exact() -> Verdict {
    Verdict::unknown("t-norm values are not exact")
}

pub(crate) fn inclusion_ii(t: &TNormDescriptor, d: &Decomposition, log: &mut Vec<ConditionRecord>) -> (Verdict, IntervalSet) {
    let target = d.m.union(&d.low_band());
    inclusion(t, COND_II, &d.m_minus_c(), &d.m, &target, log).unwrap_or_else(|| (not_exact(), IntervalSet::empty()))
}

pub(crate) fn inclusion_iii(t: &TNormDescriptor, d: &Decomposition, log: &mut Vec<ConditionRecord>) -> (Verdict, IntervalSet) {
    inclusion(t, COND_III, &d.q, &d.m, &d.low_band(), log).unwrap_or_else(|| (not_exact(), IntervalSet::empty()))
}

pub(crate) fn inclusion_tmm(
    t: &TNormDescriptor,
    d: &Decomposition,
    with_low_band: bool,
    log: &mut Vec<ConditionRecord>,
) -> (Verdict, IntervalSet) {
    let (name, target) = if with_low_band { (COND_TMM_LOW, d.m.union(&d.low_band())) } else { (COND_TMM, d.m.clone()) };
    inclusion(t, name, &d.m, &d.m, &target, log).unwrap_or_else(|| (not_exact(), IntervalSet::empty()))
}

/// `H_k = O({c_k} ∪ (T(M,M) ∩ [b_k,d_k]))` for every `k ∈ K₁`, indexed from 1.
/// `None` for inexact t-norms.
pub fn h_k_sets(t: &TNormDescriptor, d: &Decomposition) -> Option<Vec<(usize, IntervalSet)>> {
    h_sets(t, d, &d.k1)
}

fn h_sets(t: &TNormDescriptor, d: &Decomposition, ks: &[usize]) -> Option<Vec<(usize, IntervalSet)>> {
    let tmm = t.image(&d.m, &d.m)?;
    Some(
        ks.iter()
            .map(|&k| {
                let g = &d.gaps[k];
                let s = IntervalSet::point(g.c.clone()).union(&tmm.intersect(&g.interval()));
                (k + 1, s.o_hull())
            })
            .collect(),
    )
}

/// `T(∪ H_k, M∖{0}) ∩ (M∖C) = ∅`, over `K₁` or over every gap.
pub(crate) fn h_condition(
    t: &TNormDescriptor,
    d: &Decomposition,
    over_k1: bool,
    log: &mut Vec<ConditionRecord>,
) -> Verdict {
    let all: Vec<usize> = (0..d.gaps.len()).collect();
    let (name, ks) = if over_k1 { (COND_H_K1, &d.k1) } else { (COND_H_ALL, &all) };
    let Some(hs) = h_sets(t, d, ks) else { return not_exact() };
    let h = hs.iter().fold(IntervalSet::empty(), |acc, (_, s)| acc.union(s));
    let nonzero = d.m.remove_point(&Rational::zero());
    let img = t.image(&h, &nonzero).expect("exact t-norm");
    let solid = d.m_minus_c();
    let hit = img.intersect(&solid);
    log.push(ConditionRecord { name: name.into(), values: hit.clone(), target: IntervalSet::empty(), holds: hit.is_empty() });
    if hit.is_empty() {
        return Verdict::yes([name]);
    }
    match find_pair(t, &h, &nonzero, &hit) {
        Some((a, b, w)) => Verdict::no(Witness::Condition { condition: name.into(), a, b, value: w, target: solid, inside: true }),
        None => Verdict::unknown(format!("{name} fails on {hit} but no exact preimage pair was found")),
    }
}

/// Arguments `y, x1 < x2` with `F(y,x1) = F(y,x2)` built from a part of
/// positive length in `T(a,b) ∖ target`: two outputs inside such a part
/// have no range point between them, so the pseudo-inverse identifies them.
pub(crate) fn equal_values_from_violation(
    op: &GeneratedOp,
    a: &IntervalSet,
    b: &IntervalSet,
    violation: &IntervalSet,
    property: Property,
) -> Option<Witness> {
    let t = op.t();
    let f = op.f();
    let fixed = samples(b, 32);
    let moving = samples(a, 32);
    for part in violation.parts().iter().filter(|p| !p.is_point()) {
        let (lo, hi) = (&part.lo().value, &part.hi().value);
        for frac in [Rational::new(1.into(), 2.into()), Rational::new(1.into(), 4.into()), Rational::new(3.into(), 4.into())] {
            let w = lo + (hi - lo) * &frac;
            let w2 = &w + (hi - &w) / Rational::from_integer(2.into());
            // vary the member of `a` with a fixed member of `b`, then the reverse
            for (m, set) in fixed.iter().map(|m| (m, a)).chain(moving.iter().map(|m| (m, b))) {
                let (Some(u), Some(u2)) = (t.solve_left(&w, m), t.solve_left(&w2, m)) else { continue };
                if !(set.contains(&u) && set.contains(&u2)) {
                    continue;
                }
                let (Some(y), Some(x1), Some(x2)) = (f.preimage(m), f.preimage(&u), f.preimage(&u2)) else { continue };
                let (x1, x2) = if x1 < x2 { (x1, x2) } else { (x2, x1) };
                let w = Witness::EqualValues { value: op.apply(&y, &x1), x: y, y: x1, z: x2 };
                if w.recheck(op, property) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// `F(x,p1) = F(x,p2)` for two arguments `p1 < p2` sharing a plateau value.
/// Tried with `x = 1` first since that maximises the common value.
pub(crate) fn plateau_witness(op: &GeneratedOp, d: &Decomposition, property: Property) -> Option<Witness> {
    let f = op.f();
    for q in d.q.endpoints().iter().rev() {
        let Some((p1, p2)) = f.plateau_preimages(q) else { continue };
        for x in [one(), p2.clone()] {
            let w = Witness::EqualValues { value: op.apply(&x, &p1), x, y: p1.clone(), z: p2.clone() };
            if w.recheck(op, property) {
                return Some(w);
            }
        }
    }
    None
}

/// Sampled search for members of `𝔏(M) ∩ (M∖C)`. Every hit yields a triple
/// `(m,n,s)` with `x=f(m)`, `y=f(n)`, `z=f(s)` at which associativity of `F`
/// is tested exactly; only re-checked failures are returned.
pub(crate) fn l_set_check(op: &GeneratedOp, d: &Decomposition, n: u32) -> Option<Witness> {
    let t = op.t();
    let f = op.f();
    let solid = d.m_minus_c();
    let mut ys: Vec<Rational> = grid(n, []).into_iter().filter(|v| d.m.contains(v)).collect();
    for g in &d.gaps {
        ys.extend([&g.lo, &g.hi, &g.c].into_iter().filter(|v| d.m.contains(v)).cloned());
    }
    for p in f.pieces() {
        ys.extend([p.lo_value(), p.hi_value()].into_iter().filter(|v| d.m.contains(v)));
    }
    ys.sort();
    ys.dedup();
    let m_samples = samples(&d.m, 8);
    let pre = |v: &Rational| f.preimage(v);
    let check = |x: &Rational, y: &Rational, z: &Rational| -> Option<Witness> {
        let (m, nn, s) = (pre(x)?, pre(y)?, pre(z)?);
        let mn = op.eval_exact(&m, &nn)?;
        let ns = op.eval_exact(&nn, &s)?;
        let (lhs, rhs) = (op.eval_exact(&mn, &s)?, op.eval_exact(&m, &ns)?);
        (lhs != rhs).then(|| Witness::NonAssociative { x: m, y: nn, z: s, lhs: lhs.into(), rhs: rhs.into() })
    };
    let open_between = |u: &Rational, v: &Rational| {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        crate::numeric::Interval::open(lo.clone(), hi.clone()).map(IntervalSet::from_interval)
    };
    for y in ys.iter().filter(|y| !y.is_zero()) {
        let in_gap = |k: usize| -> Vec<Rational> {
            let g = &d.gaps[k];
            m_samples
                .iter()
                .filter(|x| t.eval_exact(x, y).is_some_and(|w| w >= g.lo && w <= g.hi))
                .cloned()
                .collect()
        };
        let zs: Vec<&Rational> =
            m_samples.iter().filter(|z| t.eval_exact(z, y).is_some_and(|w| solid.contains(&w))).collect();
        for &k in &d.k1 {
            let mk = in_gap(k);
            let ck = &d.gaps[k].c;
            for x in &mk {
                let Some(xy) = t.eval_exact(x, y) else { continue };
                let Some(span) = open_between(ck, &xy) else { continue };
                for z in &zs {
                    let hits = t.image(&span, &IntervalSet::point((*z).clone())).map(|i| !i.intersect(&solid).is_empty());
                    if hits == Some(true) {
                        if let Some(w) = check(x, y, z) {
                            return Some(w);
                        }
                    }
                }
            }
            for &l in &d.k1 {
                let cl = &d.gaps[l].c;
                for x in &mk {
                    for z in &in_gap(l) {
                        let (Some(u), Some(v)) = (t.eval_exact(ck, z), t.eval_exact(x, cl)) else { continue };
                        let Some(span) = open_between(&u, &v) else { continue };
                        if !span.intersect(&solid).is_empty() {
                            if let Some(w) = check(x, y, z) {
                                return Some(w);
                            }
                        }
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
    use crate::monotone::PiecewiseMonotoneFn;
    use crate::numeric::{half, rat};
    use crate::value::Value;

    fn parse(s: &str) -> PiecewiseMonotoneFn {
        s.parse().unwrap()
    }

    fn plateau() -> PiecewiseMonotoneFn {
        parse("monotone: nondecreasing\nsegment [0,1/2] const 1/2\nsegment (1/2,1] linear 1 0")
    }

    #[test]
    fn plateau_inclusions_hold_with_product() {
        let d = plateau().decompose();
        let t = TNormDescriptor::product();
        let mut log = Vec::new();
        assert!(inclusion_ii(&t, &d, &mut log).0.is_yes());
        assert!(inclusion_iii(&t, &d, &mut log).0.is_yes());
        assert_eq!(log[0].values.to_string(), "(1/4,1]");
        assert_eq!(log[1].values.to_string(), "[1/4,1/2]");
        assert!(h_k_sets(&t, &d).unwrap().is_empty());
    }

    #[test]
    fn halfprod_inclusion_fails_at_one_eighth() {
        let f = parse("monotone: nondecreasing\nsegment [0,1/4) linear 1/2 0\nsegment [1/4,1] linear 13/12 -1/12");
        let d = f.decompose();
        assert_eq!(d.m.to_string(), "[0,1/8)∪[3/16,1]");
        let t = TNormDescriptor::half_product();
        let (ii, _) = check_inclusion_conditions(&t, &d);
        let Some(Witness::Condition { value, .. }) = ii.witness() else { panic!("{ii}") };
        assert!(ii.is_no());
        let op = GeneratedOp::new(f, t);
        assert!(ii.witness().unwrap().recheck(&op, Property::ConditionallyCancellative));
        assert!(value >= &rat(1, 8) && value < &rat(3, 16));
    }

    #[test]
    fn jump_at_one_has_empty_h() {
        let f = parse("monotone: nondecreasing\nsegment [0,1) linear 1/2 0\npoint 1 = 1");
        let hs = h_k_sets(&TNormDescriptor::product(), &f.decompose()).unwrap();
        assert_eq!(hs.len(), 1);
        assert!(hs[0].1.is_empty());
    }

    #[test]
    fn plateau_gives_equal_values() {
        let f = parse("monotone: nondecreasing\nsegment [0,1/2) const 1/2\nsegment [1/2,1] linear 1 0");
        let d = f.decompose();
        let op = GeneratedOp::new(f, TNormDescriptor::product());
        let w = plateau_witness(&op, &d, Property::Cancellative).unwrap();
        assert!(w.recheck(&op, Property::Cancellative));
        let Witness::EqualValues { value, .. } = &w else { panic!() };
        assert_eq!(value, &Value::Exact(Rational::zero()));
        assert!(plateau_witness(&op, &d, Property::ConditionallyCancellative).is_none());
    }

    #[test]
    fn samples_respect_open_ends() {
        let s: IntervalSet = "(0,1/2]".parse().unwrap();
        let pts = samples(&s, 1);
        assert_eq!(pts, vec![rat(1, 4), half()]);
    }
}
