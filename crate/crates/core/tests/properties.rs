//! Randomised invariants: interval-set algebra, the function grammar,
//! pseudo-inverses against an independent bisection oracle, and soundness
//! of classifier verdicts.

mod common;

use common::{random_fn, random_fn_text, random_point, rng, simplest_between, sup_by_bisection, Shape};
use num_traits::{One, Zero};
use proptest::prelude::*;
use subnorm_forge::classify::{classify, Property, Status};
use subnorm_forge::generated::GeneratedOp;
use subnorm_forge::monotone::PiecewiseMonotoneFn;
use subnorm_forge::numeric::{rat, Bound, Interval, IntervalSet, Rational};
use subnorm_forge::oracle::{check_property, grid, PropertyName};
use subnorm_forge::tnorm::TNormDescriptor;
use subnorm_forge::value::BinaryOp;

fn small() -> impl Strategy<Value = Rational> {
    (1i64..=12).prop_flat_map(|d| (0..=d).prop_map(move |n| rat(n, d)))
}

fn interval() -> impl Strategy<Value = Option<Interval>> {
    (small(), small(), any::<bool>(), any::<bool>()).prop_map(|(a, b, lc, rc)| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let bound = |v: Rational, closed: bool| if closed { Bound::closed(v) } else { Bound::open(v) };
        Interval::new(bound(a, lc), bound(b, rc))
    })
}

fn set() -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec(interval(), 0..4).prop_map(|parts| IntervalSet::new(parts.into_iter().flatten().collect()))
}

/// Every endpoint the strategies can produce (denominators up to 12) and
/// the midpoints between neighbouring ones.
fn probes() -> Vec<Rational> {
    let mut ends: Vec<Rational> = (1..=12).flat_map(|d| (0..=d).map(move |n| rat(n, d))).collect();
    ends.sort();
    ends.dedup();
    let mids: Vec<Rational> = ends.windows(2).map(|w| (&w[0] + &w[1]) / rat(2, 1)).collect();
    ends.extend(mids);
    ends
}

proptest! {
    #[test]
    fn set_operations_agree_with_membership(a in set(), b in set()) {
        let (u, i, d) = (a.union(&b), a.intersect(&b), a.difference(&b));
        for x in probes() {
            let (ia, ib) = (a.contains(&x), b.contains(&x));
            prop_assert_eq!(u.contains(&x), ia || ib);
            prop_assert_eq!(i.contains(&x), ia && ib);
            prop_assert_eq!(d.contains(&x), ia && !ib);
        }
        prop_assert_eq!(a.is_subset(&b), a.difference(&b).is_empty());
        if let Some(w) = a.subset_witness(&b) {
            prop_assert!(a.contains(&w) && !b.contains(&w));
        }
    }

    #[test]
    fn set_rendering_round_trips(a in set()) {
        let text = a.to_string();
        let back: IntervalSet = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn open_hull_is_strictly_between_extremes(a in set()) {
        let h = a.o_hull();
        for x in probes() {
            let inside = match (a.inf(), a.sup()) {
                (Some(lo), Some(hi)) if a.has_two_points() => lo < &x && &x < hi,
                _ => false,
            };
            prop_assert_eq!(h.contains(&x), inside);
        }
    }

    #[test]
    fn function_text_round_trips(seed in any::<u64>(), decreasing in any::<bool>()) {
        let shape = Shape { decreasing, ..Shape::default() };
        let f = random_fn(&mut rng(seed), 6, shape);
        let again: PiecewiseMonotoneFn = f.to_string().parse().unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(again.to_string(), f.to_string());
    }

    #[test]
    fn exact_tnorms_obey_their_laws(x in small(), y in small(), z in small()) {
        for t in [TNormDescriptor::product(), TNormDescriptor::minimum(), TNormDescriptor::hamacher()] {
            let e = |a: &Rational, b: &Rational| t.eval_exact(a, b).unwrap();
            prop_assert_eq!(e(&x, &y), e(&y, &x));
            prop_assert_eq!(e(&x, &Rational::one()), x.clone());
            prop_assert_eq!(e(&e(&x, &y), &z), e(&x, &e(&y, &z)));
            if y <= z {
                prop_assert!(e(&x, &y) <= e(&x, &z));
            }
        }
    }

    #[test]
    fn generated_ops_stay_below_min(seed in any::<u64>(), x in small(), y in small()) {
        let f = random_fn(&mut rng(seed), 6, Shape::default());
        for t in [TNormDescriptor::product(), TNormDescriptor::minimum(), TNormDescriptor::hamacher()] {
            let op = GeneratedOp::new(f.clone(), t);
            let v = op.eval_exact(&x, &y).unwrap();
            prop_assert!(v <= x.clone().min(y.clone()));
            prop_assert_eq!(op.eval_exact(&y, &x).unwrap(), v);
        }
    }
}

#[test]
fn simplest_rational_helper() {
    assert_eq!(simplest_between(&rat(3, 10), &rat(2, 5)), rat(1, 3));
    assert_eq!(simplest_between(&rat(1, 2), &rat(1, 2)), rat(1, 2));
    assert_eq!(simplest_between(&rat(5, 4), &rat(7, 4)), rat(3, 2));
    let x = rat(137, 1009);
    let eps = Rational::new(1.into(), num_bigint::BigInt::from(1u8) << 70);
    assert_eq!(simplest_between(&(&x - &eps), &(&x + &eps)), x);
}

#[test]
fn pseudo_inverse_matches_bisection_oracle() {
    let mut r = rng(2024);
    for i in 0..100 {
        let shape = Shape { decreasing: i % 4 == 3, ..Shape::default() };
        let f = random_fn(&mut r, 6, shape);
        let closed = f.pseudo_inverse();
        let mut ys: Vec<Rational> = (0..490).map(|_| random_point(&mut r)).collect();
        // values of f itself are where the pseudo-inverse jumps
        ys.extend(f.breakpoints().iter().map(|x| f.eval(x).unwrap()).take(10));
        ys.truncate(500);
        for y in &ys {
            let expected = sup_by_bisection(&f, y);
            assert_eq!(closed.eval(y).unwrap(), expected, "f={f} y={y}");
            assert_eq!(f.pseudo_inverse_at(y), expected, "f={f} y={y}");
        }
    }
}

#[test]
fn pseudo_inverse_composition_identities() {
    let mut r = rng(99);
    let shapes = [
        Shape::default(),
        Shape { decreasing: true, ..Shape::default() },
        Shape { right_continuous: true, ..Shape::default() },
        Shape { right_continuous: true, decreasing: true, ..Shape::default() },
        Shape { strict: true, ..Shape::default() },
        Shape { strict: true, decreasing: true, ..Shape::default() },
    ];
    for i in 0..120 {
        let shape = shapes[i % shapes.len()];
        let text = random_fn_text(&mut r, 6, shape);
        let f: PiecewiseMonotoneFn = text.parse().unwrap();
        let finv = f.pseudo_inverse();
        let identity_holds = f.is_right_continuous() || f.is_strictly_monotone();
        if shape.right_continuous || shape.strict {
            assert!(identity_holds, "{text}");
        }
        for _ in 0..60 {
            let x = random_point(&mut r);
            let fx = f.eval(&x).unwrap();
            let back = finv.eval(&fx).unwrap();
            assert!(back <= x, "f⁽⁻¹⁾(f({x})) = {back} > {x} for\n{text}");
            if identity_holds {
                assert_eq!(f.eval(&back).unwrap(), fx, "f∘f⁽⁻¹⁾∘f ≠ f at {x} for\n{text}");
            }
        }
    }
}

#[test]
fn continuous_strict_generators_from_zero_are_cancellative() {
    let mut r = rng(5);
    let shape = Shape { strict: true, continuous: true, zero_at_zero: true, ..Shape::default() };
    for _ in 0..100 {
        let f = random_fn(&mut r, 6, shape);
        let report = classify(&f, &TNormDescriptor::product());
        assert_eq!(report.status(Property::Cancellative), Status::Yes, "{report}");
        assert_eq!(report.status(Property::TSubnorm), Status::Yes, "{report}");
    }
}

#[test]
fn conditional_cancellation_is_decided_when_top_is_fixed() {
    let mut r = rng(11);
    for i in 0..60 {
        let shape = Shape { one_at_one: true, strict: i % 2 == 0, ..Shape::default() };
        let f = random_fn(&mut r, 5, shape);
        assert_eq!(f.eval(&Rational::one()).unwrap(), Rational::one());
        for t in [TNormDescriptor::product(), TNormDescriptor::hamacher()] {
            let report = classify(&f, &t);
            assert_ne!(report.status(Property::ConditionallyCancellative), Status::Unknown, "{report}");
        }
    }
}

#[test]
fn every_witness_rechecks_and_every_yes_survives_the_oracle() {
    let mut r = rng(31);
    let shapes = [
        Shape::default(),
        Shape { strict: true, ..Shape::default() },
        Shape { one_at_one: true, ..Shape::default() },
        Shape { continuous: true, ..Shape::default() },
    ];
    for i in 0..24 {
        let f = random_fn(&mut r, 5, shapes[i % shapes.len()]);
        let t = if i % 3 == 0 { TNormDescriptor::hamacher() } else { TNormDescriptor::product() };
        let op = GeneratedOp::new(f.clone(), t.clone());
        let report = classify(&f, &t);
        for p in Property::ALL {
            if let Some(w) = report.verdict(p).witness() {
                assert!(w.recheck(&op, p), "{p:?} witness {w} does not recheck\n{report}");
            }
        }
        let mut extra = f.breakpoints();
        extra.extend(f.breakpoints().iter().map(|x| f.eval(x).unwrap()).filter_map(|v| f.preimage(&v)));
        let pts = grid(24, extra);
        let laws: &[(Property, &[PropertyName])] = &[
            (Property::TSubnorm, &[PropertyName::Associativity, PropertyName::Commutativity, PropertyName::BoundedByMin]),
            (Property::TNorm, &[PropertyName::NeutralOne]),
            (Property::ConditionallyCancellative, &[PropertyName::ConditionalCancellation]),
            (Property::Cancellative, &[PropertyName::Cancellation]),
            (Property::StrictlyMonotoneOp, &[PropertyName::StrictMonotonicity]),
        ];
        for (p, names) in laws {
            if report.status(*p) != Status::Yes {
                continue;
            }
            for name in names.iter() {
                let outcome = check_property(&op, *name, &pts).outcome;
                assert!(!outcome.is_fail(), "{p:?} is Yes but {name} fails: {:?}\n{report}", outcome.counterexample());
            }
        }
        // F(x,0) = 0 and F ≤ min hold for every non-decreasing f
        for x in &pts {
            assert!(op.apply(x, &Rational::zero()).exact().is_some_and(Zero::is_zero));
        }
    }
}
