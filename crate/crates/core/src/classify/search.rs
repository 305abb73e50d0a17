//! Targeted witness search: exhaustive oracle scans over points chosen from
//! the structure of `f`, used once an exact route has settled that a law
//! fails and a concrete refutation is still needed.

use crate::generated::GeneratedOp;
use crate::monotone::Decomposition;
use crate::numeric::{midpoint, Rational};
use crate::oracle::{check_property, grid, Counterexample, PropertyName};

use super::{Property, Witness};

/// Breakpoints of `f`, preimages of every gap endpoint and kept value, both
/// ends of each plateau, and piece midpoints, on top of an `n`-grid.
pub(crate) fn targeted_points(op: &GeneratedOp, d: &Decomposition, n: u32) -> Vec<Rational> {
    let f = op.f();
    let mut extra = f.breakpoints();
    for g in &d.gaps {
        for v in [&g.lo, &g.hi, &g.c] {
            extra.extend(f.preimage(v));
        }
    }
    for v in d.q.endpoints() {
        if let Some((a, b)) = f.plateau_preimages(&v) {
            extra.push(a);
            extra.push(b);
        }
    }
    for p in f.pieces() {
        let dom = &p.domain;
        extra.push(midpoint(&dom.lo().value, &dom.hi().value));
    }
    grid(n, extra)
}

/// Runs the oracle for `property` over `pts` and converts the first
/// counterexample into a re-checked witness.
pub(crate) fn search(op: &GeneratedOp, property: Property, pts: &[Rational]) -> Option<Witness> {
    let name = match property {
        Property::TSubnorm => PropertyName::Associativity,
        Property::TNorm => PropertyName::NeutralOne,
        Property::ConditionallyCancellative => PropertyName::ConditionalCancellation,
        Property::Cancellative | Property::StrictlyMonotoneOp => PropertyName::Cancellation,
        _ => return None,
    };
    let result = check_property(op, name, pts);
    let w = to_witness(result.outcome.counterexample()?)?;
    w.recheck(op, property).then_some(w)
}

pub(crate) fn to_witness(c: &Counterexample) -> Option<Witness> {
    let arg = |i: usize| c.inputs[i].clone();
    match c.property {
        PropertyName::Associativity => Some(Witness::NonAssociative {
            x: arg(0),
            y: arg(1),
            z: arg(2),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
        }),
        PropertyName::NeutralOne => Some(Witness::NotNeutral { x: arg(0), value: c.lhs.clone() }),
        PropertyName::ConditionalCancellation | PropertyName::Cancellation | PropertyName::StrictMonotonicity => {
            c.lhs.certainly_eq(&c.rhs).then(|| Witness::EqualValues { x: arg(0), y: arg(1), z: arg(2), value: c.lhs.clone() })
        }
        _ => None,
    }
}
