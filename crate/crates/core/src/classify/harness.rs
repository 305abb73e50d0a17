//! Cross-checks the classifier against the brute-force oracle.
//!
//! A `Yes` from the classifier is a claim about all of `[0,1]`, so any
//! oracle counterexample on a finite grid contradicts it outright. Those
//! pairs are counted as hard failures. A `No` that the grid cannot confirm
//! is expected, since many witnesses sit at points no uniform grid hits.

use std::fmt;

use crate::generated::GeneratedOp;
use crate::monotone::PiecewiseMonotoneFn;
use crate::numeric::{rat, Rational};
use crate::oracle::{check_property, continuity_scan, grid, Outcome, PropertyName};
use crate::tnorm::TNormDescriptor;

use super::search::targeted_points;
use super::{classify, ClassificationReport, Property, Status};

/// How one classifier verdict relates to the oracle results behind it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    /// Yes with every law holding on the grid, or No with a grid counterexample.
    Agree,
    /// No, but the grid holds no counterexample.
    NotWitnessed,
    /// Yes and no counterexample, but some grid instance was undecided.
    OracleUndecided,
    /// The classifier reported Unknown.
    ClassifierUnknown,
    /// Yes contradicted by a grid counterexample.
    HardFailure,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Agreement::Agree => "agree",
            Agreement::NotWitnessed => "not witnessed on grid",
            Agreement::OracleUndecided => "oracle undecided",
            Agreement::ClassifierUnknown => "classifier unknown",
            Agreement::HardFailure => "HARD FAILURE",
        })
    }
}

/// One row of the agreement matrix.
#[derive(Clone, Debug)]
pub struct MatrixRow {
    pub property: Property,
    pub classifier: Status,
    /// Oracle law name with its outcome label and counterexample, if any.
    pub oracle: Vec<(String, Outcome)>,
    pub agreement: Agreement,
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub report: ClassificationReport,
    pub grid_n: u32,
    /// Number of grid points, breakpoints and decomposition preimages included.
    pub points: usize,
    pub rows: Vec<MatrixRow>,
}

impl HarnessReport {
    pub fn hard_failures(&self) -> usize {
        self.rows.iter().filter(|r| r.agreement == Agreement::HardFailure).count()
    }

    pub fn row(&self, p: Property) -> &MatrixRow {
        self.rows.iter().find(|r| r.property == p).expect("every property has a row")
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("agreement matrix at n={} ({} points)\n", self.grid_n, self.points);
        for r in &self.rows {
            let laws: Vec<String> = r.oracle.iter().map(|(k, o)| format!("{k}={}", o.label())).collect();
            s += &format!("  {:<28} {:<8} {:<60} {}\n", r.property.key(), r.classifier, laws.join(" "), r.agreement);
            for (_, o) in &r.oracle {
                if let Outcome::Fails(c) = o {
                    s += &format!("    counterexample: {c}\n");
                }
            }
        }
        s += &format!("hard failures: {}\n", self.hard_failures());
        s
    }
}

/// Oracle laws whose failure refutes a `Yes` for `p`.
fn laws_for(p: Property) -> Vec<PropertyName> {
    use PropertyName::*;
    let subnorm = vec![Commutativity, Monotonicity, BoundedByMin, Associativity];
    match p {
        Property::TSubnorm | Property::Proper => subnorm,
        Property::TNorm => [subnorm, vec![NeutralOne]].concat(),
        Property::ConditionallyCancellative => [subnorm, vec![ConditionalCancellation]].concat(),
        Property::Cancellative => [subnorm, vec![Cancellation]].concat(),
        Property::StrictlyMonotoneOp => vec![StrictMonotonicity],
        Property::Archimedean => vec![ArchimedeanAt(PropertyName::DEFAULT_ARCHIMEDEAN_CAP)],
        Property::Continuous => vec![],
    }
}

fn agreement(status: Status, outcomes: &[(String, Outcome)]) -> Agreement {
    let failed = outcomes.iter().any(|(_, o)| o.is_fail());
    let undecided = outcomes.iter().any(|(_, o)| matches!(o, Outcome::Undecided(_)));
    match status {
        Status::Unknown => Agreement::ClassifierUnknown,
        Status::Yes if failed => Agreement::HardFailure,
        Status::Yes if undecided => Agreement::OracleUndecided,
        Status::Yes => Agreement::Agree,
        Status::No if failed => Agreement::Agree,
        Status::No => Agreement::NotWitnessed,
    }
}

/// Classifies `F` generated by `f` and `t`, then runs every law through the
/// oracle on an `n`-grid extended by the breakpoints of f and preimages of
/// the decomposition endpoints.
pub fn consistency_harness(f: &PiecewiseMonotoneFn, t: &TNormDescriptor, n: u32) -> HarnessReport {
    let report = classify(f, t);
    let op = GeneratedOp::new(f.clone(), t.clone());
    let pts = targeted_points(&op, &f.decompose(), n);
    let mut cache: Vec<(PropertyName, Outcome)> = Vec::new();
    let mut rows = Vec::new();
    for p in Property::ALL {
        let mut oracle = Vec::new();
        for law in laws_for(p) {
            let outcome = match cache.iter().find(|(l, _)| *l == law) {
                Some((_, o)) => o.clone(),
                None => {
                    let o = check_property(&op, law, &pts).outcome;
                    cache.push((law, o.clone()));
                    o
                }
            };
            oracle.push((law.key().to_string(), outcome));
        }
        if p == Property::Continuous {
            let ys = grid(8, f.breakpoints());
            let outcome = match continuity_scan(&op, &ys, &rat(1, 1000), &pts, 10, 1e-4) {
                Some(j) => Outcome::Undecided(format!("jump: {j}")),
                None => Outcome::Holds,
            };
            oracle.push(("continuity_scan".to_string(), outcome));
        }
        let status = report.status(p);
        // a continuity jump is found numerically, so it is reported as
        // undecided evidence and compared separately below
        let mut agreement = agreement(status, &oracle);
        if p == Property::Continuous {
            let jump = matches!(oracle.last(), Some((_, Outcome::Undecided(_))));
            agreement = match (status, jump) {
                (Status::Unknown, _) => Agreement::ClassifierUnknown,
                (Status::Yes, true) => Agreement::HardFailure,
                (Status::No, false) => Agreement::NotWitnessed,
                _ => Agreement::Agree,
            };
        }
        rows.push(MatrixRow { property: p, classifier: status, oracle, agreement });
    }
    HarnessReport { report, grid_n: n, points: pts.len(), rows }
}

/// Points used by the harness, exposed for callers that want to rerun a law.
pub fn harness_points(f: &PiecewiseMonotoneFn, t: &TNormDescriptor, n: u32) -> Vec<Rational> {
    let op = GeneratedOp::new(f.clone(), t.clone());
    targeted_points(&op, &f.decompose(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_with_product_agrees_everywhere() {
        let h = consistency_harness(&PiecewiseMonotoneFn::identity(), &TNormDescriptor::product(), 12);
        // a t-norm is never a proper t-subnorm
        assert_eq!(h.row(Property::Proper).classifier, Status::No);
        for r in h.rows.iter().filter(|r| r.property != Property::Proper) {
            assert_eq!(r.classifier, Status::Yes, "{}", h.render_text());
            assert_eq!(r.agreement, Agreement::Agree, "{}", h.render_text());
            assert!(r.oracle.iter().all(|(_, o)| *o == Outcome::Holds));
        }
        assert_eq!(h.hard_failures(), 0);
    }

    #[test]
    fn plateau_with_product_is_conditionally_cancellative() {
        let f: PiecewiseMonotoneFn = "monotone: nondecreasing\nsegment [0,1/2] const 1/2\nsegment (1/2,1] linear 1 0".parse().unwrap();
        let h = consistency_harness(&f, &TNormDescriptor::product(), 24);
        let r = h.row(Property::ConditionallyCancellative);
        assert_eq!(r.classifier, Status::Yes);
        assert_eq!(r.agreement, Agreement::Agree, "{}", h.render_text());
        assert_eq!(h.hard_failures(), 0);
    }
}
