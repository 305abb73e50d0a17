//! Three-valued classification of generated operations.
//!
//! Every `Yes` cites the exact conditions it rests on and every `No` carries
//! a witness that can be re-evaluated through [`GeneratedOp`]. Anything the
//! exact routes cannot settle is reported as `Unknown` with the reason.

mod conditions;
mod continuity;
mod harness;
mod orchestrate;
mod search;

use std::fmt;

use num_traits::Zero;

use crate::generated::GeneratedOp;
use crate::monotone::{Decomposition, Side};
use crate::numeric::{one, IntervalSet, Rational};
use crate::oracle::power_sequence;
use crate::value::{BinaryOp, Value};

pub use conditions::{check_inclusion_conditions, h_k_sets};
pub use continuity::check_continuity;
pub use harness::{consistency_harness, harness_points, Agreement, HarnessReport, MatrixRow};
pub use orchestrate::classify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Yes => "Yes",
            Status::No => "No",
            Status::Unknown => "Unknown",
        })
    }
}

/// Properties reported for every classified operation, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    TSubnorm,
    TNorm,
    ConditionallyCancellative,
    Cancellative,
    StrictlyMonotoneOp,
    Archimedean,
    Continuous,
    Proper,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::TSubnorm,
        Property::TNorm,
        Property::ConditionallyCancellative,
        Property::Cancellative,
        Property::StrictlyMonotoneOp,
        Property::Archimedean,
        Property::Continuous,
        Property::Proper,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Property::TSubnorm => "t_subnorm",
            Property::TNorm => "t_norm",
            Property::ConditionallyCancellative => "conditionally_cancellative",
            Property::Cancellative => "cancellative",
            Property::StrictlyMonotoneOp => "strictly_monotone_op",
            Property::Archimedean => "archimedean",
            Property::Continuous => "continuous",
            Property::Proper => "proper",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// A concrete refutation. Arguments are points of `[0,1]` fed to `F`,
/// except for [`Witness::Condition`], which refers to values of `T`.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `F(x,y) = F(x,z) = value` with `y < z`.
    EqualValues { x: Rational, y: Rational, z: Rational, value: Value },
    /// `F(x,1) = value ≠ x`.
    NotNeutral { x: Rational, value: Value },
    /// `F(F(x,y),z) = lhs ≠ rhs = F(x,F(y,z))`.
    NonAssociative { x: Rational, y: Rational, z: Rational, lhs: Value, rhs: Value },
    /// `F(x,y) = value` but the one-sided limit in the first argument is `limit`.
    Jump { x: Rational, y: Rational, side: Side, value: Rational, limit: Rational },
    /// Powers of `x` settle at `value ≥ y` from step `step` on.
    Stagnation { x: Rational, y: Rational, step: u32, value: Rational },
    /// `T(a,b) = value`, which lies inside (or outside) `target`, refuting
    /// the named condition.
    Condition { condition: String, a: Rational, b: Rational, value: Rational, target: IntervalSet, inside: bool },
}

impl Witness {
    /// Re-evaluates the witness and confirms that it refutes `property`.
    pub fn recheck(&self, op: &GeneratedOp, property: Property) -> bool {
        match self {
            Witness::EqualValues { x, y, z, value } => {
                let (a, b) = (op.apply(x, y), op.apply(x, z));
                let equal = y != z && a.certainly_eq(&b) && a.certainly_eq(value);
                match property {
                    Property::ConditionallyCancellative => equal && a.certainly_positive(),
                    Property::Cancellative | Property::StrictlyMonotoneOp => equal && !x.is_zero(),
                    _ => false,
                }
            }
            Witness::NotNeutral { x, .. } => op.apply(x, &one()).certainly_ne(&Value::Exact(x.clone())),
            Witness::NonAssociative { x, y, z, .. } => match (op.eval_exact(x, y), op.eval_exact(y, z)) {
                (Some(xy), Some(yz)) => op.eval_exact(&xy, z) != op.eval_exact(x, &yz),
                _ => false,
            },
            Witness::Jump { x, y, side, value, limit } => {
                value != limit
                    && op.eval_exact(x, y).as_ref() == Some(value)
                    && op.limit_first_arg(x, y, *side).as_ref() == Some(limit)
            }
            Witness::Stagnation { x, y, step, value } => {
                let powers = power_sequence(op, x, step + 2);
                let at = |i: usize| powers.get(i).and_then(Value::exact).cloned();
                let s = *step as usize;
                at(s).as_ref() == Some(value) && at(s + 1).as_ref() == Some(value) && value >= y
            }
            Witness::Condition { a, b, value, target, inside, .. } => {
                op.t().eval_exact(a, b).as_ref() == Some(value) && target.contains(value) == *inside
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::EqualValues { x, y, z, value } => write!(f, "F({x},{y}) = F({x},{z}) = {value}"),
            Witness::NotNeutral { x, value } => write!(f, "F({x},1) = {value} ≠ {x}"),
            Witness::NonAssociative { x, y, z, lhs, rhs } => {
                write!(f, "F(F({x},{y}),{z}) = {lhs} ≠ {rhs} = F({x},F({y},{z}))")
            }
            Witness::Jump { x, y, side, value, limit } => {
                let s = if *side == Side::Left { "-" } else { "+" };
                write!(f, "F({x},{y}) = {value} but F({x}{s},{y}) = {limit}")
            }
            Witness::Stagnation { x, y, step, value } => {
                write!(f, "powers of {x} stay at {value} ≥ {y} from step {step}")
            }
            Witness::Condition { condition, a, b, value, target, inside } => {
                let rel = if *inside { "∈" } else { "∉" };
                write!(f, "{condition}: T({a},{b}) = {value} {rel} {target}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// Conditions verified exactly.
    Conditions(Vec<String>),
    Witness(Witness),
    Reason(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub evidence: Evidence,
}

impl Verdict {
    pub fn yes<S: Into<String>>(conditions: impl IntoIterator<Item = S>) -> Self {
        Verdict { status: Status::Yes, evidence: Evidence::Conditions(conditions.into_iter().map(Into::into).collect()) }
    }

    pub fn no(w: Witness) -> Self {
        Verdict { status: Status::No, evidence: Evidence::Witness(w) }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict { status: Status::Unknown, evidence: Evidence::Reason(reason.into()) }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.evidence {
            Evidence::Witness(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.status == Status::Yes
    }

    pub fn is_no(&self) -> bool {
        self.status == Status::No
    }

    /// Conjunction: `No` wins and keeps its witness, then `Unknown`.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self.status, other.status) {
            (Status::No, _) => self,
            (_, Status::No) => other,
            (Status::Unknown, _) => self,
            (_, Status::Unknown) => other,
            _ => {
                let mut all = match self.evidence {
                    Evidence::Conditions(c) => c,
                    _ => vec![],
                };
                if let Evidence::Conditions(c) = other.evidence {
                    for x in c {
                        if !all.contains(&x) {
                            all.push(x);
                        }
                    }
                }
                Verdict::yes(all)
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        match &self.evidence {
            Evidence::Conditions(c) if c.is_empty() => Ok(()),
            Evidence::Conditions(c) => write!(f, " [{}]", c.join("; ")),
            Evidence::Witness(w) => write!(f, " [witness: {w}]"),
            Evidence::Reason(r) => write!(f, " [{r}]"),
        }
    }
}

/// One exactly evaluated condition: the computed set, the set it was
/// compared with, and whether the comparison held.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionRecord {
    pub name: String,
    pub values: IntervalSet,
    pub target: IntervalSet,
    pub holds: bool,
}

impl fmt::Display for ConditionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outcome = if self.holds { "holds" } else { "fails" };
        write!(f, "{}: {} vs {}: {outcome}", self.name, self.values, self.target)
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub function: String,
    pub tnorm: String,
    pub verdicts: Vec<(Property, Verdict)>,
    pub decomposition: Decomposition,
    pub conditions: Vec<ConditionRecord>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn verdict(&self, p: Property) -> &Verdict {
        &self.verdicts.iter().find(|(q, _)| *q == p).expect("every property is reported").1
    }

    pub fn status(&self, p: Property) -> Status {
        self.verdict(p).status
    }

    /// 2 when a headline property is refuted, 3 when one is undecided, else 0.
    pub fn exit_code(&self) -> i32 {
        let headline = [Property::TSubnorm, Property::ConditionallyCancellative].map(|p| self.status(p));
        if headline.contains(&Status::No) {
            2
        } else if headline.contains(&Status::Unknown) {
            3
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("function: {}\n", self.function));
        out.push_str(&format!("t-norm: {}\n", self.tnorm));
        out.push_str(&format!("decomposition: {}\n", self.decomposition));
        if !self.conditions.is_empty() {
            out.push_str("conditions:\n");
            for c in &self.conditions {
                out.push_str(&format!("  {c}\n"));
            }
        }
        out.push_str("verdicts:\n");
        for (p, v) in &self.verdicts {
            out.push_str(&format!("  {p}: {v}\n"));
        }
        if !self.notes.is_empty() {
            out.push_str("notes:\n");
            for n in &self.notes {
                out.push_str(&format!("  {n}\n"));
            }
        }
        out
    }

    /// `key=value` lines in a fixed order, one document per report.
    pub fn render_structured(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: &str| out.push_str(&format!("{k}={}\n", v.replace('\n', " ")));
        put("function", &self.function);
        put("tnorm", &self.tnorm);
        for (p, v) in &self.verdicts {
            put(p.key(), &v.status.to_string());
            let detail = match &v.evidence {
                Evidence::Conditions(c) => format!("conditions:{}", c.join("; ")),
                Evidence::Witness(w) => format!("witness:{w}"),
                Evidence::Reason(r) => format!("reason:{r}"),
            };
            put(&format!("{}.evidence", p.key()), &detail);
        }
        put("decomposition", &self.decomposition.to_string());
        for (i, c) in self.conditions.iter().enumerate() {
            put(&format!("condition.{}", i + 1), &c.to_string());
        }
        for (i, n) in self.notes.iter().enumerate() {
            put(&format!("note.{}", i + 1), n);
        }
        put("exit", &self.exit_code().to_string());
        out
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}
