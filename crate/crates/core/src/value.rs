//! Values produced by binary operations: exact rationals, or floating
//! midpoints with a rigorous error radius for generator-backed families.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::numeric::{from_f64, to_f64, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx { mid: f64, rad: f64 },
}

impl Value {
    pub fn approx(mid: f64, rad: f64) -> Self {
        Value::Approx { mid, rad: rad.abs() }
    }

    /// Floating enclosure of `r`, used to stop exact denominators from
    /// growing without bound in long iterations.
    pub fn enclose(r: &Rational) -> Self {
        let m = to_f64(r);
        Value::approx(m, m.abs() * 4.0 * f64::EPSILON + f64::MIN_POSITIVE)
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Approx { mid, .. } => *mid,
        }
    }

    pub fn radius(&self) -> f64 {
        match self {
            Value::Exact(_) => 0.0,
            Value::Approx { rad, .. } => *rad,
        }
    }

    /// Enclosing `[lo, hi]` in floating point (exact values get one ulp of slack).
    pub fn bounds(&self) -> (f64, f64) {
        match self {
            Value::Exact(r) => {
                let m = to_f64(r);
                let e = m.abs() * f64::EPSILON;
                (m - e, m + e)
            }
            Value::Approx { mid, rad } => (mid - rad, mid + rad),
        }
    }

    /// Enclosing rational bounds, exact for exact values.
    pub fn rational_bounds(&self) -> (Rational, Rational) {
        match self {
            Value::Exact(r) => (r.clone(), r.clone()),
            Value::Approx { mid, rad } => (
                from_f64(mid - rad).unwrap_or_else(Rational::zero),
                from_f64(mid + rad).unwrap_or_else(Rational::zero),
            ),
        }
    }

    /// Ordering when it is certain, `None` when the enclosures overlap.
    pub fn certain_cmp(&self, other: &Value) -> Option<Ordering> {
        if let (Value::Exact(a), Value::Exact(b)) = (self, other) {
            return Some(a.cmp(b));
        }
        let (alo, ahi) = self.bounds();
        let (blo, bhi) = other.bounds();
        if ahi < blo {
            Some(Ordering::Less)
        } else if bhi < alo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn certainly_lt(&self, other: &Value) -> bool {
        self.certain_cmp(other) == Some(Ordering::Less)
    }

    pub fn certainly_gt(&self, other: &Value) -> bool {
        self.certain_cmp(other) == Some(Ordering::Greater)
    }

    pub fn certainly_ne(&self, other: &Value) -> bool {
        matches!(self.certain_cmp(other), Some(Ordering::Less | Ordering::Greater))
    }

    pub fn certainly_eq(&self, other: &Value) -> bool {
        self.certain_cmp(other) == Some(Ordering::Equal)
    }

    /// True unless the value is certainly positive or certainly zero.
    pub fn sign_uncertain(&self) -> bool {
        match self {
            Value::Exact(_) => false,
            Value::Approx { mid, rad } => mid - rad <= 0.0,
        }
    }

    pub fn certainly_positive(&self) -> bool {
        match self {
            Value::Exact(r) => r > &Rational::zero(),
            Value::Approx { mid, rad } => mid - rad > 0.0,
        }
    }

    /// Decimal rendering with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            Value::Exact(r) => crate::numeric::to_decimal(r, digits),
            Value::Approx { mid, .. } => format!("{mid:.digits$}"),
        }
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Exact(r)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Approx { mid, rad } => write!(f, "{mid:.15} (±{rad:.1e})"),
        }
    }
}

/// Any binary operation on `[0,1]` the oracle can probe.
pub trait BinaryOp: Sync {
    fn apply(&self, x: &Rational, y: &Rational) -> Value;

    fn describe(&self) -> String;
}

impl<F> BinaryOp for (String, F)
where
    F: Fn(&Rational, &Rational) -> Value + Sync,
{
    fn apply(&self, x: &Rational, y: &Rational) -> Value {
        (self.1)(x, y)
    }

    fn describe(&self) -> String {
        self.0.clone()
    }
}
