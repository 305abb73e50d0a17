//! Operations `F(x,y) = f⁽⁻¹⁾(T(f(x), f(y)))` built from a monotone map and
//! a t-norm, additively generated operations, and the λ-construction that
//! splits a strict proper t-subnorm into a scaled identity and a t-norm.

use crate::error::{Error, Result};
use crate::monotone::{Approach, Direction, PiecewiseMonotoneFn, Side};
use crate::numeric::{in_unit, one, to_f64, zero, Rational};
use crate::tnorm::{Family, Generator, GeneratorSpec, TNormDescriptor};
use crate::value::{BinaryOp, Value};

#[derive(Clone, Debug)]
pub struct GeneratedOp {
    f: PiecewiseMonotoneFn,
    finv: PiecewiseMonotoneFn,
    t: TNormDescriptor,
}

impl GeneratedOp {
    pub fn new(f: PiecewiseMonotoneFn, t: TNormDescriptor) -> Self {
        let finv = f.pseudo_inverse();
        GeneratedOp { f, finv, t }
    }

    pub fn f(&self) -> &PiecewiseMonotoneFn {
        &self.f
    }

    pub fn finv(&self) -> &PiecewiseMonotoneFn {
        &self.finv
    }

    pub fn t(&self) -> &TNormDescriptor {
        &self.t
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Result<Value> {
        for a in [x, y] {
            if !in_unit(a) {
                return Err(Error::Domain(a.clone()));
            }
        }
        Ok(self.apply(x, y))
    }

    /// Exact value, or `None` for generator-backed t-norms.
    pub fn eval_exact(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        self.eval(x, y).ok()?.exact().cloned()
    }

    /// Exact limit of `F(x', y)` as `x'` tends to `x` from `side`.
    /// `None` for inexact t-norms or when that side leaves `[0,1]`.
    pub fn limit_first_arg(&self, x: &Rational, y: &Rational, side: Side) -> Option<Rational> {
        let (u, how) = self.f.approach(x, side)?;
        let (w, how) = self.t.approach(&u, how, &self.f.at(y))?;
        Some(match how {
            Approach::Constant => self.finv.at(&w),
            Approach::FromBelow => self.finv.side_limit(&w, Side::Left),
            Approach::FromAbove => self.finv.side_limit(&w, Side::Right),
        })
    }

    /// Applies the pseudo-inverse to a t-norm output. Enclosures that the
    /// pseudo-inverse maps to one point become exact.
    pub fn pullback(&self, v: &Value) -> Value {
        let clamp = |r: Rational| r.clamp(zero(), one());
        match v {
            Value::Exact(r) => Value::Exact(self.finv.at(&clamp(r.clone()))),
            Value::Approx { .. } => {
                let (lo, hi) = v.rational_bounds();
                let (mut a, mut b) = (self.finv.at(&clamp(lo)), self.finv.at(&clamp(hi)));
                if self.f.direction() == Direction::NonIncreasing {
                    std::mem::swap(&mut a, &mut b);
                }
                if a == b {
                    Value::Exact(a)
                } else {
                    let (fa, fb) = (to_f64(&a), to_f64(&b));
                    Value::approx((fa + fb) / 2.0, (fb - fa) / 2.0 + f64::EPSILON)
                }
            }
        }
    }
}

impl BinaryOp for GeneratedOp {
    fn apply(&self, x: &Rational, y: &Rational) -> Value {
        let v = self.t.apply(&self.f.at(x), &self.f.at(y));
        self.pullback(&v)
    }

    fn describe(&self) -> String {
        format!("F from f with {} pieces and T={}", self.f.pieces().len(), self.t)
    }
}

/// `(x,y) ↦ g⁽⁻¹⁾(g(x) + g(y))` for a registered generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdditiveOp(pub GeneratorSpec);

pub fn additive_generated(spec: GeneratorSpec) -> AdditiveOp {
    AdditiveOp(spec)
}

impl BinaryOp for AdditiveOp {
    fn apply(&self, x: &Rational, y: &Rational) -> Value {
        self.0.combine(x, y)
    }

    fn describe(&self) -> String {
        format!("additive generator g(x) = {}", self.0.generator.formula())
    }
}

/// Splits the operation generated by `gen` into `f(x) = λx` and a strictly
/// monotone t-norm whose generator is `t(x) = g(x/λ)` below 1 and `t(1) = 0`.
///
/// The t-norm is reproduced faithfully on `[0,λ]² ∪ ({1}×[0,1]) ∪ ([0,1]×{1})`,
/// which contains every argument pair the composition ever sees.
pub fn lambda_decompose(spec: GeneratorSpec, lambda: Rational) -> Result<(PiecewiseMonotoneFn, TNormDescriptor)> {
    if !(lambda > zero() && lambda < one()) {
        return Err(Error::Parameter(format!("lambda must lie in (0,1), got {lambda}")));
    }
    let f = PiecewiseMonotoneFn::scaled(lambda.clone())?;
    let t = TNormDescriptor::new(Family::Lambda(spec, lambda))?;
    Ok((f, t))
}

/// The generator `t` of the λ-construction.
pub fn lambda_generator(generator: Generator, lambda: &Rational, x: f64) -> f64 {
    if x >= 1.0 {
        0.0
    } else {
        generator.g(x / to_f64(lambda))
    }
}

/// Largest deviation between the additively generated operation and its
/// λ-decomposition composed back together, over an `(n+1)²` grid.
pub fn lambda_round_trip_error(spec: GeneratorSpec, lambda: Rational, n: u32) -> Result<f64> {
    let (f, t) = lambda_decompose(spec, lambda)?;
    let op = GeneratedOp::new(f, t);
    let direct = additive_generated(spec);
    let mut worst = 0.0f64;
    for i in 0..=n {
        for j in 0..=n {
            let x = Rational::new(i.into(), n.into());
            let y = Rational::new(j.into(), n.into());
            let d = (op.apply(&x, &y).to_f64() - direct.apply(&x, &y).to_f64()).abs();
            worst = worst.max(d);
        }
    }
    Ok(worst)
}
