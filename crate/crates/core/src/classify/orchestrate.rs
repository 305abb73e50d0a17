//! Orchestration: degenerate shapes first, then the strictness gate, then
//! the inclusion conditions, then the `H_k` and `𝔏` checks. The laws are
//! decided separately and the reported properties are conjunctions of them.

use num_traits::{One, Zero};

use crate::generated::GeneratedOp;
use crate::monotone::{Decomposition, Direction, PiecewiseMonotoneFn};
use crate::numeric::{one, zero, Rational};
use crate::oracle::{grid, power_sequence_until, PropertyName};
use crate::tnorm::{Family, TNormDescriptor};
use crate::value::{BinaryOp, Value};

use super::conditions::{
    equal_values_from_violation, h_condition, inclusion_ii, inclusion_iii, inclusion_tmm, l_set_check, plateau_witness,
    COND_II, COND_III,
};
use super::continuity::continuity;
use super::search::{search, targeted_points};
use super::{ClassificationReport, ConditionRecord, Evidence, Property, Status, Verdict, Witness};

/// Grid resolution for targeted witness searches.
const SEARCH_N: u32 = 12;
/// Resolution of the sampled `𝔏` check.
const L_SET_N: u32 = 24;

/// The four laws everything else is assembled from.
struct Laws {
    /// Associativity, which together with the automatic properties of `F`
    /// makes it a t-subnorm.
    subnorm: Verdict,
    /// The conditional cancellation law on its own.
    ccl: Verdict,
    /// The cancellation law on its own.
    cl: Verdict,
    /// `F(x,1) = x` for all x.
    neutral: Verdict,
}

struct Ctx<'a> {
    op: &'a GeneratedOp,
    d: &'a Decomposition,
    log: Vec<ConditionRecord>,
    notes: Vec<String>,
    pts: Option<Vec<Rational>>,
}

/// Classifies `F(x,y) = f⁽⁻¹⁾(T(f(x), f(y)))`.
pub fn classify(f: &PiecewiseMonotoneFn, t: &TNormDescriptor) -> ClassificationReport {
    let op = GeneratedOp::new(f.clone(), t.clone());
    let d = f.decompose();
    let mut cx = Ctx { op: &op, d: &d, log: Vec::new(), notes: Vec::new(), pts: None };
    let laws = match cx.structural() {
        Some(l) => l,
        None if f.direction() == Direction::NonIncreasing => cx.nonincreasing(),
        None => cx.nondecreasing(),
    };
    cx.assemble(laws, f, t)
}

impl Ctx<'_> {
    fn f(&self) -> &PiecewiseMonotoneFn {
        self.op.f()
    }

    fn t(&self) -> &TNormDescriptor {
        self.op.t()
    }

    fn points(&mut self) -> Vec<Rational> {
        if self.pts.is_none() {
            self.pts = Some(targeted_points(self.op, self.d, SEARCH_N));
        }
        self.pts.clone().unwrap()
    }

    /// Targeted oracle search, falling back to `otherwise`.
    fn refute(&mut self, p: Property, otherwise: Verdict) -> Verdict {
        let pts = self.points();
        match search(self.op, p, &pts) {
            Some(w) => Verdict::no(w),
            None => otherwise,
        }
    }

    fn neutral_by_search(&mut self) -> Verdict {
        let reason = format!("F(x,1) = x on the targeted grid (n={SEARCH_N}) but no exact route applies");
        self.refute(Property::TNorm, Verdict::unknown(reason))
    }

    /// Shapes of `F` settled without the theorem routes.
    fn structural(&mut self) -> Option<Laws> {
        let (f, t) = (self.f(), self.t());
        if self.op.eval_exact(&one(), &one()).is_some_and(|v| v.is_zero()) {
            let zero_v = Value::Exact(zero());
            return Some(Laws {
                subnorm: Verdict::yes(["F ≡ 0"]),
                ccl: Verdict::yes(["F ≡ 0"]),
                cl: Verdict::no(Witness::EqualValues { x: one(), y: zero(), z: one(), value: zero_v.clone() }),
                neutral: Verdict::no(Witness::NotNeutral { x: one(), value: zero_v }),
            });
        }
        let spec = match &t.family {
            Family::Lambda(spec, lambda) if PiecewiseMonotoneFn::scaled(lambda.clone()).ok().as_ref() == Some(f) => spec,
            Family::Additive(spec) if f == &PiecewiseMonotoneFn::identity() => spec,
            _ => return None,
        };
        let generated = "F additively generated by a continuous strictly decreasing generator";
        let neutral = if spec.generator.at_one() == 0.0 {
            Verdict::yes(["generator vanishes at 1"])
        } else {
            Verdict::no(Witness::NotNeutral { x: one(), value: self.op.apply(&one(), &one()) })
        };
        Some(Laws {
            subnorm: Verdict::yes([generated]),
            ccl: Verdict::yes([generated]),
            cl: Verdict::yes([generated]),
            neutral,
        })
    }

    /// Non-increasing f: only `F ≡ 0` gives a conditionally cancellative
    /// t-subnorm, and that case is already structural.
    fn nonincreasing(&mut self) -> Laws {
        self.notes.push("f is non-increasing and F(1,1) > 0, so F is not the zero operation".into());
        let why = "f non-increasing with F ≢ 0; no exact route applies";
        let subnorm = self.refute(Property::TSubnorm, Verdict::unknown(why));
        let ccl = self.refute(Property::ConditionallyCancellative, Verdict::unknown(why));
        let cl = self.refute(Property::Cancellative, Verdict::unknown(why));
        let neutral = self.neutral_by_search();
        Laws { subnorm, ccl, cl, neutral }
    }

    fn nondecreasing(&mut self) -> Laws {
        let (f, d) = (self.f().clone(), self.d.clone());
        let f1 = f.eval(&one()).expect("1 lies in the domain");
        if d.q.contains(&f1) {
            return self.top_value_on_plateau();
        }
        if d.q.contains(&d.f1minus) {
            return self.last_plateau_reaches_one();
        }

        // witnesses valid for every t-norm
        let plateau_cl = plateau_witness(self.op, &d, Property::Cancellative);
        let plateau_ccl = plateau_witness(self.op, &d, Property::ConditionallyCancellative);

        let t = self.t().clone();
        let strict_tnorm = t.flags.strict() && t.flags.is_tnorm();
        let strictly_increasing = f.is_strictly_increasing();

        // cancellative route: continuous strictly increasing f with f(0)=0
        // has range [0,f(1)], which any t-norm maps into itself
        if strict_tnorm && strictly_increasing && f.is_continuous() && f.eval(&zero()).is_ok_and(|v| v.is_zero()) {
            let c = ["T strict t-norm", "f strictly increasing and continuous", "f(0) = 0"];
            let neutral = self.neutral_route(&f1);
            return Laws { subnorm: Verdict::yes(c), ccl: Verdict::yes(c), cl: Verdict::yes(c), neutral };
        }

        if !(strict_tnorm && t.flags.exact) {
            let missing = match (t.flags.strictly_monotone, t.flags.continuous, t.flags.is_tnorm(), t.flags.exact) {
                (false, _, _, _) => "T is not strictly monotone",
                (_, false, _, _) => "T is not continuous",
                (_, _, false, _) => "T is not a t-norm",
                _ => "T values are not exact",
            };
            let why = format!("preconditions unmet: {missing}");
            self.notes.push(format!("{why}; run the oracle command for a brute-force check at a chosen resolution"));
            // plateau witnesses do not depend on T; they are shown to guide the
            // oracle run but the theorem-backed verdicts stay undecided
            for (p, w) in [(Property::Cancellative, plateau_cl), (Property::ConditionallyCancellative, plateau_ccl)] {
                if let Some(w) = w {
                    self.notes.push(format!("candidate {p} counterexample for the oracle: {w}"));
                }
            }
            let neutral = self.neutral_route(&f1);
            let u = Verdict::unknown(why);
            return Laws { subnorm: u.clone(), ccl: u.clone(), cl: u, neutral };
        }

        let mut log = std::mem::take(&mut self.log);
        let (ii, viol_ii) = inclusion_ii(&t, &d, &mut log);
        let (iii, _) = inclusion_iii(&t, &d, &mut log);
        let (tmm, viol_tmm) = inclusion_tmm(&t, &d, false, &mut log);
        let (tmm_low, _) = inclusion_tmm(&t, &d, true, &mut log);
        let h_k1 = h_condition(&t, &d, true, &mut log);
        let h_all = h_condition(&t, &d, false, &mut log);
        self.log = log;

        // conditional cancellation law: (ii) and (iii) characterise it
        let ccl = if ii.is_yes() && iii.is_yes() {
            Verdict::yes([COND_II, COND_III])
        } else {
            let constructed = if !iii.is_yes() {
                plateau_ccl.clone()
            } else {
                equal_values_from_violation(self.op, &d.m_minus_c(), &d.m, &viol_ii, Property::ConditionallyCancellative)
            };
            let fallback = if ii.is_no() { ii.clone() } else { iii.clone() };
            match constructed {
                Some(w) => Verdict::no(w),
                None => self.refute(Property::ConditionallyCancellative, fallback),
            }
        };

        // cancellation law
        let cl = if !strictly_increasing {
            match plateau_cl {
                Some(w) => Verdict::no(w),
                None => self.refute(Property::Cancellative, Verdict::unknown("f has a plateau but no witness re-checked")),
            }
        } else if tmm.is_yes() {
            Verdict::yes(["f strictly increasing", "T(M,M) ⊆ M"])
        } else {
            match equal_values_from_violation(self.op, &d.m, &d.m, &viol_tmm, Property::Cancellative) {
                Some(w) => Verdict::no(w),
                None => self.refute(Property::Cancellative, Verdict::unknown("T(M,M) ⊄ M but no equal-value witness was found")),
            }
        };

        // associativity
        let subnorm = if strictly_increasing && tmm.is_yes() {
            Verdict::yes(["f strictly increasing", "T(M,M) ⊆ M"])
        } else if ccl.is_yes() && h_k1.is_yes() {
            Verdict::yes([super::conditions::COND_H_K1, COND_II, COND_III])
        } else if tmm_low.is_yes() && iii.is_yes() {
            Verdict::yes([super::conditions::COND_TMM_LOW, COND_III])
        } else if strictly_increasing && h_all.is_yes() {
            Verdict::yes(["f strictly increasing", super::conditions::COND_H_ALL])
        } else {
            let necessary = f1.is_one() && ccl.is_yes() && h_k1.is_no();
            match l_set_check(self.op, &d, L_SET_N) {
                Some(w) => Verdict::no(w),
                None if necessary => self.refute(Property::TSubnorm, h_k1.clone()),
                None => {
                    let reason = format!("no exact route; no associativity failure found at resolution n={L_SET_N}");
                    self.refute(Property::TSubnorm, Verdict::unknown(reason))
                }
            }
        };

        let neutral = self.neutral_route(&f1);
        Laws { subnorm, ccl, cl, neutral }
    }

    fn neutral_route(&mut self, f1: &Rational) -> Verdict {
        let t = self.t();
        if self.f().is_strictly_increasing() && f1.is_one() && t.flags.neutral_one && t.flags.exact {
            return Verdict::yes(["f strictly increasing", "f(1) = 1", "T(x,1) = x"]);
        }
        self.neutral_by_search()
    }

    /// `f(1)` is a plateau value: conditional cancellation forces `F ≡ 0`,
    /// which was handled structurally, so the law fails.
    fn top_value_on_plateau(&mut self) -> Laws {
        self.notes.push("f(1) is a plateau value: F is conditionally cancellative only if F ≡ 0".into());
        let d = self.d.clone();
        let ccl = match plateau_witness(self.op, &d, Property::ConditionallyCancellative) {
            Some(w) => Verdict::no(w),
            None => Verdict::unknown("f(1) is a plateau value but F(1,1) could not be decided"),
        };
        let cl = match plateau_witness(self.op, &d, Property::Cancellative) {
            Some(w) => Verdict::no(w),
            None => Verdict::unknown("plateau witness did not re-check"),
        };
        let subnorm = self.refute(Property::TSubnorm, Verdict::unknown("degenerate shape; no associativity failure found"));
        let neutral = self.neutral_by_search();
        Laws { subnorm, ccl, cl, neutral }
    }

    /// `f(1⁻)` is a plateau value and `f(1)` is not: `F` is conditionally
    /// cancellative exactly when it vanishes off `(1,1)`.
    fn last_plateau_reaches_one(&mut self) -> Laws {
        let d = self.d.clone();
        let (lo, hi) = self.f().plateau_preimages(&d.f1minus).expect("f(1-) is a plateau value");
        let at = self.op.apply(&one(), &lo);
        self.notes.push(format!("f(1-) is a plateau value; F(1,{lo}) = {at}"));
        let cl = match plateau_witness(self.op, &d, Property::Cancellative) {
            Some(w) => Verdict::no(w),
            None => Verdict::unknown("plateau witness did not re-check"),
        };
        let neutral = self.neutral_by_search();
        let vanishes = format!("F(1,{lo}) = 0, so F vanishes except at (1,1)");
        if at.exact().is_some_and(Zero::is_zero) {
            let v = Verdict::yes([vanishes]);
            return Laws { subnorm: v.clone(), ccl: v, cl, neutral };
        }
        let ccl = if at.certainly_positive() {
            Verdict::no(Witness::EqualValues { x: one(), y: lo, z: hi, value: at })
        } else {
            Verdict::unknown("F(1,a) on the last plateau could not be decided")
        };
        let subnorm = self.refute(Property::TSubnorm, Verdict::unknown("degenerate shape; no associativity failure found"));
        Laws { subnorm, ccl, cl, neutral }
    }

    fn assemble(mut self, laws: Laws, f: &PiecewiseMonotoneFn, t: &TNormDescriptor) -> ClassificationReport {
        let Laws { subnorm, ccl, cl, neutral } = laws;
        let subnorm = if f.direction() == Direction::NonDecreasing && subnorm.is_yes() {
            subnorm.and(Verdict::yes(["F commutative, monotone and bounded by min (f non-decreasing)"]))
        } else {
            subnorm
        };
        let cc = subnorm.clone().and(ccl);
        let cancellative = subnorm.clone().and(cl.clone());
        let tnorm = subnorm.clone().and(neutral);
        let proper = match (subnorm.status, tnorm.status) {
            (Status::Yes, Status::No) => Verdict::yes(["t-subnorm", "not a t-norm"]),
            (Status::No, _) => subnorm.clone(),
            (_, Status::Yes) => Verdict { status: Status::No, evidence: Evidence::Reason("F is a t-norm".into()) },
            _ => Verdict::unknown("t-subnorm or t-norm status undecided"),
        };
        if let Some(v) = self.op.apply(&one(), &one()).exact() {
            let lemma = if v < &Rational::one() { "below 1" } else { "equal to 1" };
            self.notes.push(format!("F(1,1) = {v} ({lemma})"));
        }
        let continuous = continuity(self.op);
        let archimedean = self.archimedean(&subnorm, &cc, &continuous);
        if continuous.is_yes() && subnorm.is_yes() {
            let agree = (archimedean.status == Status::Yes) == (cc.status == Status::Yes);
            self.notes.push(format!(
                "continuous t-subnorm cross-check: archimedean={} conditionally_cancellative={} ({})",
                archimedean.status,
                cc.status,
                if agree { "consistent" } else { "inconsistent" }
            ));
        }
        let mut verdicts = vec![
            (Property::TSubnorm, subnorm),
            (Property::TNorm, tnorm),
            (Property::ConditionallyCancellative, cc),
            (Property::Cancellative, cancellative),
            (Property::StrictlyMonotoneOp, cl),
            (Property::Archimedean, archimedean),
            (Property::Continuous, continuous),
            (Property::Proper, proper),
        ];
        for (p, v) in &mut verdicts {
            if let Some(w) = v.witness() {
                if !w.recheck(self.op, *p) {
                    self.notes.push(format!("{p}: witness {w} did not re-check"));
                    *v = Verdict::unknown("witness did not re-check");
                }
            }
        }
        ClassificationReport {
            function: f.to_string().trim().replace('\n', "; "),
            tnorm: t.to_string(),
            verdicts,
            decomposition: self.d.clone(),
            conditions: self.log,
            notes: self.notes,
        }
    }

    /// Powers on a grid of interior pairs, capped; labelled by resolution.
    fn archimedean(&mut self, subnorm: &Verdict, cc: &Verdict, continuous: &Verdict) -> Verdict {
        let cap = PropertyName::DEFAULT_ARCHIMEDEAN_CAP;
        let mut extra = grid(24, self.points());
        extra.retain(|p| !p.is_zero() && !p.is_one());
        let pts = grid(20, extra);
        let inner: Vec<&Rational> = pts.iter().filter(|p| !p.is_zero() && !p.is_one()).collect();
        let mut undecided = None;
        let floor = inner.first().map(|p| (*p).clone()).unwrap_or_else(zero);
        for x in &inner {
            let powers = power_sequence_until(self.op, x, cap, &floor);
            let last = powers.last().expect("at least x itself");
            let stalled = powers.len() >= 2 && last.is_exact() && &powers[powers.len() - 2] == last;
            for y in &inner {
                let yv = Value::Exact((*y).clone());
                if powers.iter().any(|p| p.certainly_lt(&yv)) {
                    continue;
                }
                if stalled {
                    let value = last.exact().cloned().expect("exact fixed point");
                    let w = Witness::Stagnation { x: (*x).clone(), y: (*y).clone(), step: (powers.len() - 2) as u32, value };
                    return Verdict::no(w);
                }
                undecided.get_or_insert(((*x).clone(), (*y).clone()));
            }
        }
        let theorem = continuous.is_yes() && subnorm.is_yes() && cc.is_yes();
        match undecided {
            None => {
                let mut c = vec![format!("every power sequence on {} interior grid points drops below each y within {cap} steps (at resolution)", inner.len())];
                if theorem {
                    c.push("continuous conditionally cancellative t-subnorm".into());
                }
                Verdict { status: Status::Yes, evidence: Evidence::Conditions(c) }
            }
            Some(_) if theorem => Verdict::yes(["continuous conditionally cancellative t-subnorm"]),
            Some((x, y)) => Verdict::unknown(format!("powers of {x} did not drop below {y} within {cap} steps (not witnessed)")),
        }
    }
}

