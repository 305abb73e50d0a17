//! Acceptance suite, run without the libtest harness so that its one
//! PASS/FAIL line per criterion is always printed. The target exits
//! nonzero if any criterion fails. Exact checks use no tolerance; the
//! floating ones use the tolerances pinned below.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use common::{random_fn, random_fn_text, random_point, rng, sup_by_bisection, Shape};
use subnorm_forge::classify::{check_continuity, check_inclusion_conditions, classify, consistency_harness, Property, Status};
use subnorm_forge::generated::{additive_generated, lambda_decompose, lambda_round_trip_error, GeneratedOp};
use subnorm_forge::monotone::PiecewiseMonotoneFn;
use subnorm_forge::numeric::{rat, Rational};
use subnorm_forge::oracle::{check_property, continuity_scan, grid, PropertyName};
use subnorm_forge::tnorm::{Generator, GeneratorSpec, TNormDescriptor};
use subnorm_forge::value::BinaryOp;

/// Round-trip and spot-value tolerance for generator families.
const FLOAT_TOL: f64 = 1e-12;
/// Continuity scan resolution and jump threshold.
const SCAN_STEP: (i64, i64) = (1, 1000);
const SCAN_TOL: f64 = 1e-4;
/// Wall-clock budget for the randomised consistency corpus.
const CORPUS_BUDGET: Duration = Duration::from_secs(180);

type Outcome = Result<String, String>;

fn load(name: &str) -> PiecewiseMonotoneFn {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(path).unwrap().parse().unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exact(op: &GeneratedOp, x: Rational, y: Rational) -> Rational {
    op.eval_exact(&x, &y).expect("exact family")
}

fn golden_values() -> Outcome {
    let half = rat(1, 2);
    let op = GeneratedOp::new(load("halfprod_example.fn"), TNormDescriptor::half_product());
    let v = exact(&op, half.clone(), half.clone());
    ensure(v == rat(121, 576), format!("13/12 branch with halfprod: F(1/2,1/2) = {v}"))?;
    let op = GeneratedOp::new(load("plateau.fn"), TNormDescriptor::product());
    let v = exact(&op, rat(3, 4), rat(4, 5));
    ensure(v == rat(3, 5), format!("plateau with product: F(3/4,4/5) = {v}"))?;
    let v = exact(&op, half.clone(), half.clone());
    ensure(v == rat(0, 1), format!("plateau with product: F(1/2,1/2) = {v}"))?;
    let v = TNormDescriptor::half_product().eval_exact(&half, &half).unwrap();
    ensure(v == rat(1, 8), format!("halfprod T(1/2,1/2) = {v}"))?;
    Ok("121/576, 3/5, 0 and 1/8 reproduced exactly".into())
}

fn worked_example_verdicts() -> Outcome {
    let r = classify(&load("plateau.fn"), &TNormDescriptor::product());
    ensure(r.status(Property::TSubnorm) == Status::Yes, format!("plateau/product t_subnorm: {}", r.verdict(Property::TSubnorm)))?;
    ensure(
        r.status(Property::ConditionallyCancellative) == Status::Yes,
        format!("plateau/product conditionally_cancellative: {}", r.verdict(Property::ConditionallyCancellative)),
    )?;

    let r = classify(&load("jump_at_one.fn"), &TNormDescriptor::hamacher());
    ensure(r.status(Property::TSubnorm) == Status::Yes, format!("jump_at_one/hamacher2 t_subnorm: {}", r.verdict(Property::TSubnorm)))?;
    ensure(
        r.status(Property::Cancellative) == Status::Yes,
        format!("jump_at_one/hamacher2 cancellative: {}", r.verdict(Property::Cancellative)),
    )?;

    // lifted identity with min: the oracle refutes conditional cancellation
    let f = load("min_example.fn");
    let op = GeneratedOp::new(f.clone(), TNormDescriptor::minimum());
    let pts = grid(8, [rat(1, 2), rat(3, 4), rat(1, 1)]);
    let res = check_property(&op, PropertyName::ConditionalCancellation, &pts);
    let c = res.outcome.counterexample().ok_or("no conditional-cancellation counterexample for min_example/min")?;
    let (a, b) = (op.apply(&c.inputs[0], &c.inputs[1]), op.apply(&c.inputs[0], &c.inputs[2]));
    ensure(a == b && a.certainly_positive() && c.inputs[1] != c.inputs[2], format!("counterexample does not re-evaluate: {c}"))?;
    let (p, q) = (exact(&op, rat(1, 2), rat(3, 4)), exact(&op, rat(1, 2), rat(1, 1)));
    ensure(p == rat(1, 2) && q == rat(1, 2), format!("F(1/2,3/4) = {p}, F(1/2,1) = {q}"))?;

    // range [0,1/8)∪[3/16,1] with halfprod: the inclusion condition fails at 1/8
    let f = load("halfprod_example.fn");
    let d = f.decompose();
    ensure(d.m.to_string() == "[0,1/8)∪[3/16,1]", format!("range is {}", d.m))?;
    let t = TNormDescriptor::half_product();
    let (ii, _) = check_inclusion_conditions(&t, &d);
    ensure(ii.status == Status::No, format!("inclusion condition: {ii}"))?;
    let w = ii.witness().ok_or("inclusion failure carries no witness")?;
    ensure(w.recheck(&GeneratedOp::new(f.clone(), t.clone()), Property::ConditionallyCancellative), format!("witness {w} does not recheck"))?;
    let half = rat(1, 2);
    let v = t.eval_exact(&half, &half).unwrap();
    let allowed = d.m.union(&d.low_band());
    ensure(
        d.m_minus_c().contains(&half) && d.m.contains(&half) && v == rat(1, 8) && !allowed.contains(&v),
        "(1/2,1/2) ↦ 1/8 is not a violation",
    )?;
    Ok(format!("all four verdicts reproduced; classifier witness {w}"))
}

fn oracle_consistency() -> Outcome {
    let start = Instant::now();
    let mut r = rng(20240601);
    let t = TNormDescriptor::product();
    let (mut failures, mut yes_claims) = (Vec::new(), 0usize);
    let count = 200;
    for i in 0..count {
        let text = random_fn_text(&mut r, 6, Shape::default());
        let f: PiecewiseMonotoneFn = text.parse().unwrap();
        let h = consistency_harness(&f, &t, 12);
        yes_claims += h.rows.iter().filter(|row| row.classifier == Status::Yes).count();
        if h.hard_failures() > 0 {
            failures.push(format!("#{i}:\n{text}\n{}", h.render_text()));
        }
    }
    let elapsed = start.elapsed();
    ensure(failures.is_empty(), format!("{} hard failures, first: {}", failures.len(), failures.first().cloned().unwrap_or_default()))?;
    ensure(elapsed <= CORPUS_BUDGET, format!("corpus took {elapsed:.1?}, budget {CORPUS_BUDGET:?}"))?;
    Ok(format!("{count} functions, {yes_claims} Yes verdicts, 0 hard failures in {elapsed:.1?}"))
}

fn lambda_round_trip() -> Outcome {
    let spec = GeneratorSpec::new(Generator::OneMinusLog);
    let quarter_e = 0.25 / std::f64::consts::E;
    let mut worst = 0.0f64;
    for lambda in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let dev = lambda_round_trip_error(spec, lambda.clone(), 50).map_err(|e| e.to_string())?;
        ensure(dev <= FLOAT_TOL, format!("λ={lambda}: deviation {dev:e}"))?;
        // recompute the deviation here too, independently of the library helper
        let (f, t) = lambda_decompose(spec, lambda.clone()).map_err(|e| e.to_string())?;
        let op = GeneratedOp::new(f, t);
        let direct = additive_generated(spec);
        for i in 0..=50 {
            for j in 0..=50 {
                let (x, y) = (rat(i, 50), rat(j, 50));
                let d = (op.apply(&x, &y).to_f64() - direct.apply(&x, &y).to_f64()).abs();
                worst = worst.max(d);
            }
        }
        let spot = op.apply(&rat(1, 2), &rat(1, 2)).to_f64();
        ensure((spot - quarter_e).abs() <= FLOAT_TOL, format!("λ={lambda}: F(1/2,1/2) = {spot}"))?;
    }
    ensure(worst <= FLOAT_TOL, format!("independent recomputation found deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e} over 3 values of λ, F(1/2,1/2) = 1/(4e)"))
}

fn pseudo_inverse_suite() -> Outcome {
    let mut r = rng(77);
    let (mut functions, mut points) = (0, 0);
    let shapes = [
        Shape::default(),
        Shape { right_continuous: true, ..Shape::default() },
        Shape { strict: true, ..Shape::default() },
        Shape { decreasing: true, ..Shape::default() },
        Shape { strict: true, decreasing: true, ..Shape::default() },
    ];
    for i in 0..100 {
        let shape = shapes[i % shapes.len()];
        let f = random_fn(&mut r, 6, shape);
        let finv = f.pseudo_inverse();
        let identity_applies = shape.right_continuous || shape.strict;
        for _ in 0..500 {
            let y = random_point(&mut r);
            let expected = sup_by_bisection(&f, &y);
            let got = finv.eval(&y).unwrap();
            ensure(got == expected, format!("f⁽⁻¹⁾({y}) = {got}, bisection gives {expected} for\n{f}"))?;
            let x = random_point(&mut r);
            let fx = f.eval(&x).unwrap();
            let back = finv.eval(&fx).unwrap();
            ensure(back <= x, format!("f⁽⁻¹⁾(f({x})) = {back} for\n{f}"))?;
            if identity_applies {
                ensure(f.eval(&back).unwrap() == fx, format!("f∘f⁽⁻¹⁾∘f ≠ f at {x} for\n{f}"))?;
            }
            points += 1;
        }
        functions += 1;
    }
    Ok(format!("{functions} functions, {points} sampled points, zero failures"))
}

fn continuity_agreement() -> Outcome {
    let cases = [
        ("plateau.fn", "product"),
        ("plateau.fn", "min"),
        ("jump_at_one.fn", "hamacher2"),
        ("jump_at_one.fn", "product"),
        ("min_example.fn", "min"),
        ("halfprod_example.fn", "halfprod"),
        ("step.fn", "product"),
        ("step.fn", "min"),
        ("identity.fn", "product"),
        ("zero_on_open.fn", "product"),
        ("constant_half.fn", "product"),
    ];
    let mut summary = Vec::new();
    for (file, tnorm) in cases {
        let f = load(file);
        let t: TNormDescriptor = tnorm.parse().unwrap();
        let verdict = check_continuity(&f, &t);
        let op = GeneratedOp::new(f.clone(), t);
        let ys = grid(8, f.breakpoints());
        let jump = continuity_scan(&op, &ys, &rat(SCAN_STEP.0, SCAN_STEP.1), &f.breakpoints(), 10, SCAN_TOL);
        let agrees = match verdict.status {
            Status::Yes => jump.is_none(),
            Status::No => jump.is_some(),
            Status::Unknown => false,
        };
        let scan = jump.as_ref().map_or("no jump".to_string(), |j| j.to_string());
        ensure(agrees, format!("{file} with {tnorm}: classifier {verdict}, scan {scan}"))?;
        summary.push(format!("{}/{tnorm}={}", file.trim_end_matches(".fn"), verdict.status));
    }
    let jump = classify(&load("jump_at_one.fn"), &TNormDescriptor::product());
    ensure(jump.status(Property::Continuous) == Status::No, "jump_at_one/product is not reported discontinuous")?;
    Ok(summary.join(" "))
}

fn adjudication() -> Outcome {
    // x/2 with a jump at 1 under the Hamacher product: exact values are
    // twice the candidate closed form xy/(8+xy-2(x+y)) on [0,1)²
    let jump = load("jump_at_one.fn");
    let t = TNormDescriptor::hamacher();
    let op = GeneratedOp::new(jump.clone(), t.clone());
    for i in 0..12 {
        for j in 0..12 {
            let (x, y) = (rat(i, 12), rat(j, 12));
            let s = &x * &y;
            let candidate = &s / (rat(8, 1) + &s - rat(2, 1) * (&x + &y));
            let v = exact(&op, x.clone(), y.clone());
            ensure(v == rat(2, 1) * &candidate, format!("hamacher2: F({x},{y}) = {v}, candidate {candidate}"))?;
        }
    }
    let quarter = exact(&op, rat(1, 2), rat(1, 2));
    ensure(quarter == rat(2, 25), format!("hamacher2: F(1/2,1/2) = {quarter}"))?;
    let h = consistency_harness(&jump, &t, 12);
    ensure(h.hard_failures() == 0, format!("jump_at_one/hamacher2:\n{}", h.render_text()))?;

    let step = load("step.fn");
    let op = GeneratedOp::new(step.clone(), TNormDescriptor::product());
    let one = rat(1, 1);
    let top = exact(&op, one.clone(), rat(9, 10));
    ensure(top == rat(1, 2), format!("step: F(1,9/10) = {top}"))?;
    let x = rat(5, 9);
    let lhs = exact(&op, exact(&op, x.clone(), one.clone()), one.clone());
    let rhs = exact(&op, x.clone(), exact(&op, one.clone(), one.clone()));
    ensure(lhs != rhs, "step with product is associative at (5/9,1,1)")?;
    let h = consistency_harness(&step, &TNormDescriptor::product(), 20);
    ensure(h.hard_failures() == 0, format!("step/product:\n{}", h.render_text()))?;

    let f = load("halfprod_example.fn");
    let t = TNormDescriptor::half_product();
    let op = GeneratedOp::new(f.clone(), t.clone());
    let closed = |x: &Rational, y: &Rational| (rat(169, 1) * x * y - rat(13, 1) * x - rat(13, 1) * y + rat(1, 1)) / rat(144, 1);
    let (a, b) = (rat(1, 2), rat(3, 4));
    ensure(exact(&op, a.clone(), a.clone()) == closed(&a, &a), "closed form fails on its own branch")?;
    let off = exact(&op, b.clone(), b.clone());
    let h2 = consistency_harness(&f, &t, 12);
    ensure(h2.hard_failures() == 0, format!("halfprod:\n{}", h2.render_text()))?;
    Ok(format!(
        "hamacher2: F = 2xy/(8+xy-2(x+y)) on the 12-grid, F(1/2,1/2) = {quarter}; step: F(1,9/10) = {top}, F(F(5/9,1),1) = {lhs} ≠ {rhs} = F(5/9,F(1,1)); halfprod: F(3/4,3/4) = {off} vs closed form {}; 0 hard failures on all three",
        closed(&b, &b)
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 golden values", golden_values),
        ("2 worked-example verdicts", worked_example_verdicts),
        ("3 oracle-classifier consistency", oracle_consistency),
        ("4 lambda round trip", lambda_round_trip),
        ("5 pseudo-inverse suite", pseudo_inverse_suite),
        ("6 continuity agreement", continuity_agreement),
        ("7 adjudication", adjudication),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                println!("criterion {name}: FAIL ({why})");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
