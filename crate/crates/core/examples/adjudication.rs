//! Re-derives candidate closed forms directly from the defining
//! composition and checks the classifier against the oracle.
//!
//! Three configurations are examined: x/2 with a jump at 1 under the
//! Hamacher product, the two-jump step function under the product, and the
//! function whose range is [0,1/8)∪[3/16,1] under the half product. Exact
//! values always come from f⁽⁻¹⁾(T(f(x),f(y))), never from a closed form.
//!
//! Run with `cargo run --example adjudication`.

use subnorm_forge::classify::consistency_harness;
use subnorm_forge::generated::GeneratedOp;
use subnorm_forge::monotone::PiecewiseMonotoneFn;
use subnorm_forge::numeric::{rat, Rational};
use subnorm_forge::tnorm::TNormDescriptor;

const JUMP: &str = "monotone: nondecreasing\nsegment [0,1) linear 1/2 0\npoint 1 = 1";
const STEP: &str = "monotone: nondecreasing\nsegment [0,1/4) linear 1/4 1/4\nsegment [1/4,1/2] const 5/16\nsegment (1/2,1) linear 1/8 3/8\npoint 1 = 3/4";
const HALFPROD: &str = "monotone: nondecreasing\nsegment [0,1/4) linear 1/2 0\nsegment [1/4,1] linear 13/12 -1/12";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: PiecewiseMonotoneFn = JUMP.parse()?;
    let t = TNormDescriptor::hamacher();
    let op = GeneratedOp::new(f.clone(), t.clone());
    for (x, y) in [(rat(1, 2), rat(1, 2)), (rat(1, 3), rat(3, 4)), (rat(9, 10), rat(1, 5))] {
        let s = &x * &y;
        let candidate = &s / (rat(8, 1) + &s - rat(2, 1) * (&x + &y));
        println!("hamacher2: F({x},{y}) = {} vs xy/(8+xy-2(x+y)) = {candidate}", op.eval(&x, &y)?);
    }
    let h = consistency_harness(&f, &t, 12);
    println!("{}", h.render_text());

    let f: PiecewiseMonotoneFn = STEP.parse()?;
    let op = GeneratedOp::new(f.clone(), TNormDescriptor::product());
    let (x, one) = (rat(5, 9), rat(1, 1));
    let e = |a: &Rational, b: &Rational| -> Rational { op.eval_exact(a, b).expect("exact family") };
    // a table that is 1 only at (1,1) and 0 elsewhere would give 0 here
    println!("step, product: F(1,9/10) = {}", e(&one, &rat(9, 10)));
    let lhs = e(&e(&x, &one), &one);
    let rhs = e(&x, &e(&one, &one));
    println!("step, product: F(F(5/9,1),1) = {lhs}, F(5/9,F(1,1)) = {rhs}");
    let h = consistency_harness(&f, &TNormDescriptor::product(), 20);
    println!("{}", h.render_text());

    let f: PiecewiseMonotoneFn = HALFPROD.parse()?;
    let t = TNormDescriptor::half_product();
    let op = GeneratedOp::new(f.clone(), t.clone());
    // the closed form is f(x)f(y) with f on its 13/12 piece, which equals
    // 2·T(f(x),f(y)); it applies only for x,y ≥ 1/4 and only while
    // T(f(x),f(y)) stays below 1/8, where the pseudo-inverse doubles
    for (x, y) in [(rat(1, 2), rat(1, 2)), (rat(3, 4), rat(3, 4)), (rat(1, 8), rat(1, 2)), (rat(1, 3), rat(2, 3))] {
        let closed = (rat(169, 1) * &x * &y - rat(13, 1) * &x - rat(13, 1) * &y + rat(1, 1)) / rat(144, 1);
        let inner = t.eval_exact(&f.eval(&x)?, &f.eval(&y)?).expect("exact family");
        let on_piece = x >= rat(1, 4) && y >= rat(1, 4);
        let branch = if on_piece && inner < rat(1, 8) { "closed form applies" } else { "outside its branch" };
        println!("halfprod: F({x},{y}) = {} vs (169xy-13x-13y+1)/144 = {closed}; T(f(x),f(y)) = {inner}, {branch}", op.eval(&x, &y)?);
    }
    let h = consistency_harness(&f, &t, 12);
    println!("{}", h.render_text());
    Ok(())
}
