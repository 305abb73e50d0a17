//! Evaluating F(x,y) = f⁽⁻¹⁾(T(f(x),f(y))) exactly, including one-sided
//! limits in the first argument.
//!
//! Run with `cargo run --example generated_ops`.

use subnorm_forge::generated::GeneratedOp;
use subnorm_forge::monotone::{PiecewiseMonotoneFn, Side};
use subnorm_forge::numeric::rat;
use subnorm_forge::tnorm::TNormDescriptor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let plateau: PiecewiseMonotoneFn = "monotone: nondecreasing\nsegment [0,1/2] const 1/2\nsegment (1/2,1] linear 1 0".parse()?;
    let op = GeneratedOp::new(plateau, TNormDescriptor::product());
    for (x, y) in [(rat(3, 4), rat(4, 5)), (rat(1, 2), rat(1, 2)), (rat(9, 10), rat(9, 10)), (rat(1, 1), rat(3, 5))] {
        println!("plateau, product: F({x},{y}) = {}", op.eval(&x, &y)?);
    }

    let f: PiecewiseMonotoneFn = "monotone: nondecreasing\nsegment [0,1/4) linear 1/2 0\nsegment [1/4,1] linear 13/12 -1/12".parse()?;
    let op = GeneratedOp::new(f, TNormDescriptor::half_product());
    println!("13/12 branch, halfprod: F(1/2,1/2) = {}", op.eval(&rat(1, 2), &rat(1, 2))?);

    // F jumps in its first argument at 1 when f does
    let jump: PiecewiseMonotoneFn = "monotone: nondecreasing\nsegment [0,1) linear 1/2 0\npoint 1 = 1".parse()?;
    let op = GeneratedOp::new(jump, TNormDescriptor::hamacher());
    let y = rat(1, 2);
    println!(
        "jump at one, hamacher2: F(1,{y}) = {} but F(1-,{y}) = {}",
        op.eval(&rat(1, 1), &y)?,
        op.limit_first_arg(&rat(1, 1), &y, Side::Left).expect("exact family"),
    );

    // generator families carry a rigorous error radius instead of an exact value
    let gen: TNormDescriptor = "gen:one-minus-log".parse()?;
    let op = GeneratedOp::new(PiecewiseMonotoneFn::identity(), gen);
    let v = op.eval(&rat(1, 2), &rat(1, 2))?;
    println!("identity, gen:one-minus-log: F(1/2,1/2) ≈ {} ± {:.1e}", v.to_decimal(12), v.radius());
    Ok(())
}
