//! Pseudo-inverses of monotone functions, both pointwise and in closed form,
//! together with the composition identities they satisfy.
//!
//! Run with `cargo run --example pseudo_inverse`.

use subnorm_forge::monotone::PiecewiseMonotoneFn;
use subnorm_forge::numeric::{rat, Rational};

const STEP: &str = "\
monotone: nondecreasing
segment [0,1/4) linear 1/4 1/4
segment [1/4,1/2] const 5/16
segment (1/2,1) linear 1/8 3/8
point 1 = 3/4
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: PiecewiseMonotoneFn = STEP.parse()?;
    let finv = f.pseudo_inverse();
    println!("f:\n{f}");
    println!("closed-form pseudo-inverse:\n{finv}");

    for y in [rat(0, 1), rat(5, 16), rat(3, 8), rat(1, 2), rat(3, 4), rat(1, 1)] {
        println!("f⁽⁻¹⁾({y}) = {} (direct sup: {})", finv.eval(&y)?, f.pseudo_inverse_at(&y));
    }

    // f⁽⁻¹⁾ ∘ f never exceeds the identity, and f ∘ f⁽⁻¹⁾ ∘ f recovers f on
    // right-continuous functions
    let xs: Vec<Rational> = (0..=8).map(|i| rat(i, 8)).collect();
    for x in &xs {
        let fx = f.eval(x)?;
        let back = finv.eval(&fx)?;
        println!("x={x:<4} f(x)={fx:<6} f⁽⁻¹⁾(f(x))={back:<5} f(f⁽⁻¹⁾(f(x)))={}", f.eval(&back)?);
    }

    let decreasing: PiecewiseMonotoneFn = "monotone: nonincreasing\nsegment [0,1] linear -1/2 1".parse()?;
    println!("non-increasing f(x) = 1 - x/2 has pseudo-inverse\n{}", decreasing.pseudo_inverse());
    Ok(())
}
