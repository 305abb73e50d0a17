//! Splitting an additively generated operation into f(x) = λx and a strict
//! t-norm with generator t(x) = g(x/λ), then composing them back together.
//!
//! Run with `cargo run --example lambda_construction`.

use subnorm_forge::classify::{classify, Property};
use subnorm_forge::generated::{additive_generated, lambda_decompose, lambda_round_trip_error, GeneratedOp};
use subnorm_forge::numeric::rat;
use subnorm_forge::tnorm::{Generator, GeneratorSpec};
use subnorm_forge::value::BinaryOp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = GeneratorSpec::new(Generator::OneMinusLog);
    for lambda in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let (f, t) = lambda_decompose(spec, lambda.clone())?;
        let deviation = lambda_round_trip_error(spec, lambda.clone(), 50)?;
        let op = GeneratedOp::new(f.clone(), t.clone());
        let half = rat(1, 2);
        println!(
            "λ={lambda}: t-norm {t}, F(1/2,1/2) ≈ {}, direct ≈ {}, max deviation on 51x51 = {deviation:.2e}",
            op.apply(&half, &half).to_decimal(12),
            additive_generated(spec).apply(&half, &half).to_decimal(12),
        );
        let report = classify(&f, &t);
        for p in [Property::TSubnorm, Property::Cancellative, Property::Continuous, Property::Proper] {
            println!("  {:<14} {}", p.key(), report.verdict(p));
        }
    }
    println!("1/(4e) = {:.12}", 0.25 / std::f64::consts::E);

    // λ must lie strictly inside (0,1)
    if let Err(e) = lambda_decompose(spec, rat(1, 1)) {
        println!("λ=1 rejected: {e}");
    }
    Ok(())
}
