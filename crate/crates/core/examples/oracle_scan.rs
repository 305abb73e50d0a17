//! Brute-force law checks on a finite grid, and the agreement matrix that
//! compares them with the classifier.
//!
//! Run with `cargo run --example oracle_scan`.

use subnorm_forge::classify::consistency_harness;
use subnorm_forge::generated::GeneratedOp;
use subnorm_forge::monotone::PiecewiseMonotoneFn;
use subnorm_forge::oracle::{check_property, grid, PropertyName};
use subnorm_forge::tnorm::TNormDescriptor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: PiecewiseMonotoneFn = "monotone: nondecreasing\nsegment [0,1) linear 1/4 1/4\npoint 1 = 1".parse()?;
    let op = GeneratedOp::new(f.clone(), TNormDescriptor::minimum());
    let pts = grid(8, f.breakpoints());
    for p in PropertyName::all() {
        let r = check_property(&op, p, &pts);
        print!("{:<28} {:<15} ({} cases)", p.to_string(), r.outcome.label(), r.examined);
        match r.outcome.counterexample() {
            Some(c) => println!(" {c}"),
            None => println!(),
        }
    }

    // the classifier cannot decide this case (min is not strictly monotone),
    // so the matrix shows the oracle doing the work
    println!("\n{}", consistency_harness(&f, &TNormDescriptor::minimum(), 8).render_text());

    let h = consistency_harness(&PiecewiseMonotoneFn::identity(), &TNormDescriptor::product(), 12);
    println!("{}", h.render_text());
    assert_eq!(h.hard_failures(), 0);
    Ok(())
}
