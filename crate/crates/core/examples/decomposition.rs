//! Range decomposition of a monotone function: its range M, the gap system
//! S with the kept values c_k, the points C and plateau values Q, and the
//! index set K1.
//!
//! Run with `cargo run --example decomposition`.

use subnorm_forge::monotone::PiecewiseMonotoneFn;

const FUNCTIONS: &[(&str, &str)] = &[
    ("identity", "monotone: nondecreasing\nsegment [0,1] linear 1 0"),
    ("plateau then identity", "monotone: nondecreasing\nsegment [0,1/2] const 1/2\nsegment (1/2,1] linear 1 0"),
    (
        "two jumps and a plateau",
        "monotone: nondecreasing\nsegment [0,1/4) linear 1/4 1/4\nsegment [1/4,1/2] const 5/16\nsegment (1/2,1) linear 1/8 3/8\npoint 1 = 3/4",
    ),
    ("jump at one", "monotone: nondecreasing\nsegment [0,1) linear 1/2 0\npoint 1 = 1"),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, text) in FUNCTIONS {
        let f: PiecewiseMonotoneFn = text.parse()?;
        let d = f.decompose();
        println!("{name}:\n  {d}");
        for (k, g) in d.gaps.iter().enumerate() {
            println!("  gap {}: [{},{}] keeps {}", k + 1, g.lo, g.hi, g.c);
        }
        println!("  M ∖ C = {}", d.m_minus_c());
    }
    Ok(())
}
