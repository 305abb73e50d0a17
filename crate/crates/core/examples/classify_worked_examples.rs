//! Classifies the worked examples shipped in `tests/data` against the
//! t-norms they are usually paired with and prints each report.
//!
//! Run with `cargo run --example classify_worked_examples`.

use subnorm_forge::classify::classify;
use subnorm_forge::monotone::PiecewiseMonotoneFn;
use subnorm_forge::tnorm::TNormDescriptor;

const CASES: &[(&str, &str)] = &[
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

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    for (file, tnorm) in CASES {
        let f: PiecewiseMonotoneFn = std::fs::read_to_string(format!("{dir}/{file}"))?.parse()?;
        let t: TNormDescriptor = tnorm.parse()?;
        let report = classify(&f, &t);
        println!("== {file} with {tnorm} (exit {})", report.exit_code());
        println!("{report}");
    }
    Ok(())
}
