//! Exact interval-set arithmetic: parsing, unions, differences, open hulls
//! and subset witnesses.
//!
//! Run with `cargo run --example interval_sets`.

use subnorm_forge::numeric::{rat, IntervalSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let range: IntervalSet = "[0,1/8)∪[3/16,1]".parse()?;
    let gaps: IntervalSet = "[1/8,3/16]".parse()?;
    println!("M          = {range}");
    println!("gap        = {gaps}");
    println!("M ∪ gap    = {}", range.union(&gaps));
    println!("M ∖ {{1/2}}  = {}", range.remove_point(&rat(1, 2)));
    println!("[0,1] ∖ M  = {}", IntervalSet::unit().difference(&range));

    // the open hull keeps everything strictly between the extreme points
    let pts = IntervalSet::from_points([rat(1, 4), rat(1, 2)]);
    println!("O({pts}) = {}", pts.o_hull());

    // a subset test that fails names a point that is in one set but not the other
    let image: IntervalSet = "[0,1/4]".parse()?;
    match image.subset_witness(&range) {
        Some(x) => println!("{image} ⊄ {range}: {x} is missing"),
        None => println!("{image} ⊆ {range}"),
    }
    Ok(())
}
