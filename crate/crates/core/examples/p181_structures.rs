//! The two-core hypergraph for P181 | Q181, and an indicator-witnessed family.
//!
//! cargo run --example p181_structures

use nrd_core::constructions::{
    common_core, intersection_profile, p181_counterexample, p181_indicator_family,
};

fn main() -> nrd_core::Result<()> {
    for half in [4, 7, 10] {
        let (inst, _, layout) = p181_counterexample(half)?;
        println!(
            "half={half:2}: {} clauses on {} vertices, common core with v: {:?}, profile {:?}",
            inst.len(),
            inst.n(),
            common_core(&inst, layout.v),
            intersection_profile(inst.clauses())?
        );
    }
    let (family, _) = p181_indicator_family(3, 2)?;
    println!(
        "indicator family: {} clauses, profile {:?}",
        family.len(),
        intersection_profile(family.clauses())?
    );
    Ok(())
}
