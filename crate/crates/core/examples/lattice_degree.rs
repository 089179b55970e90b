//! The degree-d lattice test: where each non-member's monomial vector falls
//! relative to the lattice generated by the members.
//!
//! cargo run --example lattice_degree

use nrd_core::lattice::{degree_test, is_balanced, min_certified_degree, PointStatus};
use nrd_core::predicate::{named, tuple_string};

fn main() -> nrd_core::Result<()> {
    let p = named::r317();
    for d in 1..=3 {
        let test = degree_test(&p, d)?;
        println!(
            "d = {d}: lattice rank {} in dimension {}",
            test.lattice.rank(),
            test.embedding.dimension()
        );
        for status in [
            PointStatus::OutsideSpan,
            PointStatus::InSpanOnly,
            PointStatus::InLattice,
        ] {
            let pts: Vec<String> = test
                .points_with(status)
                .iter()
                .map(|&i| tuple_string(i, 4))
                .collect();
            println!("  {status:?}: {}", pts.join(" "));
        }
    }
    println!("R317 certified degree {}", min_certified_degree(&p)?);
    println!(
        "EVEN_4 balanced: {}, OR_2 balanced: {}",
        is_balanced(&named::even_parity(4))?,
        is_balanced(&named::or(2))?
    );
    Ok(())
}
