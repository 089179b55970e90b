//! Orbit representatives under coordinate permutation and negation.
//!
//! cargo run --example canonical_forms

use nrd_core::predicate::{canonical_form, enumerate_classes, Predicate};

fn main() -> nrd_core::Result<()> {
    for r in 1..=4 {
        println!("arity {r}: {} classes", enumerate_classes(r)?.len());
    }

    let classes = enumerate_classes(4)?;
    let p = Predicate::parse_tuple_list("{1000,0100}", 4)?;
    let (rep, g) = canonical_form(&p);
    let index = classes
        .iter()
        .position(|c| *c == rep)
        .expect("representative is listed");
    println!(
        "{p} -> {rep} via perm {:?} flips {:04b}, predicate {index}",
        g.perm(),
        g.flips()
    );
    assert_eq!(p.apply(&g)?, rep);
    Ok(())
}
