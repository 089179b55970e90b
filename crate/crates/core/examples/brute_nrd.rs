//! Exact non-redundancy for tiny n, and witness search on a small instance.
//!
//! cargo run --release --example brute_nrd

use nrd_core::oracle::{
    exact_conditional_nrd, exact_nrd, find_witnesses, CspInstance, WitnessSearch,
};
use nrd_core::predicate::{named, Predicate};

fn main() -> nrd_core::Result<()> {
    for n in 2..=5 {
        println!(
            "NRD(OR_2, {n}) = {}   NRD(AND_2, {n}) = {}",
            exact_nrd(&named::or(2), n)?,
            exact_nrd(&named::and(2), n)?
        );
    }
    println!("NRD(R317, 4) = {}", exact_nrd(&named::r317(), 4)?);
    let q = Predicate::parse_tuple_list("{00,01,11}", 2)?;
    let p = Predicate::parse_tuple_list("{00}", 2)?;
    println!("NRD({p} | {q}, 4) = {}", exact_conditional_nrd(&p, &q, 4)?);

    let star = CspInstance::new(4, 2, vec![vec![0, 1], vec![0, 2], vec![0, 3]], None)?;
    match find_witnesses(&named::and(2), &star)? {
        WitnessSearch::Found(w) => {
            for (c, a) in star.clauses().iter().zip(w.assignments()) {
                println!("clause {c:?}: witness {a:?}");
            }
        }
        other => println!("{other:?}"),
    }
    Ok(())
}
