//! Classify every arity-4 class and print the rows where the bounds disagree.
//!
//! cargo run --release --example classify_table

use std::time::Instant;

use nrd_core::classify::{classify_all, Status};

fn main() -> nrd_core::Result<()> {
    let start = Instant::now();
    let records = classify_all(4)?;
    println!("{} classes in {:.2?}", records.len(), start.elapsed());
    let tight = records.iter().filter(|r| r.status == Status::Tight).count();
    println!("{tight} tight");
    for r in records.iter().filter(|r| r.status == Status::Gap) {
        println!(
            "{:3} {}  OR{}  deg {}  {}",
            r.index,
            r.tuple_list()?,
            r.or_k,
            r.degree,
            r.polynomial
        );
    }
    println!("318: {}", records[318].polynomial);
    Ok(())
}
