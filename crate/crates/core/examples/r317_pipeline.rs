//! Linear triple system -> conditional instance for P317 | Q317 -> lifted R317 instance.
//!
//! cargo run --example r317_pipeline

use nrd_core::constructions::{magnus_lift, r317_conditional_instance};
use nrd_core::predicate::named;

fn main() -> nrd_core::Result<()> {
    println!("{:>3} {:>6} {:>8} {:>10}", "m", "vars", "P|Q", "R317");
    for m in 1..=8 {
        let (inst, w) = r317_conditional_instance(m)?;
        let (lifted, _) = magnus_lift(&named::p317(), &named::q317(), &inst, &w, 3 * m)?;
        println!(
            "{m:>3} {:>6} {:>8} {:>10}",
            lifted.n(),
            inst.len(),
            lifted.len()
        );
    }
    Ok(())
}
