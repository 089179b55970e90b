//! Behrend set -> RS graph -> conditional instance for P'299 | Q'299 -> lifted R299 instance.
//!
//! cargo run --release --example r299_pipeline

use nrd_core::constructions::{
    behrend_set, magnus_lift, r299_conditional_instance, r299_unprimed_instance, rs_graph,
    slice_claims_check,
};
use nrd_core::predicate::named;

fn main() -> nrd_core::Result<()> {
    for m in [10, 100, 1000, 10_000] {
        println!("|S({m})| = {}", behrend_set(m)?.len());
    }
    for m in [2, 5, 9, 12] {
        let g = rs_graph(m)?;
        let (inst, _) = r299_conditional_instance(m)?;
        let report = slice_claims_check(&inst)?;
        let (base, bw) = r299_unprimed_instance(m)?;
        let (lifted, _) = magnus_lift(&named::p299(), &named::q299(), &base, &bw, base.n())?;
        println!(
            "m={m:2} S={:?} induced={} clauses={} slices ok={} (max induced {}) lifted={}",
            g.ap_free_set(),
            g.all_induced(),
            inst.len(),
            report.passes(),
            report.max_induced,
            lifted.len()
        );
    }
    Ok(())
}
