//! Explicit extremal instances, each verified by the oracle before it is returned.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{NrdError, Result};
use crate::oracle::{CspInstance, WitnessSet};

mod behrend;
mod lift;
mod p181;
mod r299;
mod triples;

pub use behrend::{behrend_set, is_ap_free, rs_graph, RsGraph};
pub use lift::magnus_lift;
pub use p181::{
    common_core, p181_counterexample, p181_from_parts, p181_indicator_family, P181Layout,
};
pub use r299::{
    r299_conditional_instance, r299_relabelling, r299_unprimed_instance, slice_claims_check,
    SliceReport,
};
pub use triples::{linear_triple_system, r317_conditional_instance, TripleSystem};

/// `ψ_e(x) = 1` iff `x ∈ e`.
pub fn indicator_witnesses(inst: &CspInstance) -> WitnessSet {
    WitnessSet::new(
        inst.clauses()
            .iter()
            .map(|c| (0..inst.n()).map(|x| c.contains(&x) as u8).collect())
            .collect(),
    )
}

/// Histogram of `|e ∩ e'|` over unordered pairs of distinct clauses, read as vertex sets.
pub fn intersection_profile(clauses: &[Vec<usize>]) -> Result<BTreeMap<usize, usize>> {
    let sets: Vec<BTreeSet<usize>> = clauses
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    if let Some(first) = clauses.first() {
        if let Some(c) = clauses.iter().find(|c| c.len() != first.len()) {
            return Err(NrdError::InvalidParameter(format!(
                "clauses of sizes {} and {}",
                first.len(),
                c.len()
            )));
        }
    }
    let mut profile = BTreeMap::new();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            *profile.entry(a.intersection(b).count()).or_insert(0) += 1;
        }
    }
    Ok(profile)
}
