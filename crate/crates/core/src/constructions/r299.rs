use std::collections::{BTreeMap, BTreeSet};

use crate::error::{NrdError, Result};
use crate::oracle::{check_conditional, transport, CspInstance, WitnessSet};
use crate::predicate::{named, SymmetryElement};

use super::behrend::rs_graph;

/// `t ↦ (t3, t2, ¬t1)`: negate the first bit, then swap the first and third.
/// Sends `(P_299, Q_299)` to `(P'_299, Q'_299)`.
pub fn r299_relabelling() -> SymmetryElement {
    SymmetryElement::new(vec![2, 1, 0], 0b100).expect("valid symmetry")
}

/// Clause `(x_u, y_v, z_x)` for every edge `(u, v)` of every matching `M_x`
/// of `rs_graph(m)`, as a conditional instance for `P'_299 | Q'_299`.
///
/// Variables: `x_1..x_{3m}` are `0..3m`, `y_1..y_{3m}` are `3m..6m`, `z_1..z_m` are `6m..7m`.
/// For the clause of `(u, v) ∈ M_i` the witness sets `z_i = 0` and every other `z` to 1;
/// `x_u = y_v = 0`, the rest of `V(M_i)` to 1, vertices outside `V(M_i)` to 0.
pub fn r299_conditional_instance(m: usize) -> Result<(CspInstance, WitnessSet)> {
    let g = rs_graph(m)?;
    let side = g.side_size();
    let n = 2 * side + m;
    let xv = |u: usize| u - 1;
    let yv = |v: usize| side + v - 1;
    let zv = |x: usize| 2 * side + x - 1;

    let mut clauses = Vec::with_capacity(g.num_edges());
    let mut witnesses = Vec::with_capacity(g.num_edges());
    for (i, mi) in g.matchings().iter().enumerate() {
        let covered_left: BTreeSet<usize> = mi.iter().map(|e| e.0).collect();
        let covered_right: BTreeSet<usize> = mi.iter().map(|e| e.1).collect();
        for &(u, v) in mi {
            clauses.push(vec![xv(u), yv(v), zv(i + 1)]);
            let mut psi = vec![0u8; n];
            for x in 1..=m {
                psi[zv(x)] = (x != i + 1) as u8;
            }
            for a in 1..=side {
                psi[xv(a)] = (a != u && covered_left.contains(&a)) as u8;
                psi[yv(a)] = (a != v && covered_right.contains(&a)) as u8;
            }
            witnesses.push(psi);
        }
    }
    let partition = vec![
        (0..side).collect(),
        (side..2 * side).collect(),
        (2 * side..n).collect(),
    ];
    let inst = CspInstance::new(n, 3, clauses, Some(partition))?;
    let witnesses = WitnessSet::new(witnesses);
    if !check_conditional(
        &named::p299_prime(),
        &named::q299_prime(),
        &inst,
        &witnesses,
    )? {
        return Err(NrdError::UnverifiedConstruction(format!(
            "R299 conditional instance, m = {m}"
        )));
    }
    Ok((inst, witnesses))
}

/// The same instance moved back to `P_299 | Q_299`, ready for the lift to `R_299`.
pub fn r299_unprimed_instance(m: usize) -> Result<(CspInstance, WitnessSet)> {
    let (inst, w) = r299_conditional_instance(m)?;
    let (inst, w) = transport(&inst, &w, &r299_relabelling().inverse())?;
    if !check_conditional(&named::p299(), &named::q299(), &inst, &w)? {
        return Err(NrdError::UnverifiedConstruction(
            "relabelled R299 instance".into(),
        ));
    }
    Ok((inst, w))
}

/// Results of the slice checks on a tripartite arity-3 instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    pub slices: usize,
    /// Third coordinates `c` for which `E[c]` is not a matching.
    pub non_matching: Vec<usize>,
    /// `(c, c', k)`: `V(E[c])` induces `k > 2` edges of `E[c']`.
    pub over_induced: Vec<(usize, usize, usize)>,
    pub max_induced: usize,
}

impl SliceReport {
    pub fn passes(&self) -> bool {
        self.non_matching.is_empty() && self.over_induced.is_empty()
    }
}

/// `E[c] = {(a, b) : (a, b, c) ∈ E}`: each slice must be a matching, and the
/// vertices of one slice may induce at most two edges of any other.
pub fn slice_claims_check(inst: &CspInstance) -> Result<SliceReport> {
    if inst.arity() != 3 {
        return Err(NrdError::ArityMismatch {
            expected: 3,
            got: inst.arity(),
        });
    }
    let mut slices: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for c in inst.clauses() {
        slices.entry(c[2]).or_default().push((c[0], c[1]));
    }
    let mut non_matching = Vec::new();
    let mut vertex_sets = BTreeMap::new();
    for (&c, edges) in &slices {
        let mut seen = BTreeSet::new();
        if !edges.iter().all(|&(a, b)| seen.insert(a) & seen.insert(b)) {
            non_matching.push(c);
        }
        vertex_sets.insert(c, seen);
    }
    let mut over_induced = Vec::new();
    let mut max_induced = 0;
    for (&c, vs) in &vertex_sets {
        for (&c2, edges) in &slices {
            if c2 == c {
                continue;
            }
            let k = edges
                .iter()
                .filter(|(a, b)| vs.contains(a) && vs.contains(b))
                .count();
            max_induced = max_induced.max(k);
            if k > 2 {
                over_induced.push((c, c2, k));
            }
        }
    }
    Ok(SliceReport {
        slices: slices.len(),
        non_matching,
        over_induced,
        max_induced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::behrend_set;
    use crate::oracle::{find_conditional_witnesses, SearchConfig, WitnessSearch};

    #[test]
    fn relabelling_maps_the_pair() {
        let g = r299_relabelling();
        assert_eq!(named::p299().apply(&g).unwrap(), named::p299_prime());
        assert_eq!(named::q299().apply(&g).unwrap(), named::q299_prime());
    }

    #[test]
    fn instances_verify_with_expected_size() {
        let (inst, _) = r299_conditional_instance(1).unwrap();
        assert_eq!(inst.len(), 1);
        let (inst, _) = r299_conditional_instance(5).unwrap();
        assert_eq!(inst.len(), 5 * behrend_set(5).unwrap().len());
        let report = slice_claims_check(&inst).unwrap();
        assert!(report.passes(), "{report:?}");
        r299_unprimed_instance(5).unwrap();
    }

    #[test]
    fn shared_vertex_in_a_slice_is_redundant() {
        // (a, b, c) and (a, b', c): E[c] is not a matching
        let parts = Some(vec![vec![0], vec![1, 2], vec![3]]);
        let inst = CspInstance::new(4, 3, vec![vec![0, 1, 3], vec![0, 2, 3]], parts).unwrap();
        assert!(!slice_claims_check(&inst).unwrap().passes());
        let found = find_conditional_witnesses(
            &named::p299_prime(),
            &named::q299_prime(),
            &inst,
            &SearchConfig::default(),
        )
        .unwrap();
        assert!(matches!(found, WitnessSearch::Redundant { .. }));
    }

    #[test]
    fn single_clause_slices_pass() {
        let parts = Some(vec![vec![0], vec![1], vec![2]]);
        let inst = CspInstance::new(3, 3, vec![vec![0, 1, 2]], parts).unwrap();
        assert!(slice_claims_check(&inst).unwrap().passes());
    }
}
