use crate::error::{NrdError, Result};
use crate::oracle::{check_conditional, CspInstance, WitnessSet};
use crate::predicate::named;

use super::indicator_witnesses;
use super::triples::{linear_triple_system, TripleSystem};

/// Variable layout of the two-core hypergraph: `u_1 = 0`, `u_2 = 1`, `v = 2`,
/// then `V_1 \ {u_1}`, then `V_2 \ {u_2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P181Layout {
    pub u1: usize,
    pub u2: usize,
    pub v: usize,
    pub half: usize,
    /// Clauses coming from `H_1`; the rest come from `H_2`.
    pub h1_clauses: usize,
}

/// `{u_1, v} ∪ e` for `e ∈ H_1` and `{u_2, v} ∪ e` for `e ∈ H_2`, with
/// `H_1`, `H_2` placed on `V_1 \ {u_1}` and `V_2 \ {u_2}` (`half - 1` vertices each).
///
/// Clauses are ordered `(u_i, v, a, b, c)` with parts `{u_1, u_2}`, `{v}` and
/// the three parts of the triple systems. The witness of `{u_i, v} ∪ e` sets
/// `e`, `u_1`, `u_2`, `v` to 1 and everything else to 0.
pub fn p181_from_parts(
    half: usize,
    h1: &TripleSystem,
    h2: Option<&TripleSystem>,
) -> Result<(CspInstance, WitnessSet, P181Layout)> {
    let need = |s: &TripleSystem| s.num_vertices() < half;
    if !need(h1) || !h2.is_none_or(need) {
        return Err(NrdError::InvalidParameter(format!(
            "a side of size {half} cannot host the given triple systems"
        )));
    }
    let (u1, u2, v) = (0, 1, 2);
    let base1 = 3;
    let base2 = 3 + (half - 1);
    let n = 2 * half + 1;

    let mut parts: Vec<Vec<usize>> =
        vec![vec![u1, u2], vec![v], Vec::new(), Vec::new(), Vec::new()];
    let mut clauses = Vec::new();
    for (core, base, system) in [(u1, base1, Some(h1)), (u2, base2, h2)] {
        let used = system.map_or(0, TripleSystem::num_vertices);
        if let Some(s) = system {
            for (j, part) in s.parts().iter().enumerate() {
                parts[2 + j].extend(part.iter().map(|&x| base + x));
            }
            for t in s.triples() {
                clauses.push(vec![core, v, base + t[0], base + t[1], base + t[2]]);
            }
        }
        // unused side vertices still need a part
        parts[2].extend(base + used..base + half - 1);
    }
    let h1_clauses = h1.len();
    let witnesses = clauses
        .iter()
        .map(|c| {
            let mut psi = vec![0u8; n];
            for &x in c.iter().skip(2) {
                psi[x] = 1;
            }
            psi[u1] = 1;
            psi[u2] = 1;
            psi[v] = 1;
            psi
        })
        .collect();
    let inst = CspInstance::new(n, 5, clauses, Some(parts))?;
    let witnesses = WitnessSet::new(witnesses);
    if !check_conditional(&named::p181(), &named::q181(), &inst, &witnesses)? {
        return Err(NrdError::UnverifiedConstruction(format!(
            "P181 two-core hypergraph, half = {half}"
        )));
    }
    Ok((
        inst,
        witnesses,
        P181Layout {
            u1,
            u2,
            v,
            half,
            h1_clauses,
        },
    ))
}

/// Two-core counterexample with the largest linear triple systems fitting on each side.
pub fn p181_counterexample(half: usize) -> Result<(CspInstance, WitnessSet, P181Layout)> {
    if half < 4 {
        return Err(NrdError::InvalidParameter(format!(
            "half = {half} is too small to host a nonempty linear hypergraph (needs half >= 4)"
        )));
    }
    let system = linear_triple_system((half - 1) / 3)?;
    p181_from_parts(half, &system, Some(&system))
}

/// A vertex `u ≠ v` lying in every clause that contains `v`, if one exists.
/// `None` also when no clause contains `v`.
pub fn common_core(inst: &CspInstance, v: usize) -> Option<usize> {
    let mut star = inst.clauses().iter().filter(|c| c.contains(&v));
    let first = star.next()?;
    let mut candidates: Vec<usize> = first.iter().copied().filter(|&u| u != v).collect();
    for c in star {
        candidates.retain(|u| c.contains(u));
    }
    candidates.first().copied()
}

/// Disjoint copies of `{u_j, v_j} ∪ e`, `e ∈ H`: pairwise intersections are
/// 0, 2 or 3, so clause indicators witness `P_181 | Q_181`.
pub fn p181_indicator_family(m: usize, copies: usize) -> Result<(CspInstance, WitnessSet)> {
    if copies == 0 {
        return Err(NrdError::InvalidParameter("need at least one copy".into()));
    }
    let system = linear_triple_system(m)?;
    let block = 2 + system.num_vertices();
    let n = block * copies;
    let mut parts = vec![Vec::new(); 5];
    let mut clauses = Vec::new();
    for j in 0..copies {
        let base = j * block;
        parts[0].push(base);
        parts[1].push(base + 1);
        for (p, part) in system.parts().iter().enumerate() {
            parts[2 + p].extend(part.iter().map(|&x| base + 2 + x));
        }
        for t in system.triples() {
            clauses.push(vec![
                base,
                base + 1,
                base + 2 + t[0],
                base + 2 + t[1],
                base + 2 + t[2],
            ]);
        }
    }
    let inst = CspInstance::new(n, 5, clauses, Some(parts))?;
    let witnesses = indicator_witnesses(&inst);
    if !check_conditional(&named::p181(), &named::q181(), &inst, &witnesses)? {
        return Err(NrdError::UnverifiedConstruction(
            "P181 indicator family".into(),
        ));
    }
    Ok((inst, witnesses))
}
