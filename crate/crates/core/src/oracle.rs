//! Ground truth for (conditional) non-redundancy: witness checking, witness
//! search and exact NRD values for very small parameters.
//!
//! A clause is satisfied by an assignment when the tuple it receives lies in
//! `P`. An instance is non-redundant when every clause has a witness that
//! satisfies all other clauses and not that one; conditionally, for `P ⊊ Q`,
//! the distinguished clause must additionally land in `Q \ P`.

use std::collections::BTreeSet;

use crate::error::{NrdError, Result};
use crate::predicate::{Predicate, SymmetryElement};

/// An `r`-uniform clause list over variables `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    n: usize,
    arity: usize,
    clauses: Vec<Vec<usize>>,
    partition: Option<Vec<Vec<usize>>>,
}

impl CspInstance {
    pub fn new(
        n: usize,
        arity: usize,
        clauses: Vec<Vec<usize>>,
        partition: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(NrdError::InvalidInstance(msg));
        let mut seen = BTreeSet::new();
        for (i, c) in clauses.iter().enumerate() {
            if c.len() != arity {
                return invalid(format!(
                    "clause {i} has {} entries, arity is {arity}",
                    c.len()
                ));
            }
            if let Some(v) = c.iter().find(|&&v| v >= n) {
                return invalid(format!("clause {i} uses variable {v} >= n = {n}"));
            }
            if !seen.insert(c.clone()) {
                return invalid(format!("clause {i} duplicates an earlier clause {c:?}"));
            }
        }
        if let Some(parts) = &partition {
            if parts.len() != arity {
                return invalid(format!(
                    "partition has {} parts, arity is {arity}",
                    parts.len()
                ));
            }
            let mut owner = vec![usize::MAX; n];
            for (j, part) in parts.iter().enumerate() {
                for &v in part {
                    if v >= n || owner[v] != usize::MAX {
                        return invalid(format!("variable {v} is out of range or in two parts"));
                    }
                    owner[v] = j;
                }
            }
            if owner.contains(&usize::MAX) {
                return invalid("partition does not cover all variables".into());
            }
            for (i, c) in clauses.iter().enumerate() {
                if c.iter().enumerate().any(|(j, &v)| owner[v] != j) {
                    return invalid(format!("clause {i} does not respect the partition"));
                }
            }
        }
        Ok(Self {
            n,
            arity,
            clauses,
            partition,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn partition(&self) -> Option<&[Vec<usize>]> {
        self.partition.as_deref()
    }

    pub fn is_partite(&self) -> bool {
        self.partition.is_some()
    }

    /// The instance on the chosen clauses (by index), same variables and partition.
    pub fn sub_instance(&self, keep: &[usize]) -> Result<CspInstance> {
        let clauses = keep
            .iter()
            .map(|&i| {
                self.clauses
                    .get(i)
                    .cloned()
                    .ok_or_else(|| NrdError::InvalidInstance(format!("no clause {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CspInstance::new(self.n, self.arity, clauses, self.partition.clone())
    }

    fn tuple_index(&self, clause: usize, assignment: &[u8]) -> usize {
        self.clauses[clause]
            .iter()
            .fold(0, |acc, &v| (acc << 1) | assignment[v] as usize)
    }
}

/// One full assignment per clause, indexed like the clause list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSet {
    assignments: Vec<Vec<u8>>,
}

impl WitnessSet {
    pub fn new(assignments: Vec<Vec<u8>>) -> Self {
        Self { assignments }
    }

    pub fn assignments(&self) -> &[Vec<u8>] {
        &self.assignments
    }

    pub fn get(&self, clause: usize) -> Option<&[u8]> {
        self.assignments.get(clause).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn restrict(&self, keep: &[usize]) -> WitnessSet {
        WitnessSet {
            assignments: keep.iter().map(|&i| self.assignments[i].clone()).collect(),
        }
    }
}

/// `P ⊊ Q` of equal arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalPair {
    p: Predicate,
    q: Predicate,
}

impl ConditionalPair {
    pub fn new(p: Predicate, q: Predicate) -> Result<Self> {
        if p.arity() != q.arity() {
            return Err(NrdError::ArityMismatch {
                expected: p.arity(),
                got: q.arity(),
            });
        }
        if !p.is_subset_of(&q) || p == q {
            return Err(NrdError::ContainmentViolation);
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &Predicate {
        &self.p
    }

    pub fn q(&self) -> &Predicate {
        &self.q
    }

    /// `Q \ P`.
    pub fn gap(&self) -> Predicate {
        self.q.difference(&self.p).expect("same arity")
    }
}

fn check_shapes(p: &Predicate, inst: &CspInstance, w: &WitnessSet) -> Result<()> {
    if p.arity() != inst.arity() {
        return Err(NrdError::ArityMismatch {
            expected: inst.arity(),
            got: p.arity(),
        });
    }
    if w.len() != inst.len() {
        return Err(NrdError::WitnessMismatch(format!(
            "{} witnesses for {} clauses",
            w.len(),
            inst.len()
        )));
    }
    if let Some((i, a)) = w
        .assignments
        .iter()
        .enumerate()
        .find(|(_, a)| a.len() != inst.n())
    {
        return Err(NrdError::WitnessMismatch(format!(
            "witness {i} assigns {} variables, instance has {}",
            a.len(),
            inst.n()
        )));
    }
    if let Some(b) = w.assignments.iter().flatten().find(|&&b| b > 1) {
        return Err(NrdError::WitnessMismatch(format!(
            "witness value {b} is not a bit"
        )));
    }
    Ok(())
}

fn witness_holds(
    allowed: &Predicate,
    target: &Predicate,
    inst: &CspInstance,
    clause: usize,
    assignment: &[u8],
) -> bool {
    (0..inst.len()).all(|j| {
        let t = inst.tuple_index(j, assignment);
        if j == clause {
            target.contains_index(t)
        } else {
            allowed.contains_index(t)
        }
    })
}

/// Each witness leaves exactly its own clause unsatisfied.
pub fn check_witnesses(p: &Predicate, inst: &CspInstance, w: &WitnessSet) -> Result<bool> {
    check_shapes(p, inst, w)?;
    let unsat = p.complement();
    Ok((0..inst.len()).all(|e| witness_holds(p, &unsat, inst, e, &w.assignments[e])))
}

/// Each witness `P`-satisfies every other clause and sends its own clause into `Q \ P`.
pub fn check_conditional(
    p: &Predicate,
    q: &Predicate,
    inst: &CspInstance,
    w: &WitnessSet,
) -> Result<bool> {
    let pair = ConditionalPair::new(p.clone(), q.clone())?;
    if !inst.is_partite() {
        return Err(NrdError::NotPartite);
    }
    check_shapes(p, inst, w)?;
    let gap = pair.gap();
    Ok((0..inst.len()).all(|e| witness_holds(p, &gap, inst, e, &w.assignments[e])))
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_vars: usize,
    /// Search nodes allowed per clause before giving up with `Unknown`.
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_vars: 24,
            node_budget: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(WitnessSet),
    /// No witness exists for this clause: the instance is not non-redundant.
    Redundant {
        clause: usize,
    },
    /// The node budget ran out on this clause.
    Unknown {
        clause: usize,
    },
}

impl WitnessSearch {
    pub fn witnesses(&self) -> Option<&WitnessSet> {
        match self {
            WitnessSearch::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Backtracking search with forward checking over variables in index order.
struct Solver<'a> {
    inst: &'a CspInstance,
    /// Allowed tuple indices per clause.
    allowed: Vec<Vec<usize>>,
    occurrences: Vec<Vec<usize>>,
    values: Vec<i8>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
}

enum Outcome {
    Sat,
    Unsat,
    OutOfBudget,
}

impl<'a> Solver<'a> {
    fn new(inst: &'a CspInstance, allowed: Vec<Vec<usize>>, budget: u64) -> Self {
        let mut occurrences = vec![Vec::new(); inst.n()];
        for (c, clause) in inst.clauses().iter().enumerate() {
            for &v in clause {
                if occurrences[v].last() != Some(&c) {
                    occurrences[v].push(c);
                }
            }
        }
        Self {
            inst,
            allowed,
            occurrences,
            values: vec![-1; inst.n()],
            trail: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn assign(&mut self, v: usize, val: u8) {
        self.values[v] = val as i8;
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("nonempty trail");
            self.values[v] = -1;
        }
    }

    /// Restricts clause `c`; returns false on conflict and queues forced variables.
    fn revise(&mut self, c: usize, queue: &mut Vec<usize>) -> bool {
        let clause = &self.inst.clauses()[c];
        let r = clause.len();
        let mut and_mask = usize::MAX;
        let mut or_mask = 0usize;
        let mut any = false;
        'tuples: for &t in &self.allowed[c] {
            for (pos, &v) in clause.iter().enumerate() {
                let bit = ((t >> (r - 1 - pos)) & 1) as i8;
                if self.values[v] >= 0 && self.values[v] != bit {
                    continue 'tuples;
                }
                // repeated variables inside a clause must agree
                if clause[..pos]
                    .iter()
                    .enumerate()
                    .any(|(p2, &v2)| v2 == v && ((t >> (r - 1 - p2)) & 1) as i8 != bit)
                {
                    continue 'tuples;
                }
            }
            any = true;
            and_mask &= t;
            or_mask |= t;
        }
        if !any {
            return false;
        }
        for (pos, &v) in clause.iter().enumerate() {
            if self.values[v] >= 0 {
                continue;
            }
            let bit = 1usize << (r - 1 - pos);
            let forced = if and_mask & bit != 0 {
                Some(1)
            } else if or_mask & bit == 0 {
                Some(0)
            } else {
                None
            };
            if let Some(val) = forced {
                self.assign(v, val);
                queue.push(v);
            }
        }
        true
    }

    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            for i in 0..self.occurrences[v].len() {
                let c = self.occurrences[v][i];
                if !self.revise(c, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn search(&mut self) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::OutOfBudget;
        }
        let Some(v) = self.values.iter().position(|&x| x < 0) else {
            return Outcome::Sat;
        };
        for val in [0u8, 1] {
            let mark = self.trail.len();
            self.assign(v, val);
            if self.propagate(vec![v]) {
                match self.search() {
                    Outcome::Unsat => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
        }
        Outcome::Unsat
    }

    fn solve(mut self) -> (Outcome, Vec<u8>) {
        let mut queue = Vec::new();
        for c in 0..self.inst.len() {
            if !self.revise(c, &mut queue) {
                return (Outcome::Unsat, Vec::new());
            }
        }
        if !self.propagate(queue) {
            return (Outcome::Unsat, Vec::new());
        }
        let outcome = self.search();
        let values = self.values.iter().map(|&x| x.max(0) as u8).collect();
        (outcome, values)
    }
}

fn search_all(
    allowed: &Predicate,
    target: &Predicate,
    inst: &CspInstance,
    config: &SearchConfig,
) -> Result<WitnessSearch> {
    if inst.n() > config.max_vars {
        return Err(NrdError::FeasibilityRefused(format!(
            "{} variables exceeds the witness-search bound {}",
            inst.n(),
            config.max_vars
        )));
    }
    let allowed_list: Vec<usize> = allowed.indices().collect();
    let target_list: Vec<usize> = target.indices().collect();
    let mut out = Vec::with_capacity(inst.len());
    for e in 0..inst.len() {
        let per_clause = (0..inst.len())
            .map(|j| {
                if j == e {
                    target_list.clone()
                } else {
                    allowed_list.clone()
                }
            })
            .collect();
        let (outcome, values) = Solver::new(inst, per_clause, config.node_budget).solve();
        match outcome {
            Outcome::Sat => {
                debug_assert!(witness_holds(allowed, target, inst, e, &values));
                out.push(values);
            }
            Outcome::Unsat => return Ok(WitnessSearch::Redundant { clause: e }),
            Outcome::OutOfBudget => return Ok(WitnessSearch::Unknown { clause: e }),
        }
    }
    Ok(WitnessSearch::Found(WitnessSet::new(out)))
}

pub fn find_witnesses(p: &Predicate, inst: &CspInstance) -> Result<WitnessSearch> {
    find_witnesses_with(p, inst, &SearchConfig::default())
}

pub fn find_witnesses_with(
    p: &Predicate,
    inst: &CspInstance,
    config: &SearchConfig,
) -> Result<WitnessSearch> {
    if p.arity() != inst.arity() {
        return Err(NrdError::ArityMismatch {
            expected: inst.arity(),
            got: p.arity(),
        });
    }
    search_all(p, &p.complement(), inst, config)
}

pub fn find_conditional_witnesses(
    p: &Predicate,
    q: &Predicate,
    inst: &CspInstance,
    config: &SearchConfig,
) -> Result<WitnessSearch> {
    let pair = ConditionalPair::new(p.clone(), q.clone())?;
    if !inst.is_partite() {
        return Err(NrdError::NotPartite);
    }
    if p.arity() != inst.arity() {
        return Err(NrdError::ArityMismatch {
            expected: inst.arity(),
            got: p.arity(),
        });
    }
    search_all(p, &pair.gap(), inst, config)
}

/// Which candidate clauses the exhaustive NRD search draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseUniverse {
    /// All ordered tuples of pairwise distinct variables.
    Distinct,
    /// `V_1 × … × V_r`, maximized over every split of the variables into `r` nonempty parts.
    Partite,
}

const MAX_UNIVERSE: usize = 64;

fn check_feasible(arity: usize, n: usize, universe: ClauseUniverse) -> Result<()> {
    let ok = match universe {
        ClauseUniverse::Distinct => arity <= 2 && n <= 5,
        ClauseUniverse::Partite => arity <= 4 && n <= 4,
    };
    if !ok || arity == 0 {
        return Err(NrdError::FeasibilityRefused(format!(
            "arity {arity}, n = {n} with {universe:?} universe (limits: arity <= 2 and n <= 5 for distinct, arity <= 4 and n <= 4 for partite)"
        )));
    }
    Ok(())
}

fn distinct_tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(arity).collect()
}

/// Splits `0..n` into `arity` consecutive nonempty blocks, one per size vector.
fn partite_splits(n: usize, arity: usize) -> Vec<Vec<Vec<usize>>> {
    fn sizes(remaining: usize, parts: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            if remaining >= 1 {
                acc.push(remaining);
                out.push(acc.clone());
                acc.pop();
            }
            return;
        }
        for s in 1..remaining {
            acc.push(s);
            sizes(remaining - s, parts - 1, acc, out);
            acc.pop();
        }
    }
    let mut size_vectors = Vec::new();
    sizes(n, arity, &mut Vec::new(), &mut size_vectors);
    size_vectors
        .into_iter()
        .map(|sv| {
            let mut start = 0;
            sv.iter()
                .map(|&s| {
                    let part: Vec<usize> = (start..start + s).collect();
                    start += s;
                    part
                })
                .collect()
        })
        .collect()
}

fn product_clauses(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    parts
        .iter()
        .map(|p| p.iter().copied())
        .multi_cartesian_product()
        .collect()
}

/// Maximum non-redundant subset of `universe`, by exhaustive branch and bound.
///
/// For every assignment the failing clauses and the target clauses are
/// precomputed as bitmasks; a set `E` is non-redundant when each `e ∈ E` has
/// an assignment that targets `e` and fails nothing else in `E`.
fn max_nonredundant(
    allowed: &Predicate,
    target: &Predicate,
    n: usize,
    universe: &[Vec<usize>],
) -> usize {
    assert!(universe.len() <= MAX_UNIVERSE);
    let u = universe.len();
    let mut witnesses_of: Vec<Vec<u64>> = vec![Vec::new(); u];
    for a in 0..1usize << n {
        let bits: Vec<u8> = (0..n).map(|v| ((a >> v) & 1) as u8).collect();
        let mut fail = 0u64;
        let mut hit = 0u64;
        for (j, c) in universe.iter().enumerate() {
            let t = c.iter().fold(0, |acc, &v| (acc << 1) | bits[v] as usize);
            if !allowed.contains_index(t) {
                fail |= 1 << j;
            }
            if target.contains_index(t) {
                hit |= 1 << j;
            }
        }
        for j in 0..u {
            if hit >> j & 1 == 1 {
                witnesses_of[j].push(fail);
            }
        }
    }
    for w in witnesses_of.iter_mut() {
        w.sort_unstable();
        w.dedup();
    }

    fn nonredundant(set: u64, witnesses_of: &[Vec<u64>]) -> bool {
        (0..witnesses_of.len())
            .filter(|e| set >> e & 1 == 1)
            .all(|e| witnesses_of[e].iter().any(|f| f & set == 1 << e))
    }

    fn dfs(i: usize, set: u64, size: usize, best: &mut usize, witnesses_of: &[Vec<u64>]) {
        if size > *best {
            *best = size;
        }
        let u = witnesses_of.len();
        if i == u || size + (u - i) <= *best {
            return;
        }
        let with = set | 1 << i;
        if !witnesses_of[i].is_empty() && nonredundant(with, witnesses_of) {
            dfs(i + 1, with, size + 1, best, witnesses_of);
        }
        dfs(i + 1, set, size, best, witnesses_of);
    }

    let mut best = 0;
    dfs(0, 0, 0, &mut best, &witnesses_of);
    best
}

/// Exact `NRD(P, n)` on the default clause universe for the arity
/// (distinct tuples for arity ≤ 2, partite above).
pub fn exact_nrd(p: &Predicate, n: usize) -> Result<usize> {
    let universe = if p.arity() <= 2 {
        ClauseUniverse::Distinct
    } else {
        ClauseUniverse::Partite
    };
    exact_nrd_with(p, n, universe)
}

pub fn exact_nrd_with(p: &Predicate, n: usize, universe: ClauseUniverse) -> Result<usize> {
    check_feasible(p.arity(), n, universe)?;
    let unsat = p.complement();
    Ok(match universe {
        ClauseUniverse::Distinct => max_nonredundant(p, &unsat, n, &distinct_tuples(n, p.arity())),
        ClauseUniverse::Partite => partite_splits(n, p.arity())
            .iter()
            .map(|parts| max_nonredundant(p, &unsat, n, &product_clauses(parts)))
            .max()
            .unwrap_or(0),
    })
}

/// Exact `NRD(P | Q, n)` over partite instances.
pub fn exact_conditional_nrd(p: &Predicate, q: &Predicate, n: usize) -> Result<usize> {
    let pair = ConditionalPair::new(p.clone(), q.clone())?;
    check_feasible(p.arity(), n, ClauseUniverse::Partite)?;
    let gap = pair.gap();
    Ok(partite_splits(n, p.arity())
        .iter()
        .map(|parts| max_nonredundant(p, &gap, n, &product_clauses(parts)))
        .max()
        .unwrap_or(0))
}

/// Moves an instance and witnesses along a symmetry: verified for `P` becomes verified for `g(P)`.
///
/// Every variable must occupy coordinates with a consistent flip bit, which
/// partite instances always satisfy.
pub fn transport(
    inst: &CspInstance,
    w: &WitnessSet,
    g: &SymmetryElement,
) -> Result<(CspInstance, WitnessSet)> {
    if g.arity() != inst.arity() {
        return Err(NrdError::ArityMismatch {
            expected: inst.arity(),
            got: g.arity(),
        });
    }
    let perm = g.perm();
    let mut flip: Vec<Option<bool>> = vec![None; inst.n()];
    let mut clauses = Vec::with_capacity(inst.len());
    for c in inst.clauses() {
        let image: Vec<usize> = (0..inst.arity()).map(|i| c[perm[i]]).collect();
        for (i, &v) in image.iter().enumerate() {
            let f = g.flips_coordinate(i);
            match flip[v] {
                Some(prev) if prev != f => {
                    return Err(NrdError::InvalidInstance(format!(
                        "variable {v} appears under conflicting negations"
                    )))
                }
                _ => flip[v] = Some(f),
            }
        }
        clauses.push(image);
    }
    let partition = inst
        .partition()
        .map(|parts| (0..inst.arity()).map(|i| parts[perm[i]].clone()).collect());
    let assignments = w
        .assignments()
        .iter()
        .map(|a| {
            a.iter()
                .enumerate()
                .map(|(v, &b)| b ^ flip[v].unwrap_or(false) as u8)
                .collect()
        })
        .collect();
    Ok((
        CspInstance::new(inst.n(), inst.arity(), clauses, partition)?,
        WitnessSet::new(assignments),
    ))
}

/// The complete `r`-uniform hypergraph on `n` vertices (increasing tuples) with
/// witnesses `ψ_S(v) = 1[v ∉ S]`, non-redundant for `OR_r`.
pub fn complete_or_instance(n: usize, arity: usize) -> Result<(CspInstance, WitnessSet)> {
    use itertools::Itertools;
    let clauses: Vec<Vec<usize>> = (0..n).combinations(arity).collect();
    let witnesses = clauses
        .iter()
        .map(|c| (0..n).map(|v| (!c.contains(&v)) as u8).collect())
        .collect();
    Ok((
        CspInstance::new(n, arity, clauses, None)?,
        WitnessSet::new(witnesses),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicate::named;

    #[test]
    fn complete_graph_or2() {
        let (inst, w) = complete_or_instance(4, 2).unwrap();
        assert_eq!(inst.len(), 6);
        assert!(check_witnesses(&named::or(2), &inst, &w).unwrap());
        let found = find_witnesses(&named::or(2), &inst).unwrap();
        assert!(check_witnesses(&named::or(2), &inst, found.witnesses().unwrap()).unwrap());
    }

    #[test]
    fn single_clause_any_falsifier() {
        let inst = CspInstance::new(3, 2, vec![vec![0, 2]], None).unwrap();
        let w = WitnessSet::new(vec![vec![0, 1, 0]]);
        assert!(check_witnesses(&named::or(2), &inst, &w).unwrap());
    }

    #[test]
    fn and2_star_same_support_fails() {
        // (0,1) and (1,0) share a support; zeroing the center fails both.
        let inst = CspInstance::new(2, 2, vec![vec![0, 1], vec![1, 0]], None).unwrap();
        let w = WitnessSet::new(vec![vec![0, 1], vec![0, 1]]);
        assert!(!check_witnesses(&named::and(2), &inst, &w).unwrap());
        assert_eq!(
            find_witnesses(&named::and(2), &inst).unwrap(),
            WitnessSearch::Redundant { clause: 0 }
        );
    }

    #[test]
    fn and2_star_has_witnesses() {
        let inst = CspInstance::new(4, 2, vec![vec![0, 1], vec![0, 2], vec![0, 3]], None).unwrap();
        let found = find_witnesses(&named::and(2), &inst).unwrap();
        let w = found.witnesses().unwrap();
        assert!(check_witnesses(&named::and(2), &inst, w).unwrap());
        // first in counting order: leaf i zero, everything else one
        assert_eq!(w.get(0).unwrap(), &[1, 0, 1, 1]);
    }

    #[test]
    fn repeated_clause_is_rejected_and_unseparable() {
        assert!(CspInstance::new(3, 2, vec![vec![0, 1], vec![0, 1]], None).is_err());
        // The same support in both orders behaves like a repeat under a symmetric predicate.
        let inst = CspInstance::new(3, 2, vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(
            find_witnesses(&named::or(2), &inst).unwrap(),
            WitnessSearch::Redundant { clause: 0 }
        );
    }

    #[test]
    fn missing_witness_is_an_error() {
        let (inst, _) = complete_or_instance(3, 2).unwrap();
        let short = WitnessSet::new(vec![vec![0, 0, 1]]);
        assert!(matches!(
            check_witnesses(&named::or(2), &inst, &short),
            Err(NrdError::WitnessMismatch(_))
        ));
    }

    #[test]
    fn conditional_requires_partite_and_containment() {
        let inst = CspInstance::new(3, 3, vec![vec![0, 1, 2]], None).unwrap();
        let w = WitnessSet::new(vec![vec![1, 1, 1]]);
        assert!(matches!(
            check_conditional(&named::p317(), &named::q317(), &inst, &w),
            Err(NrdError::NotPartite)
        ));
        let parts = Some(vec![vec![0], vec![1], vec![2]]);
        let inst = CspInstance::new(3, 3, vec![vec![0, 1, 2]], parts).unwrap();
        assert!(check_conditional(&named::p317(), &named::q317(), &inst, &w).unwrap());
        assert!(matches!(
            check_conditional(&named::q317(), &named::p317(), &inst, &w),
            Err(NrdError::ContainmentViolation)
        ));
        assert!(matches!(
            check_conditional(&named::p317(), &named::p317(), &inst, &w),
            Err(NrdError::ContainmentViolation)
        ));
    }

    #[test]
    fn partition_is_validated() {
        let bad = CspInstance::new(2, 2, vec![vec![1, 0]], Some(vec![vec![0], vec![1]]));
        assert!(bad.is_err());
        let uncovered = CspInstance::new(3, 2, vec![vec![0, 1]], Some(vec![vec![0], vec![1]]));
        assert!(uncovered.is_err());
    }

    #[test]
    fn exact_values() {
        assert_eq!(exact_nrd(&named::or(2), 3).unwrap(), 3);
        assert_eq!(exact_nrd(&named::or(2), 4).unwrap(), 6);
        assert_eq!(exact_nrd(&named::and(2), 3).unwrap(), 2);
        assert!(matches!(
            exact_nrd(&named::or(2), 6),
            Err(NrdError::FeasibilityRefused(_))
        ));
        assert!(matches!(
            exact_nrd_with(&named::or(3), 4, ClauseUniverse::Distinct),
            Err(NrdError::FeasibilityRefused(_))
        ));
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let (inst, _) = complete_or_instance(6, 2).unwrap();
        let config = SearchConfig {
            max_vars: 24,
            node_budget: 0,
        };
        assert!(matches!(
            find_witnesses_with(&named::or(2), &inst, &config).unwrap(),
            WitnessSearch::Unknown { .. }
        ));
        let config = SearchConfig {
            max_vars: 4,
            node_budget: 100,
        };
        assert!(matches!(
            find_witnesses_with(&named::or(2), &inst, &config),
            Err(NrdError::FeasibilityRefused(_))
        ));
    }

    #[test]
    fn transport_along_symmetry() {
        let parts = Some(vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        let clauses = vec![vec![0, 2, 4], vec![1, 3, 5]];
        let inst = CspInstance::new(6, 3, clauses, parts).unwrap();
        let w = WitnessSet::new(vec![vec![1, 0, 1, 0, 1, 0], vec![0, 1, 0, 1, 0, 1]]);
        let (p, q) = (named::p317(), named::q317());
        assert!(check_conditional(&p, &q, &inst, &w).unwrap());
        for g in SymmetryElement::all(3) {
            let (gi, gw) = transport(&inst, &w, &g).unwrap();
            assert!(
                check_conditional(&p.apply(&g).unwrap(), &q.apply(&g).unwrap(), &gi, &gw).unwrap()
            );
        }
    }
}
