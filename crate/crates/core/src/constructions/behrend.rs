use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;

use crate::error::{NrdError, Result};

/// Vectors in `{0..d-1}^k` read as base-`(2d-1)` integers, most significant digit first.
fn digit_value(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * base + x)
}

/// A 3-AP-free subset of `1..=m`, sorted.
///
/// Candidates are spheres of fixed squared norm in `{0..d-1}^k` and, for
/// `d = 2`, the whole cube `{0,1}^k`; digits below `d` in base `2d - 1` add
/// without carries, so a 3-AP among the integers would be one among the
/// vectors. Only `(k, d)` whose whole cube fits below `m` are scanned; the
/// largest candidate, translated to start at 1, wins.
pub fn behrend_set(m: usize) -> Result<Vec<usize>> {
    if m == 0 {
        return Err(NrdError::InvalidParameter(
            "behrend_set needs m >= 1".into(),
        ));
    }
    let mut best: Vec<usize> = vec![1];
    let consider = |values: Vec<usize>, best: &mut Vec<usize>| {
        let (lo, hi) = match values.iter().minmax().into_option() {
            Some((&lo, &hi)) => (lo, hi),
            None => return,
        };
        if hi - lo < m && values.len() > best.len() {
            let mut set: Vec<usize> = values.iter().map(|v| v - lo + 1).collect();
            set.sort_unstable();
            *best = set;
        }
    };
    for d in 2.. {
        let base = 2 * d - 1;
        let min_k = if d == 2 { 1 } else { 2 };
        if digit_value(&vec![d - 1; min_k], base) >= m {
            break;
        }
        for k in min_k.. {
            if digit_value(&vec![d - 1; k], base) >= m {
                break;
            }
            let mut by_norm: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            let mut all = Vec::new();
            for digits in (0..k).map(|_| 0..d).multi_cartesian_product() {
                let norm = digits.iter().map(|x| x * x).sum();
                let value = digit_value(&digits, base);
                by_norm.entry(norm).or_default().push(value);
                if d == 2 {
                    all.push(value);
                }
            }
            if d == 2 {
                consider(all, &mut best);
            }
            for (_, values) in by_norm {
                consider(values, &mut best);
            }
        }
    }
    Ok(best)
}

/// No `x < y < z` in the set with `x + z = 2y`.
pub fn is_ap_free(set: &[usize]) -> bool {
    let members: HashSet<usize> = set.iter().copied().collect();
    set.iter().tuple_combinations().all(|(&x, &z)| {
        let (x, z) = (x.min(z), x.max(z));
        x == z || (x + z) % 2 == 1 || !members.contains(&((x + z) / 2))
    })
}

/// Bipartite graph on left and right sides `1..=3m` with matchings
/// `M_x = {(x + s, x + 2s) : s ∈ S}` for `x ∈ 1..=m`, `S` a Behrend set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsGraph {
    m: usize,
    ap_free_set: Vec<usize>,
    matchings: Vec<Vec<(usize, usize)>>,
}

impl RsGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn side_size(&self) -> usize {
        3 * self.m
    }

    pub fn ap_free_set(&self) -> &[usize] {
        &self.ap_free_set
    }

    /// `matchings()[x - 1]` is `M_x`.
    pub fn matchings(&self) -> &[Vec<(usize, usize)>] {
        &self.matchings
    }

    pub fn num_edges(&self) -> usize {
        self.matchings.iter().map(Vec::len).sum()
    }

    /// Edges lying in more than one matching.
    pub fn shared_edges(&self) -> Vec<(usize, usize)> {
        let mut seen = HashSet::new();
        let mut shared = Vec::new();
        for &e in self.matchings.iter().flatten() {
            if !seen.insert(e) {
                shared.push(e);
            }
        }
        shared
    }

    pub fn is_matching(&self, x: usize) -> bool {
        let mx = &self.matchings[x];
        mx.iter().map(|e| e.0).all_unique() && mx.iter().map(|e| e.1).all_unique()
    }

    /// No union-graph edge outside `M_x` joins two vertices covered by `M_x`.
    pub fn is_induced(&self, x: usize) -> bool {
        let mx = &self.matchings[x];
        let left: HashSet<usize> = mx.iter().map(|e| e.0).collect();
        let right: HashSet<usize> = mx.iter().map(|e| e.1).collect();
        let own: HashSet<(usize, usize)> = mx.iter().copied().collect();
        self.matchings
            .iter()
            .flatten()
            .all(|e| own.contains(e) || !(left.contains(&e.0) && right.contains(&e.1)))
    }

    pub fn all_induced(&self) -> bool {
        (0..self.matchings.len()).all(|x| self.is_matching(x) && self.is_induced(x))
    }
}

pub fn rs_graph(m: usize) -> Result<RsGraph> {
    let ap_free_set = behrend_set(m)?;
    let matchings = (1..=m)
        .map(|x| ap_free_set.iter().map(|&s| (x + s, x + 2 * s)).collect())
        .collect();
    Ok(RsGraph {
        m,
        ap_free_set,
        matchings,
    })
}
