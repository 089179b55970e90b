//! Library results against brute-force reimplementations.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use nrd_core::certificate::{verify_certificate, PolynomialCertificate};
use nrd_core::constructions::{behrend_set, intersection_profile, linear_triple_system, rs_graph};
use nrd_core::lattice::is_balanced;
use nrd_core::or_projection::max_or_degree;
use nrd_core::oracle::{
    exact_nrd_with, find_witnesses, ClauseUniverse, CspInstance, WitnessSearch,
};
use nrd_core::predicate::{enumerate_classes, named, Predicate};

fn bits(i: usize, r: usize) -> Vec<u8> {
    (0..r).rev().map(|j| ((i >> j) & 1) as u8).collect()
}

fn index(t: &[u8]) -> usize {
    t.iter().fold(0, |a, &b| a * 2 + b as usize)
}

/// Image of `p` under a coordinate permutation followed by negating a subset of coordinates.
fn image(p: &BTreeSet<usize>, r: usize, perm: &[usize], neg: usize) -> BTreeSet<usize> {
    p.iter()
        .map(|&i| {
            let t = bits(i, r);
            let u: Vec<u8> = (0..r)
                .map(|j| t[perm[j]] ^ ((neg >> j) & 1) as u8)
                .collect();
            index(&u)
        })
        .collect()
}

#[test]
fn orbit_partition_matches_enumeration() {
    for r in 1..=3 {
        let mut seen = HashSet::new();
        let mut orbits = 0;
        for mask in 1u32..(1 << (1 << r)) - 1 {
            let p: BTreeSet<usize> = (0..1 << r).filter(|i| mask >> i & 1 == 1).collect();
            if seen.contains(&p) {
                continue;
            }
            orbits += 1;
            for perm in (0..r).permutations(r) {
                for neg in 0..1 << r {
                    seen.insert(image(&p, r, &perm, neg));
                }
            }
        }
        let classes = enumerate_classes(r).unwrap();
        assert_eq!(classes.len(), orbits, "arity {r}");
        // one representative per orbit
        let mut reps = HashSet::new();
        for c in &classes {
            let p: BTreeSet<usize> = c.indices().collect();
            let orbit: BTreeSet<BTreeSet<usize>> = (0..r)
                .permutations(r)
                .flat_map(|perm| (0..1 << r).map(move |neg| (perm.clone(), neg)))
                .map(|(perm, neg)| image(&p, r, &perm, neg))
                .collect();
            assert!(reps.insert(orbit));
        }
    }
}

/// Alternating sums `t_1 - t_2 + ... + t_m` of members for odd `m <= max_len` that land in `{0,1}^r`.
fn balanced_by_signed_sums(p: &Predicate, max_len: usize) -> bool {
    let r = p.arity();
    let members: Vec<Vec<i32>> = p
        .indices()
        .map(|i| bits(i, r).iter().map(|&b| b as i32).collect())
        .collect();
    let mut level: HashSet<Vec<i32>> = members.iter().cloned().collect();
    let mut len = 1;
    loop {
        for v in &level {
            if v.iter().all(|&x| x == 0 || x == 1) {
                let t: Vec<u8> = v.iter().map(|&x| x as u8).collect();
                if !p.contains_index(index(&t)) {
                    return false;
                }
            }
        }
        if len + 2 > max_len {
            return true;
        }
        let mut next = HashSet::new();
        for v in &level {
            for a in &members {
                for b in &members {
                    next.insert((0..r).map(|j| v[j] - a[j] + b[j]).collect::<Vec<_>>());
                }
            }
        }
        level = next;
        len += 2;
    }
}

#[test]
fn balance_matches_signed_sums() {
    for r in 1..=3 {
        for p in enumerate_classes(r).unwrap() {
            assert_eq!(
                is_balanced(&p).unwrap(),
                balanced_by_signed_sums(&p, 7),
                "{p}"
            );
        }
    }
    let mut balanced = 0;
    for p in enumerate_classes(4).unwrap() {
        let b = is_balanced(&p).unwrap();
        assert_eq!(b, balanced_by_signed_sums(&p, 7), "{p}");
        balanced += b as usize;
    }
    assert!(balanced > 0);
}

/// Largest `k` reachable by some substitution, enumerating literal codes directly.
fn or_degree_by_scan(p: &Predicate) -> usize {
    let r = p.arity();
    for k in (1..=r).rev() {
        // code 0, 1 = constants; 2 + 2v (+1) = x_v (negated)
        let found = (0..r)
            .map(|_| 0..2 + 2 * k)
            .multi_cartesian_product()
            .any(|codes| {
                (0..1usize << k).all(|a| {
                    let t: Vec<u8> = codes
                        .iter()
                        .map(|&c| match c {
                            0 => 0,
                            1 => 1,
                            c => (((a >> ((c - 2) / 2)) & 1) as u8) ^ ((c % 2) as u8),
                        })
                        .collect();
                    p.contains_index(index(&t)) == (a != 0)
                })
            });
        if found {
            return k;
        }
    }
    0
}

#[test]
fn or_degree_matches_scan() {
    for p in enumerate_classes(4).unwrap() {
        assert_eq!(max_or_degree(&p).unwrap().0, or_degree_by_scan(&p), "{p}");
    }
}

/// Non-redundancy of a clause subset by trying all `2^n` assignments per clause.
fn brute_nonredundant(p: &Predicate, n: usize, clauses: &[Vec<usize>]) -> bool {
    clauses.iter().enumerate().all(|(e, _)| {
        (0..1usize << n).any(|a| {
            let val = |c: &Vec<usize>| {
                let t: Vec<u8> = c.iter().map(|&v| ((a >> v) & 1) as u8).collect();
                p.contains_index(index(&t))
            };
            clauses.iter().enumerate().all(|(j, c)| val(c) == (j != e))
        })
    })
}

#[test]
fn exact_nrd_matches_subset_enumeration() {
    let n = 3;
    let universe: Vec<Vec<usize>> = (0..n).permutations(2).collect();
    for p in
        (1u32..15).map(|m| Predicate::from_indices(2, (0..4).filter(|i| m >> i & 1 == 1)).unwrap())
    {
        let best = (0..1u32 << universe.len())
            .map(|s| {
                universe
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| s >> i & 1 == 1)
                    .map(|(_, c)| c.clone())
                    .collect_vec()
            })
            .filter(|cs| brute_nonredundant(&p, n, cs))
            .map(|cs| cs.len())
            .max()
            .unwrap();
        assert_eq!(
            exact_nrd_with(&p, n, ClauseUniverse::Distinct).unwrap(),
            best,
            "{p}"
        );
    }
}

#[test]
fn witness_search_matches_brute_force() {
    let universe: Vec<Vec<usize>> = (0..4).permutations(2).collect();
    for p in [
        named::or(2),
        named::and(2),
        Predicate::parse_tuple_list("{00,11}", 2).unwrap(),
    ] {
        for s in (0u32..1 << universe.len()).step_by(37) {
            let clauses: Vec<Vec<usize>> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| s >> i & 1 == 1)
                .map(|(_, c)| c.clone())
                .collect();
            let inst = CspInstance::new(4, 2, clauses.clone(), None).unwrap();
            let found = matches!(find_witnesses(&p, &inst).unwrap(), WitnessSearch::Found(_));
            assert_eq!(
                found,
                brute_nonredundant(&p, 4, &clauses),
                "{p} {clauses:?}"
            );
        }
    }
}

fn max_ap_free(m: usize) -> usize {
    (0u32..1 << m)
        .filter(|s| {
            let set: Vec<usize> = (1..=m).filter(|x| s >> (x - 1) & 1 == 1).collect();
            set.iter()
                .tuple_combinations()
                .all(|(&a, &b)| set.iter().all(|&c| !(a < b && b < c && a + c == 2 * b)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

#[test]
fn behrend_sets_against_brute_force() {
    assert_eq!(max_ap_free(3), 2);
    assert_eq!(behrend_set(3).unwrap().len(), max_ap_free(3));
    assert!(2 * behrend_set(9).unwrap().len() >= max_ap_free(9));
    let check = |m: usize| {
        let s = behrend_set(m).unwrap();
        let set: HashSet<usize> = s.iter().copied().collect();
        assert!(s.iter().all(|&x| (1..=m).contains(&x)));
        for (&a, &c) in s.iter().tuple_combinations() {
            assert!(
                (a + c) % 2 == 1 || !set.contains(&((a + c) / 2)),
                "m = {m}: {a}, {c}"
            );
        }
    };
    for m in 1..=200 {
        check(m);
    }
    for m in (201..=10_000).step_by(97).chain([10_000]) {
        check(m);
    }
}

#[test]
fn rs_matchings_induced_by_definition() {
    for m in 1..=30 {
        let g = rs_graph(m).unwrap();
        let edges: Vec<(usize, usize)> = g.matchings().iter().flatten().copied().collect();
        for mx in g.matchings() {
            let left: HashSet<usize> = mx.iter().map(|e| e.0).collect();
            let right: HashSet<usize> = mx.iter().map(|e| e.1).collect();
            assert_eq!(left.len(), mx.len());
            assert_eq!(right.len(), mx.len());
            let induced = edges
                .iter()
                .filter(|e| left.contains(&e.0) && right.contains(&e.1))
                .count();
            assert_eq!(induced, mx.len(), "m = {m}");
        }
        assert_eq!(edges.iter().collect::<HashSet<_>>().len(), edges.len());
    }
}

#[test]
fn triple_systems_are_linear() {
    for m in 1..=40 {
        let s = linear_triple_system(m).unwrap();
        let clauses: Vec<Vec<usize>> = s.triples().iter().map(|t| t.to_vec()).collect();
        assert_eq!(clauses.len(), m * m);
        if m > 1 {
            assert!(
                *intersection_profile(&clauses)
                    .unwrap()
                    .keys()
                    .max()
                    .unwrap()
                    <= 1
            );
        }
    }
}

#[test]
fn q181_is_a_weight_quadric() {
    // |x|(|x| - 2) = 2 * sum x_i x_j - sum x_i, i.e. 2 * sum x_i + 2 * sum x_i x_j mod 3
    let terms = (0..5).map(|i| (1u32 << i, 2i128)).chain(
        (0..5)
            .tuple_combinations()
            .map(|(i, j)| ((1u32 << i) | (1 << j), 2)),
    );
    let cert = PolynomialCertificate::new(5, 3, terms).unwrap();
    assert!(verify_certificate(&named::q181(), &cert));
}
