use crate::error::{NrdError, Result};
use crate::oracle::{check_conditional, CspInstance, WitnessSet};
use crate::predicate::named;

use super::indicator_witnesses;

/// `{(a, b, a + b mod m)}` over three disjoint parts of size `m`.
///
/// Vertex `a` of part `j` is numbered `j·m + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    m: usize,
    triples: Vec<[usize; 3]>,
}

impl TripleSystem {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_vertices(&self) -> usize {
        3 * self.m
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn parts(&self) -> [Vec<usize>; 3] {
        let m = self.m;
        [
            (0..m).collect(),
            (m..2 * m).collect(),
            (2 * m..3 * m).collect(),
        ]
    }

    /// Any two distinct triples share at most one vertex.
    pub fn is_linear(&self) -> bool {
        self.triples.iter().enumerate().all(|(i, s)| {
            self.triples[i + 1..]
                .iter()
                .all(|t| s.iter().filter(|v| t.contains(v)).count() <= 1)
        })
    }
}

pub fn linear_triple_system(m: usize) -> Result<TripleSystem> {
    if m == 0 {
        return Err(NrdError::InvalidParameter(
            "linear triple system needs m >= 1".into(),
        ));
    }
    let triples = (0..m)
        .flat_map(|a| (0..m).map(move |b| [a, m + b, 2 * m + (a + b) % m]))
        .collect();
    Ok(TripleSystem { m, triples })
}

/// The triple system as a conditional instance for `P_317 | Q_317`, witnessed by clause indicators.
pub fn r317_conditional_instance(m: usize) -> Result<(CspInstance, WitnessSet)> {
    let system = linear_triple_system(m)?;
    let clauses = system.triples().iter().map(|t| t.to_vec()).collect();
    let inst = CspInstance::new(
        system.num_vertices(),
        3,
        clauses,
        Some(system.parts().to_vec()),
    )?;
    let witnesses = indicator_witnesses(&inst);
    if !check_conditional(&named::p317(), &named::q317(), &inst, &witnesses)? {
        return Err(NrdError::UnverifiedConstruction(format!(
            "R317 conditional instance, m = {m}"
        )));
    }
    Ok((inst, witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_linearity() {
        assert_eq!(linear_triple_system(1).unwrap().len(), 1);
        for m in [3, 10] {
            let s = linear_triple_system(m).unwrap();
            assert_eq!(s.len(), m * m);
            assert_eq!(s.num_vertices(), 3 * m);
            assert!(s.is_linear());
        }
        assert!(linear_triple_system(0).is_err());
    }

    #[test]
    fn r317_instances_verify() {
        for m in 1..=4 {
            let (inst, _) = r317_conditional_instance(m).unwrap();
            assert_eq!(inst.len(), m * m);
            assert_eq!(inst.n(), 3 * m);
        }
    }
}
