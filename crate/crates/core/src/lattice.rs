//! Upper bounds from integer lattices.
//!
//! For a predicate `P` and degree `d`, every tuple is mapped to the vector of
//! its monomials of degree at most `d`, and `Λ_{P,d}` is the integer lattice
//! generated by the images of members of `P`. If no non-member lands in the
//! lattice, `P` is the zero set of a degree-`d` polynomial modulo some `q`.
//! All arithmetic is exact.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{NrdError, Result};
use crate::predicate::{index_to_tuple, Predicate};

pub type IntVector = Vec<BigInt>;
pub type RatVector = Vec<BigRational>;

/// Monomial index set: all `S ⊆ [r]` with `|S| ≤ d`, ordered by size then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialEmbedding {
    arity: usize,
    degree: usize,
    subsets: Vec<u32>,
}

impl MonomialEmbedding {
    pub fn new(arity: usize, degree: usize) -> Result<Self> {
        if degree == 0 || degree > arity {
            return Err(NrdError::InvalidDegree { degree, arity });
        }
        let subsets = (0..=degree)
            .flat_map(|size| {
                (0..arity)
                    .combinations(size)
                    .map(|c| c.iter().fold(0u32, |m, &i| m | (1 << i)))
            })
            .collect();
        Ok(Self {
            arity,
            degree,
            subsets,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.subsets.len()
    }

    /// Subset masks; bit `i` stands for `x_{i+1}`.
    pub fn subsets(&self) -> &[u32] {
        &self.subsets
    }

    pub fn position(&self, subset: u32) -> Option<usize> {
        self.subsets.iter().position(|&s| s == subset)
    }

    pub fn embed(&self, t: &[u8]) -> Result<IntVector> {
        if t.len() != self.arity {
            return Err(NrdError::ArityMismatch {
                expected: self.arity,
                got: t.len(),
            });
        }
        let mask = t
            .iter()
            .enumerate()
            .fold(0u32, |m, (i, &b)| if b == 1 { m | (1 << i) } else { m });
        Ok(self
            .subsets
            .iter()
            .map(|&s| {
                if s & mask == s {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect())
    }

    pub fn embed_index(&self, i: usize) -> IntVector {
        self.embed(&index_to_tuple(i, self.arity))
            .expect("index within arity")
    }
}

pub fn embed(t: &[u8], degree: usize) -> Result<IntVector> {
    MonomialEmbedding::new(t.len(), degree)?.embed(t)
}

/// Row Hermite normal form over the integers; zero rows are dropped.
///
/// Pivot columns strictly increase, pivots are positive and entries above a
/// pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(mut rows: Vec<IntVector>, ncols: usize) -> Vec<IntVector> {
    let n = rows.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == n {
            break;
        }
        loop {
            let pivot = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut clean = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                sub_scaled(&mut tail[0], &head[r], &q);
                if !tail[0][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            sub_scaled(&mut head[i], &tail[0], &q);
        }
        r += 1;
    }
    rows.truncate(r);
    debug_assert!(rows.iter().all(|row| row.iter().any(|x| !x.is_zero())));
    rows
}

fn sub_scaled(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

fn pivot_column(row: &[BigInt]) -> usize {
    row.iter()
        .position(|x| !x.is_zero())
        .expect("HNF rows are nonzero")
}

/// An integer lattice given by a basis in row Hermite normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: Vec<IntVector>,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn from_generators(ambient_dim: usize, generators: &[IntVector]) -> Result<Self> {
        for g in generators {
            if g.len() != ambient_dim {
                return Err(NrdError::DimensionMismatch {
                    expected: ambient_dim,
                    got: g.len(),
                });
            }
        }
        let basis = hermite_normal_form(generators.to_vec(), ambient_dim);
        let pivots = basis.iter().map(|row| pivot_column(row)).collect();
        Ok(Self {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_dim(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(NrdError::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Exact integer membership by back-substitution against the pivots.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        self.check_dim(v)?;
        let mut rem = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rem[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                sub_scaled(&mut rem, row, &q);
            }
        }
        Ok(rem.iter().all(Zero::is_zero))
    }

    /// Rational coordinates of `v` in the basis, or `None` outside the rational span.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<RatVector>> {
        self.check_dim(v)?;
        let mut rem: RatVector = v.iter().cloned().map(BigRational::from_integer).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let lambda = &rem[p] / BigRational::from_integer(row[p].clone());
            if !lambda.is_zero() {
                for (x, b) in rem.iter_mut().zip(row) {
                    *x -= &lambda * BigRational::from_integer(b.clone());
                }
            }
            coords.push(lambda);
        }
        Ok(rem.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn classify(&self, v: &[BigInt]) -> Result<PointStatus> {
        Ok(match self.coordinates(v)? {
            None => PointStatus::OutsideSpan,
            Some(c) if c.iter().all(BigRational::is_integer) => PointStatus::InLattice,
            Some(_) => PointStatus::InSpanOnly,
        })
    }
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "IntegerLattice(dim {}, rank {})",
            self.ambient_dim,
            self.rank()
        )?;
        for row in &self.basis {
            writeln!(f, "  [{}]", row.iter().join(" "))?;
        }
        Ok(())
    }
}

pub fn lattice_from_points(ambient_dim: usize, vectors: &[IntVector]) -> Result<IntegerLattice> {
    IntegerLattice::from_generators(ambient_dim, vectors)
}

pub fn lattice_contains(lattice: &IntegerLattice, v: &[BigInt]) -> Result<bool> {
    lattice.contains(v)
}

/// Integer basis of `{y ∈ Z^dim : <y, v> = 0 for every v}`.
pub fn integer_kernel(dim: usize, vectors: &[IntVector]) -> Result<Vec<IntVector>> {
    for v in vectors {
        if v.len() != dim {
            return Err(NrdError::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    let m = vectors.len();
    let rows: Vec<IntVector> = (0..dim)
        .map(|j| {
            let mut row: IntVector = vectors.iter().map(|v| v[j].clone()).collect();
            row.extend((0..dim).map(|i| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let hnf = hermite_normal_form(rows, m + dim);
    Ok(hnf
        .into_iter()
        .filter(|row| row[..m].iter().all(Zero::is_zero))
        .map(|row| row[m..].to_vec())
        .collect())
}

/// Where a non-member's embedding sits relative to `Λ_{P,d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointStatus {
    OutsideSpan,
    InSpanOnly,
    InLattice,
}

/// Result of the degree-`d` lattice test for one predicate.
#[derive(Clone, Debug)]
pub struct DegreeTest {
    pub embedding: MonomialEmbedding,
    pub generators: Vec<IntVector>,
    pub lattice: IntegerLattice,
    /// `(tuple index, status)` for every non-member, in index order.
    pub non_members: Vec<(usize, PointStatus)>,
}

impl DegreeTest {
    pub fn passes(&self) -> bool {
        self.non_members
            .iter()
            .all(|(_, s)| *s != PointStatus::InLattice)
    }

    pub fn points_with(&self, status: PointStatus) -> Vec<usize> {
        self.non_members
            .iter()
            .filter(|(_, s)| *s == status)
            .map(|(i, _)| *i)
            .collect()
    }
}

fn require_nontrivial(p: &Predicate) -> Result<()> {
    if p.is_trivial() {
        return Err(NrdError::TrivialPredicate);
    }
    Ok(())
}

pub fn degree_test(p: &Predicate, degree: usize) -> Result<DegreeTest> {
    require_nontrivial(p)?;
    let embedding = MonomialEmbedding::new(p.arity(), degree)?;
    let generators: Vec<IntVector> = p.indices().map(|i| embedding.embed_index(i)).collect();
    let lattice = IntegerLattice::from_generators(embedding.dimension(), &generators)?;
    let non_members = p
        .non_member_indices()
        .map(|i| Ok((i, lattice.classify(&embedding.embed_index(i))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DegreeTest {
        embedding,
        generators,
        lattice,
        non_members,
    })
}

/// Balanced iff no non-member's linear embedding lies in `Λ_{P,1}`.
pub fn is_balanced(p: &Predicate) -> Result<bool> {
    Ok(degree_test(p, 1)?.passes())
}

/// Smallest `d` at which the lattice test passes.
pub fn min_certified_degree(p: &Predicate) -> Result<usize> {
    require_nontrivial(p)?;
    for d in 1..=p.arity() {
        if degree_test(p, d)?.passes() {
            return Ok(d);
        }
    }
    // The full multilinear embedding is injective and linearly independent.
    Err(NrdError::Verification {
        index: 0,
        reason: format!("lattice test failed at full degree for {p}"),
    })
}
