//! Explicit polynomial certificates `Σ c_S x_S ≡ 0 (mod q)` whose zero set on
//! `{0,1}^r` is exactly a predicate.
//!
//! Extraction separates every non-member `t` from the lattice `Λ_{P,d}` in one
//! of two ways. If `e_d(t)` is outside the rational span, an integer kernel
//! vector of the generators is nonzero on it (kernel separator). Otherwise a
//! dual-lattice vector pairs non-integrally with it (dual separator). One
//! separator of each kind is searched for, over coprime moduli, and the two
//! are merged by the Chinese remainder theorem.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{NrdError, Result};
use crate::lattice::{
    degree_test, integer_kernel, DegreeTest, IntVector, IntegerLattice, MonomialEmbedding,
    PointStatus, RatVector,
};
use crate::predicate::{index_to_tuple, Predicate};

/// One polynomial equation modulo `q` over multilinear monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolynomialCertificate {
    arity: usize,
    modulus: u64,
    /// Nonzero coefficients in `[0, q)`, keyed by subset mask, in monomial order.
    terms: Vec<(u32, u64)>,
}

fn monomial_order(a: &u32, b: &u32) -> std::cmp::Ordering {
    let key = |m: u32| {
        let bits: Vec<u32> = (0..32).filter(|i| (m >> i) & 1 == 1).collect();
        (bits.len(), bits)
    };
    key(*a).cmp(&key(*b))
}

impl PolynomialCertificate {
    /// Builds and normalizes a certificate. Coefficients are reduced modulo `q`
    /// and duplicates summed.
    pub fn new(
        arity: usize,
        modulus: u64,
        terms: impl IntoIterator<Item = (u32, i128)>,
    ) -> Result<Self> {
        if modulus < 2 {
            return Err(NrdError::InvalidParameter(format!("modulus {modulus} < 2")));
        }
        if arity == 0 || arity > 32 {
            return Err(NrdError::UnsupportedArity(arity));
        }
        let mut acc: std::collections::BTreeMap<u32, i128> = Default::default();
        for (mask, c) in terms {
            if mask >> arity != 0 {
                return Err(NrdError::InvalidParameter(format!(
                    "monomial mask {mask:#b} exceeds arity {arity}"
                )));
            }
            *acc.entry(mask).or_default() += c;
        }
        let q = modulus as i128;
        let mut terms: Vec<(u32, u64)> = acc
            .into_iter()
            .map(|(m, c)| (m, c.rem_euclid(q) as u64))
            .filter(|&(_, c)| c != 0)
            .collect();
        if terms.is_empty() {
            return Err(NrdError::InvalidParameter(
                "certificate has no nonzero coefficient".into(),
            ));
        }
        terms.sort_by(|a, b| monomial_order(&a.0, &b.0));
        Ok(Self {
            arity,
            modulus,
            terms,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    /// Largest monomial size with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn coefficient(&self, mask: u32) -> u64 {
        self.terms
            .iter()
            .find(|(m, _)| *m == mask)
            .map_or(0, |(_, c)| *c)
    }

    /// Value of the polynomial modulo `q` at a tuple index.
    pub fn eval_index(&self, i: usize) -> u64 {
        let t = index_to_tuple(i, self.arity);
        let mask = t
            .iter()
            .enumerate()
            .fold(0u32, |m, (j, &b)| if b == 1 { m | (1 << j) } else { m });
        let sum: u128 = self
            .terms
            .iter()
            .filter(|(s, _)| s & mask == *s)
            .map(|(_, c)| *c as u128)
            .sum();
        (sum % self.modulus as u128) as u64
    }

    pub fn zero_set(&self) -> Predicate {
        Predicate::from_indices(
            self.arity,
            (0..1usize << self.arity).filter(|&i| self.eval_index(i) == 0),
        )
        .expect("arity checked at construction")
    }

    pub fn parse(s: &str, arity: usize) -> Result<Self> {
        let bad = |why: &str| NrdError::Parse(format!("{why} in certificate {s:?}"));
        let (lhs, rhs) = s.split_once("==").ok_or_else(|| bad("missing '=='"))?;
        let rhs = rhs.trim();
        let modulus: u64 = rhs
            .strip_prefix('0')
            .map(str::trim)
            .and_then(|r| r.strip_prefix("(mod"))
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| bad("expected '0 (mod q)'"))?;
        let mut terms = Vec::new();
        for term in lhs.split('+').map(str::trim) {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff: i128 = 1;
            let mut mask = 0u32;
            for factor in term.split('*').map(str::trim) {
                if let Some(var) = factor.strip_prefix('x') {
                    let v: usize = var.parse().map_err(|_| bad("bad variable"))?;
                    if v == 0 || v > arity {
                        return Err(bad("variable out of range"));
                    }
                    mask |= 1 << (v - 1);
                } else {
                    let c: i128 = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    coeff *= c;
                }
            }
            terms.push((mask, coeff));
        }
        Self::new(arity, modulus, terms)
    }
}

impl fmt::Display for PolynomialCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |&(mask, c): &(u32, u64)| {
            let vars = (0..self.arity)
                .filter(|i| (mask >> i) & 1 == 1)
                .map(|i| format!("x{}", i + 1))
                .join("*");
            match (vars.is_empty(), c) {
                (true, _) => c.to_string(),
                (false, 1) => vars,
                (false, _) => format!("{c}*{vars}"),
            }
        };
        write!(
            f,
            "{} == 0 (mod {})",
            self.terms.iter().map(term).join(" + "),
            self.modulus
        )
    }
}

/// A single equation, or the fallback system of equations (their common zero set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Single(PolynomialCertificate),
    System(Vec<PolynomialCertificate>),
}

impl Certificate {
    pub fn equations(&self) -> &[PolynomialCertificate] {
        match self {
            Certificate::Single(c) => std::slice::from_ref(c),
            Certificate::System(cs) => cs,
        }
    }

    pub fn is_system(&self) -> bool {
        matches!(self, Certificate::System(_))
    }

    pub fn degree(&self) -> usize {
        self.equations()
            .iter()
            .map(PolynomialCertificate::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn parse(s: &str, arity: usize) -> Result<Self> {
        let eqs = s
            .split("&&")
            .map(|part| PolynomialCertificate::parse(part.trim(), arity))
            .collect::<Result<Vec<_>>>()?;
        Ok(match <[_; 1]>::try_from(eqs) {
            Ok([one]) => Certificate::Single(one),
            Err(many) => Certificate::System(many),
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.equations().iter().join(" && "))
    }
}

/// True iff the zero set on `{0,1}^r` equals `p` exactly.
pub fn verify_certificate(p: &Predicate, cert: &PolynomialCertificate) -> bool {
    cert.arity() == p.arity()
        && (0..p.num_tuples()).all(|i| (cert.eval_index(i) == 0) == p.contains_index(i))
}

pub fn verify(p: &Predicate, cert: &Certificate) -> bool {
    let eqs = cert.equations();
    !eqs.is_empty()
        && eqs.iter().all(|c| c.arity() == p.arity())
        && (0..p.num_tuples())
            .all(|i| eqs.iter().all(|c| c.eval_index(i) == 0) == p.contains_index(i))
}

/// An integer linear form on embedding coordinates, read modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: IntVector,
    pub modulus: BigInt,
}

impl LinearForm {
    pub fn value(&self, v: &[BigInt]) -> BigInt {
        dot(&self.coeffs, v)
    }

    pub fn vanishes_on(&self, v: &[BigInt]) -> bool {
        self.value(v).mod_floor(&self.modulus).is_zero()
    }

    /// Combines two forms over coprime moduli into one whose zero set is the intersection.
    pub fn crt(&self, other: &LinearForm) -> Option<LinearForm> {
        if !self.modulus.gcd(&other.modulus).is_one() {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| &other.modulus * a + &self.modulus * b)
            .collect();
        Some(LinearForm {
            coeffs,
            modulus: &self.modulus * &other.modulus,
        })
    }

    fn normalized(&self) -> LinearForm {
        let mut coeffs: IntVector = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&self.modulus))
            .collect();
        let g = coeffs.iter().fold(self.modulus.clone(), |g, c| g.gcd(c));
        let modulus = &self.modulus / &g;
        for c in coeffs.iter_mut() {
            *c = &*c / &g;
        }
        LinearForm { coeffs, modulus }
    }

    fn to_certificate(&self, embedding: &MonomialEmbedding) -> Result<PolynomialCertificate> {
        let norm = self.normalized();
        let modulus = norm.modulus.to_u64().ok_or_else(|| {
            NrdError::SearchBudgetExceeded(format!("modulus {} too large", norm.modulus))
        })?;
        let terms = embedding
            .subsets()
            .iter()
            .zip(&norm.coeffs)
            .map(|(&s, c)| (s, c.to_i128().expect("reduced below a u64 modulus")));
        PolynomialCertificate::new(embedding.arity(), modulus, terms)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rat_dot(a: &[BigRational], b: &[BigInt]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * BigRational::from_integer(y.clone()))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatorKind {
    /// Annihilates the generators exactly; excludes points outside the rational span.
    Kernel,
    /// Pairs integrally with the lattice; excludes points in the span but not the lattice.
    Dual,
}

#[derive(Clone, Debug)]
pub struct Separator {
    pub kind: SeparatorKind,
    pub form: LinearForm,
    /// Tuple indices excluded by this separator.
    pub targets: Vec<usize>,
    /// For dual separators, the rational dual-lattice vector `form.coeffs / form.modulus`.
    pub dual_vector: Option<RatVector>,
}

/// Search limits for the single-separator searches.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub coefficient_bounds: Vec<i64>,
    pub max_modulus: u64,
    pub max_candidates: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            coefficient_bounds: vec![2, 4, 8, 16],
            max_modulus: 64,
            max_candidates: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub certificate: Certificate,
    /// Set when a single separator of some kind was not found within budget.
    pub fallback: bool,
    pub separators: Vec<Separator>,
}

/// Digits `0, 1, -1, ..., b, -b`.
fn signed_digits(b: i64) -> Vec<i64> {
    std::iter::once(0)
        .chain((1..=b).flat_map(|v| [v, -v]))
        .collect()
}

/// Odometer over `digits^len`, first position least significant, up to `cap` items.
fn odometer(radices: &[usize], cap: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let mut idx = vec![0usize; radices.len()];
    let mut seen = 0;
    loop {
        if visit(&idx) {
            return true;
        }
        seen += 1;
        if seen >= cap {
            return false;
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < radices[pos] {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// One kernel vector plus modulus excluding every target (all outside the span).
fn search_kernel_separator(
    kernel: &[IntVector],
    targets: &[(usize, IntVector)],
    avoid: &BigInt,
    budget: &SearchBudget,
) -> Option<LinearForm> {
    let values: Vec<Vec<BigInt>> = kernel
        .iter()
        .map(|k| targets.iter().map(|(_, v)| dot(k, v)).collect())
        .collect();
    let mut prev_bound = 0i64;
    let mut found = None;
    for &bound in &budget.coefficient_bounds {
        let digits = signed_digits(bound);
        let radices = vec![digits.len(); kernel.len()];
        let hit = odometer(&radices, budget.max_candidates, |idx| {
            let c: Vec<i64> = idx.iter().map(|&i| digits[i]).collect();
            if c.iter().all(|x| x.abs() <= prev_bound) {
                return false;
            }
            let vals: Vec<BigInt> = (0..targets.len())
                .map(|t| {
                    c.iter()
                        .zip(&values)
                        .map(|(ci, row)| BigInt::from(*ci) * &row[t])
                        .sum()
                })
                .collect();
            if vals.iter().any(Zero::is_zero) {
                return false;
            }
            let modulus = (2..=budget.max_modulus)
                .map(BigInt::from)
                .find(|q| q.gcd(avoid).is_one() && vals.iter().all(|v| !v.mod_floor(q).is_zero()));
            if let Some(q) = modulus {
                let dim = kernel[0].len();
                let coeffs = (0..dim)
                    .map(|j| {
                        c.iter()
                            .zip(kernel)
                            .map(|(ci, k)| BigInt::from(*ci) * &k[j])
                            .sum()
                    })
                    .collect();
                found = Some(LinearForm { coeffs, modulus: q });
                return true;
            }
            false
        });
        if hit {
            return found;
        }
        prev_bound = bound;
    }
    None
}

/// Rational `y`, supported on pivot columns, with `<y, b_j> = c_j` for every basis row.
fn dual_vector_for(lattice: &IntegerLattice, c: &[BigInt]) -> RatVector {
    let basis = lattice.basis();
    let pivots = lattice.pivots();
    let k = basis.len();
    let mut y = vec![BigRational::zero(); lattice.ambient_dim()];
    for j in (0..k).rev() {
        let mut rhs = BigRational::from_integer(c[j].clone());
        for i in j + 1..k {
            rhs -= BigRational::from_integer(basis[j][pivots[i]].clone()) * &y[pivots[i]];
        }
        y[pivots[j]] = rhs / BigRational::from_integer(basis[j][pivots[j]].clone());
    }
    y
}

fn form_from_dual(y: &RatVector) -> LinearForm {
    let n = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let coeffs = y
        .iter()
        .map(|v| (v * BigRational::from_integer(n.clone())).to_integer())
        .collect();
    LinearForm { coeffs, modulus: n }
}

/// One dual-lattice vector pairing non-integrally with every target coordinate vector.
fn search_dual_separator(
    lattice: &IntegerLattice,
    coords: &[(usize, RatVector)],
    budget: &SearchBudget,
) -> Option<(LinearForm, RatVector)> {
    let k = lattice.rank();
    let denoms: Vec<BigInt> = (0..k)
        .map(|i| {
            coords
                .iter()
                .fold(BigInt::one(), |acc, (_, l)| acc.lcm(l[i].denom()))
        })
        .collect();
    let relevant: Vec<usize> = (0..k).filter(|&i| !denoms[i].is_one()).collect();
    let radices: Vec<usize> = relevant
        .iter()
        .map(|&i| {
            denoms[i]
                .to_usize()
                .unwrap_or(usize::MAX)
                .min(budget.max_candidates)
        })
        .collect();
    let mut found = None;
    odometer(&radices, budget.max_candidates, |idx| {
        if idx.iter().all(|&x| x == 0) {
            return false;
        }
        let mut c = vec![BigInt::zero(); k];
        for (&pos, &val) in relevant.iter().zip(idx) {
            c[pos] = BigInt::from(val);
        }
        let separates = coords.iter().all(|(_, l)| {
            let pairing: BigRational = l
                .iter()
                .zip(&c)
                .map(|(li, ci)| li * BigRational::from_integer(ci.clone()))
                .sum();
            !pairing.is_integer()
        });
        if separates {
            let y = dual_vector_for(lattice, &c);
            found = Some((form_from_dual(&y), y));
        }
        separates
    });
    found
}

fn smallest_prime_not_dividing(v: &BigInt) -> BigInt {
    (2u64..)
        .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .map(BigInt::from)
        .find(|p| !v.mod_floor(p).is_zero())
        .expect("some prime does not divide a nonzero integer")
}

/// Greedy CRT merging; forms with non-coprime moduli stay separate.
fn merge_forms(forms: Vec<LinearForm>) -> Vec<LinearForm> {
    let mut merged: Vec<LinearForm> = Vec::new();
    for f in forms {
        match merged
            .iter()
            .position(|m| m.modulus.gcd(&f.modulus).is_one())
        {
            Some(i) => merged[i] = merged[i].crt(&f).expect("coprime"),
            None => merged.push(f),
        }
    }
    merged
}

pub fn extract_certificate(p: &Predicate, degree: usize) -> Result<Extraction> {
    extract_with_budget(p, degree, &SearchBudget::default())
}

pub fn extract_with_budget(
    p: &Predicate,
    degree: usize,
    budget: &SearchBudget,
) -> Result<Extraction> {
    let test = degree_test(p, degree)?;
    if !test.passes() {
        return Err(NrdError::DegreeInsufficient(degree));
    }
    let DegreeTest {
        embedding,
        generators,
        lattice,
        ..
    } = &test;
    let dim = embedding.dimension();

    let outside: Vec<(usize, IntVector)> = test
        .points_with(PointStatus::OutsideSpan)
        .into_iter()
        .map(|i| (i, embedding.embed_index(i)))
        .collect();
    let in_span: Vec<(usize, RatVector)> = test
        .points_with(PointStatus::InSpanOnly)
        .into_iter()
        .map(|i| {
            Ok((
                i,
                lattice
                    .coordinates(&embedding.embed_index(i))?
                    .expect("in span"),
            ))
        })
        .collect::<Result<_>>()?;

    let mut fallback = false;
    let mut separators = Vec::new();

    if !in_span.is_empty() {
        match search_dual_separator(lattice, &in_span, budget) {
            Some((form, y)) => separators.push(Separator {
                kind: SeparatorKind::Dual,
                form,
                targets: in_span.iter().map(|(i, _)| *i).collect(),
                dual_vector: Some(y),
            }),
            None => {
                fallback = true;
                for (i, l) in &in_span {
                    let pos = l
                        .iter()
                        .position(|x| !x.is_integer())
                        .expect("non-integral coordinate");
                    let mut c = vec![BigInt::zero(); lattice.rank()];
                    c[pos] = BigInt::one();
                    let y = dual_vector_for(lattice, &c);
                    separators.push(Separator {
                        kind: SeparatorKind::Dual,
                        form: form_from_dual(&y),
                        targets: vec![*i],
                        dual_vector: Some(y),
                    });
                }
            }
        }
    }

    if !outside.is_empty() {
        let kernel = integer_kernel(dim, generators)?;
        let avoid = separators
            .iter()
            .fold(BigInt::one(), |acc, s| acc.lcm(&s.form.modulus));
        let single = search_kernel_separator(&kernel, &outside, &avoid, budget).or_else(|| {
            fallback = true;
            search_kernel_separator(&kernel, &outside, &BigInt::one(), budget)
        });
        match single {
            Some(form) => separators.push(Separator {
                kind: SeparatorKind::Kernel,
                form,
                targets: outside.iter().map(|(i, _)| *i).collect(),
                dual_vector: None,
            }),
            None => {
                fallback = true;
                for (i, v) in &outside {
                    let k = kernel
                        .iter()
                        .find(|k| !dot(k, v).is_zero())
                        .expect("outside span");
                    let modulus = smallest_prime_not_dividing(&dot(k, v));
                    separators.push(Separator {
                        kind: SeparatorKind::Kernel,
                        form: LinearForm {
                            coeffs: k.clone(),
                            modulus,
                        },
                        targets: vec![*i],
                        dual_vector: None,
                    });
                }
            }
        }
    }

    let merged = merge_forms(separators.iter().map(|s| s.form.clone()).collect());
    let equations = merged
        .iter()
        .map(|f| f.to_certificate(embedding))
        .collect::<Result<Vec<_>>>()?;
    let certificate = match <[_; 1]>::try_from(equations) {
        Ok([one]) => Certificate::Single(one),
        Err(many) => {
            fallback = true;
            Certificate::System(many)
        }
    };
    if !verify(p, &certificate) {
        return Err(NrdError::SearchBudgetExceeded(format!(
            "extracted certificate {certificate} does not cut out {p}"
        )));
    }
    Ok(Extraction {
        certificate,
        fallback,
        separators,
    })
}

/// Rational basis of the dual lattice within the span: rows of `(B Bᵀ)⁻¹ B`.
pub fn dual_lattice_basis(lattice: &IntegerLattice) -> Result<Vec<RatVector>> {
    let k = lattice.rank();
    if k == 0 {
        return Err(NrdError::ZeroRank);
    }
    let basis: Vec<RatVector> = lattice
        .basis()
        .iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let rdot =
        |a: &RatVector, b: &RatVector| -> BigRational { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    // Gauss–Jordan on [G | I].
    let mut aug: Vec<RatVector> = (0..k)
        .map(|i| {
            let mut row: RatVector = (0..k).map(|j| rdot(&basis[i], &basis[j])).collect();
            row.extend((0..k).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !aug[r][col].is_zero())
            .expect("Gram matrix of a basis is invertible");
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..k {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (x, pv) in aug[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * pv;
                }
            }
        }
    }
    let inverse: Vec<RatVector> = aug.into_iter().map(|row| row[k..].to_vec()).collect();
    Ok((0..k)
        .map(|i| {
            (0..lattice.ambient_dim())
                .map(|c| (0..k).map(|j| &inverse[i][j] * &basis[j][c]).sum())
                .collect()
        })
        .collect())
}

/// `<y, v>` for a rational `y` and integer `v`.
pub fn pairing(y: &[BigRational], v: &[BigInt]) -> BigRational {
    rat_dot(y, v)
}
