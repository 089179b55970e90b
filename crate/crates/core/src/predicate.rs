//! Boolean predicates, the hyperoctahedral symmetry group acting on them,
//! canonical representatives and class enumeration.
//!
//! A predicate of arity `r` is a truth table over `2^r` tuples. Tuple index
//! `i` is the binary expansion of the tuple with `x_1` as the most significant
//! bit, so `0011` is index 3.
//!
//! Orbit representatives are chosen by the *code* of a predicate: the truth
//! table read as a binary number whose most significant digit is tuple `0..0`.
//! The representative of an orbit is the element of largest code (predicates
//! containing earlier tuples win), and the class list is sorted by ascending
//! code. With that convention `{0000,0011}` is class 3 at arity 4.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{NrdError, Result};

pub const MAX_ARITY: usize = 8;
/// Largest arity for which [`enumerate_classes`] scans every truth table.
pub const MAX_ENUMERATION_ARITY: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Predicate {
    arity: usize,
    table: [u64; 4],
}

impl Predicate {
    pub fn empty(arity: usize) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(NrdError::UnsupportedArity(arity));
        }
        Ok(Self {
            arity,
            table: [0; 4],
        })
    }

    pub fn full(arity: usize) -> Result<Self> {
        let mut p = Self::empty(arity)?;
        for i in 0..p.num_tuples() {
            p.insert_index(i);
        }
        Ok(p)
    }

    /// Builds a predicate from tuple indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(arity: usize, indices: I) -> Result<Self> {
        let mut p = Self::empty(arity)?;
        for i in indices {
            if i >= p.num_tuples() {
                return Err(NrdError::Parse(format!(
                    "tuple index {i} out of range for arity {arity}"
                )));
            }
            p.insert_index(i);
        }
        Ok(p)
    }

    pub fn from_fn(arity: usize, f: impl Fn(&[u8]) -> bool) -> Result<Self> {
        let mut p = Self::empty(arity)?;
        for i in 0..p.num_tuples() {
            if f(&index_to_tuple(i, arity)) {
                p.insert_index(i);
            }
        }
        Ok(p)
    }

    /// Parses a set of tuples such as `"{0000,0011}"`; all tuples share the given arity.
    pub fn parse_tuple_list(s: &str, arity: usize) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| NrdError::Parse(format!("expected braces around tuple list: {s:?}")))?;
        let mut p = Self::empty(arity)?;
        for item in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let t = parse_bits(item)?;
            if t.len() != arity {
                return Err(NrdError::ArityMismatch {
                    expected: arity,
                    got: t.len(),
                });
            }
            p.insert_index(tuple_to_index(&t));
        }
        Ok(p)
    }

    /// Parses a `2^r`-character truth table string in tuple-index order.
    pub fn parse_bit_string(s: &str) -> Result<Self> {
        let s = s.trim();
        let len = s.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(NrdError::Parse(format!(
                "truth table length {len} is not 2^r for r >= 1"
            )));
        }
        let arity = len.trailing_zeros() as usize;
        let mut p = Self::empty(arity)?;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => p.insert_index(i),
                '0' => {}
                _ => return Err(NrdError::Parse(format!("bad truth table character {c:?}"))),
            }
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_tuples(&self) -> usize {
        1 << self.arity
    }

    pub fn contains_index(&self, i: usize) -> bool {
        i < self.num_tuples() && (self.table[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// Membership of a tuple given as `r` bits, `x_1` first.
    pub fn contains(&self, t: &[u8]) -> Result<bool> {
        if t.len() != self.arity {
            return Err(NrdError::ArityMismatch {
                expected: self.arity,
                got: t.len(),
            });
        }
        Ok(self.contains_index(tuple_to_index(t)))
    }

    fn insert_index(&mut self, i: usize) {
        self.table[i >> 6] |= 1 << (i & 63);
    }

    pub fn len(&self) -> usize {
        self.table.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.num_tuples()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_empty() || self.is_full()
    }

    /// Member tuple indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_tuples()).filter(move |&i| self.contains_index(i))
    }

    pub fn non_member_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_tuples()).filter(move |&i| !self.contains_index(i))
    }

    pub fn complement(&self) -> Predicate {
        Predicate::from_indices(self.arity, self.non_member_indices()).expect("same arity")
    }

    pub fn is_subset_of(&self, other: &Predicate) -> bool {
        self.arity == other.arity
            && self
                .table
                .iter()
                .zip(&other.table)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn difference(&self, other: &Predicate) -> Result<Predicate> {
        self.check_same_arity(other)?;
        let mut table = self.table;
        for (w, o) in table.iter_mut().zip(&other.table) {
            *w &= !o;
        }
        Ok(Predicate {
            arity: self.arity,
            table,
        })
    }

    pub fn union(&self, other: &Predicate) -> Result<Predicate> {
        self.check_same_arity(other)?;
        let mut table = self.table;
        for (w, o) in table.iter_mut().zip(&other.table) {
            *w |= o;
        }
        Ok(Predicate {
            arity: self.arity,
            table,
        })
    }

    fn check_same_arity(&self, other: &Predicate) -> Result<()> {
        if self.arity != other.arity {
            return Err(NrdError::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        Ok(())
    }

    /// `self × {0,1}`: one more coordinate, unconstrained.
    pub fn times_free_bit(&self) -> Result<Predicate> {
        Predicate::from_indices(
            self.arity + 1,
            self.indices().flat_map(|i| [2 * i, 2 * i + 1]),
        )
    }

    /// `(q × {0}) ∪ (p × {1})`, the arity-`(r+1)` predicate obtained by lifting a conditional pair.
    pub fn lift_pair(p: &Predicate, q: &Predicate) -> Result<Predicate> {
        p.check_same_arity(q)?;
        let zeros = q.indices().map(|i| 2 * i);
        let ones = p.indices().map(|i| 2 * i + 1);
        Predicate::from_indices(p.arity + 1, zeros.chain(ones))
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.num_tuples())
            .map(|i| if self.contains_index(i) { '1' } else { '0' })
            .collect()
    }

    pub fn to_tuple_list(&self) -> String {
        let items = self
            .indices()
            .map(|i| tuple_string(i, self.arity))
            .join(",");
        format!("{{{items}}}")
    }

    /// Numeric order of codes: tuple `0..0` is the most significant digit.
    pub fn code_cmp(&self, other: &Predicate) -> Ordering {
        debug_assert_eq!(self.arity, other.arity);
        for i in 0..self.num_tuples() {
            match (self.contains_index(i), other.contains_index(i)) {
                (true, false) => return Ordering::Greater,
                (false, true) => return Ordering::Less,
                _ => {}
            }
        }
        Ordering::Equal
    }

    pub fn apply(&self, g: &SymmetryElement) -> Result<Predicate> {
        if g.arity() != self.arity {
            return Err(NrdError::ArityMismatch {
                expected: self.arity,
                got: g.arity(),
            });
        }
        Ok(self.apply_map(&g.index_map()))
    }

    fn apply_map(&self, map: &[usize]) -> Predicate {
        let mut q = Predicate {
            arity: self.arity,
            table: [0; 4],
        };
        for i in self.indices() {
            q.insert_index(map[i]);
        }
        q
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Predicate({})", self.to_tuple_list())
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tuple_list())
    }
}

impl FromStr for Predicate {
    type Err = NrdError;

    /// Accepts either a truth-table string or a braced tuple list.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let arity = s
                .trim_start_matches('{')
                .split(',')
                .map(str::trim)
                .find(|t| !t.is_empty() && !t.starts_with('}'))
                .map(|t| t.trim_end_matches('}').trim().len())
                .ok_or_else(|| NrdError::Parse("cannot infer arity of empty tuple list".into()))?;
            Predicate::parse_tuple_list(s, arity)
        } else {
            Predicate::parse_bit_string(s)
        }
    }
}

pub fn tuple_to_index(t: &[u8]) -> usize {
    t.iter().fold(0, |acc, &b| (acc << 1) | (b & 1) as usize)
}

pub fn index_to_tuple(i: usize, arity: usize) -> Vec<u8> {
    (0..arity)
        .map(|j| ((i >> (arity - 1 - j)) & 1) as u8)
        .collect()
}

pub fn tuple_string(i: usize, arity: usize) -> String {
    index_to_tuple(i, arity)
        .iter()
        .map(|b| if *b == 1 { '1' } else { '0' })
        .collect()
}

fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(NrdError::Parse(format!("bad bit {c:?} in {s:?}"))),
        })
        .collect()
}

/// A coordinate permutation composed with per-coordinate negations.
///
/// Acts on tuples by `g(t)_i = t_{perm(i)} XOR flip_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymmetryElement {
    perm: Vec<usize>,
    flips: u32,
}

impl SymmetryElement {
    pub fn new(perm: Vec<usize>, flips: u32) -> Result<Self> {
        let r = perm.len();
        if r == 0 || r > MAX_ARITY {
            return Err(NrdError::UnsupportedArity(r));
        }
        let mut seen = vec![false; r];
        for &p in &perm {
            if p >= r || seen[p] {
                return Err(NrdError::InvalidSymmetry(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        if flips >> r != 0 {
            return Err(NrdError::InvalidSymmetry(format!(
                "flip mask {flips:#b} exceeds arity {r}"
            )));
        }
        Ok(Self { perm, flips })
    }

    pub fn identity(arity: usize) -> Self {
        Self {
            perm: (0..arity).collect(),
            flips: 0,
        }
    }

    /// Convenience constructor: swap two coordinates (0-based).
    pub fn swap(arity: usize, a: usize, b: usize) -> Result<Self> {
        let mut perm: Vec<usize> = (0..arity).collect();
        perm.swap(a, b);
        Self::new(perm, 0)
    }

    /// Convenience constructor: negate one coordinate (0-based).
    pub fn flip(arity: usize, coordinate: usize) -> Result<Self> {
        Self::new((0..arity).collect(), 1 << coordinate)
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> u32 {
        self.flips
    }

    pub fn flips_coordinate(&self, i: usize) -> bool {
        (self.flips >> i) & 1 == 1
    }

    pub fn apply_tuple(&self, t: &[u8]) -> Vec<u8> {
        (0..self.arity())
            .map(|i| t[self.perm[i]] ^ self.flips_coordinate(i) as u8)
            .collect()
    }

    pub fn apply_index(&self, i: usize) -> usize {
        tuple_to_index(&self.apply_tuple(&index_to_tuple(i, self.arity())))
    }

    /// Image of every tuple index.
    pub fn index_map(&self) -> Vec<usize> {
        (0..1usize << self.arity())
            .map(|i| self.apply_index(i))
            .collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SymmetryElement) -> Result<SymmetryElement> {
        if self.arity() != other.arity() {
            return Err(NrdError::ArityMismatch {
                expected: self.arity(),
                got: other.arity(),
            });
        }
        let r = self.arity();
        let perm = (0..r).map(|i| other.perm[self.perm[i]]).collect();
        let mut flips = 0;
        for i in 0..r {
            if other.flips_coordinate(self.perm[i]) ^ self.flips_coordinate(i) {
                flips |= 1 << i;
            }
        }
        Ok(SymmetryElement { perm, flips })
    }

    pub fn inverse(&self) -> SymmetryElement {
        let r = self.arity();
        let mut perm = vec![0; r];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        let mut flips = 0;
        for (j, &pj) in perm.iter().enumerate() {
            if self.flips_coordinate(pj) {
                flips |= 1 << j;
            }
        }
        SymmetryElement { perm, flips }
    }

    /// All `2^r · r!` group elements in a fixed order.
    pub fn all(arity: usize) -> Vec<SymmetryElement> {
        (0..arity)
            .permutations(arity)
            .flat_map(|perm| {
                (0..1u32 << arity).map(move |flips| SymmetryElement {
                    perm: perm.clone(),
                    flips,
                })
            })
            .collect()
    }
}

pub fn apply_symmetry(p: &Predicate, g: &SymmetryElement) -> Result<Predicate> {
    p.apply(g)
}

/// The orbit representative of largest code, with a symmetry mapping `p` onto it.
pub fn canonical_form(p: &Predicate) -> (Predicate, SymmetryElement) {
    let mut best = (p.clone(), SymmetryElement::identity(p.arity()));
    for g in SymmetryElement::all(p.arity()) {
        let image = p.apply_map(&g.index_map());
        if image.code_cmp(&best.0) == Ordering::Greater {
            best = (image, g);
        }
    }
    best
}

/// Canonical representatives of all nontrivial classes of arity `r`, sorted by ascending code.
///
/// The position in the returned list is the predicate number.
pub fn enumerate_classes(arity: usize) -> Result<Vec<Predicate>> {
    if arity == 0 || arity > MAX_ENUMERATION_ARITY {
        return Err(NrdError::UnsupportedArity(arity));
    }
    let maps: Vec<Vec<usize>> = SymmetryElement::all(arity)
        .iter()
        .map(|g| g.index_map())
        .collect();
    let tuples = 1usize << arity;
    let total = 1u64 << tuples;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut reps = Vec::new();
    for raw in 1..total - 1 {
        if seen.contains(&raw) {
            continue;
        }
        let p = Predicate {
            arity,
            table: [raw, 0, 0, 0],
        };
        let mut best = p.clone();
        for map in &maps {
            let image = p.apply_map(map);
            seen.insert(image.table[0]);
            if image.code_cmp(&best) == Ordering::Greater {
                best = image;
            }
        }
        reps.push(best);
    }
    reps.sort_by(|a, b| a.code_cmp(b));
    Ok(reps)
}

/// Standard predicates used throughout.
pub mod named {
    use super::Predicate;

    fn tuples(arity: usize, list: &str) -> Predicate {
        Predicate::parse_tuple_list(list, arity).expect("valid literal predicate")
    }

    /// `OR_k = {0,1}^k \ {0^k}`.
    pub fn or(k: usize) -> Predicate {
        Predicate::from_fn(k, |t| t.contains(&1)).expect("valid arity")
    }

    pub fn and(k: usize) -> Predicate {
        Predicate::from_fn(k, |t| t.iter().all(|&b| b == 1)).expect("valid arity")
    }

    pub fn equality(k: usize) -> Predicate {
        Predicate::from_fn(k, |t| t.iter().all(|&b| b == t[0])).expect("valid arity")
    }

    pub fn even_parity(k: usize) -> Predicate {
        Predicate::from_fn(k, |t| t.iter().filter(|&&b| b == 1).count() % 2 == 0)
            .expect("valid arity")
    }

    pub fn r181() -> Predicate {
        tuples(4, "{0000,0001,0010,0100,0111,1000,1011,1101,1111}")
    }

    pub fn r299() -> Predicate {
        tuples(4, "{0000,0001,0010,0011,0100,0101,1000,1110,1111}")
    }

    pub fn r317() -> Predicate {
        tuples(4, "{0000,0001,0010,0011,0100,0101,1000,1001,1110}")
    }

    pub fn p317() -> Predicate {
        tuples(3, "{000,001,010,100}")
    }

    pub fn q317() -> Predicate {
        tuples(3, "{000,001,010,100,111}")
    }

    pub fn p299() -> Predicate {
        tuples(3, "{000,001,010,111}")
    }

    pub fn q299() -> Predicate {
        tuples(3, "{000,001,010,100,111}")
    }

    /// The relabelled pair used by the Ruzsa–Szemerédi instance.
    pub fn p299_prime() -> Predicate {
        tuples(3, "{001,011,101,110}")
    }

    pub fn q299_prime() -> Predicate {
        tuples(3, "{000,001,011,101,110}")
    }

    fn weight_in(arity: usize, weights: &'static [usize]) -> Predicate {
        Predicate::from_fn(arity, |t| {
            weights.contains(&t.iter().filter(|&&b| b == 1).count())
        })
        .expect("valid arity")
    }

    pub fn p181() -> Predicate {
        weight_in(5, &[0, 2, 3])
    }

    pub fn q181() -> Predicate {
        weight_in(5, &[0, 2, 3, 5])
    }
}
