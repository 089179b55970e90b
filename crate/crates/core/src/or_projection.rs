//! Lower bounds from OR projections: substituting constants and literals
//! into a predicate so that it becomes `OR_k`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{NrdError, Result};
use crate::predicate::{tuple_to_index, Predicate};

/// One argument of a projection. Variable indices are 0-based (`Var(0)` prints as `x1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Literal {
    Const0,
    Const1,
    Var(usize),
    NegVar(usize),
}

impl Literal {
    pub fn eval(self, assignment: &[u8]) -> u8 {
        match self {
            Literal::Const0 => 0,
            Literal::Const1 => 1,
            Literal::Var(i) => assignment[i],
            Literal::NegVar(i) => 1 - assignment[i],
        }
    }

    fn variable(self) -> Option<usize> {
        match self {
            Literal::Var(i) | Literal::NegVar(i) => Some(i),
            _ => None,
        }
    }

    /// Scan order: `0, 1, x1, ~x1, x2, ~x2, ...`.
    pub fn scan_order(k: usize) -> Vec<Literal> {
        let mut out = vec![Literal::Const0, Literal::Const1];
        for i in 0..k {
            out.push(Literal::Var(i));
            out.push(Literal::NegVar(i));
        }
        out
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Const0 => write!(f, "0"),
            Literal::Const1 => write!(f, "1"),
            Literal::Var(i) => write!(f, "x{}", i + 1),
            Literal::NegVar(i) => write!(f, "~x{}", i + 1),
        }
    }
}

impl FromStr for Literal {
    type Err = NrdError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_var = |v: &str| -> Result<usize> {
            let n: usize = v
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| NrdError::Parse(format!("bad literal {s:?}")))?;
            if n == 0 {
                return Err(NrdError::Parse(format!("variables are 1-based: {s:?}")));
            }
            Ok(n - 1)
        };
        match s {
            "0" => Ok(Literal::Const0),
            "1" => Ok(Literal::Const1),
            _ => match s.strip_prefix('~') {
                Some(rest) => Ok(Literal::NegVar(parse_var(rest)?)),
                None => Ok(Literal::Var(parse_var(s)?)),
            },
        }
    }
}

/// Literals `l_1..l_r` with `P(l_1, ..., l_r) = OR_k(x_1, ..., x_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrProjectionCertificate {
    pub k: usize,
    pub literals: Vec<Literal>,
}

impl OrProjectionCertificate {
    pub fn new(k: usize, literals: Vec<Literal>) -> Self {
        Self { k, literals }
    }

    /// Every variable `x_1..x_k` occurs in some literal.
    pub fn uses_all_variables(&self) -> bool {
        (0..self.k).all(|v| self.literals.iter().any(|l| l.variable() == Some(v)))
    }
}

impl fmt::Display for OrProjectionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({})=OR{}", self.literals.iter().join(","), self.k)
    }
}

impl FromStr for OrProjectionCertificate {
    type Err = NrdError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || NrdError::Parse(format!("bad OR certificate {s:?}"));
        let s = s.trim();
        let (lhs, rhs) = s.split_once('=').ok_or_else(bad)?;
        let k: usize = rhs
            .trim()
            .strip_prefix("OR")
            .and_then(|d| d.parse().ok())
            .ok_or_else(bad)?;
        let args = lhs
            .trim()
            .strip_prefix("P(")
            .and_then(|a| a.strip_suffix(')'))
            .ok_or_else(bad)?;
        let literals = args
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { k, literals })
    }
}

fn evaluates_to_or(p: &Predicate, k: usize, literals: &[Literal]) -> bool {
    let mut assignment = vec![0u8; k];
    let mut tuple = vec![0u8; literals.len()];
    for a in 0..1usize << k {
        for (j, bit) in assignment.iter_mut().enumerate() {
            *bit = ((a >> j) & 1) as u8;
        }
        for (slot, lit) in tuple.iter_mut().zip(literals) {
            *slot = lit.eval(&assignment);
        }
        if p.contains_index(tuple_to_index(&tuple)) != (a != 0) {
            return false;
        }
    }
    true
}

/// Exhaustively checks the projection identity over all `2^k` assignments.
pub fn check_projection(p: &Predicate, cert: &OrProjectionCertificate) -> Result<bool> {
    if cert.literals.len() != p.arity() {
        return Err(NrdError::ArityMismatch {
            expected: p.arity(),
            got: cert.literals.len(),
        });
    }
    if cert.k == 0 {
        return Err(NrdError::InvalidParameter(
            "OR projections need k >= 1".into(),
        ));
    }
    for lit in &cert.literals {
        if let Some(i) = lit.variable() {
            if i >= cert.k {
                return Err(NrdError::LiteralOutOfRange {
                    index: i + 1,
                    k: cert.k,
                });
            }
        }
    }
    Ok(evaluates_to_or(p, cert.k, &cert.literals))
}

/// First certificate for `OR_k` in scan order, if any.
pub fn find_projection(p: &Predicate, k: usize) -> Option<OrProjectionCertificate> {
    if k == 0 {
        return None;
    }
    let choices = Literal::scan_order(k);
    (0..p.arity())
        .map(|_| choices.iter().copied())
        .multi_cartesian_product()
        .find(|lits| evaluates_to_or(p, k, lits))
        .map(|literals| OrProjectionCertificate { k, literals })
}

/// Largest `k` such that `OR_k` is a projection of `p`; `(0, None)` when there is none.
pub fn max_or_degree(p: &Predicate) -> Result<(usize, Option<OrProjectionCertificate>)> {
    if p.is_trivial() {
        return Err(NrdError::TrivialPredicate);
    }
    for k in (1..=p.arity()).rev() {
        if let Some(cert) = find_projection(p, k) {
            return Ok((k, Some(cert)));
        }
    }
    Ok((0, None))
}
