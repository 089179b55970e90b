use crate::error::{NrdError, Result};
use crate::oracle::{check_conditional, check_witnesses, CspInstance, WitnessSet};
use crate::predicate::Predicate;

/// Crosses a verified `P | Q` instance with `extra` fresh variables, giving a
/// non-redundant instance for `R = (Q × {0}) ∪ (P × {1})`.
///
/// Clause `(e, f)` is witnessed by `ψ_e` with `f ↦ 1` and the other fresh variables `↦ 0`.
/// Clauses are listed clause-major: all fresh variables for the first input clause, then the next.
pub fn magnus_lift(
    p: &Predicate,
    q: &Predicate,
    inst: &CspInstance,
    w: &WitnessSet,
    extra: usize,
) -> Result<(CspInstance, WitnessSet)> {
    if extra == 0 {
        return Err(NrdError::InvalidParameter(
            "the lift needs at least one fresh variable".into(),
        ));
    }
    if !check_conditional(p, q, inst, w)? {
        return Err(NrdError::UnverifiedConstruction(
            "refusing to lift an unverified conditional instance".into(),
        ));
    }
    let n = inst.n();
    let fresh: Vec<usize> = (n..n + extra).collect();
    let mut clauses = Vec::with_capacity(inst.len() * extra);
    let mut witnesses = Vec::with_capacity(inst.len() * extra);
    for (e, clause) in inst.clauses().iter().enumerate() {
        for &f in &fresh {
            let mut c = clause.clone();
            c.push(f);
            clauses.push(c);
            let mut psi = w.assignments()[e].clone();
            psi.extend(fresh.iter().map(|&g| (g == f) as u8));
            witnesses.push(psi);
        }
    }
    let partition = inst.partition().map(|parts| {
        let mut parts = parts.to_vec();
        parts.push(fresh.clone());
        parts
    });
    let lifted = CspInstance::new(n + extra, inst.arity() + 1, clauses, partition)?;
    let witnesses = WitnessSet::new(witnesses);
    let r = Predicate::lift_pair(p, q)?;
    if !check_witnesses(&r, &lifted, &witnesses)? {
        return Err(NrdError::UnverifiedConstruction(
            "lifted instance failed verification".into(),
        ));
    }
    Ok((lifted, witnesses))
}
