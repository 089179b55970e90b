//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! cargo test --release --test acceptance

use std::collections::{BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use nrd_core::certificate::{verify, Certificate, PolynomialCertificate};
use nrd_core::classify::{classify_all_with, ClassificationRecord, Status};
use nrd_core::constructions::{
    behrend_set, common_core, indicator_witnesses, intersection_profile, linear_triple_system,
    magnus_lift, p181_counterexample, p181_from_parts, p181_indicator_family,
    r299_conditional_instance, r299_unprimed_instance, r317_conditional_instance, rs_graph,
    slice_claims_check,
};
use nrd_core::or_projection::{check_projection, find_projection, OrProjectionCertificate};
use nrd_core::oracle::{
    check_conditional, check_witnesses, exact_conditional_nrd, exact_nrd, CspInstance, WitnessSet,
};
use nrd_core::predicate::{canonical_form, enumerate_classes, named, Predicate};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn tuples(arity: usize, s: &str) -> Predicate {
    Predicate::parse_tuple_list(s, arity).expect("valid tuple list")
}

struct Table {
    records: Vec<ClassificationRecord>,
    elapsed: Duration,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let start = Instant::now();
        let records = classify_all_with(4, Some(1)).expect("classification succeeds");
        Table {
            records,
            elapsed: start.elapsed(),
        }
    })
}

fn class_count() -> Outcome {
    let start = Instant::now();
    let classes = enumerate_classes(4).map_err(err)?;
    let elapsed = start.elapsed();
    ensure(classes.len() == 400, format!("{} classes", classes.len()))?;
    ensure(
        elapsed < Duration::from_secs(10),
        format!("took {elapsed:.2?}"),
    )?;
    Ok(format!("400 classes in {elapsed:.2?}"))
}

fn canonical_spot_check() -> Outcome {
    let p = tuples(4, "{1000,0100}");
    let (rep, _) = canonical_form(&p);
    ensure(
        rep == tuples(4, "{0000,0011}"),
        format!("representative {rep}"),
    )?;
    let classes = enumerate_classes(4).map_err(err)?;
    let index = classes.iter().position(|c| *c == rep);
    ensure(index == Some(3), format!("index {index:?}"))?;
    Ok(format!("{p} -> {rep}, index 3"))
}

fn gap_set() -> Outcome {
    let t = table();
    let gaps: Vec<&ClassificationRecord> = t.records.iter().filter(|r| r.or_k < r.degree).collect();
    ensure(gaps.len() == 3, format!("{} gaps", gaps.len()))?;
    let expected = [
        (
            181,
            tuples(4, "{0000,0001,0010,0100,0111,1000,1011,1101,1111}"),
        ),
        (
            299,
            tuples(4, "{0000,0001,0010,0011,0100,0101,1000,1110,1111}"),
        ),
        (
            317,
            tuples(4, "{0000,0001,0010,0011,0100,0101,1000,1001,1110}"),
        ),
    ];
    for (r, (index, set)) in gaps.iter().zip(&expected) {
        ensure(
            r.index == *index,
            format!("gap at {} instead of {index}", r.index),
        )?;
        ensure(
            r.predicate().map_err(err)? == *set,
            format!("row {index} predicate {}", r.predicate),
        )?;
        ensure(
            r.or_k == 2 && r.degree == 3,
            format!("row {index}: or_k {} degree {}", r.or_k, r.degree),
        )?;
        ensure(r.status == Status::Gap, "status column")?;
    }
    ensure(
        t.elapsed < Duration::from_secs(600),
        format!("single-threaded run took {:.2?}", t.elapsed),
    )?;
    Ok(format!(
        "gaps at 181, 299, 317 (OR2 vs degree 3); single-threaded table in {:.2?}",
        t.elapsed
    ))
}

/// Zero set of a certificate string, evaluated term by term.
fn zero_set(cert: &Certificate, arity: usize) -> BTreeSet<usize> {
    (0..1usize << arity)
        .filter(|&i| {
            cert.equations().iter().all(|eq| {
                let value: u128 = eq
                    .terms()
                    .iter()
                    .filter(|(mask, _)| {
                        (0..arity).all(|j| mask >> j & 1 == 0 || i >> (arity - 1 - j) & 1 == 1)
                    })
                    .map(|&(_, c)| c as u128)
                    .sum();
                value % eq.modulus() as u128 == 0
            })
        })
        .collect()
}

fn certificate_soundness() -> Outcome {
    let t = table();
    let mut fallbacks = 0;
    for r in &t.records {
        let p = r.predicate().map_err(err)?;
        let cert = Certificate::parse(&r.polynomial, 4).map_err(err)?;
        let members: BTreeSet<usize> = p.indices().collect();
        ensure(
            zero_set(&cert, 4) == members,
            format!("row {} certificate zero set differs", r.index),
        )?;
        ensure(verify(&p, &cert), format!("row {} fails verify", r.index))?;
        fallbacks += cert.is_system() as usize;
    }
    let explicit = [
        (
            named::r317(),
            "x1*x2 + x1*x3 + x2*x3 + x1*x2*x4 == 0 (mod 3)",
        ),
        (
            named::r181(),
            "2*x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4 + 2*x1*x2*x4 == 0 (mod 3)",
        ),
        (
            named::q299().times_free_bit().map_err(err)?,
            "x1*x2 + x1*x3 + x2*x3 == 0 (mod 3)",
        ),
    ];
    for (p, s) in &explicit {
        let cert = PolynomialCertificate::parse(s, 4).map_err(err)?;
        ensure(
            nrd_core::certificate::verify_certificate(p, &cert),
            format!("{s} does not cut out {p}"),
        )?;
    }
    ensure(
        t.records[318].predicate().map_err(err)? == named::q299().times_free_bit().map_err(err)?,
        "row 318 is not Q299 x {0,1}",
    )?;
    Ok(format!(
        "400/400 certificates verify ({fallbacks} fallback systems); 3 explicit polynomials verify"
    ))
}

fn or_projection_regression() -> Outcome {
    let cert: OrProjectionCertificate = "P(0,0,~x1,~x2)=OR2".parse().map_err(err)?;
    ensure(
        check_projection(&named::r181(), &cert).map_err(err)?,
        "R181 projection fails",
    )?;
    for r in &table().records {
        let p = r.predicate().map_err(err)?;
        for k in 1..=r.or_k {
            ensure(
                find_projection(&p, k).is_some(),
                format!("row {}: OR{} but not OR{k}", r.index, r.or_k),
            )?;
        }
        if r.or_k < 4 {
            ensure(
                find_projection(&p, r.or_k + 1).is_none(),
                format!("row {} or_k not maximal", r.index),
            )?;
        }
    }
    Ok("R181(0,0,~x1,~x2) = OR2 checks; OR_k implies OR_j for j <= k on all 400 rows".into())
}

fn oracle_ground_truth() -> Outcome {
    let binom = |n: usize, k: usize| (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1));
    for n in 2..=5 {
        let v = exact_nrd(&named::or(2), n).map_err(err)?;
        ensure(v == binom(n, 2), format!("NRD(OR2, {n}) = {v}"))?;
    }
    let n = 5;
    let mut clauses = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                clauses.push(vec![a, b, c]);
            }
        }
    }
    let witnesses = clauses
        .iter()
        .map(|s| (0..n).map(|v| (!s.contains(&v)) as u8).collect())
        .collect();
    let inst = CspInstance::new(n, 3, clauses, None).map_err(err)?;
    ensure(inst.len() == 10, "complete hypergraph size")?;
    ensure(
        check_witnesses(&named::or(3), &inst, &WitnessSet::new(witnesses)).map_err(err)?,
        "OR3 witnesses fail",
    )?;
    Ok("NRD(OR2, n) = C(n,2) for n = 2..5; complete 3-uniform K5 verifies for OR3".into())
}

fn r317_pipeline() -> Outcome {
    let start = Instant::now();
    let (p, q, r) = (named::p317(), named::q317(), named::r317());
    for m in 2..=8 {
        let (inst, w) = r317_conditional_instance(m).map_err(err)?;
        ensure(
            inst.len() == m * m,
            format!("m = {m}: {} clauses", inst.len()),
        )?;
        ensure(
            check_conditional(&p, &q, &inst, &w).map_err(err)?,
            format!("m = {m} conditional"),
        )?;
        let extra = 3 * m;
        let (lifted, lw) = magnus_lift(&p, &q, &inst, &w, extra).map_err(err)?;
        ensure(
            lifted.len() == m * m * extra,
            format!("m = {m}: lift has {} clauses", lifted.len()),
        )?;
        ensure(
            check_witnesses(&r, &lifted, &lw).map_err(err)?,
            format!("m = {m} lift"),
        )?;
    }
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(60),
        format!("took {elapsed:.2?}"),
    )?;
    Ok(format!(
        "m = 2..8 verified, clauses m^2 and m^2 * 3m, in {elapsed:.2?}"
    ))
}

fn brute_ap_free(set: &[usize]) -> bool {
    let members: BTreeSet<usize> = set.iter().copied().collect();
    set.iter().all(|&x| {
        set.iter()
            .all(|&z| x >= z || (x + z) % 2 == 1 || !members.contains(&((x + z) / 2)))
    })
}

fn r299_pipeline() -> Outcome {
    let (pp, qp) = (named::p299_prime(), named::q299_prime());
    let mut sizes = Vec::new();
    for m in 2..=12 {
        let s = behrend_set(m).map_err(err)?;
        ensure(
            brute_ap_free(&s) && s.iter().all(|&x| (1..=m).contains(&x)),
            format!("m = {m}: {s:?}"),
        )?;
        let g = rs_graph(m).map_err(err)?;
        ensure(
            g.all_induced(),
            format!("m = {m}: a matching is not induced"),
        )?;
        ensure(
            g.shared_edges().is_empty(),
            format!("m = {m}: matchings share edges"),
        )?;
        let (inst, w) = r299_conditional_instance(m).map_err(err)?;
        ensure(
            inst.len() == m * s.len(),
            format!("m = {m}: {} clauses", inst.len()),
        )?;
        ensure(
            check_conditional(&pp, &qp, &inst, &w).map_err(err)?,
            format!("m = {m} conditional"),
        )?;
        let report = slice_claims_check(&inst).map_err(err)?;
        ensure(report.passes(), format!("m = {m}: {report:?}"))?;
        let (base, bw) = r299_unprimed_instance(m).map_err(err)?;
        let extra = base.n();
        let (lifted, lw) =
            magnus_lift(&named::p299(), &named::q299(), &base, &bw, extra).map_err(err)?;
        ensure(
            lifted.len() == m * s.len() * extra,
            format!("m = {m}: lift has {} clauses", lifted.len()),
        )?;
        ensure(
            check_witnesses(&named::r299(), &lifted, &lw).map_err(err)?,
            format!("m = {m} lift"),
        )?;
        sizes.push(s.len());
    }
    Ok(format!(
        "m = 2..12 verified; |S| = {sizes:?}; clauses m|S| and m|S| * 7m"
    ))
}

fn p181_structures() -> Outcome {
    let (p, q) = (named::p181(), named::q181());
    let (inst, w, layout) = p181_counterexample(4).map_err(err)?;
    ensure(
        check_conditional(&p, &q, &inst, &w).map_err(err)?,
        "counterexample does not verify",
    )?;
    let star: Vec<&Vec<usize>> = inst
        .clauses()
        .iter()
        .filter(|c| c.contains(&layout.v))
        .collect();
    let shared = (0..inst.n())
        .filter(|&u| u != layout.v && star.iter().all(|c| c.contains(&u)))
        .count();
    ensure(
        shared == 0 && common_core(&inst, layout.v).is_none(),
        "a common core exists",
    )?;

    // each core's hyperedges, witnessed by indicators
    let system = linear_triple_system(1).map_err(err)?;
    let (one_core, _, _) = p181_from_parts(4, &system, None).map_err(err)?;
    let (family, fw) = p181_indicator_family(3, 2).map_err(err)?;
    for (name, h) in [("single core", &one_core), ("disjoint cores", &family)] {
        let profile = intersection_profile(h.clauses()).map_err(err)?;
        ensure(
            profile.keys().all(|k| [0, 2, 3].contains(k)),
            format!("{name}: profile {profile:?}"),
        )?;
        ensure(
            check_conditional(&p, &q, h, &indicator_witnesses(h)).map_err(err)?,
            format!("{name}: indicators fail"),
        )?;
    }
    ensure(
        check_conditional(&p, &q, &family, &fw).map_err(err)?,
        "indicator family",
    )?;
    Ok(format!(
        "half = 4 verifies with no common core; indicator-family profile {:?}",
        intersection_profile(family.clauses()).map_err(err)?
    ))
}

fn triangle_inequality() -> Outcome {
    let all: Vec<Predicate> = (0u32..16)
        .map(|mask| {
            Predicate::from_indices(2, (0..4).filter(|i| mask >> i & 1 == 1)).expect("arity 2")
        })
        .collect();
    let strict = |a: &Predicate, b: &Predicate| a.is_subset_of(b) && a != b;
    let mut memo: HashMap<(String, String, usize), usize> = HashMap::new();
    let mut value = |a: &Predicate, b: &Predicate, n: usize| -> Result<usize, String> {
        let key = (a.to_bit_string(), b.to_bit_string(), n);
        if let Some(&v) = memo.get(&key) {
            return Ok(v);
        }
        let v = exact_conditional_nrd(a, b, n).map_err(err)?;
        memo.insert(key, v);
        Ok(v)
    };
    let mut chains = 0;
    for p in &all {
        for q in all.iter().filter(|q| strict(p, q)) {
            for r in all.iter().filter(|r| strict(q, r)) {
                chains += 1;
                for n in 2..=4 {
                    let (pr, pq, qr) = (value(p, r, n)?, value(p, q, n)?, value(q, r, n)?);
                    ensure(
                        pr <= pq + qr,
                        format!("{p} < {q} < {r}, n = {n}: {pr} > {pq} + {qr}"),
                    )?;
                }
            }
        }
    }
    Ok(format!(
        "{chains} chains, n = 2..4, all satisfy the inequality"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("class count", class_count),
        ("canonical form spot check", canonical_spot_check),
        ("gap set", gap_set),
        ("certificate soundness", certificate_soundness),
        ("OR projection regression", or_projection_regression),
        ("oracle ground truth", oracle_ground_truth),
        ("R317 pipeline", r317_pipeline),
        ("R299 pipeline", r299_pipeline),
        ("P181 structures", p181_structures),
        ("triangle inequality", triangle_inequality),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({name}) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}) {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
