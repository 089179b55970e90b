//! The classification table: OR degree and certified polynomial degree for
//! every class, with certificates, plus an independent re-checker for tables.

use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{extract_certificate, verify, Certificate};
use crate::error::{NrdError, Result};
use crate::lattice::min_certified_degree;
use crate::or_projection::{check_projection, max_or_degree, OrProjectionCertificate};
use crate::predicate::{enumerate_classes, Predicate};

/// Environment variable overriding the worker count of [`classify_all`].
pub const THREADS_ENV: &str = "NRD_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The OR lower bound meets the polynomial upper bound.
    Tight,
    Gap,
}

impl Status {
    pub fn from_bounds(or_k: usize, degree: usize) -> Status {
        if or_k == degree {
            Status::Tight
        } else {
            Status::Gap
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Tight => "tight",
            Status::Gap => "gap",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub index: usize,
    /// Truth table, tuple `0…0` first.
    pub predicate: String,
    pub or_k: usize,
    pub or_certificate: String,
    pub degree: usize,
    pub polynomial: String,
    pub status: Status,
}

impl ClassificationRecord {
    pub fn predicate(&self) -> Result<Predicate> {
        Predicate::parse_bit_string(&self.predicate)
    }

    pub fn tuple_list(&self) -> Result<String> {
        Ok(self.predicate()?.to_tuple_list())
    }

    /// Whether the polynomial column holds a system of equations.
    pub fn is_fallback(&self) -> bool {
        self.polynomial.contains("&&")
    }
}

/// Computes and self-checks the record of one predicate.
pub fn classify_predicate(index: usize, p: &Predicate) -> Result<ClassificationRecord> {
    let fail = |reason: String| NrdError::Verification { index, reason };
    let (or_k, or_cert) = max_or_degree(p)?;
    let or_cert = or_cert.ok_or_else(|| fail("no OR projection found".into()))?;
    if !check_projection(p, &or_cert)? {
        return Err(fail(format!("projection {or_cert} does not check")));
    }
    let degree = min_certified_degree(p)?;
    let extraction = extract_certificate(p, degree)?;
    if !verify(p, &extraction.certificate) {
        return Err(fail(format!(
            "certificate {} does not verify",
            extraction.certificate
        )));
    }
    Ok(ClassificationRecord {
        index,
        predicate: p.to_bit_string(),
        or_k,
        or_certificate: or_cert.to_string(),
        degree,
        polynomial: extraction.certificate.to_string(),
        status: Status::from_bounds(or_k, degree),
    })
}

fn worker_count() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

/// One verified record per class, in index order.
pub fn classify_all(arity: usize) -> Result<Vec<ClassificationRecord>> {
    classify_all_with(arity, worker_count())
}

/// As [`classify_all`] with an explicit worker count; `None` uses the global pool.
pub fn classify_all_with(
    arity: usize,
    threads: Option<usize>,
) -> Result<Vec<ClassificationRecord>> {
    let classes = enumerate_classes(arity)?;
    let run = || {
        classes
            .par_iter()
            .enumerate()
            .map(|(i, p)| classify_predicate(i, p))
            .collect::<Result<Vec<_>>>()
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| NrdError::InvalidParameter(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = NrdError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(NrdError::Parse(format!("unknown table format {other:?}"))),
        }
    }
}

pub fn write_table<W: Write>(
    records: &[ClassificationRecord],
    format: TableFormat,
    mut out: W,
) -> Result<()> {
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Rows of a table; a row that fails to parse is kept as its error message.
pub fn parse_table(text: &str) -> Vec<std::result::Result<ClassificationRecord, String>> {
    if text.trim_start().starts_with('[') {
        match serde_json::from_str::<Vec<serde_json::Value>>(text) {
            Ok(rows) => rows
                .into_iter()
                .map(|v| serde_json::from_value(v).map_err(|e| e.to_string()))
                .collect(),
            Err(e) => vec![Err(format!("not a JSON array of rows: {e}"))],
        }
    } else {
        csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .map(|r| r.map_err(|e: csv::Error| e.to_string()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReport {
    /// 1-based data row (header excluded).
    pub row: usize,
    pub index: Option<usize>,
    pub problems: Vec<String>,
}

impl RowReport {
    pub fn passes(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn passes(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(RowReport::passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(|r| !r.passes())
    }
}

/// Re-checks one row semantically; alternative valid certificates pass.
pub fn check_record(r: &ClassificationRecord) -> Vec<String> {
    let mut problems = Vec::new();
    let p = match r.predicate() {
        Ok(p) if !p.is_trivial() => p,
        Ok(_) => return vec!["trivial predicate".into()],
        Err(e) => return vec![format!("predicate: {e}")],
    };
    match r.or_certificate.parse::<OrProjectionCertificate>() {
        Ok(cert) => {
            if cert.k != r.or_k {
                problems.push(format!(
                    "OR certificate projects to OR{} but or_k is {}",
                    cert.k, r.or_k
                ));
            }
            match check_projection(&p, &cert) {
                Ok(true) => {}
                Ok(false) => problems.push(format!("{cert} is not a projection of the predicate")),
                Err(e) => problems.push(format!("OR certificate: {e}")),
            }
        }
        Err(e) => problems.push(format!("OR certificate: {e}")),
    }
    match Certificate::parse(&r.polynomial, p.arity()) {
        Ok(cert) => {
            if !verify(&p, &cert) {
                problems.push("polynomial zero set differs from the predicate".into());
            }
            if cert.degree() > r.degree {
                problems.push(format!(
                    "polynomial has degree {} above the stated {}",
                    cert.degree(),
                    r.degree
                ));
            }
        }
        Err(e) => problems.push(format!("polynomial: {e}")),
    }
    if r.or_k > r.degree {
        problems.push(format!("or_k {} exceeds degree {}", r.or_k, r.degree));
    }
    if r.status != Status::from_bounds(r.or_k, r.degree) {
        problems.push(format!(
            "status {} inconsistent with or_k {} and degree {}",
            r.status, r.or_k, r.degree
        ));
    }
    problems
}

pub fn verify_table_str(text: &str) -> TableReport {
    let rows = parse_table(text)
        .into_iter()
        .enumerate()
        .map(|(i, row)| match row {
            Ok(r) => RowReport {
                row: i + 1,
                index: Some(r.index),
                problems: check_record(&r),
            },
            Err(e) => RowReport {
                row: i + 1,
                index: None,
                problems: vec![format!("parse error: {e}")],
            },
        })
        .collect();
    TableReport { rows }
}

pub fn verify_table(path: impl AsRef<Path>) -> Result<TableReport> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    Ok(verify_table_str(&text))
}
