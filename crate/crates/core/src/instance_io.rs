//! JSON files for instances and their witnesses.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{NrdError, Result};
use crate::oracle::{CspInstance, WitnessSet};

/// `{"n", "arity", "partition", "clauses", "witnesses": {"clause index": [bits]}, "provenance"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub arity: usize,
    pub partition: Option<Vec<Vec<usize>>>,
    pub clauses: Vec<Vec<usize>>,
    pub witnesses: Option<BTreeMap<usize, Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

impl InstanceFile {
    pub fn new(
        inst: &CspInstance,
        witnesses: Option<&WitnessSet>,
        provenance: Option<serde_json::Value>,
    ) -> Self {
        Self {
            n: inst.n(),
            arity: inst.arity(),
            partition: inst.partition().map(<[_]>::to_vec),
            clauses: inst.clauses().to_vec(),
            witnesses: witnesses.map(|w| w.assignments().iter().cloned().enumerate().collect()),
            provenance,
        }
    }

    /// Validates the instance; witnesses, when present, must cover every clause.
    pub fn to_parts(&self) -> Result<(CspInstance, Option<WitnessSet>)> {
        let inst = CspInstance::new(
            self.n,
            self.arity,
            self.clauses.clone(),
            self.partition.clone(),
        )?;
        let witnesses = match &self.witnesses {
            None => None,
            Some(map) => {
                let assignments = (0..inst.len())
                    .map(|i| {
                        map.get(&i).cloned().ok_or_else(|| {
                            NrdError::WitnessMismatch(format!("no witness for clause {i}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some(extra) = map.keys().find(|&&k| k >= inst.len()) {
                    return Err(NrdError::WitnessMismatch(format!(
                        "witness for missing clause {extra}"
                    )));
                }
                Some(WitnessSet::new(assignments))
            }
        };
        Ok((inst, witnesses))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        serde_json::to_writer(&mut out, self)?;
        writeln!(out)?;
        out.flush()?;
        Ok(())
    }
}
