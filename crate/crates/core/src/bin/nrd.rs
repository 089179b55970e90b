use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nrd_core::classify::{classify_all, verify_table, Status, TableFormat};
use nrd_core::constructions::{
    common_core, magnus_lift, p181_counterexample, r299_conditional_instance,
    r299_unprimed_instance, r317_conditional_instance, rs_graph, slice_claims_check,
};
use nrd_core::instance_io::InstanceFile;
use nrd_core::oracle::{
    check_conditional, check_witnesses, exact_conditional_nrd, exact_nrd_with,
    find_conditional_witnesses, find_witnesses_with, ClauseUniverse, CspInstance, SearchConfig,
    WitnessSearch, WitnessSet,
};
use nrd_core::predicate::named;
use nrd_core::{Predicate, Result};

#[derive(Parser)]
#[command(
    name = "nrd",
    version,
    about = "Non-redundancy classification and constructions for Boolean predicates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the classification table for all classes of one arity.
    Classify {
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(long)]
        out: PathBuf,
        /// Defaults to the file extension, else csv.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Re-check every row of a CSV or JSON table.
    VerifyTable { file: PathBuf },
    /// Write a verified construction as instance JSON.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Check an instance file's witnesses, or search for witnesses when it has none.
    VerifyInstance {
        file: PathBuf,
        /// Truth table of P, tuple 0…0 first.
        #[arg(long)]
        predicate: String,
        /// Truth table of Q for a conditional check of P | Q.
        #[arg(long)]
        conditional: Option<String>,
    },
    /// Exact NRD(P, n) (or NRD(P | Q, n)) by exhaustive search.
    NrdBrute {
        #[arg(long)]
        predicate: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        conditional: Option<String>,
        #[arg(long, value_enum)]
        universe: Option<Universe>,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Linear triple system for P317 | Q317, optionally lifted to R317.
    R317 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        lift_out: Option<PathBuf>,
        /// Fresh variables in the lift (default 3m).
        #[arg(long)]
        extra: Option<usize>,
    },
    /// RS-graph instance for P'299 | Q'299, optionally lifted to R299.
    R299 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        lift_out: Option<PathBuf>,
        /// Fresh variables in the lift (default: the instance's variable count).
        #[arg(long)]
        extra: Option<usize>,
    },
    /// Two-core hypergraph for P181 | Q181 without a common core.
    P181Counterexample {
        #[arg(long)]
        half: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Universe {
    Distinct,
    Partite,
}

fn table_format(format: Option<Format>, out: &Path) -> TableFormat {
    match format {
        Some(Format::Csv) => TableFormat::Csv,
        Some(Format::Json) => TableFormat::Json,
        None if out.extension().is_some_and(|e| e == "json") => TableFormat::Json,
        None => TableFormat::Csv,
    }
}

fn summary(label: &str, inst: &CspInstance) {
    println!(
        "{label}: {} clauses, {} variables, arity {}, verified",
        inst.len(),
        inst.n(),
        inst.arity()
    );
}

fn write_instance(
    path: &Path,
    inst: &CspInstance,
    w: &WitnessSet,
    provenance: serde_json::Value,
) -> Result<()> {
    InstanceFile::new(inst, Some(w), Some(provenance)).write(path)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn construct(which: Construction) -> Result<bool> {
    match which {
        Construction::R317 {
            m,
            out,
            lift_out,
            extra,
        } => {
            let (p, q) = (named::p317(), named::q317());
            let (inst, w) = r317_conditional_instance(m)?;
            summary("P317 | Q317", &inst);
            let provenance = json!({
                "construction": "r317", "m": m,
                "predicate": p.to_bit_string(), "conditional": q.to_bit_string(),
            });
            write_instance(&out, &inst, &w, provenance)?;
            if let Some(path) = lift_out {
                let extra = extra.unwrap_or(3 * m);
                let (lifted, lw) = magnus_lift(&p, &q, &inst, &w, extra)?;
                summary("R317", &lifted);
                let provenance = json!({
                    "construction": "r317-lift", "m": m, "extra": extra,
                    "predicate": named::r317().to_bit_string(),
                });
                write_instance(&path, &lifted, &lw, provenance)?;
            }
        }
        Construction::R299 {
            m,
            out,
            lift_out,
            extra,
        } => {
            let graph = rs_graph(m)?;
            let (inst, w) = r299_conditional_instance(m)?;
            let slices = slice_claims_check(&inst)?;
            summary("P'299 | Q'299", &inst);
            println!(
                "matchings: {} of size {} (ap-free set {:?}); slice checks {}",
                graph.matchings().len(),
                graph.ap_free_set().len(),
                graph.ap_free_set(),
                if slices.passes() { "pass" } else { "FAIL" }
            );
            let provenance = json!({
                "construction": "r299", "m": m, "ap_free_set": graph.ap_free_set(),
                "predicate": named::p299_prime().to_bit_string(),
                "conditional": named::q299_prime().to_bit_string(),
            });
            write_instance(&out, &inst, &w, provenance)?;
            if let Some(path) = lift_out {
                let (base, bw) = r299_unprimed_instance(m)?;
                let extra = extra.unwrap_or(base.n());
                let (lifted, lw) = magnus_lift(&named::p299(), &named::q299(), &base, &bw, extra)?;
                summary("R299", &lifted);
                let provenance = json!({
                    "construction": "r299-lift", "m": m, "extra": extra,
                    "predicate": named::r299().to_bit_string(),
                });
                write_instance(&path, &lifted, &lw, provenance)?;
            }
            return Ok(slices.passes());
        }
        Construction::P181Counterexample { half, out } => {
            let (inst, w, layout) = p181_counterexample(half)?;
            summary("P181 | Q181", &inst);
            let core = common_core(&inst, layout.v);
            println!(
                "conjecture structure {}",
                if core.is_none() { "absent" } else { "present" }
            );
            let provenance = json!({
                "construction": "p181-counterexample", "half": half,
                "predicate": named::p181().to_bit_string(),
                "conditional": named::q181().to_bit_string(),
            });
            write_instance(&out, &inst, &w, provenance)?;
            return Ok(core.is_none());
        }
    }
    Ok(true)
}

fn verify_instance(file: &Path, predicate: &str, conditional: Option<&str>) -> Result<bool> {
    let p = Predicate::parse_bit_string(predicate)?;
    let q = conditional.map(Predicate::parse_bit_string).transpose()?;
    let (inst, witnesses) = InstanceFile::read(file)?.to_parts()?;
    let ok = match (witnesses, &q) {
        (Some(w), None) => check_witnesses(&p, &inst, &w)?,
        (Some(w), Some(q)) => check_conditional(&p, q, &inst, &w)?,
        (None, q) => {
            let config = SearchConfig::default();
            let found = match q {
                None => find_witnesses_with(&p, &inst, &config)?,
                Some(q) => find_conditional_witnesses(&p, q, &inst, &config)?,
            };
            match found {
                WitnessSearch::Found(_) => true,
                WitnessSearch::Redundant { clause } => {
                    println!("clause {clause} has no witness");
                    false
                }
                WitnessSearch::Unknown { clause } => {
                    println!("search budget exhausted at clause {clause}");
                    false
                }
            }
        }
    };
    println!(
        "{} clauses, {} variables: {}",
        inst.len(),
        inst.n(),
        if ok { "non-redundant" } else { "NOT verified" }
    );
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Classify { arity, out, format } => {
            let records = classify_all(arity)?;
            let format = table_format(format, &out);
            nrd_core::classify::write_table(&records, format, BufWriter::new(File::create(&out)?))?;
            let gaps: Vec<usize> = records
                .iter()
                .filter(|r| r.status == Status::Gap)
                .map(|r| r.index)
                .collect();
            let fallbacks = records.iter().filter(|r| r.is_fallback()).count();
            println!("{} classes written to {}", records.len(), out.display());
            println!("gaps at {gaps:?}; fallback certificates: {fallbacks}");
            Ok(true)
        }
        Command::VerifyTable { file } => {
            let report = verify_table(&file)?;
            for row in report.failures() {
                let index = row.index.map_or("?".to_string(), |i| i.to_string());
                println!(
                    "row {} (index {index}): FAIL: {}",
                    row.row,
                    row.problems.join("; ")
                );
            }
            let failed = report.failures().count();
            println!(
                "{} rows, {} passed, {failed} failed",
                report.rows.len(),
                report.rows.len() - failed
            );
            Ok(report.passes())
        }
        Command::Construct { which } => construct(which),
        Command::VerifyInstance {
            file,
            predicate,
            conditional,
        } => verify_instance(&file, &predicate, conditional.as_deref()),
        Command::NrdBrute {
            predicate,
            n,
            conditional,
            universe,
        } => {
            let p = Predicate::parse_bit_string(&predicate)?;
            let value = match conditional {
                Some(q) => exact_conditional_nrd(&p, &Predicate::parse_bit_string(&q)?, n)?,
                None => {
                    let universe = match universe {
                        Some(Universe::Distinct) => ClauseUniverse::Distinct,
                        Some(Universe::Partite) => ClauseUniverse::Partite,
                        None if p.arity() <= 2 => ClauseUniverse::Distinct,
                        None => ClauseUniverse::Partite,
                    };
                    exact_nrd_with(&p, n, universe)?
                }
            };
            println!("{value}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
