//! Write a construction to instance JSON and read it back for verification.
//!
//! cargo run --example instance_files

use nrd_core::constructions::r317_conditional_instance;
use nrd_core::instance_io::InstanceFile;
use nrd_core::oracle::check_conditional;
use nrd_core::predicate::named;

fn main() -> nrd_core::Result<()> {
    let (inst, w) = r317_conditional_instance(2)?;
    let path = std::env::temp_dir().join("nrd_r317_m2.json");
    InstanceFile::new(
        &inst,
        Some(&w),
        Some(serde_json::json!({"construction": "r317", "m": 2})),
    )
    .write(&path)?;
    println!("{}", std::fs::read_to_string(&path)?);

    let (back, witnesses) = InstanceFile::read(&path)?.to_parts()?;
    let ok = check_conditional(
        &named::p317(),
        &named::q317(),
        &back,
        &witnesses.expect("file has witnesses"),
    )?;
    println!("re-read and verified: {ok}");
    Ok(())
}
