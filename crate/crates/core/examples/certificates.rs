//! Extract polynomial certificates and check them exhaustively.
//!
//! cargo run --example certificates

use nrd_core::certificate::{
    extract_certificate, verify, verify_certificate, PolynomialCertificate,
};
use nrd_core::lattice::min_certified_degree;
use nrd_core::predicate::named;

fn main() -> nrd_core::Result<()> {
    for (name, p) in [
        ("EVEN_4", named::even_parity(4)),
        ("EQ_4", named::equality(4)),
        ("R181", named::r181()),
        ("R317", named::r317()),
    ] {
        let d = min_certified_degree(&p)?;
        let ex = extract_certificate(&p, d)?;
        println!(
            "{name:6} d={d}  {}  verified={}",
            ex.certificate,
            verify(&p, &ex.certificate)
        );
    }

    let handwritten = PolynomialCertificate::parse("x1*x2 + x1*x3 + x2*x3 == 0 (mod 3)", 4)?;
    println!(
        "R317 without its cubic term still verifies: {}",
        verify_certificate(&named::r317(), &handwritten)
    );
    Ok(())
}
