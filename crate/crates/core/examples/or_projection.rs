//! Largest OR_k obtainable by plugging constants and literals into a predicate.
//!
//! cargo run --example or_projection

use nrd_core::or_projection::{check_projection, max_or_degree, OrProjectionCertificate};
use nrd_core::predicate::named;

fn main() -> nrd_core::Result<()> {
    for (name, p) in [
        ("OR_4", named::or(4)),
        ("AND_4", named::and(4)),
        ("EQ_4", named::equality(4)),
        ("R181", named::r181()),
    ] {
        let (k, cert) = max_or_degree(&p)?;
        println!(
            "{name:6} OR degree {k}  {}",
            cert.map(|c| c.to_string()).unwrap_or_default()
        );
    }

    let cert: OrProjectionCertificate = "P(0,0,~x1,~x2)=OR2".parse()?;
    println!(
        "R181 with {cert}: {}",
        check_projection(&named::r181(), &cert)?
    );
    Ok(())
}
