//! Moments `<ad^p a^q>` of a superposition given as JSON, exact and normalized.
//!
//! cargo run --example moments -- '{"0":"1","1":"sqrt(2)","3":"1/2"}'

use bosonorder::fock::normalized_moment;
use bosonorder::{moment, FockVector};

fn main() {
    let json = std::env::args()
        .nth(1)
        .unwrap_or_else(|| r#"{"0":"1","1":"sqrt(2)","3":"1/2"}"#.to_owned());
    let psi = match FockVector::from_json(&json) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("state {psi}, norm^2 = {}", psi.norm_sqr());
    for p in 0..=2 {
        for q in 0..=2 {
            let raw = moment(p, q, &psi);
            match normalized_moment(p, q, &psi) {
                Ok(n) => println!("<ad^{p} a^{q}> = {raw:<12} normalized {n}  (~{:.6})", n.to_f64()),
                Err(e) => println!("<ad^{p} a^{q}> = {raw:<12} ({e})"),
            }
        }
    }
}
