//! Normal-order a few operator words and polynomials by commutator rewriting.
//!
//! cargo run --example normal_order -- "a^3 ad^2 + x ad a ad"

use bosonorder::syntax::parse;
use bosonorder::{normal_order, render, Format};

fn main() {
    let inputs: Vec<String> = match std::env::args().nth(1) {
        Some(expr) => vec![expr],
        None => ["a ad", "a ad^5", "a^2 ad^3", "(a + ad)^4", "a ad - ad a"]
            .map(String::from)
            .to_vec(),
    };
    for src in inputs {
        match parse(&src) {
            Ok(expr) => println!("{src:>14}  =  {}", render(&normal_order(&expr), Format::Text)),
            Err(e) => eprintln!("{src}: {e}"),
        }
    }
}
