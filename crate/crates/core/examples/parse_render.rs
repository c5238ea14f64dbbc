//! Parsing, error positions, and the three output formats.

use bosonorder::render::parse_json;
use bosonorder::syntax::parse;
use bosonorder::{normal_order, render, Format};

fn main() {
    let src = "3/2 (a - ad)^2 + alpha ad a";
    let nf = normal_order(&parse(src).unwrap());
    println!("input: {src}");
    for f in [Format::Text, Format::Latex, Format::Json] {
        println!("{f:?}: {}", render(&nf, f));
    }
    let json = render(&nf, Format::Json);
    assert_eq!(parse_json(&json).unwrap(), nf);

    for bad in ["a^-1", "(a + ad", "a &", "1/0"] {
        println!("{bad:>8}: {}", parse(bad).unwrap_err());
    }
}
