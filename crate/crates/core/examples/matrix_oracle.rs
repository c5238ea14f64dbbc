//! The truncated-matrix oracle: where truncation is exact, and what it catches.

use std::collections::BTreeMap;

use bosonorder::oracle::{compare, evaluate, Regime, TruncatedRep};
use bosonorder::syntax::parse;
use bosonorder::verify::{run, VerifyConfig};
use bosonorder::{normal_order, NormalWord, ScalarPoly};

fn main() {
    let commutator = parse("a ad - ad a").unwrap();
    let m = evaluate(&commutator, &BTreeMap::new(), &TruncatedRep::new(5)).unwrap();
    let diag: Vec<f64> = (0..5).map(|i| m[(i, i)].re).collect();
    println!("[a, ad] on 5 levels, diagonal: {diag:?}");

    let expr = parse("a^2 ad^3").unwrap();
    let nf = normal_order(&expr);
    let regime = Regime::new(4, 5);
    println!("a^2 ad^3 vs its normal form: {:.1e}", compare(&nf, &expr, &BTreeMap::new(), regime).unwrap());
    let mut wrong = nf.clone();
    wrong.add_term(NormalWord::new(1, 0), ScalarPoly::from_int(1));
    println!("with a wrong coefficient:    {:.1e}", compare(&wrong, &expr, &BTreeMap::new(), regime).unwrap());

    let report = run(&VerifyConfig::default());
    print!("\n{}", report.table());
}
