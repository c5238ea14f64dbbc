//! Closed-form normal ordering of `(a x + a† y)^n`, grouped by scalar monomial,
//! and checked against brute-force rewriting of the literal product.

use bosonorder::verify::literal_power;
use bosonorder::{expand_power, normal_order, render, Format, Symbol};

fn main() {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let (x, y) = (Symbol::new("x"), Symbol::new("y"));
    let f = expand_power(n, &x, &y);
    println!("(a x + ad y)^{n}: {} terms", f.len());
    let mut slices: Vec<_> = f.collect_by_monomial().into_iter().collect();
    slices.sort_by_key(|(m, _)| std::cmp::Reverse(m.degree_in(&x)));
    for (mono, slice) in &slices {
        println!("  {:<10} {}", mono.to_string(), render(slice, Format::Text));
    }
    if n <= 10 {
        let same = f == normal_order(&literal_power(n, &x, &y));
        println!("matches rewriting of the {n}-fold product: {same}");
    }
    println!("latex: {}", render(&f, Format::Latex));
}
