//! `(a x + a† y)^n |0⟩` and the probabilists' Hermite polynomials behind it.

use bosonorder::closed_forms::hermite_he_recurrence;
use bosonorder::render::render_vacuum;
use bosonorder::tables::hermite_line;
use bosonorder::{hermite_he, vacuum_expansion, Format};

fn main() {
    for n in 0..=6 {
        let v = vacuum_expansion(n, &"x".into(), &"y".into());
        println!("n = {n}: {}", render_vacuum(n, &v, Format::Text));
    }
    println!();
    for n in 0..=8 {
        assert_eq!(hermite_he(n), hermite_he_recurrence(n));
        println!("{}", hermite_line(n));
    }
}
