//! Displaced and squeezed ladder powers, symbolically and against the matrix
//! exponential of the generator.

use bosonorder::oracle::unitary_deviation;
use bosonorder::{conjugate_power, reduce_hyperbolic, render, Format, Ladder, TransformSpec};

fn main() {
    for (name, spec) in [("D", TransformSpec::displacement()), ("S", TransformSpec::squeeze())] {
        for which in [Ladder::Ann, Ladder::Dag] {
            for n in 1..=3 {
                let f = reduce_hyperbolic(&conjugate_power(&spec, which, n), &spec);
                let dev = unitary_deviation(&spec, which, n, 0.4, 0.3, 2).unwrap();
                let op = if which == Ladder::Ann { "a" } else { "ad" };
                println!("{name}^+ {op}^{n} {name}");
                println!("    {}", render(&f, Format::Text));
                println!("    matrix check at r = 0.4: {dev:.2e}");
            }
        }
    }
}
