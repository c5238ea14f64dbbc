//! Exact action of normal and antinormal words on number states.

use bosonorder::{apply_antinormal_word, apply_normal_word, FockVector};

fn main() {
    let m = 3;
    println!("normal words ad^p a^q |{m}>:");
    for p in 0..=2 {
        for q in 0..=4 {
            println!("  p={p} q={q}: {}", apply_normal_word(p, q, m));
        }
    }
    println!("antinormal words a^j ad^k |{m}>:");
    for (j, k) in [(1, 1), (2, 1), (1, 4), (3, 3)] {
        println!("  j={j} k={k}: {}", apply_antinormal_word(j, k, m));
    }
    let psi = &FockVector::basis(0) + &FockVector::basis(2);
    println!("ad^2 a^2 on {psi}: {}", psi.apply_word(2, 2));
}
