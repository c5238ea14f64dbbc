//! LaTeX tables of the low-order expansions, grouped the way they are usually
//! written by hand: one scalar monomial `x^i y^j` followed by the operator
//! polynomial it multiplies.

use std::fmt::Write as _;

use num::{BigRational, One, Signed, Zero};

use crate::closed_forms::{expand_power, hermite_he};
use crate::fock::vacuum_expansion;
use crate::render::{latex_monomial, latex_rational, latex_word, render_latex, render_vacuum, Format};
use crate::scalar::Symbol;

/// `(ax+a^{\dagger}y)^{n} = x^{n}a^{n}+x^{n-1}y(…)+…`, grouped by descending
/// power of `x`.
pub fn power_line(n: u32) -> String {
    let (x, y) = (Symbol::new("x"), Symbol::new("y"));
    let mut groups: Vec<_> = expand_power(n, &x, &y).collect_by_monomial().into_iter().collect();
    groups.sort_by_key(|(m, _)| std::cmp::Reverse(m.degree_in(&x)));
    let body: Vec<String> = groups
        .iter()
        .map(|(m, slice)| {
            let mono = latex_monomial(m);
            let mut it = slice.iter();
            match (it.next(), it.next()) {
                (Some((w, c)), None) => {
                    let c = c.as_constant().expect("constant slice");
                    let lead = if c.is_one() { String::new() } else { latex_rational(&c) };
                    format!("{lead}{mono}{}", latex_word(w))
                }
                _ => format!("{mono}({})", render_latex(slice)),
            }
        })
        .collect();
    format!("(ax+a^{{\\dagger}}y)^{{{n}}} = {}", body.join("+"))
}

pub fn vacuum_line(n: u32) -> String {
    let v = vacuum_expansion(n, &"x".into(), &"y".into());
    format!(
        "(ax+a^{{\\dagger}}y)^{{{n}}}\\ket{{0}} = {}",
        render_vacuum(n, &v, Format::Latex)
    )
}

/// `He_{n}(t) = t^{n}-…` with descending powers.
pub fn hermite_line(n: u32) -> String {
    let he = hermite_he(n);
    let mut out = format!("He_{{{n}}}(t) = ");
    let mut first = true;
    for (deg, c) in he.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !first {
            out.push('+');
        }
        first = false;
        let mag: BigRational = c.abs();
        let t = match deg {
            0 => String::new(),
            1 => "t".to_owned(),
            d => format!("t^{{{d}}}"),
        };
        if !mag.is_one() || deg == 0 {
            out.push_str(&latex_rational(&mag));
        }
        out.push_str(&t);
    }
    out
}

/// Expansions for `n = 2..=7`, vacuum actions for `n = 1..=7`, and `He_n` for
/// `n = 0..=7`. Deterministic byte for byte.
pub fn expansion_tables() -> String {
    let mut out = String::new();
    out.push_str("% (ax+a^\\dagger y)^n in normal order\n");
    for n in 2..=7 {
        let _ = writeln!(out, "{}", power_line(n));
    }
    out.push_str("% (ax+a^\\dagger y)^n acting on the vacuum\n");
    for n in 1..=7 {
        let _ = writeln!(out, "{}", vacuum_line(n));
    }
    out.push_str("% probabilists' Hermite polynomials\n");
    for n in 0..=7 {
        let _ = writeln!(out, "{}", hermite_line(n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_line() {
        assert_eq!(
            power_line(2),
            "(ax+a^{\\dagger}y)^{2} = x^{2}a^{2}+xy(2a^{\\dagger}a+1)+y^{2}a^{\\dagger 2}"
        );
    }

    #[test]
    fn hermite_lines() {
        assert_eq!(hermite_line(0), "He_{0}(t) = 1");
        assert_eq!(hermite_line(4), "He_{4}(t) = t^{4}-6t^{2}+3");
        assert_eq!(hermite_line(3), "He_{3}(t) = t^{3}-3t");
    }

    #[test]
    fn vacuum_line_four() {
        assert_eq!(
            vacuum_line(4),
            "(ax+a^{\\dagger}y)^{4}\\ket{0} = \\left(y^{4}a^{\\dagger 4}+6xy^{3}a^{\\dagger 2}+3x^{2}y^{2}\\right)\\ket{0}"
        );
    }
}
