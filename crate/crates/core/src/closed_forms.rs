//! Closed-form orderings that bypass commutator rewriting.
//!
//! * `(a x + a† y)^n` in normal order,
//! * `a^j a†^k` in normal order and `a†^j a^k` in antinormal order,
//! * probabilists' Hermite polynomials `He_n`, whose coefficients govern the
//!   vacuum action of `(a x + a† y)^n`.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

use crate::combinatorics::factorial_quotient;
use crate::operator::{normal_order, NormalForm, NormalWord, OperatorExpr};
use crate::scalar::{ScalarPoly, Symbol};

/// Coefficient of `(xy)^m x^r y^(n-2m-r) a†^(n-2m-r) a^r` in `(a x + a† y)^n`:
/// `n! / (m! (n-2m)! 2^m) · C(n-2m, r)`. `None` when a factorial argument in
/// the denominator is negative.
pub fn power_coefficient(n: u32, m: u32, r: u32) -> Option<BigRational> {
    let (n, m, r) = (i64::from(n), i64::from(m), i64::from(r));
    let free = n - 2 * m;
    let pairing = factorial_quotient(&[n], &[m, free])?;
    // free >= 0 from here on
    let choose = factorial_quotient(&[free], &[r, free - r])?;
    Some(pairing * choose / BigRational::from_integer(BigInt::from(2).pow(m as u32)))
}

/// Normal-ordered `(a x + a† y)^n`.
///
/// ```
/// use bosonorder::{closed_forms::expand_power, render, Format};
/// let f = expand_power(2, &"x".into(), &"y".into());
/// assert_eq!(render(&f, Format::Text), "y^2 ad^2 + 2 x y ad a + x^2 a^2 + x y");
/// ```
pub fn expand_power(n: u32, x: &Symbol, y: &Symbol) -> NormalForm {
    expand_power_with(n, &ScalarPoly::var(x.clone()), &ScalarPoly::var(y.clone()))
}

/// Normal-ordered `(a x + a† y)^n` for arbitrary commuting coefficients.
pub fn expand_power_with(n: u32, x: &ScalarPoly, y: &ScalarPoly) -> NormalForm {
    let mut out = NormalForm::zero();
    // m runs one past ⌊n/2⌋ and r over 0..=n; the factorial guard prunes the overrun
    for m in 0..=n / 2 + 1 {
        for r in 0..=n {
            let Some(c) = power_coefficient(n, m, r) else {
                continue;
            };
            let dag = n - 2 * m - r;
            let coeff = (&x.pow(r + m) * &y.pow(n - m - r)).scale(&c);
            out.add_term(NormalWord::new(dag, r), coeff);
        }
    }
    out
}

/// The integer coefficients `j! k! / (s! (j-s)! (k-s)!)` of
/// `a^j a†^k = Σ_s c_s a†^(k-s) a^(j-s)`, as `(s, c_s)` pairs.
pub fn ann_dag_coefficients(j: u32, k: u32) -> Vec<(u32, BigInt)> {
    (0..=j.max(k))
        .filter_map(|s| {
            let (j, k, s64) = (i64::from(j), i64::from(k), i64::from(s));
            factorial_quotient(&[j, k], &[s64, j - s64, k - s64]).map(|c| {
                debug_assert!(c.is_integer());
                (s, c.to_integer())
            })
        })
        .collect()
}

/// Normal-ordered `a^j a†^k`.
pub fn ann_dag_product(j: u32, k: u32) -> NormalForm {
    ann_dag_coefficients(j, k)
        .into_iter()
        .map(|(s, c)| {
            (
                NormalWord::new(k - s, j - s),
                ScalarPoly::constant(BigRational::from_integer(c)),
            )
        })
        .collect()
}

/// The antinormal word `a^ann a†^dag`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AntinormalWord {
    pub ann: u32,
    pub dag: u32,
}

/// `Σ c a^q a†^p` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AntinormalForm {
    terms: BTreeMap<AntinormalWord, BigRational>,
}

impl AntinormalForm {
    pub fn add_term(&mut self, ann: u32, dag: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(AntinormalWord { ann, dag })
            .or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&AntinormalWord { ann, dag });
        }
    }

    pub fn coeff(&self, ann: u32, dag: u32) -> BigRational {
        self.terms
            .get(&AntinormalWord { ann, dag })
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AntinormalWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_expr(&self) -> OperatorExpr {
        OperatorExpr::Sum(
            self.terms
                .iter()
                .map(|(w, c)| {
                    OperatorExpr::Product(vec![
                        OperatorExpr::scalar(c.clone()),
                        OperatorExpr::ann_pow(w.ann),
                        OperatorExpr::dag_pow(w.dag),
                    ])
                })
                .collect(),
        )
    }

    /// Re-expresses the form in normal order by rewriting.
    pub fn to_normal(&self) -> NormalForm {
        normal_order(&self.to_expr())
    }
}

/// Antinormal-ordered `a†^j a^k = Σ_s (-1)^s j! k! / (s! (j-s)! (k-s)!) a^(k-s) a†^(j-s)`.
pub fn dag_ann_antinormal(j: u32, k: u32) -> AntinormalForm {
    let mut out = AntinormalForm::default();
    for (s, c) in ann_dag_coefficients(j, k) {
        let c = BigRational::from_integer(c);
        let signed = if s % 2 == 0 { c } else { -c };
        out.add_term(k - s, j - s, signed);
    }
    out
}

/// Probabilists' Hermite polynomial `He_n(t)` in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteHe {
    coeffs: Vec<BigRational>,
}

impl HermiteHe {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients of `t^0, t^1, …, t^n`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }
}

/// `He_n(t) = n! Σ_m (-1)^m t^(n-2m) / (m! (n-2m)! 2^m)`.
pub fn hermite_he(n: u32) -> HermiteHe {
    let mut coeffs = vec![BigRational::zero(); n as usize + 1];
    for m in 0..=n / 2 + 1 {
        let (n64, m64) = (i64::from(n), i64::from(m));
        let Some(c) = factorial_quotient(&[n64], &[m64, n64 - 2 * m64]) else {
            continue;
        };
        let c = c / BigRational::from_integer(BigInt::from(2).pow(m));
        coeffs[(n - 2 * m) as usize] = if m % 2 == 0 { c } else { -c };
    }
    HermiteHe { coeffs }
}

/// `He_n` from `He_0 = 1`, `He_1 = t`, `He_{n+1} = t He_n - n He_{n-1}`.
pub fn hermite_he_recurrence(n: u32) -> HermiteHe {
    let mut prev = vec![BigRational::one()];
    if n == 0 {
        return HermiteHe { coeffs: prev };
    }
    let mut cur = vec![BigRational::zero(), BigRational::one()];
    for k in 1..n {
        let mut next = vec![BigRational::zero(); k as usize + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        let kq = BigRational::from_integer(k.into());
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &kq * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    HermiteHe { coeffs: cur }
}

/// `(√(-xy))^n He_n(√(-y/x) a†)` expanded degreewise, keyed by the power of `a†`.
///
/// The two radicals only ever meet in the products `(√(-xy))^2 = -xy` and
/// `√(-xy) √(-y/x) = y`; the second fixes the pairing of square-root branches
/// under which the identity with the vacuum action holds, and keeps the result
/// inside the polynomial ring.
pub fn hermite_vacuum_form(n: u32, x: &Symbol, y: &Symbol) -> BTreeMap<u32, ScalarPoly> {
    let he = hermite_he(n);
    let (x, y) = (ScalarPoly::var(x.clone()), ScalarPoly::var(y.clone()));
    let minus_xy = -&(&x * &y);
    let mut out = BTreeMap::new();
    for (deg, c) in he.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let deg = deg as u32;
        let pairs = (n - deg) / 2;
        let coeff = (&minus_xy.pow(pairs) * &y.pow(deg)).scale(c);
        out.insert(deg, coeff);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn int_form(entries: &[(u32, u32, i64)]) -> NormalForm {
        entries
            .iter()
            .map(|&(p, w, c)| (NormalWord::new(p, w), ScalarPoly::from_int(c)))
            .collect()
    }

    fn xy(i: u32, j: u32) -> ScalarPoly {
        &ScalarPoly::var("x").pow(i) * &ScalarPoly::var("y").pow(j)
    }

    #[test]
    fn square_matches_worked_expansion() {
        let f = expand_power(2, &"x".into(), &"y".into());
        let expected: NormalForm = [
            (NormalWord::new(0, 2), xy(2, 0)),
            (NormalWord::new(2, 0), xy(0, 2)),
            (NormalWord::new(0, 0), xy(1, 1)),
            (NormalWord::new(1, 1), xy(1, 1).scale(&q(2))),
        ]
        .into_iter()
        .collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn first_power_is_the_operator() {
        let f = expand_power(1, &"x".into(), &"y".into());
        let expected: NormalForm = [
            (NormalWord::new(0, 1), xy(1, 0)),
            (NormalWord::new(1, 0), xy(0, 1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn fourth_and_seventh_power_slices() {
        let f = expand_power(4, &"x".into(), &"y".into());
        let slices = f.collect_by_monomial();
        let m = |i, j| xy(i, j).terms().next().unwrap().0.clone();
        assert_eq!(slices[&m(2, 2)], int_form(&[(2, 2, 6), (1, 1, 12), (0, 0, 3)]));
        assert_eq!(slices[&m(3, 1)], int_form(&[(1, 3, 4), (0, 2, 6)]));
        assert_eq!(slices[&m(1, 3)], int_form(&[(3, 1, 4), (2, 0, 6)]));

        let f7 = expand_power(7, &"x".into(), &"y".into());
        assert_eq!(f7.collect_by_monomial()[&m(6, 1)], int_form(&[(1, 6, 7), (0, 5, 21)]));
    }

    #[test]
    fn term_count_formula() {
        for n in 0..12u32 {
            let expected: u32 = (0..=n / 2).map(|m| n - 2 * m + 1).sum();
            assert_eq!(expand_power(n, &"x".into(), &"y".into()).len() as u32, expected);
        }
    }

    #[test]
    fn ann_dag_examples() {
        assert_eq!(ann_dag_product(1, 4), int_form(&[(4, 1, 1), (3, 0, 4)]));
        assert_eq!(ann_dag_product(2, 5), int_form(&[(5, 2, 1), (4, 1, 10), (3, 0, 20)]));
        assert_eq!(ann_dag_product(0, 6), int_form(&[(6, 0, 1)]));
        assert_eq!(ann_dag_product(3, 0), int_form(&[(0, 3, 1)]));
    }

    #[test]
    fn antinormal_examples() {
        let f = dag_ann_antinormal(1, 1);
        assert_eq!(f.len(), 2);
        assert_eq!(f.coeff(1, 1), q(1));
        assert_eq!(f.coeff(0, 0), q(-1));

        let g = dag_ann_antinormal(2, 1);
        assert_eq!(g.len(), 2);
        assert_eq!(g.coeff(1, 2), q(1));
        assert_eq!(g.coeff(0, 1), q(-2));
    }

    #[test]
    fn antinormal_round_trip_small() {
        for j in 0..=4 {
            for k in 0..=4 {
                assert_eq!(dag_ann_antinormal(j, k).to_normal(), NormalForm::word(j, k));
            }
        }
    }

    #[test]
    fn hermite_low_degrees() {
        assert_eq!(hermite_he(0).coeffs(), &[q(1)]);
        assert_eq!(hermite_he(1).coeffs(), &[q(0), q(1)]);
        assert_eq!(hermite_he(2).coeffs(), &[q(-1), q(0), q(1)]);
        assert_eq!(hermite_he(4).coeffs(), &[q(3), q(0), q(-6), q(0), q(1)]);
        assert_eq!(hermite_he(4).eval(&q(2)), q(16 - 24 + 3));
    }

    #[test]
    fn hermite_recurrence_agrees() {
        for n in 0..=20 {
            assert_eq!(hermite_he(n), hermite_he_recurrence(n), "He_{n}");
        }
    }

    #[test]
    fn guard_prunes_overrun() {
        // m = 2 for n = 3 would need (-1)!
        assert_eq!(power_coefficient(3, 2, 0), None);
        assert_eq!(power_coefficient(4, 1, 3), None);
        assert_eq!(power_coefficient(4, 1, 2), Some(q(6)));
    }
}
