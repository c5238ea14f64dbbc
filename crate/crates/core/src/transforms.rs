//! Displacement and squeeze conjugation of ladder-operator powers.
//!
//! The unitaries themselves are never built symbolically. Their conjugation
//! action on `a` and `a†` is linear, so `U† a^n U = (U† a U)^n` reduces to the
//! closed-form power expansion with substituted coefficients:
//!
//! * `D†(α) a^n D(α) = (a + α)^n`, `D†(α) a†^n D(α) = (a† + α*)^n`
//! * `S†(z) a^n S(z) = (a cosh r - a† e^{2iφ} sinh r)^n`
//! * `S†(z) a†^n S(z) = (a† cosh r - a e^{-2iφ} sinh r)^n`
//!
//! with the symbols `c = cosh r`, `s = sinh r`, `u = e^{2iφ}`, `ubar = e^{-2iφ}`.

use std::collections::BTreeMap;

use num::BigRational;

use crate::closed_forms::expand_power_with;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::operator::{NormalForm, NormalWord};
use crate::scalar::{Conjugation, Monomial, ScalarPoly, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformSpec {
    Displacement {
        alpha: Symbol,
        alphabar: Symbol,
    },
    Squeeze {
        c: Symbol,
        s: Symbol,
        u: Symbol,
        ubar: Symbol,
    },
}

/// Which ladder operator is conjugated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    Ann,
    Dag,
}

fn distinct(symbols: &[&Symbol]) -> Result<()> {
    for (i, s) in symbols.iter().enumerate() {
        if symbols[..i].contains(s) {
            return Err(Error::DuplicateSymbol((*s).clone()));
        }
    }
    Ok(())
}

impl TransformSpec {
    /// Displacement with symbols `alpha`, `alphabar`.
    pub fn displacement() -> Self {
        TransformSpec::Displacement {
            alpha: "alpha".into(),
            alphabar: "alphabar".into(),
        }
    }

    /// Squeeze with symbols `c`, `s`, `u`, `ubar`.
    pub fn squeeze() -> Self {
        TransformSpec::Squeeze {
            c: "c".into(),
            s: "s".into(),
            u: "u".into(),
            ubar: "ubar".into(),
        }
    }

    pub fn displacement_with(alpha: Symbol, alphabar: Symbol) -> Result<Self> {
        distinct(&[&alpha, &alphabar])?;
        Ok(TransformSpec::Displacement { alpha, alphabar })
    }

    pub fn squeeze_with(c: Symbol, s: Symbol, u: Symbol, ubar: Symbol) -> Result<Self> {
        distinct(&[&c, &s, &u, &ubar])?;
        Ok(TransformSpec::Squeeze { c, s, u, ubar })
    }

    /// Conjugate pairs for this transform's symbols; `c` and `s` are real.
    pub fn conjugation(&self) -> Conjugation {
        match self {
            TransformSpec::Displacement { alpha, alphabar } => {
                Conjugation::new().pair(alpha.clone(), alphabar.clone())
            }
            TransformSpec::Squeeze { u, ubar, .. } => Conjugation::new().pair(u.clone(), ubar.clone()),
        }
    }
}

/// `U† a^n U` or `U† a†^n U` in normal order.
pub fn conjugate_power(spec: &TransformSpec, which: Ladder, n: u32) -> NormalForm {
    match spec {
        TransformSpec::Displacement { alpha, alphabar } => {
            // a and α commute, so this is the ordinary binomial theorem
            let (shift, word): (_, fn(u32) -> NormalWord) = match which {
                Ladder::Ann => (ScalarPoly::var(alpha.clone()), |k| NormalWord::new(0, k)),
                Ladder::Dag => (ScalarPoly::var(alphabar.clone()), |k| NormalWord::new(k, 0)),
            };
            (0..=n)
                .map(|k| {
                    let c = BigRational::from_integer(binomial(u64::from(n), u64::from(k)));
                    (word(k), shift.pow(n - k).scale(&c))
                })
                .collect()
        }
        TransformSpec::Squeeze { c, s, u, ubar } => {
            let (c, s) = (ScalarPoly::var(c.clone()), ScalarPoly::var(s.clone()));
            match which {
                // a c - a† u s
                Ladder::Ann => expand_power_with(n, &c, &-&(&ScalarPoly::var(u.clone()) * &s)),
                // a† c - a ubar s
                Ladder::Dag => expand_power_with(n, &-&(&ScalarPoly::var(ubar.clone()) * &s), &c),
            }
        }
    }
}

fn reduce_monomial(m: &Monomial, c: &Symbol, s: &Symbol, u: &Symbol, ubar: &Symbol) -> ScalarPoly {
    let pair = m.degree_in(u).min(m.degree_in(ubar));
    let c_deg = m.degree_in(c);
    let rest = Monomial::from_powers(m.powers().filter_map(|(sym, e)| {
        let e = if sym == u || sym == ubar {
            e - pair
        } else if sym == c {
            c_deg % 2
        } else {
            e
        };
        (e > 0).then(|| (sym.clone(), e))
    }));
    // c^(2k) = (1 + s²)^k
    let one_plus_s2 = &ScalarPoly::one() + &ScalarPoly::var(s.clone()).pow(2);
    &ScalarPoly::term(rest, BigRational::from_integer(1.into())) * &one_plus_s2.pow(c_deg / 2)
}

/// Rewrites coefficients modulo `c² = 1 + s²` and `u·ubar = 1`, leaving every
/// `c` exponent at 0 or 1 and never both `u` and `ubar` in one monomial.
///
/// Forms over a displacement spec are returned unchanged.
pub fn reduce_hyperbolic(f: &NormalForm, spec: &TransformSpec) -> NormalForm {
    let TransformSpec::Squeeze { c, s, u, ubar } = spec else {
        return f.clone();
    };
    f.map_coeffs(|poly| {
        let mut out = ScalarPoly::zero();
        for (m, k) in poly.terms() {
            out += &reduce_monomial(m, c, s, u, ubar).scale(k);
        }
        out
    })
}

/// Bindings that send the squeeze symbols to the given polynomials; mostly
/// useful for specializing `r = 0` or `φ = 0` in tests.
pub fn squeeze_bindings(spec: &TransformSpec, c: ScalarPoly, s: ScalarPoly, u: ScalarPoly, ubar: ScalarPoly) -> BTreeMap<Symbol, ScalarPoly> {
    match spec {
        TransformSpec::Squeeze { c: cs, s: ss, u: us, ubar: bs } => BTreeMap::from([
            (cs.clone(), c),
            (ss.clone(), s),
            (us.clone(), u),
            (bs.clone(), ubar),
        ]),
        TransformSpec::Displacement { .. } => BTreeMap::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::nf_dagger;

    fn v(name: &str) -> ScalarPoly {
        ScalarPoly::var(name)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn displacement_square() {
        let f = conjugate_power(&TransformSpec::displacement(), Ladder::Ann, 2);
        let expected: NormalForm = [
            (NormalWord::new(0, 2), ScalarPoly::one()),
            (NormalWord::new(0, 1), v("alpha").scale(&q(2))),
            (NormalWord::new(0, 0), v("alpha").pow(2)),
        ]
        .into_iter()
        .collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn squeeze_first_power() {
        let f = conjugate_power(&TransformSpec::squeeze(), Ladder::Dag, 1);
        let expected: NormalForm = [
            (NormalWord::new(1, 0), v("c")),
            (NormalWord::new(0, 1), -&(&v("ubar") * &v("s"))),
        ]
        .into_iter()
        .collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn squeeze_square_of_annihilator() {
        let f = conjugate_power(&TransformSpec::squeeze(), Ladder::Ann, 2);
        let ucs = &(&v("u") * &v("c")) * &v("s");
        let expected: NormalForm = [
            (NormalWord::new(0, 2), v("c").pow(2)),
            (NormalWord::new(2, 0), &v("u").pow(2) * &v("s").pow(2)),
            (NormalWord::new(0, 0), -&ucs),
            (NormalWord::new(1, 1), ucs.scale(&q(-2))),
        ]
        .into_iter()
        .collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn reduction_examples() {
        let spec = TransformSpec::squeeze();
        let red = |p: ScalarPoly| reduce_hyperbolic(&NormalForm::scalar(p), &spec);
        assert_eq!(red(v("c").pow(2)), NormalForm::scalar(&ScalarPoly::one() + &v("s").pow(2)));
        assert_eq!(
            reduce_hyperbolic(
                &NormalForm::term(NormalWord::new(1, 1), &(&v("u") * &v("ubar")) * &v("s")),
                &spec
            ),
            NormalForm::term(NormalWord::new(1, 1), v("s"))
        );
        assert_eq!(red(v("c").pow(3)), NormalForm::scalar(&v("c") + &(&v("c") * &v("s").pow(2))));
        // cosh²1 - sinh²1 = 1, cosh³1 = cosh 1 (1 + sinh²1)
        let (ch, sh) = (1f64.cosh(), 1f64.sinh());
        assert!((ch.powi(3) - (ch + ch * sh * sh)).abs() < 1e-12);
    }

    #[test]
    fn dagger_maps_ann_to_dag() {
        for spec in [TransformSpec::squeeze(), TransformSpec::displacement()] {
            let conj = spec.conjugation();
            for n in 0..=6 {
                assert_eq!(
                    nf_dagger(&conjugate_power(&spec, Ladder::Ann, n), &conj),
                    conjugate_power(&spec, Ladder::Dag, n)
                );
            }
        }
    }

    #[test]
    fn identity_squeeze_is_trivial() {
        // r = 0: c = 1, s = 0
        let spec = TransformSpec::squeeze();
        let b = squeeze_bindings(&spec, ScalarPoly::one(), ScalarPoly::zero(), v("u"), v("ubar"));
        for n in 0..6 {
            assert_eq!(
                conjugate_power(&spec, Ladder::Ann, n).substitute(&b),
                NormalForm::word(0, n)
            );
        }
    }

    #[test]
    fn repeated_symbols_rejected() {
        assert!(TransformSpec::squeeze_with("c".into(), "s".into(), "c".into(), "ubar".into()).is_err());
        assert!(TransformSpec::displacement_with("a1".into(), "a2".into()).is_ok());
    }
}
