//! Commuting scalars: named symbols and exact multivariate polynomials over
//! the rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::complex::Complex64;
use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commuting scalar symbol such as `x`, `alpha` or `ubar`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    /// Panics if `name` is not an identifier; use [`str::parse`] for a fallible
    /// version.
    pub fn new(name: &str) -> Self {
        name.parse()
            .unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        let mut chars = name.chars();
        let head_ok = chars
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
        if head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            Ok(Symbol(name.to_owned()))
        } else {
            Err(Error::InvalidSymbol(name.to_owned()))
        }
    }
}

impl From<&str> for Symbol {
    fn from(name: &str) -> Self {
        Symbol::new(name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Declared complex-conjugate pairs. Symbols that are not declared are real.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Conjugation {
    partner: BTreeMap<Symbol, Symbol>,
}

impl Conjugation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry with `alpha ↔ alphabar` and `u ↔ ubar`.
    pub fn standard() -> Self {
        Self::new().pair("alpha", "alphabar").pair("u", "ubar")
    }

    pub fn pair(mut self, a: impl Into<Symbol>, b: impl Into<Symbol>) -> Self {
        let (a, b) = (a.into(), b.into());
        self.partner.insert(a.clone(), b.clone());
        self.partner.insert(b, a);
        self
    }

    pub fn conjugate<'a>(&'a self, s: &'a Symbol) -> &'a Symbol {
        self.partner.get(s).unwrap_or(s)
    }
}

/// A product of symbols with positive exponents, kept sorted by symbol name.
///
/// The derived ordering is lexicographic over `(symbol, exponent)` pairs, which
/// fixes both map canonicality and printing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut acc: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in powers {
            *acc.entry(s).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> impl Iterator<Item = (&Symbol, u32)> {
        self.0.iter().map(|(s, e)| (s, *e))
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.0
            .iter()
            .find(|(t, _)| t == s)
            .map_or(0, |&(_, e)| e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn conjugate(&self, conj: &Conjugation) -> Self {
        Monomial::from_powers(self.0.iter().map(|(s, e)| (conj.conjugate(s).clone(), *e)))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + rhs.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < rhs.0.len() {
            let (l, r) = (&self.0[i], &rhs.0[j]);
            match l.0.cmp(&r.0) {
                std::cmp::Ordering::Less => {
                    out.push(l.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(r.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((l.0.clone(), l.1 + r.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&rhs.0[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    /// `x^2 y`; the empty monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact polynomial in commuting symbols with rational coefficients.
///
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn var(s: impl Into<Symbol>) -> Self {
        Self::term(Monomial::var(s.into()), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this polynomial has no symbols.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree_in(s)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces each bound symbol by a polynomial; unbound symbols stay.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, ScalarPoly>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = ScalarPoly::constant(c.clone());
            let mut rest = Vec::new();
            for (s, e) in m.powers() {
                match bindings.get(s) {
                    Some(p) => term = &term * &p.pow(e),
                    None => rest.push((s.clone(), e)),
                }
            }
            let rest = ScalarPoly::term(Monomial::from_powers(rest), BigRational::one());
            out += &(&term * &rest);
        }
        out
    }

    pub fn conjugate(&self, conj: &Conjugation) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.conjugate(conj), c.clone())),
        )
    }

    fn missing(&self, bound: impl Fn(&Symbol) -> bool) -> Vec<Symbol> {
        self.symbols().into_iter().filter(|s| !bound(s)).collect()
    }

    pub fn eval_rational(&self, bindings: &BTreeMap<Symbol, BigRational>) -> Result<BigRational> {
        let missing = self.missing(|s| bindings.contains_key(s));
        if !missing.is_empty() {
            return Err(Error::UnboundSymbols(missing));
        }
        Ok(self.terms.iter().fold(BigRational::zero(), |acc, (m, c)| {
            let v = m.powers().fold(c.clone(), |v, (s, e)| {
                v * num::pow(bindings[s].clone(), e as usize)
            });
            acc + v
        }))
    }

    pub fn eval_complex(&self, bindings: &BTreeMap<Symbol, Complex64>) -> Result<Complex64> {
        let missing = self.missing(|s| bindings.contains_key(s));
        if !missing.is_empty() {
            return Err(Error::UnboundSymbols(missing));
        }
        Ok(self.terms.iter().fold(Complex64::zero(), |acc, (m, c)| {
            let v = m.powers().fold(Complex64::new(rational_to_f64(c), 0.0), |v, (s, e)| {
                v * bindings[s].powu(e)
            });
            acc + v
        }))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64; fall back to the ratio of logs
        let (n, d) = (r.numer(), r.denom());
        let sign = if n.is_negative() { -1.0 } else { 1.0 };
        let ln = |x: &num::BigInt| {
            let bits = x.bits();
            let shift = bits.saturating_sub(64);
            (x.abs() >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
        };
        sign * (ln(n) - ln(d)).exp()
    })
}

impl From<Symbol> for ScalarPoly {
    fn from(s: Symbol) -> Self {
        ScalarPoly::var(s)
    }
}

impl From<BigRational> for ScalarPoly {
    fn from(c: BigRational) -> Self {
        ScalarPoly::constant(c)
    }
}

impl AddAssign<&ScalarPoly> for ScalarPoly {
    fn add_assign(&mut self, rhs: &ScalarPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;

    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ScalarPoly {
    type Output = ScalarPoly;

    fn add(mut self, rhs: ScalarPoly) -> ScalarPoly {
        self += &rhs;
        self
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;

    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ScalarPoly {
    type Output = ScalarPoly;

    fn neg(self) -> ScalarPoly {
        -&self
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;

    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        self + &(-rhs)
    }
}

impl Sub for ScalarPoly {
    type Output = ScalarPoly;

    fn sub(self, rhs: ScalarPoly) -> ScalarPoly {
        &self - &rhs
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;

    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1 * m2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for ScalarPoly {
    type Output = ScalarPoly;

    fn mul(self, rhs: ScalarPoly) -> ScalarPoly {
        &self * &rhs
    }
}

/// Writes `c·m` without its sign; the caller handles `+`/`-` joining.
fn fmt_unsigned_term(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &BigRational) -> fmt::Result {
    let c = c.abs();
    if m.is_one() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{c} {m}")
    }
}

impl fmt::Display for ScalarPoly {
    /// Plain text in the expression grammar, e.g. `3/2 x^2 y - z + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            fmt_unsigned_term(f, m, c)?;
        }
        Ok(())
    }
}
