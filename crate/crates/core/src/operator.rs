//! Noncommutative operator expressions in `a`, `a†` and their canonical
//! normal-ordered representation.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num::BigRational;

use crate::closed_forms::ann_dag_coefficients;
use crate::error::{Error, Result};
use crate::scalar::{Conjugation, Monomial, ScalarPoly, Symbol};

/// The word `a†^dag a^ann`. `(0, 0)` is the identity operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalWord {
    pub dag: u32,
    pub ann: u32,
}

impl NormalWord {
    pub const IDENTITY: NormalWord = NormalWord { dag: 0, ann: 0 };

    pub fn new(dag: u32, ann: u32) -> Self {
        NormalWord { dag, ann }
    }

    pub fn degree(self) -> u32 {
        self.dag + self.ann
    }
}

/// `Σ c_{pq} a†^p a^q` with nonzero polynomial coefficients.
///
/// Normal-ordered words are linearly independent, so map equality is operator
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<NormalWord, ScalarPoly>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::word(0, 0)
    }

    /// The single word `a†^dag a^ann` with coefficient 1.
    pub fn word(dag: u32, ann: u32) -> Self {
        Self::term(NormalWord::new(dag, ann), ScalarPoly::one())
    }

    pub fn scalar(c: ScalarPoly) -> Self {
        Self::term(NormalWord::IDENTITY, c)
    }

    pub fn term(word: NormalWord, coeff: ScalarPoly) -> Self {
        let mut f = Self::zero();
        f.add_term(word, coeff);
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NormalWord, ScalarPoly)>) -> Self {
        let mut f = Self::zero();
        for (w, c) in terms {
            f.add_term(w, c);
        }
        f
    }

    pub fn add_term(&mut self, word: NormalWord, coeff: ScalarPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dag: u32, ann: u32) -> Option<&ScalarPoly> {
        self.terms.get(&NormalWord::new(dag, ann))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalWord, &ScalarPoly)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.values().flat_map(ScalarPoly::symbols).collect()
    }

    /// Largest `p + q` over the stored words.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|w| w.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &ScalarPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, k)| (*w, k * c)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, k)| (*w, f(k))))
    }

    pub fn substitute(&self, bindings: &BTreeMap<Symbol, ScalarPoly>) -> Self {
        self.map_coeffs(|c| c.substitute(bindings))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| &acc * self)
    }

    pub fn dagger(&self, conj: &Conjugation) -> Self {
        nf_dagger(self, conj)
    }

    /// Splits the form by scalar monomial: for each monomial, the operator
    /// polynomial with constant coefficients that multiplies it.
    pub fn collect_by_monomial(&self) -> BTreeMap<Monomial, NormalForm> {
        let mut out: BTreeMap<Monomial, NormalForm> = BTreeMap::new();
        for (w, c) in &self.terms {
            for (m, k) in c.terms() {
                out.entry(m.clone())
                    .or_default()
                    .add_term(*w, ScalarPoly::constant(k.clone()));
            }
        }
        out
    }
}

impl FromIterator<(NormalWord, ScalarPoly)> for NormalForm {
    fn from_iter<I: IntoIterator<Item = (NormalWord, ScalarPoly)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

pub fn nf_add(lhs: &NormalForm, rhs: &NormalForm) -> NormalForm {
    let mut out = lhs.clone();
    for (w, c) in &rhs.terms {
        out.add_term(*w, c.clone());
    }
    out
}

/// Product of normal forms: `(a†^p1 a^q1)(a†^p2 a^q2) = a†^p1 [a^q1 a†^p2] a^q2`
/// with the bracket expanded in closed form.
pub fn nf_mul(lhs: &NormalForm, rhs: &NormalForm) -> NormalForm {
    let mut out = NormalForm::zero();
    for (w1, c1) in &lhs.terms {
        for (w2, c2) in &rhs.terms {
            let c = c1 * c2;
            for (s, k) in ann_dag_coefficients(w1.ann, w2.dag) {
                let word = NormalWord::new(w1.dag + w2.dag - s, w1.ann - s + w2.ann);
                out.add_term(word, c.scale(&BigRational::from_integer(k)));
            }
        }
    }
    out
}

/// Hermitian conjugate: `(c a†^p a^q)† = c* a†^q a^p`, which is already normal.
pub fn nf_dagger(f: &NormalForm, conj: &Conjugation) -> NormalForm {
    NormalForm::from_terms(
        f.terms
            .iter()
            .map(|(w, c)| (NormalWord::new(w.ann, w.dag), c.conjugate(conj))),
    )
}

impl Add for &NormalForm {
    type Output = NormalForm;

    fn add(self, rhs: &NormalForm) -> NormalForm {
        nf_add(self, rhs)
    }
}

impl Neg for &NormalForm {
    type Output = NormalForm;

    fn neg(self) -> NormalForm {
        self.map_coeffs(|c| -c)
    }
}

impl Sub for &NormalForm {
    type Output = NormalForm;

    fn sub(self, rhs: &NormalForm) -> NormalForm {
        nf_add(self, &-rhs)
    }
}

impl Mul for &NormalForm {
    type Output = NormalForm;

    fn mul(self, rhs: &NormalForm) -> NormalForm {
        nf_mul(self, rhs)
    }
}

/// A single letter of an operator word.
///
/// `Dag < Ann`, so sorted words list creation operators first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Dag,
    Ann,
}

pub type Word = Vec<Letter>;

/// Syntax tree of an operator expression before normal ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Ann,
    Dag,
    Scalar(ScalarPoly),
    Sum(Vec<OperatorExpr>),
    /// Factors in operator order; never reordered.
    Product(Vec<OperatorExpr>),
    Power(Box<OperatorExpr>, u32),
}

impl OperatorExpr {
    pub fn scalar(c: impl Into<ScalarPoly>) -> Self {
        OperatorExpr::Scalar(c.into())
    }

    pub fn symbol(name: &str) -> Self {
        OperatorExpr::Scalar(ScalarPoly::var(name))
    }

    /// `base^exp`, rejecting negative exponents.
    pub fn pow(base: OperatorExpr, exp: i64) -> Result<Self> {
        let e = u32::try_from(exp).map_err(|_| Error::NegativeExponent(exp))?;
        Ok(OperatorExpr::Power(Box::new(base), e))
    }

    pub fn power(base: OperatorExpr, exp: u32) -> Self {
        OperatorExpr::Power(Box::new(base), exp)
    }

    /// `a^j`.
    pub fn ann_pow(j: u32) -> Self {
        Self::power(OperatorExpr::Ann, j)
    }

    /// `a†^k`.
    pub fn dag_pow(k: u32) -> Self {
        Self::power(OperatorExpr::Dag, k)
    }

    pub fn from_word(word: &[Letter]) -> Self {
        OperatorExpr::Product(
            word.iter()
                .map(|l| match l {
                    Letter::Dag => OperatorExpr::Dag,
                    Letter::Ann => OperatorExpr::Ann,
                })
                .collect(),
        )
    }

    /// Length of the longest operator word in the expansion.
    pub fn degree(&self) -> u64 {
        match self {
            OperatorExpr::Ann | OperatorExpr::Dag => 1,
            OperatorExpr::Scalar(_) => 0,
            OperatorExpr::Sum(xs) => xs.iter().map(Self::degree).max().unwrap_or(0),
            OperatorExpr::Product(xs) => xs.iter().map(Self::degree).sum(),
            OperatorExpr::Power(b, e) => b.degree() * u64::from(*e),
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        match self {
            OperatorExpr::Ann | OperatorExpr::Dag => BTreeSet::new(),
            OperatorExpr::Scalar(c) => c.symbols(),
            OperatorExpr::Sum(xs) | OperatorExpr::Product(xs) => {
                xs.iter().flat_map(Self::symbols).collect()
            }
            OperatorExpr::Power(b, _) => b.symbols(),
        }
    }

    /// Distributes sums over products and powers, leaving a linear combination
    /// of unordered words.
    pub fn expand_words(&self) -> BTreeMap<Word, ScalarPoly> {
        match self {
            OperatorExpr::Ann => single_word(vec![Letter::Ann]),
            OperatorExpr::Dag => single_word(vec![Letter::Dag]),
            OperatorExpr::Scalar(c) => {
                let mut m = BTreeMap::new();
                if !c.is_zero() {
                    m.insert(Vec::new(), c.clone());
                }
                m
            }
            OperatorExpr::Sum(xs) => {
                let mut acc = BTreeMap::new();
                for x in xs {
                    for (w, c) in x.expand_words() {
                        accumulate(&mut acc, w, c);
                    }
                }
                acc
            }
            OperatorExpr::Product(xs) => xs
                .iter()
                .fold(single_word(Vec::new()), |acc, x| word_product(&acc, &x.expand_words())),
            OperatorExpr::Power(b, e) => {
                let base = b.expand_words();
                (0..*e).fold(single_word(Vec::new()), |acc, _| word_product(&acc, &base))
            }
        }
    }
}

impl From<Letter> for OperatorExpr {
    fn from(l: Letter) -> Self {
        match l {
            Letter::Dag => OperatorExpr::Dag,
            Letter::Ann => OperatorExpr::Ann,
        }
    }
}

fn single_word(w: Word) -> BTreeMap<Word, ScalarPoly> {
    BTreeMap::from([(w, ScalarPoly::one())])
}

fn accumulate(map: &mut BTreeMap<Word, ScalarPoly>, w: Word, c: ScalarPoly) {
    match map.entry(w) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn word_product(
    lhs: &BTreeMap<Word, ScalarPoly>,
    rhs: &BTreeMap<Word, ScalarPoly>,
) -> BTreeMap<Word, ScalarPoly> {
    let mut out = BTreeMap::new();
    for (w1, c1) in lhs {
        for (w2, c2) in rhs {
            let mut w = Vec::with_capacity(w1.len() + w2.len());
            w.extend_from_slice(w1);
            w.extend_from_slice(w2);
            accumulate(&mut out, w, c1 * c2);
        }
    }
    out
}

/// Index of the leftmost adjacent `a a†` pair.
fn leftmost_inversion(w: &[Letter]) -> Option<usize> {
    w.windows(2)
        .position(|p| p[0] == Letter::Ann && p[1] == Letter::Dag)
}

/// Reads a word with no `a a†` pair as `a†^p a^q`.
pub(crate) fn sorted_word(w: &[Letter]) -> NormalWord {
    let dag = w.iter().take_while(|&&l| l == Letter::Dag).count() as u32;
    NormalWord::new(dag, w.len() as u32 - dag)
}

/// Normal-orders an expression by expanding it into words and rewriting
/// `a a† → a† a + 1` at the leftmost inversion until none remain.
///
/// Each rewrite removes exactly one `(a before a†)` inversion from both
/// produced words, so the loop terminates. Identical words are merged as they
/// appear, which keeps the pending set bounded by the number of distinct words.
pub fn normal_order(expr: &OperatorExpr) -> NormalForm {
    rewrite_to_normal(expr.expand_words())
}

pub(crate) fn rewrite_to_normal(mut pending: BTreeMap<Word, ScalarPoly>) -> NormalForm {
    let mut out = NormalForm::zero();
    while let Some((word, coeff)) = pending.pop_first() {
        match leftmost_inversion(&word) {
            None => out.add_term(sorted_word(&word), coeff),
            Some(i) => {
                let mut swapped = word.clone();
                swapped.swap(i, i + 1);
                let mut contracted = word;
                contracted.drain(i..i + 2);
                accumulate(&mut pending, swapped, coeff.clone());
                accumulate(&mut pending, contracted, coeff);
            }
        }
    }
    out
}
