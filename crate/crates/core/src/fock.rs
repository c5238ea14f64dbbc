//! Exact action of boson operators on Fock states.
//!
//! Amplitudes are finite sums `Σ r_d √d` over distinct squarefree `d`. Square
//! roots of distinct squarefree integers are linearly independent over the
//! rationals, so this representation is canonical and equality is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::operator::NormalForm;
use crate::scalar::{rational_to_f64, ScalarPoly, Symbol};

/// Occupation number of a Fock state `|m⟩`.
pub type Occupation = u32;

/// Splits `n = root² · free` with `free` squarefree.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(!n.is_negative());
    let mut rest = n.clone();
    let mut root = BigInt::one();
    let mut free = BigInt::one();
    let mut d = BigInt::from(2u32);
    while &d * &d * &d <= rest {
        let mut e = 0u32;
        loop {
            let (quot, rem) = rest.div_rem(&d);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            e += 1;
        }
        root *= d.pow(e / 2);
        if e % 2 == 1 {
            free *= &d;
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    // every prime factor of rest now exceeds its cube root: rest is 1, p, pq or p²
    let s = rest.sqrt();
    if rest > BigInt::one() && &s * &s == rest {
        root *= s;
    } else {
        free *= rest;
    }
    (root, free)
}

/// An exact number `rat · √radicand` with a squarefree radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalScalar {
    rat: BigRational,
    radicand: BigInt,
}

impl RadicalScalar {
    /// `rat · √radicand`, reduced. Panics on a negative radicand.
    pub fn new(rat: BigRational, radicand: BigInt) -> Self {
        assert!(!radicand.is_negative(), "negative radicand {radicand}");
        if rat.is_zero() || radicand.is_zero() {
            return Self::zero();
        }
        let (root, free) = split_square(&radicand);
        RadicalScalar {
            rat: rat * BigRational::from_integer(root),
            radicand: free,
        }
    }

    pub fn zero() -> Self {
        RadicalScalar {
            rat: BigRational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn rational(rat: BigRational) -> Self {
        Self::new(rat, BigInt::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn sqrt(n: impl Into<BigInt>) -> Self {
        Self::new(BigRational::one(), n.into())
    }

    pub fn rat(&self) -> &BigRational {
        &self.rat
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rat) * rational_to_f64(&BigRational::from_integer(self.radicand.clone())).sqrt()
    }
}

impl Mul for &RadicalScalar {
    type Output = RadicalScalar;

    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        if self.is_zero() || rhs.is_zero() {
            return RadicalScalar::zero();
        }
        // √(g a) √(g b) = g √(ab) with a, b coprime and squarefree
        let g = self.radicand.gcd(&rhs.radicand);
        RadicalScalar {
            rat: &self.rat * &rhs.rat * BigRational::from_integer(g.clone()),
            radicand: (&self.radicand / &g) * (&rhs.radicand / &g),
        }
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;

    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            rat: -&self.rat,
            radicand: self.radicand.clone(),
        }
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() || self.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else if (-&self.rat).is_one() {
            write!(f, "-sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.rat, self.radicand)
        }
    }
}

impl FromStr for RadicalScalar {
    type Err = Error;

    /// Accepts `r`, `r*sqrt(d)`, `sqrt(d)` and `-sqrt(d)` with `r` an integer
    /// or fraction and `d` a nonnegative integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAmplitude(s.to_owned());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parse_rat = |t: &str| -> Result<BigRational> {
            match t {
                "" => Ok(BigRational::one()),
                "-" => Ok(-BigRational::one()),
                _ => t.parse::<BigRational>().map_err(|_| bad()),
            }
        };
        match compact.find("sqrt(") {
            None => Ok(Self::rational(compact.parse().map_err(|_| bad())?)),
            Some(at) => {
                let head = &compact[..at];
                let head = head.strip_suffix('*').unwrap_or(head);
                if head.ends_with('*') {
                    return Err(bad());
                }
                let inner = compact[at + 5..].strip_suffix(')').ok_or_else(bad)?;
                let d: BigInt = inner.parse().map_err(|_| bad())?;
                if d.is_negative() {
                    return Err(bad());
                }
                Ok(Self::new(parse_rat(head)?, d))
            }
        }
    }
}

/// `Σ r_d √d` over distinct squarefree radicands `d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RadicalSum {
    terms: BTreeMap<BigInt, BigRational>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(r: BigRational) -> Self {
        RadicalScalar::rational(r).into()
    }

    pub fn add_scalar(&mut self, x: &RadicalScalar) {
        if x.is_zero() {
            return;
        }
        let e = self
            .terms
            .entry(x.radicand.clone())
            .or_insert_with(BigRational::zero);
        *e += &x.rat;
        if e.is_zero() {
            self.terms.remove(&x.radicand);
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

    /// Terms in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = RadicalScalar> + '_ {
        self.terms.iter().map(|(d, r)| RadicalScalar {
            rat: r.clone(),
            radicand: d.clone(),
        })
    }

    /// The value, if it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigInt::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for t in self.terms() {
            out.add_scalar(&RadicalScalar {
                rat: t.rat * c,
                radicand: t.radicand,
            });
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.terms().map(|t| t.to_f64()).fold(0.0, |a, b| a + b)
    }
}

impl From<RadicalScalar> for RadicalSum {
    fn from(x: RadicalScalar) -> Self {
        let mut s = RadicalSum::zero();
        s.add_scalar(&x);
        s
    }
}

impl Add for &RadicalSum {
    type Output = RadicalSum;

    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        for t in rhs.terms() {
            out.add_scalar(&t);
        }
        out
    }
}

impl Mul for &RadicalSum {
    type Output = RadicalSum;

    fn mul(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = RadicalSum::zero();
        for a in self.terms() {
            for b in rhs.terms() {
                out.add_scalar(&(&a * &b));
            }
        }
        out
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;

    fn neg(self) -> RadicalSum {
        self.scale(&-BigRational::one())
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms().enumerate() {
            if i == 0 {
                write!(f, "{t}")?;
            } else if t.rat.is_negative() {
                write!(f, " - {}", -&t)?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

/// A finite superposition `Σ c_m |m⟩` with exact amplitudes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    amps: BTreeMap<Occupation, RadicalSum>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The Fock state `|m⟩`.
    pub fn basis(m: Occupation) -> Self {
        Self::single(m, RadicalScalar::from_int(1))
    }

    pub fn single(m: Occupation, amp: RadicalScalar) -> Self {
        let mut v = Self::zero();
        v.add_amplitude(m, &amp.into());
        v
    }

    pub fn from_amplitudes(amps: impl IntoIterator<Item = (Occupation, RadicalSum)>) -> Self {
        let mut v = Self::zero();
        for (m, a) in amps {
            v.add_amplitude(m, &a);
        }
        v
    }

    /// Parses `{"m": "amp", ...}` where each amplitude is `r`, `r*sqrt(d)` or
    /// `sqrt(d)`.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: BTreeMap<String, String> =
            serde_json::from_str(s).map_err(|e| Error::InvalidJson(e.to_string()))?;
        let mut v = Self::zero();
        for (k, a) in raw {
            let m: Occupation = k
                .trim()
                .parse()
                .map_err(|_| Error::InvalidJson(format!("occupation {k:?} is not a nonnegative integer")))?;
            v.add_amplitude(m, &a.parse::<RadicalScalar>()?.into());
        }
        Ok(v)
    }

    pub fn add_amplitude(&mut self, m: Occupation, amp: &RadicalSum) {
        if amp.is_zero() {
            return;
        }
        let e = self.amps.entry(m).or_default();
        *e = &*e + amp;
        if e.is_zero() {
            self.amps.remove(&m);
        }
    }

    pub fn amplitude(&self, m: Occupation) -> RadicalSum {
        self.amps.get(&m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Occupation, &RadicalSum)> {
        self.amps.iter().map(|(m, a)| (*m, a))
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn max_occupation(&self) -> Option<Occupation> {
        self.amps.keys().next_back().copied()
    }

    pub fn scale(&self, c: &RadicalSum) -> Self {
        Self::from_amplitudes(self.amps.iter().map(|(m, a)| (*m, a * c)))
    }

    /// `⟨self|other⟩`. All amplitudes are real, so no conjugation is needed.
    pub fn inner(&self, other: &FockVector) -> RadicalSum {
        self.amps
            .iter()
            .filter_map(|(m, a)| other.amps.get(m).map(|b| a * b))
            .fold(RadicalSum::zero(), |acc, t| &acc + &t)
    }

    pub fn norm_sqr(&self) -> RadicalSum {
        self.inner(self)
    }

    /// One application of `a`: `a|m⟩ = √m |m-1⟩`.
    pub fn lower(&self) -> Self {
        Self::from_amplitudes(
            self.amps
                .iter()
                .filter(|(m, _)| **m > 0)
                .map(|(m, a)| (m - 1, a * &RadicalScalar::sqrt(*m).into())),
        )
    }

    /// One application of `a†`: `a†|m⟩ = √(m+1) |m+1⟩`.
    pub fn raise(&self) -> Self {
        Self::from_amplitudes(
            self.amps
                .iter()
                .map(|(m, a)| (m + 1, a * &RadicalScalar::sqrt(m + 1).into())),
        )
    }

    /// `a†^p a^q` applied through the closed form for each support point.
    pub fn apply_word(&self, p: u32, q: u32) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.amps {
            for (target, amp) in apply_normal_word(p, q, *m).iter() {
                out.add_amplitude(target, &(a * amp));
            }
        }
        out
    }
}

impl Add for &FockVector {
    type Output = FockVector;

    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (m, a) in rhs.iter() {
            out.add_amplitude(m, a);
        }
        out
    }
}

impl fmt::Display for FockVector {
    /// `6|4> + sqrt(2)|2>`; amplitudes with several radicals are parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, a)) in self.amps.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let amp = if a.len() > 1 {
                format!("({a})")
            } else if a.terms().next().is_some_and(|t| t.rat.is_one() && t.radicand.is_one()) {
                String::new()
            } else {
                a.to_string()
            };
            write!(f, "{amp}|{m}>")?;
        }
        Ok(())
    }
}

fn falling(top: u64, count: u64) -> BigInt {
    (0..count).fold(BigInt::one(), |acc, i| acc * (top - i))
}

/// `a†^p a^q |m⟩ = √(m! (m-q+p)!) / (m-q)! |m-q+p⟩`; the zero vector when
/// `q > m`.
pub fn apply_normal_word(p: u32, q: u32, m: Occupation) -> FockVector {
    if q > m {
        return FockVector::zero();
    }
    let base = u64::from(m - q);
    // m!/(m-q)! · (m-q+p)!/(m-q)! under the root, same value as the quotient of factorials
    let under = falling(u64::from(m), u64::from(q)) * falling(base + u64::from(p), u64::from(p));
    FockVector::single(m - q + p, RadicalScalar::sqrt(under))
}

/// `a^j a†^k |m⟩ = (m+k)! / √(m! (m+k-j)!) |m+k-j⟩`; the zero vector when
/// `j > m+k`.
pub fn apply_antinormal_word(j: u32, k: u32, m: Occupation) -> FockVector {
    let top = u64::from(m) + u64::from(k);
    if u64::from(j) > top {
        return FockVector::zero();
    }
    let target = top - u64::from(j);
    let num = factorial(top);
    let den = factorial(u64::from(m)) * factorial(target);
    // num/√den = num·√den/den
    let amp = RadicalScalar::new(BigRational::new(num, den.clone()), den);
    FockVector::single(target as Occupation, amp)
}

/// Applies a normal form to a state, with every symbol bound to a rational.
pub fn apply_form(
    f: &NormalForm,
    state: &FockVector,
    bindings: &BTreeMap<Symbol, BigRational>,
) -> Result<FockVector> {
    let missing: Vec<Symbol> = f
        .symbols()
        .into_iter()
        .filter(|s| !bindings.contains_key(s))
        .collect();
    if !missing.is_empty() {
        return Err(Error::UnboundSymbols(missing));
    }
    let mut out = FockVector::zero();
    for (w, c) in f.iter() {
        let c = c.eval_rational(bindings)?;
        let image = state.apply_word(w.dag, w.ann);
        out = &out + &image.scale(&RadicalSum::rational(c));
    }
    Ok(out)
}

/// `(a x + a† y)^n |0⟩ = Σ_m c_m a†^(n-2m) |0⟩`, returned as `m ↦ c_m` with
/// `c_m = n! x^m y^(n-m) / (m! (n-2m)! 2^m)`.
pub fn vacuum_expansion(n: u32, x: &Symbol, y: &Symbol) -> BTreeMap<u32, ScalarPoly> {
    let (xs, ys) = (ScalarPoly::var(x.clone()), ScalarPoly::var(y.clone()));
    let mut out = BTreeMap::new();
    for m in 0..=n / 2 + 1 {
        let (n64, m64) = (i64::from(n), i64::from(m));
        let Some(c) = crate::combinatorics::factorial_quotient(&[n64], &[m64, n64 - 2 * m64]) else {
            continue;
        };
        let c = c / BigRational::from_integer(BigInt::from(2).pow(m));
        out.insert(m, (&xs.pow(m) * &ys.pow(n - m)).scale(&c));
    }
    out
}

/// The state `Σ_m c_m a†^(n-2m) |0⟩` for a vacuum expansion with bound symbols.
pub fn vacuum_state(
    n: u32,
    expansion: &BTreeMap<u32, ScalarPoly>,
    bindings: &BTreeMap<Symbol, BigRational>,
) -> Result<FockVector> {
    let mut out = FockVector::zero();
    for (m, c) in expansion {
        let c = c.eval_rational(bindings)?;
        let k = n - 2 * m;
        // a†^k |0⟩ = √(k!) |k⟩
        let amp = RadicalScalar::new(c, factorial(u64::from(k)));
        out.add_amplitude(k, &amp.into());
    }
    Ok(out)
}

/// `⟨ψ| a†^p a^q |ψ⟩`, unnormalized.
pub fn moment(p: u32, q: u32, state: &FockVector) -> RadicalSum {
    state.inner(&state.apply_word(p, q))
}

/// `⟨ψ| a†^p a^q |ψ⟩ / ⟨ψ|ψ⟩`; needs a rational norm.
pub fn normalized_moment(p: u32, q: u32, state: &FockVector) -> Result<RadicalSum> {
    if state.is_zero() {
        return Err(Error::ZeroState);
    }
    let norm = state.norm_sqr().as_rational().ok_or(Error::IrrationalNorm)?;
    Ok(moment(p, q, state).scale(&norm.recip()))
}
