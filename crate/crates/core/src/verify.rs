//! Randomized cross-checks of the exact engine against its oracles: the naive
//! rewriter, the ladder-step Fock action and the truncated-matrix
//! representation.
//!
//! With `corrupt` set, every result under test is perturbed before it is
//! compared, which must make every suite fail.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num::complex::Complex64;
use num::{BigInt, BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_forms::{
    ann_dag_product, dag_ann_antinormal, expand_power, hermite_he, hermite_he_recurrence,
    hermite_vacuum_form, AntinormalForm,
};
use crate::fock::{
    apply_antinormal_word, apply_form, apply_normal_word, moment, vacuum_expansion, vacuum_state,
    FockVector, RadicalScalar, RadicalSum,
};
use crate::operator::{normal_order, Letter, NormalForm, NormalWord, OperatorExpr};
use crate::oracle::{
    self, compare_scaled, exact_tolerance, Regime, TruncatedRep, MAX_UNITARY_PARAM, UNITARY_TOL,
};
use crate::scalar::{ScalarPoly, Symbol};
use crate::transforms::{conjugate_power, reduce_hyperbolic, Ladder, TransformSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Rewrite,
    MixedProduct,
    Antinormal,
    Power,
    Vacuum,
    Fock,
    Transforms,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Rewrite,
        Suite::MixedProduct,
        Suite::Antinormal,
        Suite::Power,
        Suite::Vacuum,
        Suite::Fock,
        Suite::Transforms,
    ];

    /// Name accepted by `verify --suite`.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Rewrite => "rewrite",
            Suite::MixedProduct => "lemma4",
            Suite::Antinormal => "lemma5",
            Suite::Power => "theorem1",
            Suite::Vacuum => "theorem2",
            Suite::Fock => "fock",
            Suite::Transforms => "transforms",
        }
    }
}

/// Parses a suite name, or `all`.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, String> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::ALL
        .iter()
        .copied()
        .find(|x| x.name() == s)
        .map(|x| vec![x])
        .ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}, expected one of {} or all", names.join(", "))
        })
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match parse_suites(s)?.as_slice() {
            [one] => Ok(*one),
            _ => Err("expected a single suite".into()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suites: Vec<Suite>,
    pub max_n: u32,
    pub seed: u64,
    pub corrupt: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suites: Suite::ALL.to_vec(),
            max_n: 8,
            seed: 0,
            corrupt: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Largest deviation seen in a numeric comparison, relative to the size of
    /// the reference (or absolute, when the reference is below one).
    pub max_deviation: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn cases(&self) -> usize {
        self.suites.iter().map(|s| s.cases).sum()
    }

    pub fn max_deviation(&self) -> f64 {
        self.suites.iter().map(|s| s.max_deviation).fold(0.0, f64::max)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<12} {:>7} {:>7} {:>12}  status", "suite", "cases", "failed", "max dev");
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{:<12} {:>7} {:>7} {:>12.3e}  {}",
                s.suite.name(),
                s.cases,
                s.failures.len(),
                s.max_deviation,
                if s.passed() { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            out,
            "{:<12} {:>7} {:>7} {:>12.3e}  {}",
            "total",
            self.cases(),
            self.suites.iter().map(|s| s.failures.len()).sum::<usize>(),
            self.max_deviation(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for s in &self.suites {
            for f in s.failures.iter().take(3) {
                let _ = writeln!(out, "  {}: {f}", s.suite.name());
            }
        }
        out
    }
}

struct Tally {
    suite: Suite,
    cases: usize,
    failures: Vec<String>,
    max_deviation: f64,
    corrupt: bool,
}

impl Tally {
    fn new(suite: Suite, corrupt: bool) -> Self {
        Tally {
            suite,
            cases: 0,
            failures: Vec::new(),
            max_deviation: 0.0,
            corrupt,
        }
    }

    fn exact(&mut self, label: impl FnOnce() -> String, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    /// `dev` against a reference of size `scale`; the recorded deviation is
    /// relative to `max(scale, 1)`.
    fn numeric(&mut self, label: impl FnOnce() -> String, dev: f64, scale: f64, tol: f64) {
        self.cases += 1;
        self.max_deviation = self.max_deviation.max(dev / scale.max(1.0));
        if dev.is_nan() || dev > tol {
            self.failures.push(format!("{} (deviation {dev:.3e} > {tol:.1e})", label()));
        }
    }

    fn exact_block(&mut self, label: impl FnOnce() -> String, dev: f64, scale: f64) {
        self.numeric(label, dev, scale, exact_tolerance(scale));
    }

    fn numeric_result(&mut self, label: impl FnOnce() -> String, res: crate::Result<(f64, f64)>) {
        match res {
            Ok((dev, scale)) => self.exact_block(label, dev, scale),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{}: {e}", label()));
            }
        }
    }

    fn tamper(&self, mut nf: NormalForm) -> NormalForm {
        if self.corrupt {
            nf.add_term(NormalWord::IDENTITY, ScalarPoly::one());
        }
        nf
    }

    fn tamper_antinormal(&self, mut f: AntinormalForm) -> AntinormalForm {
        if self.corrupt {
            f.add_term(0, 0, BigRational::one());
        }
        f
    }

    fn tamper_vector(&self, v: FockVector) -> FockVector {
        if self.corrupt {
            &v + &FockVector::basis(0)
        } else {
            v
        }
    }

    fn tamper_sum(&self, s: RadicalSum) -> RadicalSum {
        if self.corrupt {
            &s + &RadicalSum::rational(BigRational::one())
        } else {
            s
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            cases: self.cases,
            failures: self.failures,
            max_deviation: self.max_deviation,
        }
    }
}

fn xy() -> (Symbol, Symbol) {
    (Symbol::new("x"), Symbol::new("y"))
}

/// `(a x + a† y)` as an expression.
pub fn linear_combination(x: &Symbol, y: &Symbol) -> OperatorExpr {
    OperatorExpr::Sum(vec![
        OperatorExpr::Product(vec![OperatorExpr::Ann, OperatorExpr::symbol(x.as_str())]),
        OperatorExpr::Product(vec![OperatorExpr::Dag, OperatorExpr::symbol(y.as_str())]),
    ])
}

/// The literal `n`-fold product `(a x + a† y)·…·(a x + a† y)`.
pub fn literal_power(n: u32, x: &Symbol, y: &Symbol) -> OperatorExpr {
    OperatorExpr::Product((0..n).map(|_| linear_combination(x, y)).collect())
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| if rng.gen_bool(0.5) { Letter::Ann } else { Letter::Dag })
        .collect()
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut num: i64 = rng.gen_range(-9..=9);
    if num == 0 {
        num = 1;
    }
    BigRational::new(num.into(), rng.gen_range(1i64..=4).into())
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
}

fn integer_form(map: &BTreeMap<NormalWord, BigInt>) -> NormalForm {
    map.iter()
        .map(|(w, c)| (*w, ScalarPoly::constant(BigRational::from_integer(c.clone()))))
        .collect()
}

fn grading_holds(nf: &NormalForm, word: &[Letter]) -> bool {
    let d = word.iter().filter(|l| **l == Letter::Dag).count() as i64;
    let n = word.len() as i64 - d;
    nf.iter()
        .all(|(w, _)| i64::from(w.dag) - i64::from(w.ann) == d - n)
}

fn no_bindings() -> BTreeMap<Symbol, Complex64> {
    BTreeMap::new()
}

fn rewrite_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new(Suite::Rewrite, cfg.corrupt);
    let max_len = (cfg.max_n as usize + 2).min(12);
    for _ in 0..150 {
        let len = rng.gen_range(0..=max_len);
        let word = random_word(rng, len);
        let nf = t.tamper(normal_order(&OperatorExpr::from_word(&word)));
        let brute = integer_form(&oracle::rewrite_word_naive(&word));
        t.exact(|| format!("word {word:?} differs from naive rewriting"), nf == brute && grading_holds(&nf, &word));
        let occ = rng.gen_range(0..=6);
        let regime = Regime::new(occ, len);
        t.numeric_result(
            || format!("word {word:?} vs matrices at occupation {occ}"),
            compare_scaled(&nf, &OperatorExpr::from_word(&word), &no_bindings(), regime),
        );
    }
    t.finish()
}

fn mixed_product_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new(Suite::MixedProduct, cfg.corrupt);
    for j in 0..=cfg.max_n {
        for k in 0..=cfg.max_n {
            let closed = t.tamper(ann_dag_product(j, k));
            let word = OperatorExpr::Product(vec![OperatorExpr::ann_pow(j), OperatorExpr::dag_pow(k)]);
            t.exact(|| format!("a^{j} a†^{k} differs from rewriting"), closed == normal_order(&word));
            let shape_ok = closed.len() as u32 == j.min(k) + 1
                && closed.coeff(k, j).and_then(ScalarPoly::as_constant) == Some(BigRational::one())
                && closed.iter().all(|(_, c)| {
                    c.as_constant()
                        .is_some_and(|v| v.is_integer() && v > BigRational::from_integer(0.into()))
                });
            t.exact(|| format!("a^{j} a†^{k} coefficient shape"), shape_ok);
            t.numeric_result(
                || format!("a^{j} a†^{k} vs matrices"),
                compare_scaled(&closed, &word, &no_bindings(), Regime::new(3, (j + k) as usize)),
            );
        }
    }
    t.finish()
}

fn antinormal_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut t = Tally::new(Suite::Antinormal, cfg.corrupt);
    let top = cfg.max_n.min(6);
    for j in 0..=top {
        for k in 0..=top {
            let anti = t.tamper_antinormal(dag_ann_antinormal(j, k));
            t.exact(
                || format!("a†^{j} a^{k} antinormal form does not normal-order back"),
                anti.to_normal() == NormalForm::word(j, k),
            );
            t.numeric_result(
                || format!("a†^{j} a^{k} antinormal vs matrices"),
                compare_scaled(&NormalForm::word(j, k), &anti.to_expr(), &no_bindings(), Regime::new(3, (j + k) as usize)),
            );
        }
    }
    t.finish()
}

fn power_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new(Suite::Power, cfg.corrupt);
    let (x, y) = xy();
    for n in 0..=cfg.max_n {
        let closed = t.tamper(expand_power(n, &x, &y));
        let literal = literal_power(n, &x, &y);
        t.exact(|| format!("n = {n}: closed form differs from rewriting"), closed == normal_order(&literal));
        let graded = closed.iter().all(|(w, c)| {
            c.terms().all(|(m, _)| {
                let (dx, dy) = (m.degree_in(&x), m.degree_in(&y));
                dx + dy == n && dx >= w.ann && dx - w.ann == dy.wrapping_sub(w.dag)
            })
        });
        t.exact(|| format!("n = {n}: grading"), graded);
        for _ in 0..8 {
            let b = BTreeMap::from([(x.clone(), random_complex(rng)), (y.clone(), random_complex(rng))]);
            let occ = rng.gen_range(0..=4);
            t.numeric_result(
                || format!("n = {n} at {b:?}, occupation {occ}"),
                compare_scaled(&closed, &literal, &b, Regime::new(occ, n as usize)),
            );
        }
    }
    t.finish()
}

fn vacuum_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new(Suite::Vacuum, cfg.corrupt);
    let (x, y) = xy();
    for n in 0..=cfg.max_n {
        let vac = vacuum_expansion(n, &x, &y);
        let vac_form: NormalForm = t.tamper(
            vac.iter()
                .map(|(m, c)| (NormalWord::new(n - 2 * m, 0), c.clone()))
                .collect(),
        );
        let herm: NormalForm = hermite_vacuum_form(n, &x, &y)
            .into_iter()
            .map(|(k, c)| (NormalWord::new(k, 0), c))
            .collect();
        t.exact(|| format!("n = {n}: vacuum form differs from Hermite form"), vac_form == herm);

        for _ in 0..3 {
            let b = BTreeMap::from([(x.clone(), random_rational(rng)), (y.clone(), random_rational(rng))]);
            let via_form = apply_form(&expand_power(n, &x, &y), &FockVector::basis(0), &b);
            let via_vacuum = vacuum_state(n, &vac, &b).map(|v| t.tamper_vector(v));
            t.exact(
                || format!("n = {n}: vacuum action at {b:?}"),
                matches!((&via_form, &via_vacuum), (Ok(a), Ok(c)) if a == c),
            );
            let cb: BTreeMap<Symbol, Complex64> = b
                .iter()
                .map(|(s, v)| (s.clone(), Complex64::new(crate::scalar::rational_to_f64(v), 0.0)))
                .collect();
            t.numeric_result(
                || format!("n = {n}: vacuum column vs matrices"),
                compare_scaled(&vac_form, &literal_power(n, &x, &y), &cb, Regime::new(0, n as usize)),
            );
        }
    }
    for n in 0..=20 {
        let mut explicit = hermite_he(n);
        if t.corrupt {
            explicit = hermite_he(n + 1);
        }
        t.exact(|| format!("He_{n} explicit sum differs from recurrence"), explicit == hermite_he_recurrence(n));
    }
    t.finish()
}

/// Dense real vector of a Fock state, for matrix comparisons.
fn dense(v: &FockVector, dim: usize) -> nalgebra::DVector<Complex64> {
    let mut out = nalgebra::DVector::from_element(dim, Complex64::new(0.0, 0.0));
    for (m, a) in v.iter() {
        out[m as usize] = Complex64::new(a.to_f64(), 0.0);
    }
    out
}

fn sup_norm(v: &nalgebra::DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn random_superposition(rng: &mut ChaCha8Rng, max_occ: u32) -> FockVector {
    let mut v = FockVector::zero();
    while v.len() < 3 {
        let m = rng.gen_range(0..=max_occ);
        if v.amplitude(m).is_zero() {
            let d: u32 = rng.gen_range(1..=7);
            v.add_amplitude(m, &RadicalScalar::new(random_rational(rng), d.into()).into());
        }
    }
    v
}

fn fock_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new(Suite::Fock, cfg.corrupt);
    let top = cfg.max_n.min(6);
    let max_m = 10u32;
    let rep = TruncatedRep::new(oracle::required_dim(2 * top as usize, max_m as usize));
    let dim = rep.dim();
    for p in 0..=top {
        for q in 0..=top {
            let normal = rep.word(NormalWord::new(p, q));
            let anti = {
                let mut m = rep.identity();
                for _ in 0..p {
                    m = &m * rep.ann();
                }
                for _ in 0..q {
                    m = &m * rep.dag();
                }
                m
            };
            for m in 0..=max_m {
                let basis = dense(&FockVector::basis(m), dim);
                let expect_n = &normal * &basis;
                let got_n = dense(&t.tamper_vector(apply_normal_word(p, q, m)), dim);
                t.exact_block(
                    || format!("a†^{p} a^{q} |{m}> vs matrices"),
                    sup_norm(&(&got_n - &expect_n)),
                    sup_norm(&expect_n),
                );
                // j = p, k = q for the antinormal word a^j a†^k
                let expect_a = &anti * &basis;
                let got_a = dense(&t.tamper_vector(apply_antinormal_word(p, q, m)), dim);
                t.exact_block(
                    || format!("a^{p} a†^{q} |{m}> vs matrices"),
                    sup_norm(&(&got_a - &expect_a)),
                    sup_norm(&expect_a),
                );
            }
        }
    }
    let small = TruncatedRep::new(oracle::required_dim(8, 6));
    for _ in 0..60 {
        let psi = random_superposition(rng, 6);
        let (p, q) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let exact = t.tamper_sum(moment(p, q, &psi)).to_f64();
        let v = dense(&psi, small.dim());
        let word = small.word(NormalWord::new(p, q));
        let numeric = (v.adjoint() * &word * &v)[(0, 0)].re;
        // bound on the summands of the quadratic form
        let scale = v.norm_squared() * word.iter().map(|z| z.norm()).fold(0.0, f64::max);
        t.exact_block(
            || format!("<a†^{p} a^{q}> on {psi} vs matrices"),
            (exact - numeric).abs(),
            scale,
        );
    }
    t.finish()
}

fn transforms_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new(Suite::Transforms, cfg.corrupt);
    let specs = [TransformSpec::squeeze(), TransformSpec::displacement()];
    for spec in &specs {
        for n in 0..=cfg.max_n.min(4) {
            for which in [Ladder::Ann, Ladder::Dag] {
                for _ in 0..3 {
                    let r = rng.gen_range(0.0..=MAX_UNITARY_PARAM);
                    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
                    let occ = rng.gen_range(0..=3);
                    let dev = oracle::unitary_deviation(spec, which, n, r, phi, occ)
                        .map(|d| if t.corrupt { d + 1.0 } else { d });
                    match dev {
                        Ok(d) => t.numeric(|| format!("{spec:?} {which:?}^{n} at r={r:.3}, phi={phi:.3}"), d, 1.0, UNITARY_TOL),
                        Err(e) => t.exact(|| format!("{spec:?}: {e}"), false),
                    }
                }
            }
        }
        let conj = spec.conjugation();
        for n in 0..=cfg.max_n.min(6) {
            let ann = t.tamper(conjugate_power(spec, Ladder::Ann, n));
            t.exact(
                || format!("{spec:?}: dagger of the annihilator power {n}"),
                ann.dagger(&conj) == conjugate_power(spec, Ladder::Dag, n),
            );
        }
    }
    let disp = TransformSpec::displacement();
    let single = conjugate_power(&disp, Ladder::Ann, 1);
    for n in 0..=cfg.max_n {
        let iterated = reduce_hyperbolic(&single.pow(n), &disp);
        t.exact(
            || format!("displacement: {n}-fold product of the shifted annihilator"),
            t.tamper(iterated.clone()) == conjugate_power(&disp, Ladder::Ann, n),
        );
    }
    t.finish()
}

pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let mut suites = Vec::new();
    for (i, suite) in cfg.suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64 * 0x9E37_79B9));
        suites.push(match suite {
            Suite::Rewrite => rewrite_suite(cfg, &mut rng),
            Suite::MixedProduct => mixed_product_suite(cfg),
            Suite::Antinormal => antinormal_suite(cfg),
            Suite::Power => power_suite(cfg, &mut rng),
            Suite::Vacuum => vacuum_suite(cfg, &mut rng),
            Suite::Fock => fock_suite(cfg, &mut rng),
            Suite::Transforms => transforms_suite(cfg, &mut rng),
        });
    }
    VerifyReport { suites }
}
