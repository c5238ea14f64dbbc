//! Acceptance criteria, one line each. Runs as a plain binary so the verdicts
//! show up in the test log.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bosonorder::combinatorics::{factorial, factorial_quotient, inv_factorial};
use bosonorder::oracle::{required_dim, rewrite_word_naive, TruncatedRep};
use bosonorder::verify::{self, literal_power, Suite, VerifyConfig};
use bosonorder::{
    ann_dag_product, apply_antinormal_word, apply_normal_word, dag_ann_antinormal, expand_power,
    hermite_he, moment, nf_dagger, nf_mul, normal_order, vacuum_expansion, Conjugation, FockVector,
    Letter, Monomial, NormalForm, NormalWord, OperatorExpr, RadicalScalar, RadicalSum, ScalarPoly,
    Symbol,
};
use nalgebra::DVector;
use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
/// `(n, power of x, [(p, q, c)])`
type Slice = (u32, u32, &'static [(u32, u32, i64)]);
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn xy() -> (Symbol, Symbol) {
    (Symbol::new("x"), Symbol::new("y"))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

// ---------------------------------------------------------------------------
// 1. table reproduction
// ---------------------------------------------------------------------------

/// The operator polynomial multiplying `x^i y^(n-i)` in `(a x + a† y)^n`,
/// transcribed from the worked expansions.
const TABLE: &[Slice] = &[
    (2, 2, &[(0, 2, 1)]),
    (2, 1, &[(1, 1, 2), (0, 0, 1)]),
    (2, 0, &[(2, 0, 1)]),
    (3, 3, &[(0, 3, 1)]),
    (3, 2, &[(1, 2, 3), (0, 1, 3)]),
    (3, 1, &[(2, 1, 3), (1, 0, 3)]),
    (3, 0, &[(3, 0, 1)]),
    (4, 4, &[(0, 4, 1)]),
    (4, 3, &[(1, 3, 4), (0, 2, 6)]),
    (4, 2, &[(2, 2, 6), (1, 1, 12), (0, 0, 3)]),
    (4, 1, &[(3, 1, 4), (2, 0, 6)]),
    (4, 0, &[(4, 0, 1)]),
    (5, 5, &[(0, 5, 1)]),
    (5, 4, &[(1, 4, 5), (0, 3, 10)]),
    (5, 3, &[(2, 3, 10), (1, 2, 30), (0, 1, 15)]),
    (5, 2, &[(3, 2, 10), (2, 1, 30), (1, 0, 15)]),
    (5, 1, &[(4, 1, 5), (3, 0, 10)]),
    (5, 0, &[(5, 0, 1)]),
    (6, 6, &[(0, 6, 1)]),
    (6, 5, &[(1, 5, 6), (0, 4, 15)]),
    (6, 4, &[(2, 4, 15), (1, 3, 60), (0, 2, 45)]),
    (6, 3, &[(3, 3, 20), (2, 2, 90), (1, 1, 90), (0, 0, 15)]),
    (6, 2, &[(4, 2, 15), (3, 1, 60), (2, 0, 45)]),
    (6, 1, &[(5, 1, 6), (4, 0, 15)]),
    (6, 0, &[(6, 0, 1)]),
    (7, 7, &[(0, 7, 1)]),
    (7, 6, &[(1, 6, 7), (0, 5, 21)]),
    (7, 5, &[(2, 5, 21), (1, 4, 105), (0, 3, 105)]),
    (7, 4, &[(3, 4, 35), (2, 3, 210), (1, 2, 315), (0, 1, 105)]),
    (7, 3, &[(4, 3, 35), (3, 2, 210), (2, 1, 315), (1, 0, 105)]),
    (7, 2, &[(5, 2, 21), (4, 1, 105), (3, 0, 105)]),
    (7, 1, &[(6, 1, 7), (5, 0, 21)]),
    (7, 0, &[(7, 0, 1)]),
];

const GOLDEN: &str = include_str!("golden/expansions.tex");

fn tables_output() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bosonorder"))
        .args(["tables", "--paper"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("tables exited with {}", out.status))?;
    Ok(out.stdout)
}

fn criterion_tables() -> Outcome {
    let (x, y) = xy();
    for n in 2..=7u32 {
        let slices = expand_power(n, &x, &y).collect_by_monomial();
        let expected: Vec<_> = TABLE.iter().filter(|row| row.0 == n).collect();
        ensure(slices.len() == expected.len(), || format!("n = {n}: {} slices", slices.len()))?;
        for &&(_, i, terms) in &expected {
            let mono = Monomial::from_powers([(x.clone(), i), (y.clone(), n - i)]);
            let want: NormalForm = terms
                .iter()
                .map(|&(p, q, c)| (NormalWord::new(p, q), ScalarPoly::from_int(c)))
                .collect();
            ensure(slices.get(&mono) == Some(&want), || format!("n = {n}, x^{i}: slice differs"))?;
        }
    }
    let first = tables_output()?;
    let second = tables_output()?;
    ensure(first == second, || "output differs between runs".into())?;
    ensure(first == GOLDEN.as_bytes(), || "output differs from golden file".into())?;
    for needle in [
        "x^{3}y^{3}(20a^{\\dagger 3}a^{3}+90a^{\\dagger 2}a^{2}+90a^{\\dagger}a+15)",
        "x^{3}y^{4}(35a^{\\dagger 4}a^{3}+210a^{\\dagger 3}a^{2}+315a^{\\dagger 2}a+105a^{\\dagger})",
    ] {
        ensure(GOLDEN.contains(needle), || format!("golden file lacks {needle}"))?;
    }
    Ok(format!("{} slices, {} golden bytes", TABLE.len(), GOLDEN.len()))
}

// ---------------------------------------------------------------------------
// 2. closed form against rewriting
// ---------------------------------------------------------------------------

fn criterion_power() -> Outcome {
    let (x, y) = xy();
    let mut terms = 0;
    for n in 0..=10 {
        let closed = expand_power(n, &x, &y);
        let brute = normal_order(&literal_power(n, &x, &y));
        ensure(closed == brute, || format!("n = {n}: closed form differs from rewriting"))?;
        terms += closed.len();
    }
    Ok(format!("n = 0..=10, {terms} terms"))
}

// ---------------------------------------------------------------------------
// 3. mixed words
// ---------------------------------------------------------------------------

fn ann_then_dag(j: u32, k: u32) -> Vec<Letter> {
    let mut w = vec![Letter::Ann; j as usize];
    w.extend(std::iter::repeat_n(Letter::Dag, k as usize));
    w
}

fn criterion_duality() -> Outcome {
    for j in 0..=6 {
        for k in 0..=6 {
            let back = dag_ann_antinormal(j, k).to_normal();
            ensure(back == NormalForm::word(j, k), || format!("a†^{j} a^{k}: round trip gives {back:?}"))?;
        }
    }
    for j in 0..=8 {
        for k in 0..=8 {
            let closed = ann_dag_product(j, k);
            let brute: NormalForm = rewrite_word_naive(&ann_then_dag(j, k))
                .into_iter()
                .map(|(w, c)| (w, ScalarPoly::constant(BigRational::from_integer(c))))
                .collect();
            ensure(closed == brute, || format!("a^{j} a†^{k}: closed form differs from rewriting"))?;
        }
    }
    Ok("antinormal j,k <= 6, products j,k <= 8".into())
}

// ---------------------------------------------------------------------------
// 4. vacuum and Hermite
// ---------------------------------------------------------------------------

fn fact(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Coefficients of He_n, lowest degree first, by `He_{n+1} = t He_n - n He_{n-1}`.
fn hermite_by_recurrence(n: u32) -> Vec<i128> {
    let mut prev: Vec<i128> = vec![1];
    let mut cur: Vec<i128> = vec![0, 1];
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let mut next = vec![0i128; cur.len() + 1];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += c;
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] -= k as i128 * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn criterion_vacuum() -> Outcome {
    let (x, y) = xy();
    for n in 0..=12u32 {
        let v = vacuum_expansion(n, &x, &y);
        ensure(v.len() as u32 == n / 2 + 1, || format!("n = {n}: {} terms", v.len()))?;
        for m in 0..=n / 2 {
            let c = fact(n) / (fact(m) * fact(n - 2 * m) * (1u128 << m));
            let want = ScalarPoly::term(
                Monomial::from_powers([(x.clone(), m), (y.clone(), n - m)]),
                BigRational::from_integer(BigInt::from(c)),
            );
            ensure(v.get(&m) == Some(&want), || format!("n = {n}, m = {m}: got {:?}", v.get(&m)))?;
        }
    }
    for n in 0..=20 {
        let he = hermite_he(n);
        let want: Vec<BigRational> = hermite_by_recurrence(n)
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        ensure(he.coeffs() == want.as_slice(), || format!("He_{n} differs from recurrence"))?;
    }
    Ok("vacuum n <= 12, He_n n <= 20".into())
}

// ---------------------------------------------------------------------------
// 5. Fock actions
// ---------------------------------------------------------------------------

fn sqrt_sum(n: u32) -> RadicalSum {
    RadicalScalar::sqrt(n).into()
}

fn step_down(v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (m, amp) in v.iter() {
        if m > 0 {
            out.add_amplitude(m - 1, &(amp * &sqrt_sum(m)));
        }
    }
    out
}

fn step_up(v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (m, amp) in v.iter() {
        out.add_amplitude(m + 1, &(amp * &sqrt_sum(m + 1)));
    }
    out
}

fn steps(mut v: FockVector, count: u32, f: fn(&FockVector) -> FockVector) -> FockVector {
    for _ in 0..count {
        v = f(&v);
    }
    v
}

fn criterion_fock() -> Outcome {
    for j in 0..=6 {
        for k in 0..=6 {
            for m in 0..=10 {
                let basis = FockVector::basis(m);
                let normal = steps(steps(basis.clone(), k, step_down), j, step_up);
                ensure(apply_normal_word(j, k, m) == normal, || format!("a†^{j} a^{k} |{m}>"))?;
                let anti = steps(steps(basis, k, step_up), j, step_down);
                ensure(apply_antinormal_word(j, k, m) == anti, || format!("a^{j} a†^{k} |{m}>"))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cases = 200;
    for _ in 0..cases {
        let mut psi = FockVector::zero();
        while psi.len() < 3 {
            let m = rng.gen_range(0..=8);
            if psi.amplitude(m).is_zero() {
                let rat = BigRational::new(rng.gen_range(1i64..=6).into(), rng.gen_range(1i64..=3).into());
                let amp = RadicalScalar::new(if rng.gen_bool(0.5) { -rat } else { rat }, rng.gen_range(1u32..=6).into());
                psi.add_amplitude(m, &amp.into());
            }
        }
        let (p, q) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let exact = moment(p, q, &psi).to_f64();
        let rep = TruncatedRep::new(required_dim((p + q) as usize, 8));
        let v = DVector::from_fn(rep.dim(), |i, _| Complex64::new(psi.amplitude(i as u32).to_f64(), 0.0));
        let numeric = (v.adjoint() * rep.word(NormalWord::new(p, q)) * &v)[(0, 0)];
        let tol = 1e-9 * exact.abs().max(1.0);
        ensure((numeric - Complex64::new(exact, 0.0)).norm() <= tol, || {
            format!("<a†^{p} a^{q}> on {psi}: exact {exact}, matrix {numeric}")
        })?;
    }
    Ok(format!("7x7x11 basis actions, {cases} moments"))
}

// ---------------------------------------------------------------------------
// 6. verification suite
// ---------------------------------------------------------------------------

fn criterion_verify() -> Outcome {
    let report = verify::run(&VerifyConfig::default());
    ensure(report.passed(), || format!("suite failed\n{}", report.table()))?;
    ensure(report.cases() >= 500, || format!("only {} cases", report.cases()))?;
    for s in &report.suites {
        let bound = if s.suite == Suite::Transforms { 1e-6 } else { 1e-9 };
        ensure(s.max_deviation <= bound, || format!("{}: deviation {:.3e}", s.suite.name(), s.max_deviation))?;
    }
    let corrupted = verify::run(&VerifyConfig { corrupt: true, ..VerifyConfig::default() });
    ensure(corrupted.suites.iter().all(|s| !s.passed()), || "a corrupted suite passed".into())?;
    Ok(format!("{} cases, max deviation {:.2e}", report.cases(), report.max_deviation()))
}

// ---------------------------------------------------------------------------
// 7. properties
// ---------------------------------------------------------------------------

fn random_form(rng: &mut ChaCha8Rng, syms: &[&str]) -> NormalForm {
    let mut nf = NormalForm::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut c = ScalarPoly::from_int(rng.gen_range(-3..=3));
        for s in syms {
            if rng.gen_bool(0.4) {
                c = &c * &ScalarPoly::var(*s);
            }
        }
        nf.add_term(NormalWord::new(rng.gen_range(0..=3), rng.gen_range(0..=3)), c);
    }
    nf
}

fn criterion_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = 0usize;

    for _ in 0..300 {
        let len = rng.gen_range(0..=10);
        let word: Vec<Letter> = (0..len).map(|_| if rng.gen_bool(0.5) { Letter::Dag } else { Letter::Ann }).collect();
        let d = word.iter().filter(|l| **l == Letter::Dag).count() as i64;
        let n = len as i64 - d;
        let nf = normal_order(&OperatorExpr::from_word(&word));
        ensure(
            nf.iter().all(|(w, _)| w.dag as i64 - w.ann as i64 == d - n && w.dag as i64 <= d && w.ann as i64 <= n),
            || format!("grading fails for {word:?}"),
        )?;
        // dagger of a word is the reversed word with the letters exchanged
        let mirrored: Vec<Letter> = word
            .iter()
            .rev()
            .map(|l| if *l == Letter::Ann { Letter::Dag } else { Letter::Ann })
            .collect();
        ensure(
            nf_dagger(&nf, &Conjugation::standard()) == normal_order(&OperatorExpr::from_word(&mirrored)),
            || format!("dagger of {word:?}"),
        )?;
        cases += 1;
    }

    let conj = Conjugation::standard();
    for _ in 0..300 {
        let f = random_form(&mut rng, &["alpha", "alphabar", "x"]);
        ensure(nf_dagger(&nf_dagger(&f, &conj), &conj) == f, || format!("involution fails for {f:?}"))?;
        cases += 1;
    }

    for _ in 0..300 {
        let (a, b, c) = (
            random_form(&mut rng, &["x"]),
            random_form(&mut rng, &["y"]),
            random_form(&mut rng, &["x", "y"]),
        );
        ensure(nf_mul(&nf_mul(&a, &b), &c) == nf_mul(&a, &nf_mul(&b, &c)), || "associativity fails".into())?;
        cases += 1;
    }

    let (x, y) = xy();
    for _ in 0..200 {
        let n = rng.gen_range(0..=30u32);
        let f = expand_power(n, &x, &y);
        let expected_terms: u32 = (0..=n / 2).map(|m| n - 2 * m + 1).sum();
        ensure(f.len() as u32 == expected_terms, || format!("n = {n}: {} terms", f.len()))?;
        for (w, c) in f.iter() {
            let (mono, k) = c.terms().next().ok_or("empty coefficient")?;
            let contractions = mono.degree_in(&x) as i64 - w.ann as i64;
            ensure(
                c.len() == 1
                    && k.is_positive()
                    && contractions >= 0
                    && contractions == mono.degree_in(&y) as i64 - w.dag as i64,
                || format!("n = {n}: bad term at {w:?}"),
            )?;
        }
        let (j, k) = (rng.gen_range(0..=12u32), rng.gen_range(0..=12u32));
        let prod = ann_dag_product(j, k);
        ensure(prod.len() as u32 == j.min(k) + 1, || format!("a^{j} a†^{k}: {} terms", prod.len()))?;
        let neg = -rng.gen_range(1..=20i64);
        ensure(inv_factorial(neg).is_zero(), || format!("1/({neg})! != 0"))?;
        ensure(factorial_quotient(&[5], &[neg]).is_none(), || "negative factorial not pruned".into())?;
        let pos = BigRational::from_integer(factorial(-neg as u64));
        ensure(inv_factorial(-neg) * pos == BigRational::one(), || "inverse factorial".into())?;
        cases += 1;
    }
    ensure(inv_factorial(-1) == int(0), || "1/(-1)! != 0".into())?;
    ensure(cases >= 1000, || format!("only {cases} cases"))?;
    Ok(format!("{cases} random cases"))
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("table reproduction", Duration::from_secs(1), criterion_tables),
        ("power expansion vs rewriting", Duration::from_secs(30), criterion_power),
        ("normal/antinormal duality", Duration::from_secs(10), criterion_duality),
        ("vacuum action and Hermite", Duration::from_secs(1), criterion_vacuum),
        ("Fock actions and moments", Duration::from_secs(5), criterion_fock),
        ("matrix-oracle suite", Duration::from_secs(60), criterion_verify),
        ("property suite", Duration::from_secs(30), criterion_properties),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= *budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({elapsed:.2?}; {detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({elapsed:.2?}; {why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
