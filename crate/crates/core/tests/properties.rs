use std::collections::BTreeMap;

use bosonorder::fock::vacuum_state;
use bosonorder::oracle::{compare, rewrite_word_naive, unitary_deviation, Regime};
use bosonorder::render::render_text;
use bosonorder::syntax::parse;
use bosonorder::verify::literal_power;
use bosonorder::{
    ann_dag_product, apply_antinormal_word, apply_form, apply_normal_word, conjugate_power,
    expand_power, moment, nf_add, nf_dagger, nf_mul, normal_order, reduce_hyperbolic,
    vacuum_expansion, Conjugation, FockVector, Ladder, Letter, NormalForm, NormalWord,
    OperatorExpr, RadicalScalar, RadicalSum, ScalarPoly, Symbol, TransformSpec,
};
use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::Ann), Just(Letter::Dag)]
}

fn word(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(), 0..=max)
}

fn coeff(syms: &'static [&'static str]) -> impl Strategy<Value = ScalarPoly> {
    (-3i64..=3, prop::collection::vec(any::<bool>(), syms.len())).prop_map(move |(c, mask)| {
        syms.iter()
            .zip(mask)
            .filter(|(_, on)| *on)
            .fold(ScalarPoly::from_int(c), |acc, (s, _)| &acc * &ScalarPoly::var(*s))
    })
}

fn form(max_pq: u32, syms: &'static [&'static str]) -> impl Strategy<Value = NormalForm> {
    prop::collection::vec((0..=max_pq, 0..=max_pq, coeff(syms)), 0..=3).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(p, q, c)| (NormalWord::new(p, q), c))
            .collect()
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

/// States with up to four occupied levels below 8 and amplitudes `r·sqrt(d)`.
fn state() -> impl Strategy<Value = FockVector> {
    prop::collection::btree_map(0u32..8, (rational(), 1u32..=6), 1..=4).prop_map(|amps| {
        FockVector::from_amplitudes(
            amps.into_iter()
                .map(|(m, (r, d))| (m, RadicalSum::from(RadicalScalar::new(r, d.into())))),
        )
    })
}

fn integer_form(map: BTreeMap<NormalWord, BigInt>) -> NormalForm {
    map.into_iter()
        .map(|(w, c)| (w, ScalarPoly::constant(BigRational::from_integer(c))))
        .collect()
}

/// Normal form of an expression by structural recursion over the form
/// algebra, without going through word rewriting.
fn fold_forms(expr: &OperatorExpr) -> NormalForm {
    match expr {
        OperatorExpr::Ann => NormalForm::word(0, 1),
        OperatorExpr::Dag => NormalForm::word(1, 0),
        OperatorExpr::Scalar(c) => NormalForm::scalar(c.clone()),
        OperatorExpr::Sum(xs) => xs.iter().fold(NormalForm::zero(), |acc, x| nf_add(&acc, &fold_forms(x))),
        OperatorExpr::Product(xs) => xs.iter().fold(NormalForm::identity(), |acc, x| nf_mul(&acc, &fold_forms(x))),
        OperatorExpr::Power(b, e) => fold_forms(b).pow(*e),
    }
}

fn expr() -> impl Strategy<Value = OperatorExpr> {
    let leaf = prop_oneof![
        Just(OperatorExpr::Ann),
        Just(OperatorExpr::Dag),
        (-2i64..=2).prop_map(|c| OperatorExpr::scalar(ScalarPoly::from_int(c))),
        Just(OperatorExpr::symbol("x")),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..=3).prop_map(OperatorExpr::Sum),
            prop::collection::vec(inner.clone(), 1..=3).prop_map(OperatorExpr::Product),
            (inner, 0u32..=3).prop_map(|(b, e)| OperatorExpr::power(b, e)),
        ]
    })
}

const SYMS: &[&str] = &["alpha", "alphabar", "x"];

proptest! {
    #[test]
    fn normal_order_is_canonical(e in expr()) {
        let nf = normal_order(&e);
        prop_assert!(nf.iter().all(|(_, c)| !c.is_zero()));
        prop_assert_eq!(nf, fold_forms(&e));
    }

    #[test]
    fn words_match_naive_rewriting_and_matrices(w in word(10), occ in 0usize..=6) {
        let nf = normal_order(&OperatorExpr::from_word(&w));
        prop_assert_eq!(&nf, &integer_form(rewrite_word_naive(&w)));
        let dev = compare(&nf, &OperatorExpr::from_word(&w), &BTreeMap::new(), Regime::new(occ, w.len())).unwrap();
        prop_assert!(dev <= 1e-9, "deviation {dev}");
    }

    #[test]
    fn grading(w in word(10)) {
        let d = w.iter().filter(|l| **l == Letter::Dag).count() as i64;
        let n = w.len() as i64 - d;
        for (t, _) in normal_order(&OperatorExpr::from_word(&w)).iter() {
            prop_assert_eq!(t.dag as i64 - t.ann as i64, d - n);
        }
    }

    #[test]
    fn multiplication_is_associative(f in form(3, SYMS), g in form(3, SYMS), h in form(3, SYMS)) {
        prop_assert_eq!(nf_mul(&nf_mul(&f, &g), &h), nf_mul(&f, &nf_mul(&g, &h)));
    }

    #[test]
    fn multiplication_distributes(f in form(3, SYMS), g in form(3, SYMS), h in form(3, SYMS)) {
        prop_assert_eq!(nf_mul(&f, &nf_add(&g, &h)), nf_add(&nf_mul(&f, &g), &nf_mul(&f, &h)));
        prop_assert_eq!(nf_mul(&nf_add(&g, &h), &f), nf_add(&nf_mul(&g, &f), &nf_mul(&h, &f)));
    }

    #[test]
    fn dagger_is_an_anti_involution(f in form(3, SYMS), g in form(3, SYMS)) {
        let conj = Conjugation::standard();
        prop_assert_eq!(nf_dagger(&nf_dagger(&f, &conj), &conj), f.clone());
        prop_assert_eq!(
            nf_dagger(&nf_mul(&f, &g), &conj),
            nf_mul(&nf_dagger(&g, &conj), &nf_dagger(&f, &conj))
        );
    }

    #[test]
    fn text_rendering_parses_back(f in form(4, &["x", "y"])) {
        let text = render_text(&f);
        let back = normal_order(&parse(&text).unwrap());
        prop_assert_eq!(back, f.clone());
        prop_assert_eq!(render_text(&f), text);
    }

    #[test]
    fn perturbations_are_detected(w in word(8), which in any::<prop::sample::Index>(), eps in 1e-3f64..1.0) {
        let nf = normal_order(&OperatorExpr::from_word(&w));
        prop_assume!(!nf.is_zero());
        let (target, _) = nf.iter().nth(which.index(nf.len())).unwrap();
        let mut bumped = nf.clone();
        let eps_q = BigRational::new(((eps * 1e6) as i64).into(), 1_000_000.into());
        bumped.add_term(*target, ScalarPoly::constant(eps_q));
        let dev = compare(&bumped, &OperatorExpr::from_word(&w), &BTreeMap::new(), Regime::new(w.len(), w.len())).unwrap();
        prop_assert!(dev >= 1e-4, "deviation {dev}");
    }

    #[test]
    fn moment_of_number_powers_is_nonnegative(psi in state(), p in 0u32..=5) {
        let exact = moment(p, p, &psi);
        let mut expected = BigRational::zero();
        for (m, amp) in psi.iter() {
            if m >= p {
                let sq = (amp * amp).as_rational().expect("single radical squares to a rational");
                let falling: BigInt = ((m - p + 1)..=m).map(BigInt::from).product();
                expected += sq * BigRational::from_integer(falling);
            }
        }
        prop_assert_eq!(exact.as_rational(), Some(expected.clone()));
        prop_assert!(expected >= BigRational::zero());
    }

    #[test]
    fn mixed_word_action_matches_its_normal_form(j in 0u32..=5, k in 0u32..=5, m in 0u32..=8) {
        let mut acc = FockVector::zero();
        for (w, c) in ann_dag_product(j, k).iter() {
            let c = RadicalSum::rational(c.as_constant().unwrap());
            acc = &acc + &apply_normal_word(w.dag, w.ann, m).scale(&c);
        }
        prop_assert_eq!(acc, apply_antinormal_word(j, k, m));
    }

    #[test]
    fn single_annihilator_after_creators(p in 1u32..=15, n in 0u32..=10) {
        let lhs = apply_antinormal_word(1, p, n);
        let rhs = apply_normal_word(p - 1, 0, n).scale(&RadicalSum::rational(BigRational::from_integer((n + p).into())));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vacuum_action_matches_expansion(n in 0u32..=10, xi in rational(), eta in rational()) {
        let (x, y) = (Symbol::new("x"), Symbol::new("y"));
        let b = BTreeMap::from([(x.clone(), xi), (y.clone(), eta)]);
        let direct = apply_form(&expand_power(n, &x, &y), &FockVector::basis(0), &b).unwrap();
        let via = vacuum_state(n, &vacuum_expansion(n, &x, &y), &b).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn squeeze_matches_matrix_exponential(n in 0u32..=4, dag in any::<bool>(), r in 0.0f64..=0.5, phi in 0.0f64..6.3, occ in 0usize..=3) {
        let which = if dag { Ladder::Dag } else { Ladder::Ann };
        let dev = unitary_deviation(&TransformSpec::squeeze(), which, n, r, phi, occ).unwrap();
        prop_assert!(dev <= 1e-9, "deviation {dev}");
    }
}

#[test]
fn power_specializations() {
    let (x, y) = (Symbol::new("x"), Symbol::new("y"));
    for n in 0..=10 {
        let f = expand_power(n, &x, &y);
        let x0 = f.substitute(&BTreeMap::from([(x.clone(), ScalarPoly::zero())]));
        assert_eq!(x0, NormalForm::term(NormalWord::new(n, 0), ScalarPoly::var("y").pow(n)));
        let y0 = f.substitute(&BTreeMap::from([(y.clone(), ScalarPoly::zero())]));
        assert_eq!(y0, NormalForm::term(NormalWord::new(0, n), ScalarPoly::var("x").pow(n)));
    }
}

#[test]
fn power_matches_literal_product() {
    let (x, y) = (Symbol::new("x"), Symbol::new("y"));
    for n in 0..=8 {
        assert_eq!(expand_power(n, &x, &y), normal_order(&literal_power(n, &x, &y)));
    }
}

#[test]
fn transforms_commute_with_dagger() {
    for spec in [TransformSpec::displacement(), TransformSpec::squeeze()] {
        for n in 0..=6 {
            let conj = spec.conjugation();
            assert_eq!(
                nf_dagger(&conjugate_power(&spec, Ladder::Ann, n), &conj),
                conjugate_power(&spec, Ladder::Dag, n)
            );
        }
    }
}

#[test]
fn displacement_powers_compose() {
    let spec = TransformSpec::displacement();
    let once = conjugate_power(&spec, Ladder::Ann, 1);
    let mut acc = NormalForm::identity();
    for n in 0..=8 {
        assert_eq!(reduce_hyperbolic(&acc, &spec), conjugate_power(&spec, Ladder::Ann, n));
        acc = nf_mul(&acc, &once);
    }
}

#[test]
fn squeeze_bindings_at_zero_are_identity() {
    let spec = TransformSpec::squeeze();
    let f = conjugate_power(&spec, Ladder::Ann, 3);
    let at_zero = f.substitute(&BTreeMap::from([
        (Symbol::new("c"), ScalarPoly::one()),
        (Symbol::new("s"), ScalarPoly::zero()),
    ]));
    assert_eq!(at_zero, NormalForm::word(0, 3));
}
