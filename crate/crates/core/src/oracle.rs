//! Truncated-matrix representation of `a`, `a†`, used as an independent
//! numerical check on the exact engine.
//!
//! On a `D`-dimensional truncation, `a a† - a† a` equals the identity except in
//! the bottom-right entry. A word of length at most `d` applied to states with
//! occupation at most `m` never touches that entry when `D ≥ m + d + 1`, so in
//! that regime the matrices are exact up to floating-point rounding. Floating
//! point is confined to this module.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::operator::{sorted_word, Letter, NormalForm, NormalWord, OperatorExpr};
use crate::scalar::Symbol;
use crate::transforms::{conjugate_power, Ladder, TransformSpec};

pub type CMatrix = DMatrix<Complex64>;

/// Relative tolerance for comparisons inside the exactness regime.
pub const EXACT_REL_TOL: f64 = 1e-9;
/// Absolute floor under [`EXACT_REL_TOL`].
pub const EXACT_ABS_FLOOR: f64 = 1e-12;
/// Tolerance for squeeze/displacement checks, where the unitary itself is
/// truncated.
pub const UNITARY_TOL: f64 = 1e-6;
/// Largest squeeze parameter `r` (and displacement `|α|`) the unitary checks
/// are run at.
pub const MAX_UNITARY_PARAM: f64 = 0.5;
/// Levels added above [`required_dim`] for unitary checks. The truncated
/// exponential leaks roughly `tanh(r)^(k/2)` into the block from `k` levels
/// away; at `r = 0.5` sixty levels already bring it below `1e-10`.
pub const UNITARY_PADDING: usize = 64;

#[derive(Clone, Debug)]
pub struct TruncatedRep {
    ann: CMatrix,
    dag: CMatrix,
}

impl TruncatedRep {
    /// Panics if `dim == 0`.
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "truncation dimension must be positive");
        let ann = CMatrix::from_fn(dim, dim, |i, j| {
            if j == i + 1 {
                Complex64::new((j as f64).sqrt(), 0.0)
            } else {
                Complex64::zero()
            }
        });
        let dag = ann.transpose();
        TruncatedRep { ann, dag }
    }

    pub fn dim(&self) -> usize {
        self.ann.nrows()
    }

    pub fn ann(&self) -> &CMatrix {
        &self.ann
    }

    pub fn dag(&self) -> &CMatrix {
        &self.dag
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim(), self.dim())
    }

    /// `dag^p ann^q`.
    pub fn word(&self, w: NormalWord) -> CMatrix {
        let mut m = self.identity();
        for _ in 0..w.dag {
            m = &m * &self.dag;
        }
        for _ in 0..w.ann {
            m = &m * &self.ann;
        }
        m
    }
}

/// Smallest truncation that is exact for words of length `expr_degree` on
/// states with occupation at most `max_occupation`.
pub fn required_dim(expr_degree: usize, max_occupation: usize) -> usize {
    max_occupation + expr_degree + 1
}

/// Matrix of an expression by structural recursion.
pub fn evaluate(
    expr: &OperatorExpr,
    bindings: &BTreeMap<Symbol, Complex64>,
    rep: &TruncatedRep,
) -> Result<CMatrix> {
    Ok(match expr {
        OperatorExpr::Ann => rep.ann.clone(),
        OperatorExpr::Dag => rep.dag.clone(),
        OperatorExpr::Scalar(c) => rep.identity() * c.eval_complex(bindings)?,
        OperatorExpr::Sum(xs) => {
            let mut acc = CMatrix::zeros(rep.dim(), rep.dim());
            for x in xs {
                acc += evaluate(x, bindings, rep)?;
            }
            acc
        }
        OperatorExpr::Product(xs) => {
            let mut acc = rep.identity();
            for x in xs {
                acc = &acc * &evaluate(x, bindings, rep)?;
            }
            acc
        }
        OperatorExpr::Power(b, e) => {
            let base = evaluate(b, bindings, rep)?;
            let mut acc = rep.identity();
            for _ in 0..*e {
                acc = &acc * &base;
            }
            acc
        }
    })
}

/// Matrix of `Σ c_{pq} dag^p ann^q`.
pub fn evaluate_form(
    nf: &NormalForm,
    bindings: &BTreeMap<Symbol, Complex64>,
    rep: &TruncatedRep,
) -> Result<CMatrix> {
    let mut acc = CMatrix::zeros(rep.dim(), rep.dim());
    for (w, c) in nf.iter() {
        acc += rep.word(*w) * c.eval_complex(bindings)?;
    }
    Ok(acc)
}

/// The block of a matrix that is exact: columns `0..=max_occupation`, rows
/// `0..=max_occupation + degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regime {
    pub max_occupation: usize,
    pub degree: usize,
}

impl Regime {
    pub fn new(max_occupation: usize, degree: usize) -> Self {
        Regime {
            max_occupation,
            degree,
        }
    }

    pub fn dim(&self) -> usize {
        required_dim(self.degree, self.max_occupation)
    }

    fn rows(&self) -> usize {
        self.max_occupation + self.degree + 1
    }

    fn cols(&self) -> usize {
        self.max_occupation + 1
    }
}

fn check_block(m: &CMatrix, regime: Regime) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    if m.nrows() < regime.dim() {
        return Err(Error::DimensionMismatch {
            expected: regime.dim(),
            found: m.nrows(),
        });
    }
    Ok(())
}

/// Max absolute elementwise difference on the exact block.
pub fn block_deviation(lhs: &CMatrix, rhs: &CMatrix, regime: Regime) -> Result<f64> {
    check_block(lhs, regime)?;
    if lhs.shape() != rhs.shape() {
        return Err(Error::DimensionMismatch {
            expected: lhs.nrows(),
            found: rhs.nrows(),
        });
    }
    let mut worst = 0f64;
    for j in 0..regime.cols() {
        for i in 0..regime.rows() {
            worst = worst.max((lhs[(i, j)] - rhs[(i, j)]).norm());
        }
    }
    Ok(worst)
}

/// Max absolute entry on the exact block.
pub fn block_scale(m: &CMatrix, regime: Regime) -> f64 {
    let mut s = 0f64;
    for j in 0..regime.cols().min(m.ncols()) {
        for i in 0..regime.rows().min(m.nrows()) {
            s = s.max(m[(i, j)].norm());
        }
    }
    s
}

/// Acceptance threshold for a deviation against a reference of size `scale`.
pub fn exact_tolerance(scale: f64) -> f64 {
    (EXACT_REL_TOL * scale).max(EXACT_ABS_FLOOR)
}

/// Deviation between a normal form and an expression it should equal, on the
/// exact block of the smallest faithful truncation.
pub fn compare(
    nf: &NormalForm,
    expr: &OperatorExpr,
    bindings: &BTreeMap<Symbol, Complex64>,
    regime: Regime,
) -> Result<f64> {
    let rep = TruncatedRep::new(regime.dim());
    let lhs = evaluate_form(nf, bindings, &rep)?;
    let rhs = evaluate(expr, bindings, &rep)?;
    block_deviation(&lhs, &rhs, regime)
}

/// Like [`compare`], also returning a reference scale for a relative check:
/// the largest entry of either side over the whole truncation, which bounds
/// the size of terms that cancel inside the block.
pub fn compare_scaled(
    nf: &NormalForm,
    expr: &OperatorExpr,
    bindings: &BTreeMap<Symbol, Complex64>,
    regime: Regime,
) -> Result<(f64, f64)> {
    let rep = TruncatedRep::new(regime.dim());
    let lhs = evaluate_form(nf, bindings, &rep)?;
    let rhs = evaluate(expr, bindings, &rep)?;
    let scale = lhs.iter().chain(rhs.iter()).map(|z| z.norm()).fold(0.0, f64::max);
    Ok((block_deviation(&lhs, &rhs, regime)?, scale))
}

/// `S(z) = exp((z* a² - z a†²)/2)` with `z = r e^{2iφ}`.
pub fn squeeze_matrix(r: f64, phi: f64, rep: &TruncatedRep) -> CMatrix {
    let z = Complex64::from_polar(r, 2.0 * phi);
    let a2 = rep.ann() * rep.ann();
    let ad2 = rep.dag() * rep.dag();
    ((a2 * z.conj() - ad2 * z) * Complex64::new(0.5, 0.0)).exp()
}

/// `D(α) = exp(α a† - α* a)`.
pub fn displacement_matrix(alpha: Complex64, rep: &TruncatedRep) -> CMatrix {
    (rep.dag() * alpha - rep.ann() * alpha.conj()).exp()
}

/// Numeric values for a transform's symbols: `(r, φ)` for a squeeze,
/// `α = r e^{iφ}` for a displacement.
pub fn transform_bindings(spec: &TransformSpec, r: f64, phi: f64) -> BTreeMap<Symbol, Complex64> {
    match spec {
        TransformSpec::Squeeze { c, s, u, ubar } => BTreeMap::from([
            (c.clone(), Complex64::new(r.cosh(), 0.0)),
            (s.clone(), Complex64::new(r.sinh(), 0.0)),
            (u.clone(), Complex64::from_polar(1.0, 2.0 * phi)),
            (ubar.clone(), Complex64::from_polar(1.0, -2.0 * phi)),
        ]),
        TransformSpec::Displacement { alpha, alphabar } => {
            let a = Complex64::from_polar(r, phi);
            BTreeMap::from([(alpha.clone(), a), (alphabar.clone(), a.conj())])
        }
    }
}

/// Deviation between `U† L^n U` built by matrix exponential and the symbolic
/// [`conjugate_power`] at the same parameters, with the truncation padded by
/// [`UNITARY_PADDING`].
pub fn unitary_deviation(
    spec: &TransformSpec,
    which: Ladder,
    n: u32,
    r: f64,
    phi: f64,
    max_occupation: usize,
) -> Result<f64> {
    let regime = Regime::new(max_occupation, n as usize);
    let rep = TruncatedRep::new(regime.dim() + UNITARY_PADDING);
    let u = match spec {
        TransformSpec::Squeeze { .. } => squeeze_matrix(r, phi, &rep),
        TransformSpec::Displacement { .. } => displacement_matrix(Complex64::from_polar(r, phi), &rep),
    };
    let ladder = match which {
        Ladder::Ann => rep.ann(),
        Ladder::Dag => rep.dag(),
    };
    let mut power = rep.identity();
    for _ in 0..n {
        power = &power * ladder;
    }
    let numeric = u.adjoint() * power * &u;
    let symbolic = evaluate_form(&conjugate_power(spec, which, n), &transform_bindings(spec, r, phi), &rep)?;
    block_deviation(&numeric, &symbolic, regime)
}

/// Normal-orders a single word by plain recursion on the leftmost `a a†` pair,
/// with no merging of intermediate words.
///
/// This is the slow reference the rewriting engine is checked against.
pub fn rewrite_word_naive(word: &[Letter]) -> BTreeMap<NormalWord, BigInt> {
    let mut out = BTreeMap::new();
    naive_into(word.to_vec(), &BigInt::one(), &mut out);
    out.retain(|_, c: &mut BigInt| !c.is_zero());
    out
}

fn naive_into(word: Vec<Letter>, coeff: &BigInt, out: &mut BTreeMap<NormalWord, BigInt>) {
    let pos = word
        .windows(2)
        .position(|p| p == [Letter::Ann, Letter::Dag]);
    match pos {
        None => *out.entry(sorted_word(&word)).or_insert_with(BigInt::zero) += coeff,
        Some(i) => {
            let mut swapped = word.clone();
            swapped.swap(i, i + 1);
            naive_into(swapped, coeff, out);
            let mut contracted = word;
            contracted.drain(i..i + 2);
            naive_into(contracted, coeff, out);
        }
    }
}
