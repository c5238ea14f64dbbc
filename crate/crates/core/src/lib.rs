//! Exact symbolic engine for the single-mode boson algebra `[a, a†] = 1`.
//!
//! The crate normal-orders arbitrary operator polynomials by commutator
//! rewriting, builds the closed-form expansions of `(a x + a† y)^n` and of the
//! mixed words `a^j a†^k` / `a†^j a^k` directly, applies normal-ordered
//! operators to Fock states with exact radical amplitudes, and checks all of
//! it against a truncated-matrix oracle.
//!
//! ```
//! use bosonorder::{closed_forms, normal_order, syntax};
//!
//! let expr = syntax::parse("(a x + ad y)^4").unwrap();
//! let brute = normal_order(&expr);
//! let closed = closed_forms::expand_power(4, &"x".into(), &"y".into());
//! assert_eq!(brute, closed);
//! ```

pub mod closed_forms;
pub mod combinatorics;
pub mod error;
pub mod fock;
pub mod operator;
pub mod oracle;
pub mod render;
pub mod scalar;
pub mod syntax;
pub mod tables;
pub mod transforms;
pub mod verify;

pub use closed_forms::{
    ann_dag_product, dag_ann_antinormal, expand_power, hermite_he, AntinormalForm,
    AntinormalWord, HermiteHe,
};
pub use error::{Error, Result};
pub use fock::{
    apply_antinormal_word, apply_form, apply_normal_word, moment, vacuum_expansion, FockVector,
    RadicalScalar, RadicalSum,
};
pub use operator::{
    nf_add, nf_dagger, nf_mul, normal_order, Letter, NormalForm, NormalWord, OperatorExpr,
};
pub use render::{render, Format};
pub use scalar::{Conjugation, Monomial, ScalarPoly, Symbol};
pub use transforms::{conjugate_power, reduce_hyperbolic, Ladder, TransformSpec};
