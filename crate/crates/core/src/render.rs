//! Text, LaTeX and JSON output for normal forms.
//!
//! Terms are listed by descending total degree `p + q`, then descending `p`.
//! Coefficient monomials follow the canonical symbol order. Text output is
//! valid input for [`crate::syntax::parse`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{NormalForm, NormalWord};
use crate::scalar::{Monomial, ScalarPoly, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}, expected text, latex or json")),
        }
    }
}

pub fn render(nf: &NormalForm, format: Format) -> String {
    match format {
        Format::Text => render_text(nf),
        Format::Latex => render_latex(nf),
        Format::Json => render_json(nf),
    }
}

fn display_order(nf: &NormalForm) -> Vec<(&NormalWord, &ScalarPoly)> {
    let mut terms: Vec<_> = nf.iter().collect();
    terms.sort_by_key(|(w, _)| std::cmp::Reverse((w.dag + w.ann, w.dag)));
    terms
}

/// A rendered term: whether it carries a leading minus, and its body.
struct Piece {
    negative: bool,
    body: String,
}

fn join(pieces: &[Piece], plus: &str, minus: &str, lead_minus: &str) -> String {
    if pieces.is_empty() {
        return "0".to_owned();
    }
    let mut out = String::new();
    for (i, p) in pieces.iter().enumerate() {
        match (i, p.negative) {
            (0, true) => out.push_str(lead_minus),
            (0, false) => {}
            (_, true) => out.push_str(minus),
            (_, false) => out.push_str(plus),
        }
        out.push_str(&p.body);
    }
    out
}

fn single_monomial(c: &ScalarPoly) -> Option<(&Monomial, &BigRational)> {
    let mut it = c.terms();
    match (it.next(), it.next()) {
        (Some(t), None) => Some(t),
        _ => None,
    }
}

// ---- text ----

fn text_word(w: &NormalWord) -> Vec<String> {
    let mut parts = Vec::new();
    for (name, e) in [("ad", w.dag), ("a", w.ann)] {
        match e {
            0 => {}
            1 => parts.push(name.to_owned()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts
}

pub fn render_text(nf: &NormalForm) -> String {
    let pieces: Vec<Piece> = display_order(nf)
        .into_iter()
        .map(|(w, c)| {
            let word = text_word(w);
            match single_monomial(c) {
                Some((m, k)) => {
                    let mut parts = Vec::new();
                    let mag = k.abs();
                    if !mag.is_one() || (m.is_one() && word.is_empty()) {
                        parts.push(mag.to_string());
                    }
                    if !m.is_one() {
                        parts.push(m.to_string());
                    }
                    parts.extend(word);
                    Piece {
                        negative: k.is_negative(),
                        body: parts.join(" "),
                    }
                }
                None => {
                    let mut parts = vec![format!("({c})")];
                    parts.extend(word);
                    Piece {
                        negative: false,
                        body: parts.join(" "),
                    }
                }
            }
        })
        .collect();
    join(&pieces, " + ", " - ", "-")
}

// ---- latex ----

pub fn latex_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

pub fn latex_monomial(m: &Monomial) -> String {
    let mut out = String::new();
    for (s, e) in m.powers() {
        if e == 1 {
            out.push_str(s.as_str());
        } else {
            let _ = write!(out, "{s}^{{{e}}}");
        }
    }
    out
}

pub fn latex_word(w: &NormalWord) -> String {
    let mut out = String::new();
    match w.dag {
        0 => {}
        1 => out.push_str("a^{\\dagger}"),
        p => {
            let _ = write!(out, "a^{{\\dagger {p}}}");
        }
    }
    match w.ann {
        0 => {}
        1 => out.push('a'),
        q => {
            let _ = write!(out, "a^{{{q}}}");
        }
    }
    out
}

/// `\frac{3}{2}x^{2}y - z + 1` style rendering of a scalar polynomial.
pub fn latex_poly(c: &ScalarPoly) -> String {
    let pieces: Vec<Piece> = c
        .terms()
        .map(|(m, k)| {
            let mag = k.abs();
            let mut body = String::new();
            if !mag.is_one() || m.is_one() {
                body.push_str(&latex_rational(&mag));
            }
            body.push_str(&latex_monomial(m));
            Piece {
                negative: k.is_negative(),
                body,
            }
        })
        .collect();
    join(&pieces, "+", "-", "-")
}

pub fn render_latex(nf: &NormalForm) -> String {
    let pieces: Vec<Piece> = display_order(nf)
        .into_iter()
        .map(|(w, c)| {
            let word = latex_word(w);
            match single_monomial(c) {
                Some((m, k)) => {
                    let mag = k.abs();
                    let mut body = String::new();
                    if !mag.is_one() || (m.is_one() && word.is_empty()) {
                        body.push_str(&latex_rational(&mag));
                    }
                    body.push_str(&latex_monomial(m));
                    body.push_str(&word);
                    Piece {
                        negative: k.is_negative(),
                        body,
                    }
                }
                None => Piece {
                    negative: false,
                    body: format!("\\left({}\\right){word}", latex_poly(c)),
                },
            }
        })
        .collect();
    join(&pieces, "+", "-", "-")
}

// ---- json ----

#[derive(Debug, Serialize, Deserialize)]
struct JsonCoeff {
    monomial: BTreeMap<String, u32>,
    num: String,
    den: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTerm {
    p: u32,
    q: u32,
    coeff: Vec<JsonCoeff>,
}

/// `[{"p":…,"q":…,"coeff":[{"monomial":{sym:exp},"num":"…","den":"…"}]}]`,
/// big integers as decimal strings.
pub fn render_json(nf: &NormalForm) -> String {
    let terms: Vec<JsonTerm> = display_order(nf)
        .into_iter()
        .map(|(w, c)| JsonTerm {
            p: w.dag,
            q: w.ann,
            coeff: c
                .terms()
                .map(|(m, k)| JsonCoeff {
                    monomial: m.powers().map(|(s, e)| (s.to_string(), e)).collect(),
                    num: k.numer().to_string(),
                    den: k.denom().to_string(),
                })
                .collect(),
        })
        .collect();
    serde_json::to_string(&terms).expect("normal form serializes")
}

/// Reads the JSON produced by [`render_json`].
pub fn parse_json(s: &str) -> Result<NormalForm> {
    let bad = |e: String| Error::InvalidJson(e);
    let terms: Vec<JsonTerm> = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
    let mut nf = NormalForm::zero();
    for t in terms {
        let mut poly = ScalarPoly::zero();
        for c in t.coeff {
            let num: BigInt = c.num.parse().map_err(|_| bad(format!("numerator {:?}", c.num)))?;
            let den: BigInt = c.den.parse().map_err(|_| bad(format!("denominator {:?}", c.den)))?;
            if den == BigInt::from(0) {
                return Err(bad("zero denominator".into()));
            }
            let mut powers = Vec::new();
            for (s, e) in c.monomial {
                powers.push((s.parse::<Symbol>()?, e));
            }
            poly.add_term(Monomial::from_powers(powers), BigRational::new(num, den));
        }
        nf.add_term(NormalWord::new(t.p, t.q), poly);
    }
    Ok(nf)
}

/// `Σ_m c_m a†^(n-2m) |0⟩` in the requested format.
pub fn render_vacuum(n: u32, expansion: &BTreeMap<u32, ScalarPoly>, format: Format) -> String {
    let nf: NormalForm = expansion
        .iter()
        .map(|(m, c)| (NormalWord::new(n - 2 * m, 0), c.clone()))
        .collect();
    match format {
        Format::Text => format!("({})|0>", render_text(&nf)),
        Format::Latex => format!("\\left({}\\right)\\ket{{0}}", render_latex(&nf)),
        Format::Json => render_json(&nf),
    }
}
