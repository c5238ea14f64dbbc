//! Parser for operator expressions.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*'? factor)*          juxtaposition is a product
//! factor   := atom ('^' uint)?
//! atom     := 'a' | 'ad' | symbol | rational | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! `ad` is `a†`. Products keep their factor order. Whitespace is ignored.

use std::fmt;

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use crate::operator::OperatorExpr;
use crate::scalar::{ScalarPoly, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected { expected: Vec<String>, found: String },
    NegativeExponent,
    ExponentTooLarge(String),
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Unexpected { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::NegativeExponent => f.write_str("exponents must be nonnegative integers"),
            ParseErrorKind::ExponentTooLarge(e) => write!(f, "exponent {e} is too large"),
            ParseErrorKind::ZeroDenominator => f.write_str("zero denominator"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Other(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Other(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(input: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            ch
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                s.push(bump(&mut chars).unwrap());
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars).unwrap());
            }
            Tok::Int(s.parse().expect("digits"))
        } else {
            bump(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => Tok::Other(other),
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    out
}

const FACTOR_START: [&str; 3] = ["'a'/'ad'/symbol", "integer", "'('"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            kind,
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let at = &self.toks[self.pos];
        self.error_at(
            at,
            ParseErrorKind::Unexpected {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: at.tok.to_string(),
            },
        )
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Int(_) | Tok::LParen)
    }

    fn expr(&mut self) -> PResult<OperatorExpr> {
        let negate_first = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut terms = vec![if negate_first { negated(first) } else { first }];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    let t = self.term()?;
                    terms.push(negated(t));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            OperatorExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> PResult<OperatorExpr> {
        let mut factors = vec![self.factor()?];
        loop {
            if *self.peek() == Tok::Star {
                self.next();
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            OperatorExpr::Product(factors)
        })
    }

    fn factor(&mut self) -> PResult<OperatorExpr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let at = self.toks[self.pos].clone();
        match &at.tok {
            Tok::Int(n) => {
                self.next();
                let e = u32::try_from(n)
                    .map_err(|_| self.error_at(&at, ParseErrorKind::ExponentTooLarge(n.to_string())))?;
                Ok(OperatorExpr::power(base, e))
            }
            Tok::Minus => Err(self.error_at(&at, ParseErrorKind::NegativeExponent)),
            _ => Err(self.unexpected(&["unsigned integer exponent"])),
        }
    }

    fn atom(&mut self) -> PResult<OperatorExpr> {
        let at = self.toks[self.pos].clone();
        match at.tok {
            Tok::Ident(name) => {
                self.next();
                Ok(match name.as_str() {
                    "a" => OperatorExpr::Ann,
                    "ad" => OperatorExpr::Dag,
                    _ => OperatorExpr::Scalar(ScalarPoly::var(Symbol::new(&name))),
                })
            }
            Tok::Int(num) => {
                self.next();
                let mut value = BigRational::from_integer(num);
                if *self.peek() == Tok::Slash {
                    self.next();
                    let den_at = self.toks[self.pos].clone();
                    let Tok::Int(den) = den_at.tok.clone() else {
                        return Err(self.unexpected(&["unsigned integer denominator"]));
                    };
                    self.next();
                    if den.is_zero() {
                        return Err(self.error_at(&den_at, ParseErrorKind::ZeroDenominator));
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(OperatorExpr::Scalar(ScalarPoly::constant(value)))
            }
            Tok::LParen => {
                self.next();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["'+'", "'-'", "'*'", "'^'", FACTOR_START[0], FACTOR_START[1], FACTOR_START[2], "')'"]));
                }
                self.next();
                Ok(inner)
            }
            _ => Err(self.unexpected(&FACTOR_START)),
        }
    }
}

fn negated(e: OperatorExpr) -> OperatorExpr {
    let minus_one = OperatorExpr::Scalar(ScalarPoly::from_int(-1));
    match e {
        OperatorExpr::Product(mut xs) => {
            xs.insert(0, minus_one);
            OperatorExpr::Product(xs)
        }
        other => OperatorExpr::Product(vec![minus_one, other]),
    }
}

/// Parses an operator expression.
///
/// ```
/// use bosonorder::syntax::parse;
/// use bosonorder::OperatorExpr;
///
/// assert_eq!(
///     parse("a^2 ad^3").unwrap(),
///     OperatorExpr::Product(vec![OperatorExpr::ann_pow(2), OperatorExpr::dag_pow(3)])
/// );
/// assert!(parse("a^-1").is_err());
/// ```
pub fn parse(input: &str) -> Result<OperatorExpr, ParseError> {
    let mut p = Parser {
        toks: lex(input),
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "'^'", FACTOR_START[0], FACTOR_START[1], FACTOR_START[2], "end of input"]));
    }
    Ok(e)
}
