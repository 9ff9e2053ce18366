//! Expression language for per-edge weight functions built from the five
//! classical means of the endpoint degrees.
//!
//! Grammar (standard precedence, left associative):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := literal | 'A' | 'G' | 'H' | 'Q' | 'C' | '(' expr ')'
//! literal := ['-'] int ['/' int]      -- "p" or "p/q", q > 0
//! ```
//!
//! `A`, `G`, `H`, `Q`, `C` are the arithmetic, geometric, harmonic,
//! quadratic, and cubic means of the two degrees. An expression is
//! *exact-rational* iff it contains none of `G`, `Q`, `C`; such
//! expressions evaluate in arbitrary-precision rationals, everything else
//! in binary64 (relative error <= 1e-12 per evaluation).
//!
//! Printing is the inverse of parsing: `parse_phi(print)` returns a
//! structurally equal AST.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::scalar::{ExactScalar, Scalar};
use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("literal denominator is zero at byte {pos}")]
    ZeroDenominator { pos: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("degrees must be >= 1, got ({a}, {b})")]
    DegreeOutOfRange { a: u32, b: u32 },
    #[error("division by zero at degrees ({a}, {b}): divisor \"{divisor}\" is zero")]
    DivisionByZero { divisor: String, a: u32, b: u32 },
    #[error("mean {0} has no exact rational value; evaluate it numerically")]
    InexactMean(char),
}

/// One of the five classical means of two degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeanSymbol {
    /// `(a + b) / 2`
    Arithmetic,
    /// `sqrt(a b)`
    Geometric,
    /// `2 a b / (a + b)`
    Harmonic,
    /// `sqrt((a² + b²) / 2)`
    Quadratic,
    /// `((a³ + b³) / 2)^(1/3)`
    Cubic,
}

impl MeanSymbol {
    pub fn letter(self) -> char {
        match self {
            MeanSymbol::Arithmetic => 'A',
            MeanSymbol::Geometric => 'G',
            MeanSymbol::Harmonic => 'H',
            MeanSymbol::Quadratic => 'Q',
            MeanSymbol::Cubic => 'C',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'A' => MeanSymbol::Arithmetic,
            'G' => MeanSymbol::Geometric,
            'H' => MeanSymbol::Harmonic,
            'Q' => MeanSymbol::Quadratic,
            'C' => MeanSymbol::Cubic,
            _ => return None,
        })
    }

    /// True for the means whose value is rational for all integer degrees.
    pub fn is_rational(self) -> bool {
        matches!(self, MeanSymbol::Arithmetic | MeanSymbol::Harmonic)
    }

    fn eval<S: Scalar>(self, a: u32, b: u32) -> Result<S, EvalError> {
        let da = S::from_degree(a);
        let db = S::from_degree(b);
        let half = S::from_rational(&crate::scalar::rat(1, 2));
        match self {
            MeanSymbol::Arithmetic => Ok((da + db) * half),
            MeanSymbol::Harmonic => {
                // a + b > 0 because degrees are >= 1.
                let two = S::from_degree(2);
                Ok(two * da.clone() * db.clone() / (da + db))
            }
            MeanSymbol::Geometric => (da * db)
                .sqrt()
                .ok_or(EvalError::InexactMean('G')),
            MeanSymbol::Quadratic => ((da.clone() * da + db.clone() * db) * half)
                .sqrt()
                .ok_or(EvalError::InexactMean('Q')),
            MeanSymbol::Cubic => {
                let a3 = da.clone() * da.clone() * da;
                let b3 = db.clone() * db.clone() * db;
                ((a3 + b3) * half).cbrt().ok_or(EvalError::InexactMean('C'))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }

    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

/// AST of a per-edge weight expression. Every expression is symmetric in
/// the two degrees because the means are and literals are constant.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiExpr {
    Literal(Rational),
    Mean(MeanSymbol),
    Binary {
        op: BinOp,
        lhs: Box<PhiExpr>,
        rhs: Box<PhiExpr>,
    },
}

impl PhiExpr {
    pub fn literal(r: Rational) -> Self {
        PhiExpr::Literal(r)
    }

    pub fn binary(op: BinOp, lhs: PhiExpr, rhs: PhiExpr) -> Self {
        PhiExpr::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }
}

/// Whether an expression evaluates exactly in rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactnessClass {
    /// Only literals, `A`, `H`, and the four operations appear.
    ExactRational,
    /// At least one of `G`, `Q`, `C` appears.
    Numeric,
}

impl fmt::Display for ExactnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactnessClass::ExactRational => "exact-rational",
            ExactnessClass::Numeric => "numeric",
        })
    }
}

pub fn classify(expr: &PhiExpr) -> ExactnessClass {
    fn all_rational(e: &PhiExpr) -> bool {
        match e {
            PhiExpr::Literal(_) => true,
            PhiExpr::Mean(m) => m.is_rational(),
            PhiExpr::Binary { lhs, rhs, .. } => all_rational(lhs) && all_rational(rhs),
        }
    }
    if all_rational(expr) {
        ExactnessClass::ExactRational
    } else {
        ExactnessClass::Numeric
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Mean(MeanSymbol),
    Op(char),
    LParen,
    RParen,
}

fn lex(source: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = source.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &source[start..i];
                let value = BigInt::from_str(digits).expect("digits parse as BigInt");
                toks.push((Tok::Int(value), start));
            }
            '+' | '-' | '*' | '/' => {
                toks.push((Tok::Op(c), i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            _ => match MeanSymbol::from_letter(c) {
                Some(m) => {
                    toks.push((Tok::Mean(m), i));
                    i += 1;
                }
                None => {
                    return Err(ParseError::Syntax {
                        pos: i,
                        msg: format!("unexpected character {c:?}"),
                    })
                }
            },
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<PhiExpr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = PhiExpr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<PhiExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = PhiExpr::binary(BinOp::Mul, lhs, rhs);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = PhiExpr::binary(BinOp::Div, lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<PhiExpr, ParseError> {
        let pos = self.here();
        match self.peek() {
            Some(Tok::Int(_)) => self.literal(false),
            Some(Tok::Op('-')) if matches!(self.peek_at(1), Some(Tok::Int(_))) => {
                self.pos += 1;
                self.literal(true)
            }
            Some(Tok::Mean(m)) => {
                let m = *m;
                self.pos += 1;
                Ok(PhiExpr::Mean(m))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        pos: self.end,
                        msg: "unbalanced parenthesis: expected ')'".into(),
                    }),
                }
            }
            Some(other) => Err(ParseError::Syntax {
                pos,
                msg: format!("expected a literal, mean, or '(', found {other:?}"),
            }),
            None => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }

    /// Rational literal `p` or `p/q`; the `p/q` form is recognized only
    /// when the token right after `/` is an integer, so `2/A` still parses
    /// as a division.
    fn literal(&mut self, negative: bool) -> Result<PhiExpr, ParseError> {
        let numer = match self.bump() {
            Some(Tok::Int(v)) => v.clone(),
            _ => unreachable!("caller checked for an integer token"),
        };
        let numer = if negative { -numer } else { numer };
        let mut denom = BigInt::from(1);
        if matches!(self.peek(), Some(Tok::Op('/')))
            && matches!(self.peek_at(1), Some(Tok::Int(_)))
        {
            self.pos += 1;
            let pos = self.here();
            let d = match self.bump() {
                Some(Tok::Int(v)) => v.clone(),
                _ => unreachable!(),
            };
            if d.is_zero() {
                return Err(ParseError::ZeroDenominator { pos });
            }
            denom = d;
        }
        Ok(PhiExpr::Literal(Rational::new(numer, denom)))
    }
}

/// Parses an expression string into an AST.
pub fn parse_phi(source: &str) -> Result<PhiExpr, ParseError> {
    let toks = lex(source)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: source.len(),
    };
    let expr = parser.expr()?;
    if parser.pos != toks.len() {
        return Err(ParseError::Syntax {
            pos: parser.here(),
            msg: "trailing input after expression".into(),
        });
    }
    Ok(expr)
}

// ---------------------------------------------------------------------------
// Printing (inverse of parsing)
// ---------------------------------------------------------------------------

/// Renders the expression; returns the text and whether it ends in a bare
/// integer token (needed to decide when a following `/p` would fuse into a
/// rational literal on re-parse).
fn render(e: &PhiExpr) -> (String, bool) {
    match e {
        PhiExpr::Literal(r) => (crate::scalar::rational_string(r), true),
        PhiExpr::Mean(m) => (m.letter().to_string(), false),
        PhiExpr::Binary { op, lhs, rhs } => {
            let (mut ls, mut l_ends_int) = render(lhs);
            if precedence(lhs) < op.precedence() {
                ls = format!("({ls})");
                l_ends_int = false;
            }
            let (mut rs, mut r_ends_int) = render(rhs);
            let needs_parens = precedence(rhs) <= op.precedence()
                && matches!(rhs.as_ref(), PhiExpr::Binary { .. });
            // "p / q" would re-lex as the single literal p/q; parenthesize
            // the divisor when the left side ends in a bare integer.
            let fuses = *op == BinOp::Div
                && l_ends_int
                && matches!(rhs.as_ref(), PhiExpr::Literal(r) if !r.is_negative());
            if needs_parens || fuses {
                rs = format!("({rs})");
                r_ends_int = false;
            }
            (format!("{ls} {} {rs}", op.symbol()), r_ends_int)
        }
    }
}

fn precedence(e: &PhiExpr) -> u8 {
    match e {
        PhiExpr::Binary { op, .. } => op.precedence(),
        _ => 3,
    }
}

impl fmt::Display for PhiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self).0)
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Evaluates an expression at degrees `(a, b)` over any scalar type.
pub fn eval_scalar<S: Scalar>(expr: &PhiExpr, a: u32, b: u32) -> Result<S, EvalError> {
    match expr {
        PhiExpr::Literal(r) => Ok(S::from_rational(r)),
        PhiExpr::Mean(m) => m.eval(a, b),
        PhiExpr::Binary { op, lhs, rhs } => {
            let l = eval_scalar::<S>(lhs, a, b)?;
            let r = eval_scalar::<S>(rhs, a, b)?;
            match op {
                BinOp::Add => Ok(l + r),
                BinOp::Sub => Ok(l - r),
                BinOp::Mul => Ok(l * r),
                BinOp::Div => {
                    if r.is_zero() {
                        Err(EvalError::DivisionByZero {
                            divisor: rhs.to_string(),
                            a,
                            b,
                        })
                    } else {
                        Ok(l / r)
                    }
                }
            }
        }
    }
}

/// Evaluates at degrees `(a, b)`: exact rational when the expression is
/// exact-rational, binary64 otherwise.
pub fn eval_phi(expr: &PhiExpr, a: u32, b: u32) -> Result<ExactScalar, EvalError> {
    if a == 0 || b == 0 {
        return Err(EvalError::DegreeOutOfRange { a, b });
    }
    match classify(expr) {
        ExactnessClass::ExactRational => {
            eval_scalar::<Rational>(expr, a, b).map(ExactScalar::Rational)
        }
        ExactnessClass::Numeric => eval_scalar::<f64>(expr, a, b).map(ExactScalar::Float),
    }
}

/// Precomputed `φ(s, t)` for all `1 <= s <= t <= max_degree`, so index
/// sums can be evaluated with lookups instead of re-evaluating the AST per
/// edge.
#[derive(Clone, Debug)]
pub struct PhiTable<S> {
    max_degree: usize,
    values: Vec<S>,
}

impl<S: Scalar> PhiTable<S> {
    pub fn get(&self, s: usize, t: usize) -> &S {
        let (s, t) = (s.min(t), s.max(t));
        assert!(
            (1..=self.max_degree).contains(&s) && t <= self.max_degree,
            "degree pair ({s}, {t}) outside table bound {}",
            self.max_degree
        );
        &self.values[t * (t - 1) / 2 + (s - 1)]
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }
}

pub fn phi_table<S: Scalar>(expr: &PhiExpr, max_degree: usize) -> Result<PhiTable<S>, EvalError> {
    assert!(max_degree >= 1, "phi_table needs max_degree >= 1");
    let mut values = Vec::with_capacity(max_degree * (max_degree + 1) / 2);
    for t in 1..=max_degree {
        for s in 1..=t {
            values.push(eval_scalar::<S>(expr, s as u32, t as u32)?);
        }
    }
    Ok(PhiTable { max_degree, values })
}
