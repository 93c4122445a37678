//! Direction-expression grammar: parser, printer, and evaluation into either
//! backend.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := INT | INT '/' INT | 'sqrt' '(' expr ')' | 't' INT | '(' expr ')' | '-' factor
//! ```
//!
//! Whitespace is ignored; direction components are separated by `,`.

use std::fmt;

use num_bigint::BigInt;
use rug::Float;

use super::rational::RatFn;
use crate::error::{ParseError, ScalarError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DirectionExpr {
    Int(BigInt),
    Var(u8),
    Sqrt(Box<DirectionExpr>),
    Neg(Box<DirectionExpr>),
    Add(Box<DirectionExpr>, Box<DirectionExpr>),
    Sub(Box<DirectionExpr>, Box<DirectionExpr>),
    Mul(Box<DirectionExpr>, Box<DirectionExpr>),
    Div(Box<DirectionExpr>, Box<DirectionExpr>),
}

impl DirectionExpr {
    pub fn uses_var(&self) -> bool {
        match self {
            DirectionExpr::Int(_) => false,
            DirectionExpr::Var(_) => true,
            DirectionExpr::Sqrt(a) | DirectionExpr::Neg(a) => a.uses_var(),
            DirectionExpr::Add(a, b)
            | DirectionExpr::Sub(a, b)
            | DirectionExpr::Mul(a, b)
            | DirectionExpr::Div(a, b) => a.uses_var() || b.uses_var(),
        }
    }

    pub fn uses_sqrt(&self) -> bool {
        match self {
            DirectionExpr::Int(_) | DirectionExpr::Var(_) => false,
            DirectionExpr::Sqrt(_) => true,
            DirectionExpr::Neg(a) => a.uses_sqrt(),
            DirectionExpr::Add(a, b)
            | DirectionExpr::Sub(a, b)
            | DirectionExpr::Mul(a, b)
            | DirectionExpr::Div(a, b) => a.uses_sqrt() || b.uses_sqrt(),
        }
    }

    pub fn eval_numeric(&self, prec: u32) -> Result<Float, ScalarError> {
        match self {
            DirectionExpr::Int(n) => Ok(Float::with_val(
                prec,
                rug::Integer::from_str_radix(&n.to_string(), 10).unwrap(),
            )),
            DirectionExpr::Var(_) => unreachable!("numeric evaluation of an indeterminate"),
            DirectionExpr::Sqrt(a) => {
                let v = a.eval_numeric(prec)?;
                if v < 0 {
                    return Err(ScalarError::NegativeSqrt);
                }
                Ok(v.sqrt())
            }
            DirectionExpr::Neg(a) => Ok(-a.eval_numeric(prec)?),
            DirectionExpr::Add(a, b) => Ok(a.eval_numeric(prec)? + b.eval_numeric(prec)?),
            DirectionExpr::Sub(a, b) => Ok(a.eval_numeric(prec)? - b.eval_numeric(prec)?),
            DirectionExpr::Mul(a, b) => Ok(a.eval_numeric(prec)? * b.eval_numeric(prec)?),
            DirectionExpr::Div(a, b) => {
                let d = b.eval_numeric(prec)?;
                if d == 0 {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(a.eval_numeric(prec)? / d)
            }
        }
    }

    pub fn eval_symbolic(&self) -> Result<RatFn, ScalarError> {
        match self {
            DirectionExpr::Int(n) => Ok(RatFn::from_rational(num_rational::BigRational::from_integer(
                n.clone(),
            ))),
            DirectionExpr::Var(k) => Ok(RatFn::var(*k as usize)),
            DirectionExpr::Sqrt(_) => unreachable!("symbolic evaluation of sqrt"),
            DirectionExpr::Neg(a) => Ok(a.eval_symbolic()?.neg()),
            DirectionExpr::Add(a, b) => Ok(a.eval_symbolic()?.add(&b.eval_symbolic()?)),
            DirectionExpr::Sub(a, b) => Ok(a.eval_symbolic()?.sub(&b.eval_symbolic()?)),
            DirectionExpr::Mul(a, b) => Ok(a.eval_symbolic()?.mul(&b.eval_symbolic()?)),
            DirectionExpr::Div(a, b) => a.eval_symbolic()?.div(&b.eval_symbolic()?),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            DirectionExpr::Add(..) | DirectionExpr::Sub(..) => 1,
            DirectionExpr::Mul(..) | DirectionExpr::Div(..) => 2,
            DirectionExpr::Neg(_) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for DirectionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, e: &DirectionExpr, min_prec: u8) -> fmt::Result {
            if e.precedence() < min_prec {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            DirectionExpr::Int(n) => write!(f, "{n}"),
            DirectionExpr::Var(k) => write!(f, "t{k}"),
            DirectionExpr::Sqrt(a) => write!(f, "sqrt({a})"),
            DirectionExpr::Neg(a) => {
                write!(f, "-")?;
                side(f, a, 3)
            }
            DirectionExpr::Add(a, b) => {
                side(f, a, 1)?;
                write!(f, "+")?;
                side(f, b, 2)
            }
            DirectionExpr::Sub(a, b) => {
                side(f, a, 1)?;
                write!(f, "-")?;
                side(f, b, 2)
            }
            DirectionExpr::Mul(a, b) => {
                side(f, a, 2)?;
                write!(f, "*")?;
                side(f, b, 3)
            }
            DirectionExpr::Div(a, b) => {
                side(f, a, 2)?;
                write!(f, "/")?;
                side(f, b, 3)
            }
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(BigInt),
    Var(u8),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().unwrap();
                toks.push((start, Tok::Int(n)));
            }
            't' => {
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(ParseError::new(start, "expected digit after 't'"));
                }
                let k: u32 = text[digits_start..i]
                    .parse()
                    .map_err(|_| ParseError::new(digits_start, "indeterminate index too large"))?;
                if !(1..=9).contains(&k) {
                    return Err(ParseError::new(
                        start,
                        format!("indeterminate t{k} out of range (t1..t9)"),
                    ));
                }
                toks.push((start, Tok::Var(k as u8)));
            }
            's' => {
                if text[i..].starts_with("sqrt") {
                    toks.push((i, Tok::Sqrt));
                    i += 4;
                } else {
                    return Err(ParseError::new(i, "unknown identifier"));
                }
            }
            _ => return Err(ParseError::new(i, format!("unexpected character '{c}'"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(ParseError::new(pos, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<DirectionExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = DirectionExpr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = DirectionExpr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<DirectionExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = DirectionExpr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = DirectionExpr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<DirectionExpr, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(DirectionExpr::Int(n)),
            Some(Tok::Var(k)) => Ok(DirectionExpr::Var(k)),
            Some(Tok::Minus) => Ok(DirectionExpr::Neg(Box::new(self.factor()?))),
            Some(Tok::Sqrt) => {
                self.expect(Tok::LParen, "'(' after sqrt")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing ')'")?;
                Ok(DirectionExpr::Sqrt(Box::new(inner)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing ')'")?;
                Ok(inner)
            }
            _ => Err(ParseError::new(pos, "expected a factor")),
        }
    }
}

/// Parse a single component expression.
pub fn parse_expr(text: &str) -> Result<DirectionExpr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(ParseError::new(p.here(), "trailing input"));
    }
    Ok(e)
}

/// Split a direction string at top-level commas, keeping byte offsets.
/// The grammar has no comma inside expressions, so a plain scan suffices.
pub fn split_components(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == ',' {
            out.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &text[start..]));
    out
}
