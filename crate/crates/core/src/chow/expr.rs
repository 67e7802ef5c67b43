//! Expressions over the generators of the Chow ring of `P(TS)`.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*'? unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' integer)?
//! atom     := rational | gen | '(' expr ')'
//! rational := integer ('/' integer)?
//! gen      := 'xi' | 'l' | 'B0' | 'pt' | 'K'
//! ```
//!
//! `l`, `B0`, `pt` stand for pullbacks from the surface and `K = -2 xi`.
//! Juxtaposition multiplies, so `3xi` and `3*xi` agree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{bundle_mul, BundleClass, ChowError, RuledSurfaceParams, SurfaceClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Xi,
    Ell,
    B0,
    Pt,
    K,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn err(column: usize, message: impl Into<String>) -> ChowError {
    ChowError::Parse {
        column,
        message: message.into(),
    }
}

/// Tokens paired with their 1-based column.
fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ChowError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^/()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ChowError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<Expr, ChowError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') || self.starts_atom() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ChowError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.column();
            match self.toks.get(self.pos) {
                Some((Tok::Int(k), _)) => {
                    let k = u32::try_from(k).map_err(|_| err(col, "exponent too large"))?;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(err(col, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ChowError> {
        let col = self.column();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return Err(err(col, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => {
                if self.eat('/') {
                    let dcol = self.column();
                    match self.toks.get(self.pos) {
                        Some((Tok::Int(d), _)) if !d.is_zero() => {
                            let d = d.clone();
                            self.pos += 1;
                            Ok(Expr::Num(BigRational::new(n, d)))
                        }
                        Some((Tok::Int(_), _)) => Err(err(dcol, "division by zero")),
                        _ => Err(err(dcol, "expected an integer denominator")),
                    }
                } else {
                    Ok(Expr::Num(BigRational::from_integer(n)))
                }
            }
            Tok::Ident(name) => match name.as_str() {
                "xi" => Ok(Expr::Xi),
                "l" => Ok(Expr::Ell),
                "B0" => Ok(Expr::B0),
                "pt" => Ok(Expr::Pt),
                "K" => Ok(Expr::K),
                _ => Err(err(col, format!("unknown generator {name:?}"))),
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.column(), "expected ')'"));
                }
                Ok(inner)
            }
            Tok::Sym(c) => Err(err(col, format!("unexpected {c:?}"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ChowError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.column(), "trailing input"));
    }
    Ok(e)
}

pub fn evaluate(e: &Expr, p: &RuledSurfaceParams) -> Result<BundleClass, ChowError> {
    Ok(match e {
        Expr::Num(x) => BundleClass::scalar(x.clone()),
        Expr::Xi => BundleClass::xi(),
        Expr::Ell => BundleClass::pullback(SurfaceClass::ell()),
        Expr::B0 => BundleClass::pullback(SurfaceClass::b0()),
        Expr::Pt => BundleClass::pullback(SurfaceClass::pt()),
        Expr::K => BundleClass::xi().scale(&BigRational::from_integer(BigInt::from(-2))),
        Expr::Neg(x) => -&evaluate(x, p)?,
        Expr::Add(x, y) => &evaluate(x, p)? + &evaluate(y, p)?,
        Expr::Sub(x, y) => &evaluate(x, p)? - &evaluate(y, p)?,
        Expr::Mul(x, y) => bundle_mul(&evaluate(x, p)?, &evaluate(y, p)?, p)?,
        Expr::Pow(x, k) => evaluate(x, p)?.pow(*k, p)?,
    })
}
