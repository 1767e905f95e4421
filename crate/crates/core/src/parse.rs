//! Text grammar shared by polynomials, algebra elements, exp-polynomials and
//! differential operators:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := NUM | IDENT | IDENT '(' expr ')' | '(' expr ')'
//! NUM   := digits ('/' digits)?
//! ```
//!
//! Products are left-associative and never reordered, so the same tree can be
//! evaluated in commutative and noncommutative algebras.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diffop::DiffOp;
use crate::poly::{Poly, Rational, Ring};
use crate::solutions::ExpPoly;
use crate::weyl::{Generator, NamedElement, WeylElem};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Ident {
        name: String,
        position: usize,
    },
    Call {
        name: String,
        arg: Box<Expr>,
        position: usize,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Int(u32),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = src[start..i].parse().map_err(|_| syntax(start, "bad number"))?;
                let mut den = BigInt::from(1);
                let mut is_fraction = false;
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    is_fraction = true;
                    let ds = i + 1;
                    i = ds;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    den = src[ds..i].parse().map_err(|_| syntax(ds, "bad number"))?;
                    if den.is_zero() {
                        return Err(syntax(ds, "zero denominator"));
                    }
                }
                let tok = match (is_fraction, u32::try_from(&num)) {
                    (false, Ok(small)) => Tok::Int(small),
                    _ => Tok::Num(Rational::new(num, den)),
                };
                out.push((tok, start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Int(k), _) => Ok(Expr::Pow(Box::new(base), k)),
            (_, p) => Err(syntax(p, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, position) = self.bump();
        match tok {
            Tok::Int(k) => Ok(Expr::Num(Rational::from_integer(k.into()))),
            Tok::Num(q) => Ok(Expr::Num(q)),
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Expr::Call {
                        name,
                        arg: Box::new(arg),
                        position,
                    })
                } else {
                    Ok(Expr::Ident { name, position })
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::End => Err(syntax(position, "unexpected end of input")),
            _ => Err(syntax(position, "expected a number, identifier or `(`")),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// An algebra the expression tree can be evaluated in.
pub trait Algebra {
    type Value;

    fn number(&self, c: Rational) -> Self::Value;
    fn ident(&self, name: &str, position: usize) -> Result<Self::Value>;
    fn call(&self, name: &str, _arg: Self::Value, _position: usize) -> Result<Self::Value> {
        Err(Error::UnknownIdentifier(format!("{name}(...)")))
    }
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn pow(&self, a: Self::Value, k: u32) -> Result<Self::Value>;
}

pub fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::Value> {
    Ok(match e {
        Expr::Num(c) => alg.number(c.clone()),
        Expr::Ident { name, position } => alg.ident(name, *position)?,
        Expr::Call { name, arg, position } => {
            let v = eval(alg, arg)?;
            alg.call(name, v, *position)?
        }
        Expr::Neg(a) => alg.neg(eval(alg, a)?),
        Expr::Add(a, b) => alg.add(eval(alg, a)?, eval(alg, b)?)?,
        Expr::Sub(a, b) => alg.sub(eval(alg, a)?, eval(alg, b)?)?,
        Expr::Mul(a, b) => alg.mul(eval(alg, a)?, eval(alg, b)?)?,
        Expr::Pow(a, k) => alg.pow(eval(alg, a)?, *k)?,
    })
}

struct PolyAlg(Ring);

impl Algebra for PolyAlg {
    type Value = Poly;
    fn number(&self, c: Rational) -> Poly {
        Poly::constant(self.0, c)
    }
    fn ident(&self, name: &str, _: usize) -> Result<Poly> {
        Poly::var_named(self.0, name)
    }
    fn add(&self, a: Poly, b: Poly) -> Result<Poly> {
        a.try_add(&b)
    }
    fn sub(&self, a: Poly, b: Poly) -> Result<Poly> {
        a.try_sub(&b)
    }
    fn mul(&self, a: Poly, b: Poly) -> Result<Poly> {
        a.try_mul(&b)
    }
    fn neg(&self, a: Poly) -> Poly {
        -a
    }
    fn pow(&self, a: Poly, k: u32) -> Result<Poly> {
        Ok(a.pow(k))
    }
}

struct WeylAlg;

impl Algebra for WeylAlg {
    type Value = WeylElem;
    fn number(&self, c: Rational) -> WeylElem {
        WeylElem::scalar(c)
    }
    fn ident(&self, name: &str, _: usize) -> Result<WeylElem> {
        if let Some(g) = Generator::ALL.into_iter().find(|g| g.name() == name) {
            return Ok(WeylElem::generator(g));
        }
        NamedElement::from_ident(name)
            .map(NamedElement::expand)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
    }
    fn add(&self, a: WeylElem, b: WeylElem) -> Result<WeylElem> {
        Ok(a + b)
    }
    fn sub(&self, a: WeylElem, b: WeylElem) -> Result<WeylElem> {
        Ok(a - b)
    }
    fn mul(&self, a: WeylElem, b: WeylElem) -> Result<WeylElem> {
        Ok(a * b)
    }
    fn neg(&self, a: WeylElem) -> WeylElem {
        -a
    }
    fn pow(&self, a: WeylElem, k: u32) -> Result<WeylElem> {
        Ok(a.pow(k))
    }
}

struct ExpPolyAlg;

impl Algebra for ExpPolyAlg {
    type Value = ExpPoly;
    fn number(&self, c: Rational) -> ExpPoly {
        ExpPoly::from_poly(Poly::constant(Ring::TXY, c))
    }
    fn ident(&self, name: &str, _: usize) -> Result<ExpPoly> {
        match Poly::var_named(Ring::TXY, name) {
            Ok(p) => Ok(ExpPoly::from_poly(p)),
            Err(_) => Err(Error::UnknownIdentifier(name.to_string())),
        }
    }
    fn call(&self, name: &str, arg: ExpPoly, position: usize) -> Result<ExpPoly> {
        if name != "exp" {
            return Err(Error::UnknownIdentifier(format!("{name}(...)")));
        }
        let q = arg
            .as_poly()
            .ok_or_else(|| syntax(position, "exponent must be a polynomial"))?;
        Ok(ExpPoly::exp(q))
    }
    fn add(&self, a: ExpPoly, b: ExpPoly) -> Result<ExpPoly> {
        Ok(&a + &b)
    }
    fn sub(&self, a: ExpPoly, b: ExpPoly) -> Result<ExpPoly> {
        Ok(&a - &b)
    }
    fn mul(&self, a: ExpPoly, b: ExpPoly) -> Result<ExpPoly> {
        Ok(&a * &b)
    }
    fn neg(&self, a: ExpPoly) -> ExpPoly {
        -&a
    }
    fn pow(&self, a: ExpPoly, k: u32) -> Result<ExpPoly> {
        Ok(a.pow(k))
    }
}

struct DiffOpAlg;

impl Algebra for DiffOpAlg {
    type Value = DiffOp;
    fn number(&self, c: Rational) -> DiffOp {
        DiffOp::scalar(c)
    }
    fn ident(&self, name: &str, _: usize) -> Result<DiffOp> {
        match name {
            "Dt" => Ok(DiffOp::dt()),
            "Dx" => Ok(DiffOp::dx()),
            "Dy" => Ok(DiffOp::dy()),
            _ => match Poly::var_named(Ring::TXY, name) {
                Ok(p) => Ok(DiffOp::multiplication(p)),
                Err(_) => Err(Error::UnknownIdentifier(name.to_string())),
            },
        }
    }
    fn add(&self, a: DiffOp, b: DiffOp) -> Result<DiffOp> {
        Ok(&a + &b)
    }
    fn sub(&self, a: DiffOp, b: DiffOp) -> Result<DiffOp> {
        Ok(&a - &b)
    }
    fn mul(&self, a: DiffOp, b: DiffOp) -> Result<DiffOp> {
        Ok(a.compose(&b))
    }
    fn neg(&self, a: DiffOp) -> DiffOp {
        -&a
    }
    fn pow(&self, a: DiffOp, k: u32) -> Result<DiffOp> {
        Ok(a.pow(k))
    }
}

pub fn parse_poly(src: &str, ring: Ring) -> Result<Poly> {
    eval(&PolyAlg(ring), &parse_expr(src)?)
}

pub fn parse_weyl(src: &str) -> Result<WeylElem> {
    eval(&WeylAlg, &parse_expr(src)?)
}

pub fn parse_expoly(src: &str) -> Result<ExpPoly> {
    eval(&ExpPolyAlg, &parse_expr(src)?)
}

/// `Dt`, `Dx`, `Dy` are derivatives, `t`, `x`, `y` multiplication operators;
/// products compose.
pub fn parse_diffop(src: &str) -> Result<DiffOp> {
    eval(&DiffOpAlg, &parse_expr(src)?)
}
