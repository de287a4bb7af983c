//! Recursive descent parser for polynomial and rational-function expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | ident | 'sqrt' '(' integer ')' | '(' expr ')'
//! ```

use crate::algebra::{BivariatePolynomial, FieldElement, Ring};
use crate::error::{Error, Result};
use crate::function_field::RationalFunction;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::ops::{Add, Mul, Neg, Sub};

const MAX_EXPONENT: u32 = 256;

/// A parsed expression, in the shape requested by the caller.
#[derive(Clone, Debug, PartialEq)]
pub enum Expression {
    Bivariate(BivariatePolynomial),
    Rational(RationalFunction),
}

trait Value: Sized + Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn constant(c: FieldElement) -> Self;
    fn divide(self, rhs: Self) -> std::result::Result<Self, &'static str>;
    fn power(&self, e: u32) -> Self;
}

impl Value for BivariatePolynomial {
    fn constant(c: FieldElement) -> Self {
        BivariatePolynomial::constant(BivariatePolynomial::T, BivariatePolynomial::X, c)
    }

    fn divide(self, rhs: Self) -> std::result::Result<Self, &'static str> {
        if rhs.is_zero() {
            return Err("division by zero");
        }
        if rhs.total_degree() != Some(0) {
            return Err("division by a non-constant in polynomial context");
        }
        let c = rhs.coeff(0, 0);
        Ok(self.scale(&(FieldElement::from_int(1) / c)))
    }

    fn power(&self, e: u32) -> Self {
        self.pow(e)
    }
}

impl Value for RationalFunction {
    fn constant(c: FieldElement) -> Self {
        RationalFunction::constant(c)
    }

    fn divide(self, rhs: Self) -> std::result::Result<Self, &'static str> {
        if rhs.is_zero() {
            return Err("division by zero");
        }
        Ok(self / rhs)
    }

    fn power(&self, e: u32) -> Self {
        self.pow(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let b = src.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Tok::Int(src[s..i].parse().unwrap()), s));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'\'') {
                i += 1;
            }
            toks.push((Tok::Ident(src[s..i].to_string()), s));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::Parse { offset: i, message: format!("unexpected character '{}'", &src[i..].chars().next().unwrap()) });
        }
    }
    toks.push((Tok::End, src.len()));
    Ok(Lexer { toks })
}

struct Parser<'a, T> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    var: &'a dyn Fn(&str) -> Option<T>,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { offset, message: message.into() })
}

impl<'a, T: Value> Parser<'a, T> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            err(self.offset(), format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<T> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<T> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = acc * self.unary()?;
                }
                Tok::Sym('/') => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    acc = match acc.divide(rhs) {
                        Ok(v) => v,
                        Err(m) => return err(at, m),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<T> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<T> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => match n.to_u32() {
                Some(e) if e <= MAX_EXPONENT => Ok(base.power(e)),
                _ => err(at, format!("exponent exceeds {MAX_EXPONENT}")),
            },
            _ => err(at, "expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<T> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(T::constant(FieldElement::from_rational(BigRational::from_integer(n)))),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Ident(name) if name == "sqrt" => {
                self.expect('(')?;
                let arg_at = self.offset();
                let d = match self.bump() {
                    Tok::Int(n) => n,
                    _ => return err(arg_at, "sqrt takes a positive integer literal"),
                };
                self.expect(')')?;
                let d = match d.to_i64() {
                    Some(d) if d > 0 => d,
                    _ => return err(arg_at, "sqrt takes a positive integer literal"),
                };
                match FieldElement::sqrt_of_int(d) {
                    Ok(c) => Ok(T::constant(c)),
                    Err(e) => err(arg_at, e.to_string()),
                }
            }
            Tok::Ident(name) => match (self.var)(&name) {
                Some(v) => Ok(v),
                None => err(at, format!("unknown variable '{name}'")),
            },
            Tok::End => err(at, "unexpected end of input"),
            Tok::Sym(c) => err(at, format!("unexpected '{c}'")),
        }
    }
}

fn run<T: Value>(src: &str, var: &dyn Fn(&str) -> Option<T>) -> Result<T> {
    let lx = lex(src)?;
    let mut p = Parser { toks: lx.toks, pos: 0, var };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return err(p.offset(), "unexpected trailing input");
    }
    Ok(v)
}

/// Parses a polynomial in two variables; `t` and `x` name the pencil
/// parameter and the fiber coordinate.
pub fn parse_bivariate(src: &str, t: &str, x: &str) -> Result<BivariatePolynomial> {
    run(src, &|name: &str| {
        if name == t {
            Some(BivariatePolynomial::monomial(BivariatePolynomial::T, BivariatePolynomial::X, FieldElement::from_int(1), 1, 0))
        } else if name == x {
            Some(BivariatePolynomial::monomial(BivariatePolynomial::T, BivariatePolynomial::X, FieldElement::from_int(1), 0, 1))
        } else {
            None
        }
    })
}

pub fn parse_rational_function(src: &str, t: &str) -> Result<RationalFunction> {
    run(src, &|name: &str| (name == t).then(RationalFunction::t))
}

/// A constant: an expression without variables.
pub fn parse_constant(src: &str) -> Result<FieldElement> {
    let r: RationalFunction = run(src, &|_: &str| None)?;
    Ok(r.as_constant().expect("no variables were accepted"))
}

/// One allowed variable gives a rational function in it; two give a
/// polynomial in `(t, x)` with the names taken in that order.
pub fn parse_expression(src: &str, vars: &[&str]) -> Result<Expression> {
    match vars {
        [] => Ok(Expression::Rational(RationalFunction::constant(parse_constant(src)?))),
        [t] => Ok(Expression::Rational(parse_rational_function(src, t)?)),
        [t, x] => Ok(Expression::Bivariate(parse_bivariate(src, t, x)?)),
        _ => err(0, "at most two variables are supported"),
    }
}
