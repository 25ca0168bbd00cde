//! Small expression parser for field elements and univariate polynomials,
//! e.g. `-e-1`, `1/2*r + 3`, `(t^3+1)^4(t-1)^11`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{upoly, FieldElement, NumberField};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(BigInt),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    var: &'a str,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn new(src: &str, var: &'a str) -> Self {
        Parser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, var }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Expr> {
        if self.chars.is_empty() {
            return Err(perr("empty expression"));
        }
        let e = self.sum()?;
        if self.pos != self.chars.len() {
            return Err(perr(format!("unexpected character at {}", self.pos)));
        }
        Ok(e)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some('-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.product()?))
            }
            Some('+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                Some('/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
                }
                // implicit multiplication: `2e`, `(t+1)(t-1)`
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let k: u32 = s.parse().map_err(|_| perr("exponent must be a nonnegative integer"))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(perr("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                Ok(Expr::Num(s.parse().map_err(|_| perr("bad integer"))?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                if s == self.var {
                    Ok(Expr::Var)
                } else {
                    Err(perr(format!("unknown symbol '{s}' (expected '{}')", self.var)))
                }
            }
            _ => Err(perr(format!("unexpected end or character at {}", self.pos))),
        }
    }
}

fn eval_field(e: &Expr, f: &Arc<NumberField>) -> Result<FieldElement> {
    Ok(match e {
        Expr::Num(n) => FieldElement::from_bigint(f, n.clone()),
        Expr::Var => FieldElement::generator(f),
        Expr::Neg(a) => eval_field(a, f)?.neg(),
        Expr::Add(a, b) => eval_field(a, f)?.try_add(&eval_field(b, f)?)?,
        Expr::Sub(a, b) => eval_field(a, f)?.try_sub(&eval_field(b, f)?)?,
        Expr::Mul(a, b) => eval_field(a, f)?.try_mul(&eval_field(b, f)?)?,
        Expr::Div(a, b) => eval_field(a, f)?.try_div(&eval_field(b, f)?)?,
        Expr::Pow(a, k) => eval_field(a, f)?.pow(*k),
    })
}

/// Parses an expression in the field's generator (e.g. `e^2`, `1-r`).
pub fn parse_field_element(src: &str, field: &Arc<NumberField>) -> Result<FieldElement> {
    let expr = Parser::new(src, field.gen_name()).parse()?;
    eval_field(&expr, field)
}

fn eval_upoly(e: &Expr) -> Result<Vec<BigRational>> {
    Ok(match e {
        Expr::Num(n) => upoly::trim(vec![BigRational::from_integer(n.clone())]),
        Expr::Var => vec![BigRational::zero(), BigRational::one()],
        Expr::Neg(a) => upoly::sub(&[], &eval_upoly(a)?),
        Expr::Add(a, b) => upoly::sub(&eval_upoly(a)?, &upoly::sub(&[], &eval_upoly(b)?)),
        Expr::Sub(a, b) => upoly::sub(&eval_upoly(a)?, &eval_upoly(b)?),
        Expr::Mul(a, b) => upoly::mul(&eval_upoly(a)?, &eval_upoly(b)?),
        Expr::Div(a, b) => {
            let (num, den) = (eval_upoly(a)?, eval_upoly(b)?);
            if upoly::is_zero(&den) {
                return Err(Error::DivisionByZero);
            }
            let (q, r) = upoly::div_rem(&num, &den);
            if !upoly::is_zero(&r) {
                return Err(Error::InexactDivision);
            }
            q
        }
        Expr::Pow(a, k) => {
            let base = eval_upoly(a)?;
            let mut acc = vec![BigRational::one()];
            for _ in 0..*k {
                acc = upoly::mul(&acc, &base);
            }
            acc
        }
    })
}

/// Parses a univariate polynomial in `var` with rational coefficients,
/// returned constant-first.
pub fn parse_univariate(src: &str, var: &str) -> Result<Vec<BigRational>> {
    let expr = Parser::new(src, var).parse()?;
    Ok(upoly::trim(eval_upoly(&expr)?))
}
