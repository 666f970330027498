//! Recursive-descent parser for the polynomial text grammar.
//!
//! Operators `+ - * ^`, parentheses, integer and `p/q` literals, and the
//! declared variables. Multiplication must be explicit.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Q;
use num_bigint::BigInt;
use num_traits::Zero;

pub fn parse_poly(text: &str, vars: &[&str]) -> Result<Polynomial> {
    let owned: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let mut p = Parser {
        chars: text.chars().map(|c| if c == '−' { '-' } else { c }).collect(),
        pos: 0,
        vars: owned,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(e)
}

/// Parses a germ in the variables `x, y`.
pub fn parse_germ(text: &str) -> Result<Polynomial> {
    parse_poly(text, &["x", "y"])
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        // implicit multiplication such as `2x` or `x y`
        if let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '(' {
                return Err(self.err("implicit multiplication is not allowed; use `*`"));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                self.pos = start;
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().unwrap();
                let mut value = Q::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.err("expected an integer denominator"));
                    }
                    let den: BigInt = d.parse().unwrap();
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Q::from_integer(den);
                }
                Ok(Polynomial::constant_in(&self.vars, value))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                let mut name = String::new();
                while let Some(&c) = self.chars.get(self.pos) {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var_in(&self.vars, i)),
                    None => Err(Error::UnknownVariable { name, pos: start }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
