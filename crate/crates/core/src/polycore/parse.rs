//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := base ('^' nonneg-int)?
//! base     := variable | rational | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//! Whitespace is insignificant. Implicit multiplication is rejected:
//! `2x` is a syntax error, `2*x` is required. A `/` between factors is
//! only accepted when the divisor is a nonzero constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::poly::{BivariatePolynomial, Rat};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: (&'a str, &'a str),
}

/// Parse `text` into a polynomial in the two given variables.
pub fn parse_polynomial(text: &str, vars: (&str, &str)) -> Result<BivariatePolynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: (vars.0, vars.1),
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Syntax {
            pos: p.pos,
            msg: format!("unexpected character `{}`", p.src[p.pos] as char),
        });
    }
    Ok(poly.with_vars(vars.0, vars.1))
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<BivariatePolynomial> {
        let mut neg = false;
        if let Some(c) = self.peek() {
            if c == b'+' || c == b'-' {
                self.pos += 1;
                neg = c == b'-';
            }
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                b'-' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BivariatePolynomial> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                b'/' => {
                    let at = self.pos;
                    self.pos += 1;
                    let f = self.factor()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "division is only allowed by a nonzero constant".into(),
                        });
                    }
                    let inv = Rat::from(BigInt::from(1)) / f.coeff(0, 0);
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BivariatePolynomial> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let n = self.integer()?;
            if n.sign() == num_bigint::Sign::Minus {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "exponent must be a nonnegative integer".into(),
                });
            }
            let n: u32 = n.try_into().map_err(|_| Error::Syntax {
                pos: at,
                msg: "exponent too large".into(),
            })?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<BivariatePolynomial> {
        let c = self.peek().ok_or(Error::Syntax {
            pos: self.pos,
            msg: "unexpected end of input".into(),
        })?;
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(Error::Syntax {
                    pos: self.pos,
                    msg: "expected `)`".into(),
                });
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            return self.rational();
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            if name == self.vars.0 {
                return Ok(BivariatePolynomial::x());
            }
            if name == self.vars.1 {
                return Ok(BivariatePolynomial::y());
            }
            return Err(Error::UnknownVariable(name.to_string()));
        }
        Err(Error::Syntax {
            pos: self.pos,
            msg: format!("unexpected character `{}`", c as char),
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Syntax {
                pos: start,
                msg: "expected an integer".into(),
            });
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn rational(&mut self) -> Result<BivariatePolynomial> {
        let at = self.pos;
        let n = self.integer()?;
        // reject decimal literals explicitly
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(Error::NonRationalLiteral(at));
        }
        // a '/' directly after an integer literal binds as part of the rational
        if self.src.get(self.pos) == Some(&b'/') {
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            if self
                .src
                .get(self.pos)
                .is_some_and(|b| b.is_ascii_digit())
            {
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(Error::Syntax {
                        pos: save + 1,
                        msg: "denominator must be positive".into(),
                    });
                }
                return Ok(BivariatePolynomial::constant(BigRational::new(n, d)));
            }
            self.pos = save;
        }
        Ok(BivariatePolynomial::constant(BigRational::from(n)))
    }
}
