//! Recursive-descent parser for
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' signedInt)?
//! atom   := unsignedInt | 'q' | 'phi1' | 'phi2' | 'phi4' | 'phi8'
//!         | 'Q' | 'R' | 'S' | 'T' | '(' expr ')'
//! ```
//!
//! A leading sign on the whole expression is also accepted.

use num_bigint::BigInt;

use super::{Gen, KolbergExpr};
use crate::error::{Error, Result};

pub fn parse_expr(input: &str) -> Result<KolbergExpr> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let e = p.expr(true)?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self, top: bool) -> Result<KolbergExpr> {
        let negate = top && self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<KolbergExpr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let start = self.pos;
                let d = self.factor()?;
                acc = acc.div(&d).map_err(|_| Error::Parse {
                    pos: start,
                    msg: "divisor must be a monomial with coefficient 1 or -1".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<KolbergExpr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = self.pos;
        let n = self.signed_int()?;
        let n: i64 = n
            .try_into()
            .map_err(|_| Error::Parse { pos: start, msg: "exponent out of range".into() })?;
        base.pow(n).map_err(|_| Error::Parse {
            pos: start,
            msg: "negative power of a non-monomial".into(),
        })
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let n = self.unsigned_int()?;
        Ok(if neg { -n } else { n })
    }

    fn unsigned_int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<KolbergExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr(false)?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(KolbergExpr::constant(self.unsigned_int()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match Gen::from_name(word) {
                    Some(g) => Ok(KolbergExpr::var(g)),
                    None => Err(Error::Parse {
                        pos: start,
                        msg: format!("unknown symbol `{word}`"),
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissection::Exponents;

    #[test]
    fn precedence_and_powers() {
        let e = parse_expr("2*q^2*R^-3 + (Q + 1)^2 / q").unwrap();
        assert_eq!(e.to_string(), "q^-1 + 2*q^-1*Q + q^-1*Q^2 + 2*q^2*R^-3");
        let e = parse_expr("phi1^24 * q").unwrap();
        let ex = Exponents {
            q: 1,
            phi1: 24,
            ..Exponents::default()
        };
        assert_eq!(e.coefficient(&ex), BigInt::from(1));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("x"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_expr("Q^"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("(Q"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("1/(1+q)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("(1+q)^-1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("Q R"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn whitespace_and_sign() {
        assert_eq!(parse_expr(" - 3 * R ").unwrap(), parse_expr("0-3*R").unwrap());
    }
}
