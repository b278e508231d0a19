use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{RingElem, RingRef};
use crate::error::{Error, Result};

// expr   := sign? term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := INT ('/' INT)? | VAR ('^' SINT)? | '(' expr ')' ('^' INT)?
pub(super) fn parse(text: &str, ring: &RingRef) -> Result<RingElem> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
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

    fn expr(&mut self) -> Result<RingElem> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc.add_assign_ref(&t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc.add_assign_ref(&t.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RingElem> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn signed_exponent(&mut self) -> Result<i32> {
        let negative = self.eat(b'-');
        let n = self.integer()?;
        let n: i32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
        Ok(if negative { -n } else { n })
    }

    fn factor(&mut self) -> Result<RingElem> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.integer()?;
                let value = if self.eat(b'/') {
                    let denom = self.integer()?;
                    if denom.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    BigRational::new(numer, denom)
                } else {
                    BigRational::from_integer(numer)
                };
                RingElem::from_rational(self.ring, value)
                    .map_err(|e| Error::Parse(format!("{e} at position {}", self.pos)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                if self.ring.var_index(&name).is_none() {
                    return Err(Error::Parse(format!("unknown variable {name} at position {start}")));
                }
                let exp = if self.eat(b'^') { self.signed_exponent()? } else { 1 };
                RingElem::var_pow(self.ring, &name, exp)
                    .map_err(|e| Error::Parse(format!("{e} at position {start}")))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                if self.eat(b'^') {
                    let e = self.signed_exponent()?;
                    inner
                        .pow(e as i64)
                        .map_err(|e| Error::Parse(format!("{e} at position {}", self.pos)))
                } else {
                    Ok(inner)
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
