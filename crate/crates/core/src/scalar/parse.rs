use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{Poly, Var};
use super::rational::Rational;
use crate::error::GeomError;

/// Recursive-descent parser for polynomial text such as `3/2*x^2*y - z^3`.
///
/// A number may be written directly before a variable (`3x`), but two
/// variables must be separated by `*`.
struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, GeomError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> PResult<T> {
        Err(GeomError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> PResult<Poly> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                return Ok(acc);
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
        }
    }

    fn term(&mut self) -> PResult<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.peek() == Some(b'/') {
                self.pos += 1;
                let d = self.integer()?;
                if d == BigInt::from(0) {
                    return self.err("division by zero");
                }
                acc = acc.scale(&Rational::new(BigInt::one(), d));
            } else {
                return Ok(acc);
            }
        }
    }

    fn integer(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn exponent(&mut self) -> PResult<u32> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let e = self.integer()?;
        match u32::try_from(e) {
            Ok(e) if e <= 1000 => Ok(e),
            _ => self.err("exponent too large"),
        }
    }

    fn factor(&mut self) -> PResult<Poly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = Poly::constant(Rational::from_integer(n));
                // coefficient written directly before a variable
                if let Some(c) = self.peek() {
                    if c.is_ascii_alphabetic() || c == b'(' {
                        let f = self.factor()?;
                        value = &value * &f;
                    }
                }
                Ok(value)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                let k = self.exponent()?;
                Ok(e.pow(k))
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let v = match c {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    b'z' => Var::Z,
                    _ => return self.err("unknown variable"),
                };
                self.pos += 1;
                if self.s.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    return self.err("implicit multiplication between variables");
                }
                let k = self.exponent()?;
                Ok(Poly::var(v).pow(k))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for Poly {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Poly, GeomError> {
        let normalized = s.replace('−', "-");
        let mut p = Parser { s: normalized.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let a: Poly = "3/2*x^2*y - z^3".parse().unwrap();
        let b: Poly = "  -z^3+ 3 x^2*y/2 ".parse().unwrap();
        assert_eq!(a, b);
        assert!("xy".parse::<Poly>().is_err());
        assert!("x^".parse::<Poly>().is_err());
        assert!("x + ".parse::<Poly>().is_err());
        assert!("w".parse::<Poly>().is_err());
        assert!("x/0".parse::<Poly>().is_err());
        assert_eq!("x − y".parse::<Poly>().unwrap(), "x-y".parse().unwrap());
    }

    #[test]
    fn display_round_trip() {
        for s in ["x^2 + y^2 - z^2", "-7/3*x*y*z + 2", "y^2*z - x^3"] {
            let p: Poly = s.parse().unwrap();
            assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        }
    }
}
