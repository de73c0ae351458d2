//! Evaluation of printed polynomial expressions (`+ - * ^`, parentheses, `k/m` literals).

use crate::error::{Error, Result};
use crate::exact::{Rational, Ring};

struct Parser<'a, R> {
    s: &'a [u8],
    i: usize,
    konst: &'a dyn Fn(&Rational) -> R,
    var: &'a dyn Fn(char) -> Option<R>,
}

impl<'a, R: Ring> Parser<'a, R> {
    fn skip(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.i).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Invalid(format!("expression: {what} at byte {}", self.i))
    }

    fn number(&mut self) -> Result<u64> {
        self.skip();
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[st..self.i]).unwrap().parse().map_err(|_| self.err("number expected"))
    }

    fn expr(&mut self) -> Result<R> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.i += 1;
                    let t = self.term()?;
                    acc.plus_assign(&t);
                }
                b'-' => {
                    self.i += 1;
                    let t = self.term()?;
                    acc.minus_assign(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<R> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            let f = self.unary()?;
            acc = acc.times(&f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<R> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return Ok(self.unary()?.negate());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let k = self.number()?;
            let mut acc = R::one();
            for _ in 0..k {
                acc = acc.times(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<R> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("')' expected"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut r = Rational::from(n);
                if self.peek() == Some(b'/') {
                    self.i += 1;
                    let d = self.number()?;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    r /= d;
                }
                Ok((self.konst)(&r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.i += 1;
                (self.var)(c as char).ok_or_else(|| self.err("unknown variable"))
            }
            _ => Err(self.err("operand expected")),
        }
    }
}

/// Evaluate `src` in the ring `R`.
pub fn eval<R: Ring>(src: &str, konst: &dyn Fn(&Rational) -> R, var: &dyn Fn(char) -> Option<R>) -> Result<R> {
    let mut p = Parser { s: src.as_bytes(), i: 0, konst, var };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn rationals() {
        let x = q(3, 2);
        let v = eval("1/2*(1-x)^2 - 2*x*(x+1) + 4", &|c: &Rational| c.clone(), &|c| (c == 'x').then(|| x.clone())).unwrap();
        assert_eq!(v, q(1, 8) - q(15, 2) + q(4, 1));
        assert!(eval::<Rational>("1 +", &|c| c.clone(), &|_| None).is_err());
        assert!(eval::<Rational>("y", &|c| c.clone(), &|_| None).is_err());
    }
}
