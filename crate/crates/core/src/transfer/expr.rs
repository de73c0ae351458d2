//! Tiny parser for transcribed matrix entries, compiled to multilinear integer polynomials.

use std::collections::BTreeMap;

/// Variables of a cell, bit positions in a monomial mask.
pub const VARS: [char; 9] = ['a', 'b', 'c', 'd', 'e', 'f', 'S', 'T', 'U'];

/// Sparse multilinear polynomial: monomial mask -> integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Multi(pub BTreeMap<u16, i64>);

impl Multi {
    pub fn constant(c: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(0, c);
        }
        Multi(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = BTreeMap::new();
        m.insert(1u16 << i, 1);
        Multi(m)
    }

    pub fn add(&self, o: &Multi, sign: i64) -> Multi {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert(0);
            *e += sign * v;
            if *e == 0 {
                m.remove(k);
            }
        }
        Multi(m)
    }

    /// Product; a squared variable is an error in a multilinear entry.
    pub fn mul(&self, o: &Multi) -> Result<Multi, String> {
        let mut m: BTreeMap<u16, i64> = BTreeMap::new();
        for (k1, v1) in &self.0 {
            for (k2, v2) in &o.0 {
                if k1 & k2 != 0 {
                    return Err("entry is not multiaffine".into());
                }
                let e = m.entry(k1 | k2).or_insert(0);
                *e += v1 * v2;
            }
        }
        m.retain(|_, v| *v != 0);
        Ok(Multi(m))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

struct Parser<'a, F: Fn(usize, usize) -> Result<Multi, String>> {
    s: &'a [u8],
    i: usize,
    lookup: F,
}

impl<'a, F: Fn(usize, usize) -> Result<Multi, String>> Parser<'a, F> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Multi, String> {
        let mut acc = if self.peek() == Some(b'-') {
            self.i += 1;
            Multi::default().add(&self.term()?, -1)
        } else {
            self.term()?
        };
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.i += 1;
                    acc = acc.add(&self.term()?, 1);
                }
                b'-' => {
                    self.i += 1;
                    acc = acc.add(&self.term()?, -1);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Multi, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn number(&mut self) -> usize {
        let st = self.i;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[st..self.i]).unwrap().parse().unwrap()
    }

    fn factor(&mut self) -> Result<Multi, String> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(format!("expected ) at {}", self.i));
                }
                self.i += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.i += 1;
                Ok(Multi::default().add(&self.factor()?, -1))
            }
            Some(c) if c.is_ascii_digit() => Ok(Multi::constant(self.number() as i64)),
            Some(b'm') if self.s.get(self.i + 1) == Some(&b'(') => {
                self.i += 2;
                let r = self.number();
                if self.peek() != Some(b',') {
                    return Err("expected , in m(r,c)".into());
                }
                self.i += 1;
                let c = self.number();
                if self.peek() != Some(b')') {
                    return Err("expected ) in m(r,c)".into());
                }
                self.i += 1;
                (self.lookup)(r, c)
            }
            Some(c) => {
                let ch = c as char;
                let k = VARS.iter().position(|&v| v == ch).ok_or_else(|| format!("unknown symbol {ch}"))?;
                self.i += 1;
                Ok(Multi::var(k))
            }
            None => Err("unexpected end".into()),
        }
    }
}

/// Parse an expression; `m(r,c)` references are resolved through `lookup`.
pub fn parse(src: &str, lookup: impl Fn(usize, usize) -> Result<Multi, String>) -> Result<Multi, String> {
    let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: cleaned.as_bytes(), i: 0, lookup };
    let e = p.expr()?;
    if p.i != p.s.len() {
        return Err(format!("trailing input in `{src}`"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_signs() {
        let e = parse("-(a+b*S-a*b*S)*2", |_, _| Err("none".into())).unwrap();
        let mut want = BTreeMap::new();
        want.insert(1u16, -2);
        want.insert(2 | 64, -2);
        want.insert(1 | 2 | 64, 2);
        assert_eq!(e, Multi(want));
    }

    #[test]
    fn rejects_squares() {
        assert!(parse("a*(1-a)", |_, _| Err("none".into())).is_err());
    }
}
