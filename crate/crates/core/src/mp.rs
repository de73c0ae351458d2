//! Multiprecision complex numbers on top of MPFR floats.

use rug::ops::Pow;
use rug::{Float, Rational};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A complex number with MPFR real and imaginary parts at a common precision.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(prec: u32, re: f64, im: f64) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_floats(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex::new(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        BigComplex::new(prec, 1.0, 0.0)
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        BigComplex { re: Float::with_val(prec, r), im: Float::with_val(prec, 0) }
    }

    pub fn real(x: Float) -> Self {
        let prec = x.prec();
        BigComplex { re: x, im: Float::with_val(prec, 0) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, f: &Float) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * f), im: Float::with_val(p, &self.im * f) }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        BigComplex { re: Float::with_val(p, &self.re / &n), im: Float::with_val(p, -Float::with_val(p, &self.im / &n)) }
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return BigComplex::zero(p);
        }
        let r = self.abs();
        let half = |x: Float| Float::with_val(p, x / 2u32);
        let a = half(Float::with_val(p, &r + &self.re)).sqrt();
        let b = half(Float::with_val(p, &r - &self.re)).sqrt();
        let b = if self.im.is_sign_negative() { -b } else { b };
        BigComplex { re: a, im: b }
    }

    pub fn powi(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = BigComplex::one(self.prec());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.sqr();
            k >>= 1;
        }
        acc
    }

    /// `r e^{i t}`.
    pub fn from_polar(r: &Float, t: &Float) -> Self {
        let p = r.prec().max(t.prec());
        let (s, c) = Float::with_val(p, t).sin_cos(Float::new(p));
        BigComplex { re: Float::with_val(p, r * &c), im: Float::with_val(p, r * &s) }
    }

    /// Real `x^e` for `x > 0` (for scalings like `rho^{-1/3}`).
    pub fn real_pow(x: &Float, e: f64) -> Float {
        let p = x.prec();
        Float::with_val(p, x.pow(Float::with_val(p, e)))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Distance to another value, in f64.
    pub fn dist(&self, o: &Self) -> f64 {
        (self - o).abs().to_f64()
    }

    /// Fixed-format decimal with `digits` significant digits per part.
    pub fn fmt_digits(&self, digits: usize) -> (String, String) {
        (fmt_float(&self.re, digits), fmt_float(&self.im, digits))
    }
}

/// Scientific decimal rendering of a float with `digits` significant digits.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(digits));
    s.replace('@', "e")
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, i) = self.to_f64();
        if i >= 0.0 {
            write!(f, "{r}+{i}i")
        } else {
            write!(f, "{r}{i}i")
        }
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec();
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        BigComplex { re: rr - ii, im: ri + ir }
    }
}

impl<'a> Div<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        self * &o.recip()
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, -&self.re), im: Float::with_val(p, -&self.im) }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = BigComplex::new(128, 1.0, 2.0);
        let b = BigComplex::new(128, -3.0, 0.5);
        let c = &(&a * &b) / &b;
        assert!(c.dist(&a) < 1e-30);
        let s = BigComplex::new(128, -4.0, 0.0).sqrt();
        assert!(s.dist(&BigComplex::new(128, 0.0, 2.0)) < 1e-30);
        assert!(BigComplex::new(128, 0.0, 1.0).powi(4).dist(&BigComplex::one(128)) < 1e-30);
        assert_eq!(fmt_float(&Float::with_val(64, 0.5), 5), "5.0000e-1");
    }
}
