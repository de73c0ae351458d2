//! Polynomial evaluators for the root finder: a scaled double-precision form and an MPFR form.

use crate::exact::{Poly, Rational};
use crate::mp::BigComplex;
use num_complex::Complex64;
use rug::{Assign, Float};

/// A complex number `m * 2^e` with `m` kept near unit size.
#[derive(Clone, Copy, Debug)]
pub struct Xc {
    pub m: Complex64,
    pub e: i64,
}

fn exp2_of(x: f64) -> i64 {
    if x == 0.0 || !x.is_finite() {
        return 0;
    }
    let b = ((x.to_bits() >> 52) & 0x7ff) as i64;
    if b == 0 {
        return -1074;
    }
    b - 1022
}

fn ldexp(x: f64, k: i64) -> f64 {
    let k = k.clamp(-2000, 2000) as i32;
    if k > 1000 {
        x * 2f64.powi(1000) * 2f64.powi(k - 1000)
    } else if k < -1000 {
        x * 2f64.powi(-1000) * 2f64.powi(k + 1000)
    } else {
        x * 2f64.powi(k)
    }
}

impl Xc {
    pub const ZERO: Xc = Xc { m: Complex64::new(0.0, 0.0), e: 0 };

    pub fn new(m: Complex64, e: i64) -> Self {
        Xc { m, e }.norm()
    }

    fn norm(self) -> Self {
        let a = self.m.re.abs().max(self.m.im.abs());
        if a == 0.0 {
            return Xc::ZERO;
        }
        let k = exp2_of(a);
        Xc { m: Complex64::new(ldexp(self.m.re, -k), ldexp(self.m.im, -k)), e: self.e + k }
    }

    pub fn from_float(re: &Float, im: &Float) -> Self {
        let (mr, er) = if re.is_zero() { (0.0, i32::MIN) } else { re.to_f64_exp() };
        let (mi, ei) = if im.is_zero() { (0.0, i32::MIN) } else { im.to_f64_exp() };
        let e = er.max(ei);
        if e == i32::MIN {
            return Xc::ZERO;
        }
        let sh = |m: f64, x: i32| if x == i32::MIN { 0.0 } else { ldexp(m, x as i64 - e as i64) };
        Xc::new(Complex64::new(sh(mr, er), sh(mi, ei)), e as i64)
    }

    pub fn from_c64(z: Complex64) -> Self {
        Xc::new(z, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.m.re == 0.0 && self.m.im == 0.0
    }

    pub fn mul(self, o: Xc) -> Xc {
        Xc::new(self.m * o.m, self.e + o.e)
    }

    pub fn add(self, o: Xc) -> Xc {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = hi.e - lo.e;
        if d > 120 {
            return hi;
        }
        let s = ldexp(1.0, -d);
        Xc::new(hi.m + lo.m * s, hi.e)
    }

    pub fn neg(self) -> Xc {
        Xc { m: -self.m, e: self.e }
    }

    pub fn sub(self, o: Xc) -> Xc {
        self.add(o.neg())
    }

    pub fn div(self, o: Xc) -> Option<Xc> {
        if o.is_zero() {
            return None;
        }
        Some(Xc::new(self.m / o.m, self.e - o.e))
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(ldexp(self.m.re, self.e), ldexp(self.m.im, self.e))
    }

    pub fn log2_abs(self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.m.norm().log2() + self.e as f64
    }
}

/// Coefficients of a polynomial in both forms.
#[derive(Clone, Debug)]
pub struct CPoly {
    pub fast: Vec<Xc>,
    pub mp: Vec<BigComplex>,
}

impl CPoly {
    pub fn from_complex(c: &[BigComplex]) -> Self {
        CPoly { fast: c.iter().map(|x| Xc::from_float(&x.re, &x.im)).collect(), mp: c.to_vec() }
    }

    pub fn from_rational(p: &Poly<Rational>, prec: u32) -> Self {
        let mp: Vec<BigComplex> = p.coeffs().iter().map(|c| BigComplex::from_rational(prec, c)).collect();
        CPoly::from_complex(&mp)
    }

    pub fn deg(&self) -> usize {
        self.mp.len().saturating_sub(1)
    }

    /// `(f(z), f'(z))` in scaled doubles.
    pub fn eval_fast(&self, z: Xc) -> (Xc, Xc) {
        let mut p = Xc::ZERO;
        let mut d = Xc::ZERO;
        for c in self.fast.iter().rev() {
            d = d.mul(z).add(p);
            p = p.mul(z).add(*c);
        }
        (p, d)
    }

    pub fn at(&self, prec: u32) -> MpPoly {
        MpPoly {
            re: self.mp.iter().map(|c| Float::with_val(prec, &c.re)).collect(),
            im: self.mp.iter().map(|c| Float::with_val(prec, &c.im)).collect(),
            prec,
        }
    }
}

/// MPFR coefficients at one working precision.
pub struct MpPoly {
    re: Vec<Float>,
    im: Vec<Float>,
    prec: u32,
}

/// In-place complex scratch value.
pub struct Cx {
    pub r: Float,
    pub i: Float,
}

impl Cx {
    pub fn new(prec: u32) -> Self {
        Cx { r: Float::new(prec), i: Float::new(prec) }
    }

    pub fn set(&mut self, o: &Cx) {
        self.r.assign(&o.r);
        self.i.assign(&o.i);
    }

    pub fn to_big(&self) -> BigComplex {
        BigComplex::from_floats(self.r.clone(), self.i.clone())
    }
}

/// Scratch floats for in-place products.
pub struct Tmp {
    a: Float,
    b: Float,
}

impl Tmp {
    pub fn new(prec: u32) -> Self {
        Tmp { a: Float::new(prec), b: Float::new(prec) }
    }
}

/// `acc -= x * y`.
pub fn mul_sub(acc: &mut Cx, x: &Cx, y: &Cx, t: &mut Tmp) {
    t.a.assign(&x.r * &y.r);
    t.b.assign(&x.i * &y.i);
    acc.r -= &t.a;
    acc.r += &t.b;
    t.a.assign(&x.r * &y.i);
    t.b.assign(&x.i * &y.r);
    acc.i -= &t.a;
    acc.i -= &t.b;
}

/// `out = x * y`.
pub fn mul_to(out: &mut Cx, x: &Cx, y: &Cx, t: &mut Tmp) {
    out.r.assign(&x.r * &y.r);
    t.b.assign(&x.i * &y.i);
    out.r -= &t.b;
    out.i.assign(&x.r * &y.i);
    t.b.assign(&x.i * &y.r);
    out.i += &t.b;
}

impl MpPoly {
    /// `(f(z), f'(z))`.
    pub fn eval(&self, z: &Cx, t: &mut Tmp) -> (Cx, Cx) {
        let prec = self.prec;
        let d = self.re.len() - 1;
        let mut p = Cx { r: Float::with_val(prec, &self.re[d]), i: Float::with_val(prec, &self.im[d]) };
        let mut dp = Cx::new(prec);
        let mut q = Cx::new(prec);
        for k in (0..d).rev() {
            mul_to(&mut q, &dp, z, t);
            dp.r.assign(&q.r + &p.r);
            dp.i.assign(&q.i + &p.i);
            mul_to(&mut q, &p, z, t);
            p.r.assign(&q.r + &self.re[k]);
            p.i.assign(&q.i + &self.im[k]);
        }
        (p, dp)
    }
}

/// `w = f / (f' - v f / z)`: the Newton step for `f / z^v`.
pub fn newton_ratio(f: &Cx, df: &Cx, z: &Cx, v: usize, prec: u32) -> Option<(Float, Float)> {
    let f = f.to_big();
    let mut den = df.to_big();
    if v > 0 {
        if z.r.is_zero() && z.i.is_zero() {
            return None;
        }
        let corr = &f / &z.to_big();
        den = &den - &corr.scale(&Float::with_val(prec, v as u32));
    }
    if den.is_zero() || !den.is_finite() {
        return None;
    }
    let w = &f / &den;
    if !w.is_finite() {
        return None;
    }
    Some((w.re, w.im))
}

pub fn newton_ratio_fast(f: Xc, df: Xc, z: Xc, v: usize) -> Option<Complex64> {
    let mut den = df;
    if v > 0 {
        let c = f.div(z)?;
        den = den.sub(c.mul(Xc::from_c64(Complex64::new(v as f64, 0.0))));
    }
    let w = f.div(den)?.to_c64();
    if w.re.is_finite() && w.im.is_finite() {
        Some(w)
    } else {
        None
    }
}
