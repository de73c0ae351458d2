//! Closed-form eigenvalues and weights of the uniform sequences at perfect nodes.

use crate::error::{Error, Result};
use crate::exact::{qpoly, Poly, Rational, Var};
use crate::mp::BigComplex;
use rug::Float;

/// `a + b sqrt(d)` with rational `a`, `b`, `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        QuadExt { a, b, d }
    }

    pub fn rational(a: Rational, d: &Rational) -> Self {
        QuadExt { a, b: Rational::new(), d: d.clone() }
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        QuadExt { a: Rational::from(&self.a + &o.a), b: Rational::from(&self.b + &o.b), d: self.d.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        let bb = Rational::from(&self.b * &o.b) * &self.d;
        QuadExt {
            a: Rational::from(&self.a * &o.a) + bb,
            b: Rational::from(&self.a * &o.b) + Rational::from(&self.b * &o.a),
            d: self.d.clone(),
        }
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: Rational::from(-&self.b), d: self.d.clone() }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadExt::rational(Rational::from(1), &self.d);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}

/// Discriminant of the K4 perfect-node eigenvalues.
pub fn disc_a() -> Poly<Rational> {
    qpoly(&[4, 0, 32, -204, 452, -516, 329, -112, 16], Var::P)
}

/// Discriminant of the all-terminal eigenvalues.
pub fn disc_b() -> Poly<Rational> {
    qpoly(&[144, -640, 1236, -1308, 793, -260, 36], Var::P)
}

fn lambda_center() -> Poly<Rational> {
    qpoly(&[2, 4, -14, 13, -4], Var::P)
}

fn weight_numer() -> Poly<Rational> {
    qpoly(&[2, 2, 10, -27, 19, -4], Var::P)
}

fn zeta_center() -> Poly<Rational> {
    qpoly(&[12, -26, 21, -6], Var::P)
}

/// `(lambda_+, a_+)` in `Q(sqrt A)`; the minus pair is the conjugate.
pub fn k4_eigen_quad(p: &Rational) -> Result<(QuadExt, QuadExt)> {
    let a = disc_a().eval(p);
    if a == 0 {
        return Err(Error::Degenerate("the eigenvalues coincide".into()));
    }
    let half_p = Rational::from(p / 2u32);
    let lam = QuadExt::new(Rational::from(&half_p * &lambda_center().eval(p)), half_p, a.clone());
    let w = QuadExt::new(Rational::from(p + 1u32) / 4u32, weight_numer().eval(p) / (Rational::from(4u32) * &a), a);
    Ok((lam, w))
}

/// `(1-p)/2 delta_{n,0} + a_+ lambda_+^n + a_- lambda_-^n` in `Q(sqrt A)` (K4, perfect nodes).
pub fn partial_fraction_value(p: &Rational, n: u32) -> Result<QuadExt> {
    let (lam, w) = k4_eigen_quad(p)?;
    let plus = w.mul(&lam.pow(n));
    let minus = w.conj().mul(&lam.conj().pow(n));
    let mut v = plus.add(&minus);
    if n == 0 {
        v = v.add(&QuadExt::rational(Rational::from(1 - p.clone()) / 2u32, &v.d));
    }
    Ok(v)
}

/// Spectral quantities at perfect nodes.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub disc_a: Float,
    pub lambda_plus: BigComplex,
    pub lambda_minus: BigComplex,
    pub a_plus: BigComplex,
    pub a_minus: BigComplex,
    /// `-1 / ln lambda_+`, only for real `0 < lambda_+ < 1`.
    pub xi: Option<Float>,
    pub disc_b: Float,
    pub zeta_plus: BigComplex,
    pub zeta_minus: BigComplex,
}

fn csqrt(x: &Float) -> BigComplex {
    BigComplex::real(x.clone()).sqrt()
}

/// Closed forms for lambda_±, a_±, xi (K4) and zeta_± (all-terminal) at a rational `p`.
pub fn closed_forms(p: &Rational, prec: u32) -> Result<SpectralData> {
    let f = |r: Rational| Float::with_val(prec, &r);
    let da = f(disc_a().eval(p));
    let sa = csqrt(&da);
    if sa.is_zero() {
        return Err(Error::Degenerate("A vanishes: a_± undefined".into()));
    }
    let half_p = f(Rational::from(p / 2u32));
    let c = BigComplex::real(f(lambda_center().eval(p)));
    let mut lp = (&c + &sa).scale(&half_p);
    let mut lm = (&c - &sa).scale(&half_p);
    let base = BigComplex::real(f(Rational::from(p + 1u32) / 4u32));
    let corr = (&BigComplex::real(f(weight_numer().eval(p))) / &sa).scale(&Float::with_val(prec, 0.25));
    let mut ap = &base + &corr;
    let mut am = &base - &corr;
    if lp.im.is_zero() && lm.im.is_zero() && lp.re < lm.re {
        std::mem::swap(&mut lp, &mut lm);
        std::mem::swap(&mut ap, &mut am);
    }
    let xi = if lp.im.is_zero() && lp.re > 0 && lp.re < 1 {
        Some(Float::with_val(prec, -Float::with_val(prec, lp.re.ln_ref()).recip()))
    } else {
        None
    };
    let db = f(disc_b().eval(p));
    let sb = csqrt(&db);
    let half_p2 = f(Rational::from(p * p) / 2u32);
    let zc = BigComplex::real(f(zeta_center().eval(p)));
    let zp = (&zc + &sb).scale(&half_p2);
    let zm = (&zc - &sb).scale(&half_p2);
    Ok(SpectralData { disc_a: da, lambda_plus: lp, lambda_minus: lm, a_plus: ap, a_minus: am, xi, disc_b: db, zeta_plus: zp, zeta_minus: zm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn perfect_network() {
        let s = closed_forms(&q(1, 1), 128).unwrap();
        assert_eq!(s.disc_a, 1);
        assert_eq!(s.lambda_plus, BigComplex::one(128));
        assert_eq!(s.a_plus, BigComplex::one(128));
        assert_eq!(s.disc_b, 1);
        assert_eq!(s.zeta_plus, BigComplex::one(128));
        assert!(s.xi.is_none());
    }

    #[test]
    fn half() {
        let s = closed_forms(&q(1, 2), 200).unwrap();
        assert_eq!(s.disc_a, Float::with_val(64, 189) / 64);
        let want = (Float::with_val(200, 21).sqrt() * 3u32 + 15u32) / 32u32;
        assert!(Float::with_val(200, &s.lambda_plus.re - &want).abs() < 1e-55);
        assert_eq!(s.disc_b, Float::with_val(64, 23) / 2);
        assert!((s.zeta_plus.re.to_f64() - 0.861395).abs() < 1e-6);
        assert!((s.lambda_plus.re.to_f64() - 0.8983665).abs() < 1e-6);
        let (lam, _) = k4_eigen_quad(&q(1, 2)).unwrap();
        assert_eq!(lam, QuadExt::new(q(15, 32), q(1, 4), q(189, 64)));
    }

    #[test]
    fn zero_p() {
        let s = closed_forms(&q(0, 1), 64).unwrap();
        assert!(s.lambda_plus.is_zero());
    }
}
