use super::ring::{GcdRing, Ring};
use crate::error::{Error, Result};
use rug::{Integer, Rational};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Variable tag of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Var {
    /// Tag of constants built through generic ring code; compatible with every variable.
    Free,
    X,
    P,
    Z,
    Rho,
    T,
    /// `Z = z^2`
    BigZ,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Free | Var::X => "x",
            Var::P => "p",
            Var::Z => "z",
            Var::Rho => "rho",
            Var::T => "T",
            Var::BigZ => "Z",
        }
    }

    fn merge(self, o: Var) -> Result<Var> {
        match (self, o) {
            (Var::Free, v) | (v, Var::Free) => Ok(v),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::VarMismatch(a.name().into(), b.name().into())),
        }
    }
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `var^i`.
#[derive(Clone, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
    var: Var,
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs && (self.var.merge(o.var).is_ok() || self.coeffs.len() <= 1)
    }
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>, var: Var) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, var }
    }

    pub fn from_i64s(c: &[i64], var: Var) -> Self {
        Poly::new(c.iter().map(|&v| R::from_i64(v)).collect(), var)
    }

    pub fn zero_in(var: Var) -> Self {
        Poly { coeffs: vec![], var }
    }

    pub fn constant(c: R, var: Var) -> Self {
        Poly::new(vec![c], var)
    }

    /// The monomial `var`.
    pub fn var_in(var: Var) -> Self {
        Poly::new(vec![R::zero(), R::one()], var)
    }

    /// `c * var^k`
    pub fn monomial(c: R, k: usize, var: Var) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly::new(v, var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Power of the variable dividing `self` (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Divide by `var^k`, dropping lower terms.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect(), self.var)
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v, self.var)
    }

    /// Keep terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.coeffs.iter().take(n).cloned().collect(), self.var)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let var = self.var.merge(o.var)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Ok(Poly::new(v, var))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg_ref())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let var = self.var.merge(o.var)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Poly::zero_in(var));
        }
        let mut v = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j].add_product(a, b);
            }
        }
        Ok(Poly::new(v, var))
    }

    pub fn neg_ref(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.negate()).collect(), self.var)
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect(), self.var)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Poly::constant(R::one(), self.var);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x);
            acc.plus_assign(c);
        }
        acc
    }

    /// Evaluate with coefficients mapped into another ring.
    pub fn eval_with<S: Ring>(&self, x: &S, f: impl Fn(&R) -> S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x);
            acc.plus_assign(&f(c));
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&R::from_i64(i as i64)))
                .collect(),
            self.var,
        )
    }

    /// `f(c·x)`
    pub fn compose_scalar(&self, c: &R) -> Self {
        let mut pw = R::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a.times(&pw));
            pw = pw.times(c);
        }
        Poly::new(v, self.var)
    }

    /// `f(g(x))` by Horner.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero_in(g.var);
        for c in self.coeffs.iter().rev() {
            acc = &acc * g;
            acc = &acc + &Poly::constant(c.clone(), g.var);
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect(), self.var)
    }

    /// Reversed coefficient list `x^d f(1/x)` for a given `d >= deg`.
    pub fn reversed(&self, d: usize) -> Self {
        let mut v: Vec<R> = (0..=d).map(|i| self.coeff(i)).collect();
        v.reverse();
        Poly::new(v, self.var)
    }

    /// Quotient and remainder over a field.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let var = self.var.merge(d.var)?;
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let inv = d
            .lc()
            .inverse()
            .ok_or_else(|| Error::Invalid("leading coefficient not invertible".into()))?;
        let dd = d.deg0();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero_in(var), Poly::new(r, var)));
        }
        let mut qv = vec![R::zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            let c = r[k + dd].times(&inv);
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    let t = c.times(b);
                    r[k + j].minus_assign(&t);
                }
            }
            qv[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(qv, var), Poly::new(r, var)))
    }

    /// Exact division in `R[x]`; `None` if `d` does not divide `self`.
    pub fn exact_div_poly(&self, d: &Self) -> Option<Self> {
        let var = self.var.merge(d.var).ok()?;
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero_in(var));
        }
        let dd = d.deg0();
        if self.deg0() < dd {
            return None;
        }
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut qv = vec![R::zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            if r[k + dd].is_zero() {
                continue;
            }
            let c = r[k + dd].exact_div(&lc)?;
            for (j, b) in d.coeffs.iter().enumerate() {
                let t = c.times(b);
                r[k + j].minus_assign(&t);
            }
            qv[k] = c;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Poly::new(qv, var))
        } else {
            None
        }
    }

    /// Pseudo-remainder `lc(d)^(deg f - deg d + 1) f mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self> {
        let var = self.var.merge(d.var)?;
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = d.deg0();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok(Poly::new(r, var));
        }
        let lc = d.lc();
        let steps = r.len() - dd;
        for k in (0..steps).rev() {
            let top = r[k + dd].clone();
            for c in r.iter_mut() {
                *c = c.times(&lc);
            }
            if !top.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    let t = top.times(b);
                    r[k + j].minus_assign(&t);
                }
            }
            r.truncate(k + dd);
        }
        Ok(Poly::new(r, var))
    }
}

impl<R: GcdRing> Poly<R> {
    /// Gcd of the coefficients.
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.coeffs {
            g = g.gcd_with(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, zero stays zero.
    pub fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Poly::new(
            self.coeffs.iter().map(|a| a.exact_div(&c).expect("content divides")).collect(),
            self.var,
        )
    }
}

impl Poly<Rational> {
    /// Monic normalization over Q.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inverse().unwrap();
        self.scale(&inv)
    }

    /// Primitive integer polynomial with positive leading coefficient, proportional to `self`.
    pub fn to_primitive_integer(&self) -> Poly<Integer> {
        if self.is_zero() {
            return Poly::zero_in(self.var);
        }
        let mut l = Integer::from(1);
        for c in &self.coeffs {
            l.lcm_mut(c.denom());
        }
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| Integer::from(c.numer() * Integer::from(&l / c.denom())))
            .collect();
        let p = Poly::new(ints, self.var).primitive();
        if p.lc() < 0 {
            p.neg_ref()
        } else {
            p
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }
}

impl Poly<Integer> {
    pub fn to_rational(&self) -> Poly<Rational> {
        self.map(|c| Rational::from(c.clone()))
    }

    /// Largest coefficient bit length.
    pub fn max_bits(&self) -> u32 {
        self.coeffs.iter().map(|c| c.significant_bits()).max().unwrap_or(0)
    }
}

impl<R: Ring> Ring for Poly<R> {
    const FIELD: bool = false;
    fn zero() -> Self {
        Poly::zero_in(Var::Free)
    }
    fn one() -> Self {
        Poly::constant(R::one(), Var::Free)
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(R::from_i64(v), Var::Free)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self.checked_add(o).expect("variable mismatch")
    }
    fn minus(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("variable mismatch")
    }
    fn times(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("variable mismatch")
    }
    fn negate(&self) -> Self {
        self.neg_ref()
    }
    fn plus_assign(&mut self, o: &Self) {
        let var = self.var.merge(o.var).expect("variable mismatch");
        self.var = var;
        if self.coeffs.len() < o.coeffs.len() {
            self.coeffs.resize(o.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            a.plus_assign(b);
        }
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let var = self.var.merge(a.var).and_then(|v| v.merge(b.var)).expect("variable mismatch");
        self.var = var;
        let n = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < n {
            self.coeffs.resize(n, R::zero());
        }
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j].add_product(x, y);
            }
        }
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        self.exact_div_poly(o)
    }
    fn inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].inverse().map(|c| Poly::constant(c, self.var))
        } else {
            None
        }
    }
}

impl<R: GcdRing> GcdRing for Poly<R> {
    fn gcd_with(&self, o: &Self) -> Self {
        super::algo::gcd(self, o).expect("variable mismatch")
    }
    fn canonical_unit(&self) -> Self {
        Poly::constant(self.lc().canonical_unit(), Var::Free)
    }
}

impl<'a, R: Ring> Add for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: Self) -> Poly<R> {
        self.plus(o)
    }
}
impl<'a, R: Ring> Sub for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: Self) -> Poly<R> {
        self.minus(o)
    }
}
impl<'a, R: Ring> Mul for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: Self) -> Poly<R> {
        self.times(o)
    }
}
impl<'a, R: Ring> Neg for &'a Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.neg_ref()
    }
}
impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: Self) -> Poly<R> {
        self.plus(&o)
    }
}
impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: Self) -> Poly<R> {
        self.minus(&o)
    }
}
impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: Self) -> Poly<R> {
        self.times(&o)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*{}", c, self.var.name())?,
                _ => write!(f, "({})*{}^{}", c, self.var.name(), i)?,
            }
        }
        Ok(())
    }
}

/// Bivariate polynomial: outer variable `p`, coefficients in `rho` (or any inner variable).
pub type BiPoly = Poly<Poly<Rational>>;

/// Build a polynomial over Q from integers.
pub fn qpoly(c: &[i64], var: Var) -> Poly<Rational> {
    Poly::from_i64s(c, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::q;

    fn x(c: &[i64]) -> Poly<Rational> {
        qpoly(c, Var::X)
    }

    #[test]
    fn difference_of_squares() {
        let a = x(&[1, 1]);
        let b = x(&[-1, 1]);
        assert_eq!(&a * &b, x(&[-1, 0, 1]));
        assert!(x(&[-1, 0, 1]).eval(&q(1, 1)).is_zero());
    }

    #[test]
    fn var_mismatch_is_an_error() {
        let a = qpoly(&[1, 1], Var::P);
        let b = qpoly(&[1, 1], Var::Z);
        assert!(matches!(a.checked_mul(&b), Err(Error::VarMismatch(..))));
        assert!(a.checked_add(&Poly::constant(q(2, 1), Var::Free)).is_ok());
    }

    #[test]
    fn division() {
        let f = x(&[-1, 0, 0, 1]);
        let (qq, r) = f.div_rem(&x(&[-1, 1])).unwrap();
        assert_eq!(qq, x(&[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.exact_div_poly(&x(&[-1, 1])), Some(x(&[1, 1, 1])));
        assert_eq!(f.exact_div_poly(&x(&[1, 2])), None);
        let fi = f.to_primitive_integer();
        assert_eq!(fi.exact_div_poly(&Poly::from_i64s(&[1, 2], Var::X)), None);
    }

    #[test]
    fn derivative_and_compose() {
        let f = x(&[1, 2, 3]);
        assert_eq!(f.derivative(), x(&[2, 6]));
        assert_eq!(f.compose_scalar(&q(2, 1)), x(&[1, 4, 12]));
        assert_eq!(f.compose(&x(&[1, 1])), x(&[6, 8, 3]));
    }

    #[test]
    fn pseudo_remainder_integer() {
        let f = Poly::<Integer>::from_i64s(&[1, 0, 3], Var::X);
        let d = Poly::<Integer>::from_i64s(&[1, 2], Var::X);
        // 4·(3x²+1) = (2x+1)(6x-3) + 7
        assert_eq!(f.pseudo_rem(&d).unwrap(), Poly::from_i64s(&[7], Var::X));
    }

    #[test]
    fn primitive_integer() {
        let f = Poly::new(vec![q(1, 2), q(-3, 4)], Var::X);
        assert_eq!(f.to_primitive_integer(), Poly::from_i64s(&[-2, 3], Var::X));
    }
}
