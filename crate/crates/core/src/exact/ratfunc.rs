use super::algo::gcd;
use super::poly::Poly;
use super::ring::{GcdRing, Ring};
use crate::error::{Error, Result};

/// Reduced rational function `num / den` with `den(0) = 1`.
#[derive(Clone, Debug)]
pub struct RatFunc<R> {
    pub num: Poly<R>,
    pub den: Poly<R>,
}

impl<R: Ring> PartialEq for RatFunc<R> {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den
    }
}

impl<R: Ring> RatFunc<R> {
    /// Build without reduction; `den(0)` must be 1.
    pub fn from_parts(num: Poly<R>, den: Poly<R>) -> Result<Self> {
        if !den.coeff(0).is_one() {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(RatFunc { num, den })
    }

    /// First `n + 1` Taylor coefficients at 0.
    pub fn series(&self, n: usize) -> Vec<R> {
        let mut s: Vec<R> = Vec::with_capacity(n + 1);
        let dd = self.den.deg0();
        for k in 0..=n {
            let mut v = self.num.coeff(k);
            for j in 1..=dd.min(k) {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    v.minus_assign(&dj.times(&s[k - j]));
                }
            }
            s.push(v);
        }
        s
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> RatFunc<S> {
        RatFunc { num: self.num.map(f), den: self.den.map(f) }
    }
}

/// Remove the common factor and normalize the denominator to constant term 1.
pub fn ratfunc_reduce<R: GcdRing>(num: &Poly<R>, den: &Poly<R>) -> Result<RatFunc<R>> {
    if den.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let g = gcd(num, den)?;
    let (mut n, mut d) = if g.is_constant() {
        (num.clone(), den.clone())
    } else {
        (
            num.exact_div_poly(&g).ok_or_else(|| Error::Invalid("gcd does not divide numerator".into()))?,
            den.exact_div_poly(&g).ok_or_else(|| Error::Invalid("gcd does not divide denominator".into()))?,
        )
    };
    let c = d.coeff(0);
    if !c.is_one() {
        if let Some(inv) = c.inverse() {
            n = n.scale(&inv);
            d = d.scale(&inv);
        } else {
            let div = |p: &Poly<R>| -> Result<Poly<R>> {
                let v: Option<Vec<R>> = p.coeffs().iter().map(|a| a.exact_div(&c)).collect();
                v.map(|v| Poly::new(v, p.var()))
                    .ok_or_else(|| Error::Invalid("denominator constant term does not divide".into()))
            };
            n = div(&n)?;
            d = div(&d)?;
        }
    }
    Ok(RatFunc { num: n, den: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{qpoly, Var};
    use crate::exact::ring::q;

    #[test]
    fn reduce_common_factor() {
        let r = ratfunc_reduce(&qpoly(&[-1, 0, 1], Var::Z), &qpoly(&[-1, 1], Var::Z)).unwrap();
        assert_eq!(r.num, qpoly(&[1, 1], Var::Z));
        assert_eq!(r.den, qpoly(&[1], Var::Z));
    }

    #[test]
    fn geometric() {
        let r = ratfunc_reduce(&qpoly(&[1], Var::Z), &qpoly(&[1, -1], Var::Z)).unwrap();
        assert_eq!(r.den, qpoly(&[1, -1], Var::Z));
        assert_eq!(r.series(3), vec![q(1, 1); 4]);
    }

    #[test]
    fn zero_constant_term() {
        assert_eq!(ratfunc_reduce(&qpoly(&[1], Var::Z), &qpoly(&[0, 1], Var::Z)), Err(Error::ZeroConstantTerm));
    }
}
