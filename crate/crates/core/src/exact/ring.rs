use rug::{Integer, Rational};
use std::fmt::Debug;

/// Commutative ring with exact arithmetic.
///
/// Method names avoid the `std::ops` names so that `Poly` can implement both.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    const FIELD: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn plus_assign(&mut self, o: &Self) {
        *self = self.plus(o);
    }
    fn minus_assign(&mut self, o: &Self) {
        *self = self.minus(o);
    }
    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        let t = a.times(b);
        self.plus_assign(&t);
    }
    /// Exact quotient, `None` when `o` does not divide `self`.
    fn exact_div(&self, o: &Self) -> Option<Self>;
    fn inverse(&self) -> Option<Self> {
        None
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Rings with a gcd, used for content removal.
pub trait GcdRing: Ring {
    /// Some gcd, normalized so that the result is canonical for the ring.
    fn gcd_with(&self, o: &Self) -> Self;
    /// A unit `u` such that `self * u` is the canonical associate.
    fn canonical_unit(&self) -> Self;
}

impl Ring for Rational {
    const FIELD: bool = true;
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn plus(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn minus(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn times(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn negate(&self) -> Self {
        Rational::from(-self)
    }
    fn plus_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn minus_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += Rational::from(a * b);
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(Rational::from(self / o))
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational::from(self.recip_ref()))
        }
    }
}

impl GcdRing for Rational {
    fn gcd_with(&self, o: &Self) -> Self {
        if self.is_zero() && o.is_zero() {
            Rational::new()
        } else {
            Rational::from(1)
        }
    }
    fn canonical_unit(&self) -> Self {
        self.inverse().unwrap_or_else(Rational::one)
    }
}

impl Ring for Integer {
    const FIELD: bool = false;
    fn zero() -> Self {
        Integer::new()
    }
    fn one() -> Self {
        Integer::from(1)
    }
    fn from_i64(v: i64) -> Self {
        Integer::from(v)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn plus(&self, o: &Self) -> Self {
        Integer::from(self + o)
    }
    fn minus(&self, o: &Self) -> Self {
        Integer::from(self - o)
    }
    fn times(&self, o: &Self) -> Self {
        Integer::from(self * o)
    }
    fn negate(&self) -> Self {
        Integer::from(-self)
    }
    fn plus_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn minus_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let (q, r) = self.clone().div_rem(o.clone());
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    fn inverse(&self) -> Option<Self> {
        if *self == 1 || *self == -1 {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl GcdRing for Integer {
    fn gcd_with(&self, o: &Self) -> Self {
        Integer::from(self.gcd_ref(o))
    }
    fn canonical_unit(&self) -> Self {
        if *self < 0 {
            Integer::from(-1)
        } else {
            Integer::from(1)
        }
    }
}

/// Parse `"num/den"`, `"num"`, a decimal `"0.25"` or scientific `"1e-6"`, exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m = parse_rational(m)?;
        let e: i32 = e.parse().ok()?;
        let t = Rational::from(Integer::from(Integer::u_pow_u(10, e.unsigned_abs())));
        return Some(if e >= 0 { m * t } else { m / t });
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::from((n, d)))
        }
        None => {
            if let Ok(n) = s.parse::<Integer>() {
                return Some(Rational::from(n));
            }
            // plain decimal like 0.25
            let (ip, fp) = s.split_once('.')?;
            let neg = ip.starts_with('-');
            let digits = format!("{}{}", ip.trim_start_matches('-'), fp);
            let n: Integer = digits.parse().ok()?;
            let d = Integer::from(Integer::u_pow_u(10, fp.len() as u32));
            let r = Rational::from((n, d));
            Some(if neg { -r } else { r })
        }
    }
}

/// Format as `num/den`, or `num` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shorthand for `num/den`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("6/8").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert!(parse_rational("1/0").is_none());
        assert_eq!(parse_rational("1e-6").unwrap(), q(1, 1_000_000));
        assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
        assert_eq!(fmt_rational(&q(13, 16)), "13/16");
        assert_eq!(fmt_rational(&q(4, 2)), "2");
    }

    #[test]
    fn integer_exact_div() {
        let a = Integer::from(12);
        assert_eq!(a.exact_div(&Integer::from(4)), Some(Integer::from(3)));
        assert_eq!(a.exact_div(&Integer::from(5)), None);
    }
}
