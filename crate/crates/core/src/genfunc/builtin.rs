//! Transcribed generating functions.

use super::expr::eval;
use super::{Gf, GfSym};
use crate::error::{Error, Result};
use crate::exact::{BiPoly, Poly, RatFunc, Rational, Ring, Var};
use crate::graphs::{Destination, Family};

const K4_N: &str = "1/2*r*(1+p*r) - 1/2*p^2*r^3*(2-10*p+13*p^2-4*p^3-p^3*r)*z + (1-p)^2*p^5*(2-4*p+p^2)*(1-r)*r^5*z^2";
const K4_D: &str = "1 - p*r*(2+4*p*r-14*p^2*r+13*p^3*r-4*p^4*r)*z \
    + 2*(1-p)*p^3*r^3*(2-7*p+4*p^2+7*p^2*r-10*p^3*r+5*p^4*r-p^5*r)*z^2 \
    - 4*(2-p)*(1-p)^3*p^6*(1-r)*r^5*z^3";
const K4_SHIFT: &str = "1/2*r*(1-p*r)";

const K3F0_N: &str = "p^2 - (1-p)*p^4*(3+3*p-4*p^2)*z + (1-p)^3*p^6*(2+11*p-3*p^2-2*p^3)*z^2 \
    + (1-p)^3*p^8*(2-4*p+3*p^2+11*p^3-13*p^4+3*p^5)*z^3 \
    - (1-p)^4*p^10*(3+6*p-12*p^2+10*p^3-10*p^4+4*p^5)*z^4 \
    + (1-p)^6*p^12*(1+8*p-p^2-5*p^3-p^4+p^5)*z^5 - (1-p)^8*p^15*(2+5*p-4*p^2)*z^6 + (1-p)^10*p^18*z^7";
const K3F0_D1: &str = "1 - (1-p^2)*p*(1+p-p^2)*z + (1-p)^2*p^3*(1+p+p^2-2*p^3)*z^2 - (1-p)^4*p^6*z^3";
const K3F0_D2: &str = "1 - p*(2+2*p+p^2-9*p^3+5*p^4)*z \
    + (1-p)*p^2*(1+5*p+5*p^2-6*p^3-15*p^4+13*p^5+p^6-2*p^7)*z^2 \
    - (1-p)^2*p^4*(2+6*p+6*p^2-26*p^3+17*p^4-18*p^5+27*p^6-16*p^7+3*p^8)*z^3 \
    + (1-p)^4*p^6*(1+6*p+4*p^2-p^3-17*p^4+9*p^5+3*p^6-2*p^7)*z^4 \
    - (1-p)^6*p^9*(2+4*p+p^2-7*p^3+3*p^4)*z^5 + (1-p)^8*p^12*z^6";

const K3_N: &str = "p*(1+p-p^2) - (2-p)*(1-p)^2*p^3*(1+p)*(1+3*p-3*p^2)*z \
    + (1-p)^5*p^5*(1+10*p+8*p^2-5*p^3-2*p^4)*z^2 \
    - (1-p)^6*p^8*(3+8*p-25*p^2+9*p^3+4*p^4-p^5)*z^3 \
    + (1-p)^8*p^11*(1-2*p)*(3+3*p-7*p^2+2*p^3)*z^4 - (1-p)^11*p^14*(1-3*p+p^2)*z^5";
const K3_D1: &str = "1 - (1-p)^2*p*(1+p)*(1+p-p^2)*z + (1-p)^4*p^3*(1+p+p^2-2*p^3)*z^2 - (1-p)^7*p^6*z^3";
const K3_D2: &str = "1 - p*(1+3*p+4*p^2-23*p^3+23*p^4-7*p^5)*z \
    + (1-p)^2*p^3*(1+6*p+2*p^2-9*p^3-8*p^4+16*p^5-6*p^6)*z^2 \
    - (1-p)^4*p^6*(2+4*p+p^2-15*p^3+12*p^4-3*p^5)*z^3 + (1-p)^7*p^9*z^4";

const ALL_N: &str = "p + p^3*(1-p)*(4-3*p)*z";
const ALL_D: &str = "1 - p^2*(12-26*p+21*p^2-6*p^3)*z + 2*p^5*(1-p)^3*(2-p)*z^2";

type Tri = Poly<BiPoly>;

/// Evaluate an expression in `p`, `r` (rho) and `z` into `Q[p, rho][z]`.
pub fn parse_tri(src: &str) -> Result<Tri> {
    let cst = |c: &Rational| -> Tri { Poly::constant(Poly::constant(Poly::constant(c.clone(), Var::Rho), Var::P), Var::Z) };
    let var = |c: char| -> Option<Tri> {
        let one_r = Poly::constant(Rational::from(1), Var::Rho);
        let zero_r = Poly::zero_in(Var::Rho);
        match c {
            'p' => Some(Poly::constant(Poly::new(vec![zero_r, one_r], Var::P), Var::Z)),
            'r' => Some(Poly::constant(Poly::constant(Poly::var_in(Var::Rho), Var::P), Var::Z)),
            'z' => Some(Poly::new(vec![Poly::zero_in(Var::P), Poly::constant(one_r, Var::P)], Var::Z)),
            _ => None,
        }
    };
    eval(src, &cst, &var)
}

/// Destination the printed generating function refers to.
pub fn builtin_destination(family: Family) -> Option<Destination> {
    match family {
        Family::K4Ladder => Some(Destination::S),
        Family::K3Cylinder { .. } => Some(Destination::U),
        Family::K4AllTerminal => None,
    }
}

/// The printed generating function with symbolic node reliability. Only the K4-ladder form depends on rho;
/// the others are the perfect-node forms and are constant in rho.
pub fn builtin_gf_symbolic(family: Family) -> Result<GfSym> {
    let (num, den) = match family {
        Family::K4Ladder => {
            let d = parse_tri(K4_D)?;
            let shift = parse_tri(K4_SHIFT)?;
            (shift.times(&d).plus(&parse_tri(K4_N)?), d)
        }
        Family::K3Cylinder { f_zero: true } => (parse_tri(K3F0_N)?, parse_tri(K3F0_D1)?.times(&parse_tri(K3F0_D2)?)),
        Family::K3Cylinder { f_zero: false } => (parse_tri(K3_N)?, parse_tri(K3_D1)?.times(&parse_tri(K3_D2)?)),
        Family::K4AllTerminal => (parse_tri(ALL_N)?, parse_tri(ALL_D)?),
    };
    RatFunc::from_parts(num.with_var(Var::Z), den.with_var(Var::Z))
}

/// Printed denominator factors (`D1`, `D2`) of the K3 forms at rho = 1.
pub fn builtin_k3_factors(f_zero: bool) -> Result<(Poly<Poly<Rational>>, Poly<Poly<Rational>>)> {
    let (a, b) = if f_zero { (K3F0_D1, K3F0_D2) } else { (K3_D1, K3_D2) };
    let one = Rational::from(1);
    Ok((specialize_poly(&parse_tri(a)?, &one), specialize_poly(&parse_tri(b)?, &one)))
}

/// Substitute a rational rho into a `Q[p, rho][z]` polynomial.
pub fn specialize_poly(f: &Poly<BiPoly>, rho: &Rational) -> Poly<Poly<Rational>> {
    Poly::new(f.coeffs().iter().map(|c| Poly::new(c.coeffs().iter().map(|i| i.eval(rho)).collect(), Var::P)).collect(), Var::Z)
}

pub fn specialize(g: &GfSym, rho: &Rational) -> Gf {
    RatFunc { num: specialize_poly(&g.num, rho), den: specialize_poly(&g.den, rho) }
}

/// The printed generating function at a rational node reliability.
///
/// The K3 and all-terminal forms are printed for perfect nodes only.
pub fn builtin_gf(family: Family, rho: &Rational) -> Result<Gf> {
    if family != Family::K4Ladder && *rho != 1 {
        return Err(Error::Unsupported(format!("the printed {family} form is for perfect nodes (rho = 1) only")));
    }
    Ok(specialize(&builtin_gf_symbolic(family)?, rho))
}
