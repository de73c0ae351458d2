//! Generating functions `sum R_n z^n`: printed forms, derivation from the transfer matrices,
//! series and recurrences, and spectral closed forms.

pub mod builtin;
pub mod derive;
mod expr;
pub mod spectral;

pub use builtin::{builtin_destination, builtin_gf, builtin_gf_symbolic, builtin_k3_factors, parse_tri, specialize};
pub use derive::{gf_from_transfer, gf_symbolic, point_gf};
pub use spectral::{closed_forms, partial_fraction_value, QuadExt, SpectralData};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, BiPoly, Poly, RatFunc, Rational, Ring, Var};
use crate::mp::BigComplex;
use serde_json::{json, Value};

/// Generating function with coefficients in `Q[p]` (outer variable `z`).
pub type Gf = RatFunc<Poly<Rational>>;
/// Generating function with coefficients in `Q[p, rho]`.
pub type GfSym = RatFunc<BiPoly>;

/// Linear recurrence `R_n = -b_1 R_{n-1} - ... - b_m R_{n-m}`, valid past the initial terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence<R> {
    pub b: Vec<R>,
    pub initial: Vec<R>,
}

impl<R: Ring> Recurrence<R> {
    pub fn from_gf(g: &RatFunc<R>) -> Self {
        let m = g.den.deg0();
        let b: Vec<R> = (1..=m).map(|k| g.den.coeff(k)).collect();
        let start = m.max(g.num.deg0() + 1);
        let initial = g.series(start - 1);
        Recurrence { b, initial }
    }
}

/// First `n + 1` Taylor coefficients.
pub fn series<R: Ring>(g: &RatFunc<R>, n: usize) -> Vec<R> {
    g.series(n)
}

/// First `n + 1` terms of a recurrence.
pub fn recurrence_apply<R: Ring>(rec: &Recurrence<R>, n: usize) -> Vec<R> {
    let mut out: Vec<R> = rec.initial.iter().take(n + 1).cloned().collect();
    while out.len() <= n {
        let k = out.len();
        let mut v = R::zero();
        for (j, bj) in rec.b.iter().enumerate() {
            if !bj.is_zero() {
                v.minus_assign(&bj.times(&out[k - 1 - j]));
            }
        }
        out.push(v);
    }
    out
}

/// Substitute a rational `p`.
pub fn at_p(g: &Gf, p: &Rational) -> RatFunc<Rational> {
    RatFunc { num: Poly::new(g.num.coeffs().iter().map(|c| c.eval(p)).collect(), Var::Z), den: Poly::new(g.den.coeffs().iter().map(|c| c.eval(p)).collect(), Var::Z) }
}

/// Complex coefficients of a `Q[p]` polynomial in `z` at a complex `p`.
pub fn coeffs_at(f: &Poly<Poly<Rational>>, p: &BigComplex) -> Vec<BigComplex> {
    let prec = p.prec();
    f.coeffs()
        .iter()
        .map(|c| {
            let mut acc = BigComplex::zero(prec);
            for a in c.coeffs().iter().rev() {
                acc = &(&acc * p) + &BigComplex::from_rational(prec, a);
            }
            acc
        })
        .collect()
}

fn poly_json(f: &Poly<Poly<Rational>>) -> Value {
    Value::Array(f.coeffs().iter().map(|c| Value::Array(c.coeffs().iter().map(|x| Value::String(fmt_rational(x))).collect())).collect())
}

fn poly_from_json(v: &Value) -> Result<Poly<Poly<Rational>>> {
    let bad = || Error::Invalid("malformed generating-function JSON".into());
    let rows = v.as_array().ok_or_else(bad)?;
    let mut out = Vec::new();
    for r in rows {
        let cs: Result<Vec<Rational>> = r.as_array().ok_or_else(bad)?.iter().map(|x| x.as_str().and_then(parse_rational).ok_or_else(bad)).collect();
        out.push(Poly::new(cs?, Var::P));
    }
    Ok(Poly::new(out, Var::Z))
}

/// `{num: [[coeffs of p]...], den: [...]}` with rational strings.
pub fn gf_to_json(g: &Gf) -> Value {
    json!({"num": poly_json(&g.num), "den": poly_json(&g.den)})
}

pub fn gf_from_json(v: &Value) -> Result<Gf> {
    RatFunc::from_parts(poly_from_json(&v["num"])?, poly_from_json(&v["den"])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qpoly};
    use crate::graphs::{Destination, Family};

    #[test]
    fn geometric() {
        let g = RatFunc::from_parts(qpoly(&[1], Var::Z), qpoly(&[1, -1], Var::Z)).unwrap();
        assert_eq!(series(&g, 3), vec![q(1, 1); 4]);
        assert_eq!(recurrence_apply(&Recurrence::from_gf(&g), 3), vec![q(1, 1); 4]);
    }

    #[test]
    fn k4_first_terms() {
        let g = builtin_gf(Family::K4Ladder, &q(1, 1)).unwrap();
        let s = series(&g, 1);
        assert_eq!(s[0], qpoly(&[1], Var::P));
        assert_eq!(s[1], qpoly(&[0, 1, 2, 0, -7, 7, -2], Var::P));
        let a = builtin_gf(Family::K4AllTerminal, &q(1, 1)).unwrap();
        let s = series(&a, 1);
        assert_eq!(s[0], qpoly(&[0, 1], Var::P));
        assert_eq!(s[1], qpoly(&[0, 0, 0, 16, -33, 24, -6], Var::P));
        assert!(builtin_gf(Family::K4AllTerminal, &q(1, 2)).is_err());
    }

    #[test]
    fn derived_k4_matches_printed() {
        for rho in [q(1, 1), q(2, 5)] {
            let d = gf_from_transfer(Family::K4Ladder, &rho, Some(Destination::S)).unwrap();
            let b = builtin_gf(Family::K4Ladder, &rho).unwrap();
            let b = crate::exact::ratfunc_reduce(&b.num, &b.den).unwrap();
            assert_eq!(*d, b, "rho={rho}");
        }
    }

    #[test]
    fn k3_printed_denominator_degree() {
        let (_, d2) = builtin_k3_factors(false).unwrap();
        assert_eq!(d2.deg0(), 4);
        let g = builtin_gf(Family::K3Cylinder { f_zero: true }, &q(1, 1)).unwrap();
        assert_eq!(g.den.deg0(), 9);
    }

    #[test]
    fn json_round_trip() {
        let g = builtin_gf(Family::K4AllTerminal, &q(1, 1)).unwrap();
        assert_eq!(gf_from_json(&gf_to_json(&g)).unwrap(), g);
    }
}
