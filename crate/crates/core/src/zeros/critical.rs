//! Critical parameters: exact elimination of two curves in `(p, rho)` and bisection on
//! structural predicates.

use super::locus::normalize_univariate;
use super::relation::{factor_through, refine_real_root};
use super::locus::{isolated_zeros, segment_gap};
use super::{aberth_roots, default_precision};
use crate::error::{Error, Result};
use crate::exact::{resultant, swap_vars, BiPoly, Integer, Poly, Rational, Var};
use crate::genfunc::{builtin_destination, gf_from_transfer, Gf};
use crate::graphs::Family;
use crate::mp::BigComplex;
use rug::Float;
use std::str::FromStr;

/// A real solution of two curves with the irreducible polynomials of each coordinate.
#[derive(Clone, Debug)]
pub struct CriticalPoint {
    pub rho: Float,
    pub p: Float,
    pub rho_poly: Poly<Integer>,
    pub p_poly: Poly<Integer>,
}

#[derive(Clone, Debug)]
pub struct Elimination {
    /// `Res_p(A, B)`, squarefree, primitive.
    pub rho_eliminant: Poly<Integer>,
    /// `Res_rho(A, B)`, squarefree, primitive.
    pub p_eliminant: Poly<Integer>,
    pub points: Vec<CriticalPoint>,
}

/// `f(p, rho)` at real arguments, with the matching absolute-value bound.
pub fn eval_bi(f: &BiPoly, p: &Float, rho: &Float) -> (Float, Float) {
    let prec = p.prec().max(rho.prec());
    let mut v = Float::with_val(prec, 0);
    let mut s = Float::with_val(prec, 0);
    let (pa, ra) = (Float::with_val(prec, p.abs_ref()), Float::with_val(prec, rho.abs_ref()));
    for c in f.coeffs().iter().rev() {
        let mut cv = Float::with_val(prec, 0);
        let mut cs = Float::with_val(prec, 0);
        for a in c.coeffs().iter().rev() {
            cv = cv * rho + a;
            cs = cs * &ra + Float::with_val(prec, a).abs();
        }
        v = v * p + cv;
        s = s * &pa + cs;
    }
    (v, s)
}

fn real_roots(f: &Poly<Integer>, hi_prec: u32) -> Result<Vec<Float>> {
    let Some(d) = f.degree() else { return Ok(Vec::new()) };
    if d == 0 {
        return Ok(Vec::new());
    }
    let prec = default_precision(d).max(256);
    let zs = aberth_roots(&f.to_rational(), prec)?;
    let tol = Float::with_val(64, Float::i_exp(1, -(prec as i32) / 4));
    let mut out = Vec::new();
    for r in &zs.roots {
        let scale = Float::with_val(64, r.z.abs()).max(&Float::with_val(64, 1));
        if Float::with_val(64, r.z.im.abs_ref()) <= Float::with_val(64, &tol * &scale) {
            out.push(refine_real_root(f, &r.z.re, hi_prec));
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

fn known_factor(known: &mut Vec<Poly<Integer>>, f: &Poly<Integer>, x: &Float) -> Poly<Integer> {
    for g in known.iter() {
        let v = g.coeffs().iter().rev().fold(Float::with_val(x.prec(), 0), |acc, c| acc * x + c);
        let s = g.coeffs().iter().rev().fold(Float::with_val(x.prec(), 0), |acc, c| acc * Float::with_val(64, x.abs_ref()) + Float::with_val(64, c).abs());
        if Float::with_val(64, v.abs() / s) < Float::with_val(64, Float::i_exp(1, -(x.prec() as i32) / 2)) {
            return g.clone();
        }
    }
    let g = factor_through(f, x).unwrap_or_else(|| f.clone());
    known.push(g.clone());
    g
}

/// Eliminate each variable in turn, then pair the real roots that satisfy both curves.
pub fn critical_rho_exact(a: &BiPoly, b: &BiPoly) -> Result<Elimination> {
    let hi = 2048;
    let rp = resultant(a, b)?;
    if rp.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let (inner, outer) = (a.coeffs()[0].var(), a.var());
    let rr = resultant(&swap_vars(a, inner, outer), &swap_vars(b, inner, outer))?;
    if rr.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let rho_elim = normalize_univariate(&rp.with_var(Var::Rho))?;
    let p_elim = normalize_univariate(&rr.with_var(Var::P))?;
    let rhos = real_roots(&rho_elim, hi)?;
    let ps = real_roots(&p_elim, hi)?;
    let tol = Float::with_val(64, Float::i_exp(1, -(hi as i32) / 4));
    let mut points = Vec::new();
    let mut rho_known: Vec<Poly<Integer>> = Vec::new();
    let mut p_known: Vec<Poly<Integer>> = Vec::new();
    for r in &rhos {
        for p in &ps {
            let ok = [a, b].iter().all(|f| {
                let (v, s) = eval_bi(f, p, r);
                s.is_zero() || Float::with_val(64, v.abs() / s) < tol
            });
            if ok {
                let rho_poly = known_factor(&mut rho_known, &rho_elim, r);
                let p_poly = known_factor(&mut p_known, &p_elim, p);
                points.push(CriticalPoint { rho: r.clone(), p: p.clone(), rho_poly, p_poly });
            }
        }
    }
    Ok(Elimination { rho_eliminant: rho_elim, p_eliminant: p_elim, points })
}

/// Bisect a monotone boolean predicate on `[lo, hi]` until the bracket is narrower than `tol`.
///
/// The midpoints are short dyadic rationals, so exact generating functions stay cheap.
pub fn critical_rho_bisect<F>(mut predicate: F, lo: &Rational, hi: &Rational, tol: f64) -> Result<Rational>
where
    F: FnMut(&Rational) -> Result<bool>,
{
    if lo >= hi {
        return Err(Error::Invalid("empty bracket".into()));
    }
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let fa = predicate(&a)?;
    let fb = predicate(&b)?;
    if fa == fb {
        return Err(Error::NotMonotone(format!("predicate is {fa} at both {a} and {b}")));
    }
    let tol = Rational::from_f64(tol).ok_or_else(|| Error::Invalid("tolerance".into()))?;
    while Rational::from(&b - &a) > tol {
        let m = Rational::from(&a + &b) / 2u32;
        if predicate(&m)? == fa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(Rational::from(&a + &b) / 2u32)
}

/// Structural tests that switch on or off at a critical rho.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Structure {
    /// At least this many isolated zeros are dominance-valid.
    IsolatedValid { at_least: usize },
    /// Some real `p` in the window has a dominant complex-conjugate pair.
    Segment { lo: f64, hi: f64 },
}

/// Outcome of one structural test.
#[derive(Clone, Debug)]
pub struct Observation {
    pub holds: bool,
    /// The `p` closest to switching: the isolated zero of smallest margin, or the segment peak.
    pub p: Option<BigComplex>,
    /// Margin of that `p` (log-modulus units).
    pub margin: f64,
}

const SEGMENT_GRID: usize = 600;

fn golden_max(f: &mut dyn FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc >= fd { (c, fc) } else { (d, fd) })
}

/// Largest segment gap over real `p` in `[lo, hi]`: grid, then golden-section around the best local maxima.
pub fn segment_peak(g: &Gf, lo: f64, hi: f64, prec: u32) -> Result<(f64, f64)> {
    let mut gap = |p: f64| segment_gap(g, &Float::with_val(prec, p));
    let h = (hi - lo) / SEGMENT_GRID as f64;
    let vals: Vec<f64> = (0..=SEGMENT_GRID).map(|i| gap(lo + h * i as f64)).collect::<Result<_>>()?;
    let mut peaks: Vec<usize> = (0..=SEGMENT_GRID)
        .filter(|&i| (i == 0 || vals[i] >= vals[i - 1]) && (i == SEGMENT_GRID || vals[i] >= vals[i + 1]))
        .collect();
    peaks.sort_by(|a, b| vals[*b].total_cmp(&vals[*a]));
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for &i in peaks.iter().take(3) {
        let a = (lo + h * (i as f64 - 1.0)).max(lo);
        let b = (lo + h * (i as f64 + 1.0)).min(hi);
        let (p, v) = golden_max(&mut gap, a, b, 1e-10)?;
        let (p, v) = if vals[i] > v { (lo + h * i as f64, vals[i]) } else { (p, v) };
        if v > best.1 {
            best = (p, v);
        }
    }
    Ok(best)
}

/// Evaluate a structural test at rational rho.
pub fn observe(family: Family, structure: Structure, rho: &Rational) -> Result<Observation> {
    let prec = 256;
    match structure {
        Structure::IsolatedValid { at_least } => {
            let zs = isolated_zeros(family, rho, prec)?;
            let valid = zs.iter().filter(|z| z.is_valid()).count();
            let near = zs
                .iter()
                .filter_map(|z| z.dominance.shared_margin.map(|m| (z, m)))
                .filter(|(z, _)| z.p.im >= 0)
                .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()));
            Ok(Observation {
                holds: valid >= at_least,
                p: near.map(|(z, _)| z.p.clone()),
                margin: near.map(|(_, m)| m).unwrap_or(f64::NAN),
            })
        }
        Structure::Segment { lo, hi } => {
            let g = gf_from_transfer(family, rho, builtin_destination(family))?;
            let (p, v) = segment_peak(&g, lo, hi, prec)?;
            Ok(Observation { holds: v > 0.0, p: Some(BigComplex::new(prec, p, 0.0)), margin: v })
        }
    }
}

/// A critical rho located by bisection, with the observation just inside the bracket.
#[derive(Clone, Debug)]
pub struct Bisected {
    pub rho: Rational,
    pub observation: Observation,
}

/// Bisect a [`Structure`] on `[lo, hi]` to within `tol`.
pub fn bisect_structure(family: Family, structure: Structure, lo: &Rational, hi: &Rational, tol: f64) -> Result<Bisected> {
    let rho = critical_rho_bisect(|r| observe(family, structure, r).map(|o| o.holds), lo, hi, tol)?;
    let observation = observe(family, structure, &rho)?;
    Ok(Bisected { rho, observation })
}

/// A named bisection setup for a known critical rho.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub family: Family,
    pub structure: Structure,
    pub lo: Rational,
    pub hi: Rational,
}

pub fn presets() -> Vec<Preset> {
    let k3f0 = Family::K3Cylinder { f_zero: true };
    let k3 = Family::K3Cylinder { f_zero: false };
    let r = |a: i64, b: i64| Rational::from((a, b));
    let pr = |name, family, structure, lo, hi| Preset { name, family, structure, lo, hi };
    vec![
        pr("k4-rho-c1", Family::K4Ladder, Structure::IsolatedValid { at_least: 3 }, r(1, 10), r(3, 10)),
        pr("k4-rho-c2", Family::K4Ladder, Structure::IsolatedValid { at_least: 2 }, r(3, 10), r(1, 2)),
        pr("k3f0-segment-low", k3f0, Structure::Segment { lo: 1.0, hi: 3.0 }, r(2, 5), r(1, 2)),
        pr("k3f0-segment-high", k3f0, Structure::Segment { lo: 1.0, hi: 3.0 }, r(7, 10), r(9, 10)),
        pr("k3-isolated", k3, Structure::IsolatedValid { at_least: 1 }, r(3, 10), r(2, 5)),
        pr("k3-segment-low", k3, Structure::Segment { lo: 1.0, hi: 6.0 }, r(1, 100), r(1, 10)),
        pr("k3-segment-high", k3, Structure::Segment { lo: 1.0, hi: 6.0 }, r(3, 4), r(9, 10)),
    ]
}

pub fn preset(name: &str) -> Result<Preset> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::Invalid(format!("unknown preset {name:?}")))
}

impl FromStr for Structure {
    type Err = Error;

    /// `isolated:K` or `segment:LO:HI`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Invalid(format!("bad structure {s:?}, expected isolated:K or segment:LO:HI"));
        match parts.as_slice() {
            ["isolated", k] => Ok(Structure::IsolatedValid { at_least: k.parse().map_err(|_| bad())? }),
            ["segment", lo, hi] => Ok(Structure::Segment { lo: lo.parse().map_err(|_| bad())?, hi: hi.parse().map_err(|_| bad())? }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn bi(rows: &[&[i64]]) -> BiPoly {
        let np = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let c = (0..np)
            .map(|i| Poly::new(rows.iter().map(|r| Rational::from(r.get(i).copied().unwrap_or(0))).collect(), Var::Rho))
            .collect();
        Poly::new(c, Var::P)
    }

    #[test]
    fn planted_pair() {
        // p - rho, p + rho - 1
        let a = bi(&[&[0, 1], &[-1]]);
        let b = bi(&[&[-1, 1], &[1]]);
        let e = critical_rho_exact(&a, &b).unwrap();
        assert_eq!(e.points.len(), 1);
        assert_eq!(e.points[0].rho.to_f64(), 0.5);
        assert_eq!(e.points[0].p.to_f64(), 0.5);
        assert_eq!(e.points[0].rho_poly, Poly::from_i64s(&[-1, 2], Var::Rho));
    }

    #[test]
    fn shared_component() {
        let a = bi(&[&[0, 1], &[-1]]);
        assert_eq!(critical_rho_exact(&a, &a).unwrap_err(), Error::IdenticallyZero);
    }

    #[test]
    fn bisect_threshold() {
        let r = critical_rho_bisect(|x| Ok(x.to_f64() < 0.3), &q(0, 1), &q(1, 1), 1e-9).unwrap();
        assert!((r.to_f64() - 0.3).abs() < 1e-9);
        let e = critical_rho_bisect(|_| Ok(true), &q(0, 1), &q(1, 1), 1e-3).unwrap_err();
        assert!(matches!(e, Error::NotMonotone(_)));
    }
}
