//! Special points of the limiting curves: double roots, opposite roots and isolated zeros,
//! plus the ordering of eigenvalues at a given `p`.

use super::aberth::{solve, AberthOptions, PolyProblem};
use crate::error::{Error, Result};
use crate::exact::{gcd, modular_squarefree, resultant, resultant_interp, squarefree_part, swap_vars, BiPoly, Integer, Poly, Rational, Ring, Var};
use crate::genfunc::{builtin_destination, gf_from_transfer, gf_symbolic, Gf};
use crate::graphs::Family;
use crate::mp::BigComplex;
use rug::Float;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocusKind {
    /// `D(z) = D'(z) = 0`: curve endpoints.
    Double,
    /// `D(z) = D(-z) = 0`: the `T = -1` constraint.
    Opposite,
    /// `N(z) = D(z) = 0`: candidates for isolated limit points.
    Isolated,
}

impl FromStr for LocusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "double" | "endpoint" | "endpoints" => Ok(LocusKind::Double),
            "opposite" => Ok(LocusKind::Opposite),
            "isolated" => Ok(LocusKind::Isolated),
            other => Err(Error::Invalid(format!("unknown locus {other:?}"))),
        }
    }
}

/// `Res_z(D, dD/dz)`; a repeated factor in `z` is rejected.
pub fn double_root_eliminant<R: Ring>(d: &Poly<R>) -> Result<R> {
    let r = resultant(d, &d.derivative())?;
    if r.is_zero() {
        return Err(Error::Degenerate("denominator has a repeated factor in z".into()));
    }
    Ok(r)
}

/// Even and odd parts `D(z) = E(z^2) + z O(z^2)`.
pub fn even_odd<R: Ring>(d: &Poly<R>) -> (Poly<R>, Poly<R>) {
    let c = d.coeffs();
    let e: Vec<R> = c.iter().step_by(2).cloned().collect();
    let o: Vec<R> = c.iter().skip(1).step_by(2).cloned().collect();
    (Poly::new(e, d.var()), Poly::new(o, d.var()))
}

/// `Res_Z(E, O)`; zero when `D` is even (opposite roots exist everywhere).
pub fn opposite_root_eliminant<R: Ring>(d: &Poly<R>) -> Result<R> {
    let (e, o) = even_odd(d);
    if o.is_zero() {
        return Ok(R::zero());
    }
    if e.is_constant() && o.is_constant() {
        return Err(Error::Degenerate("no opposite-root condition for a degree-one denominator".into()));
    }
    resultant(&e, &o)
}

/// `Res_z(N, D)`.
pub fn isolated_eliminant<R: Ring>(n: &Poly<R>, d: &Poly<R>) -> Result<R> {
    resultant(n, d)
}

fn eliminant<R: Ring>(kind: LocusKind, n: &Poly<R>, d: &Poly<R>) -> Result<R> {
    match kind {
        LocusKind::Double => double_root_eliminant(d),
        LocusKind::Opposite => opposite_root_eliminant(d),
        LocusKind::Isolated => isolated_eliminant(n, d),
    }
}

/// Primitive integer form with positive leading coefficient, `p^k` and repeated factors removed.
pub fn normalize_univariate(f: &Poly<Rational>) -> Result<Poly<Integer>> {
    if f.is_zero() {
        return Ok(Poly::zero_in(f.var()));
    }
    let g = f.to_primitive_integer();
    let g = g.shift_down(g.valuation());
    let g = if g.deg0() > 0 && !modular_squarefree(&g) { squarefree_part(&g)?.primitive() } else { g };
    Ok(if g.lc() < 0 { g.neg_ref() } else { g })
}

/// Divide out factors depending on one variable only, and powers of `p`.
pub fn normalize_bivariate(f: &BiPoly) -> Result<BiPoly> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let mut f = f.shift_down(f.valuation());
    let mut c = f.coeffs()[0].clone();
    for x in &f.coeffs()[1..] {
        c = gcd(&c, x)?;
    }
    if c.deg0() > 0 {
        f = Poly::new(f.coeffs().iter().map(|x| x.exact_div_poly(&c).expect("content divides")).collect(), f.var());
    }
    let inner = f.coeffs()[0].var();
    let outer = f.var();
    let mut s = swap_vars(&f, inner, outer);
    let mut c = s.coeffs()[0].clone();
    for x in &s.coeffs()[1..] {
        c = gcd(&c, x)?;
    }
    if c.deg0() > 0 {
        s = Poly::new(s.coeffs().iter().map(|x| x.exact_div_poly(&c).expect("content divides")).collect(), s.var());
    }
    let f = swap_vars(&s, outer, inner);
    // rational content, sign
    let mut den = Integer::from(1);
    let mut num = Integer::new();
    for a in f.coeffs() {
        for b in a.coeffs() {
            den.lcm_mut(b.denom());
            num.gcd_mut(b.numer());
        }
    }
    let lc = f.lc().lc();
    let mut scale = Rational::from((den, num));
    if lc < 0 {
        scale = -scale;
    }
    Ok(f.map(|a| a.scale(&scale)))
}

/// [`eliminant`] for coefficients in `Q[p]`, through evaluation and interpolation.
pub fn eliminant_fixed(kind: LocusKind, n: &Poly<Poly<Rational>>, d: &Poly<Poly<Rational>>) -> Result<Poly<Rational>> {
    let r = match kind {
        LocusKind::Double => resultant_interp(d, &d.derivative())?,
        LocusKind::Opposite => {
            let (e, o) = even_odd(d);
            if o.is_zero() {
                return Ok(Poly::zero_in(Var::P));
            }
            if e.is_constant() && o.is_constant() {
                return Err(Error::Degenerate("no opposite-root condition for a degree-one denominator".into()));
            }
            resultant_interp(&e, &o)?
        }
        LocusKind::Isolated => resultant_interp(n, d)?,
    };
    if r.is_zero() && kind == LocusKind::Double {
        return Err(Error::Degenerate("denominator has a repeated factor in z".into()));
    }
    Ok(r)
}

fn family_gf(family: Family, rho: &Rational) -> Result<std::sync::Arc<Gf>> {
    gf_from_transfer(family, rho, builtin_destination(family))
}

/// Eliminant in `p` at a fixed rational rho, normalized.
pub fn locus(family: Family, kind: LocusKind, rho: &Rational) -> Result<Poly<Integer>> {
    let g = family_gf(family, rho)?;
    normalize_univariate(&eliminant_fixed(kind, &g.num, &g.den)?)
}

pub fn double_root_locus(family: Family, rho: &Rational) -> Result<Poly<Integer>> {
    locus(family, LocusKind::Double, rho)
}

pub fn opposite_root_locus(family: Family, rho: &Rational) -> Result<Poly<Integer>> {
    locus(family, LocusKind::Opposite, rho)
}

pub fn isolated_zero_locus(family: Family, rho: &Rational) -> Result<Poly<Integer>> {
    locus(family, LocusKind::Isolated, rho)
}

/// Eliminant in `(p, rho)` from the symbolic generating function.
///
/// Only the K4 ladder is supported: the K3 eliminations are too large to carry rho symbolically.
pub fn locus_symbolic(family: Family, kind: LocusKind) -> Result<BiPoly> {
    if family != Family::K4Ladder {
        return Err(Error::Unsupported("symbolic loci are implemented for the K4 ladder only".into()));
    }
    let g = gf_symbolic(family, builtin_destination(family))?;
    normalize_bivariate(&eliminant(kind, &g.num, &g.den)?)
}

/// Substitute `rho` into a bivariate locus.
pub fn at_rho(f: &BiPoly, rho: &Rational) -> Poly<Rational> {
    Poly::new(f.coeffs().iter().map(|c| c.eval(rho)).collect(), f.var())
}

/// `true` when `factor` divides `f` exactly.
pub fn contains_factor(f: &Poly<Integer>, factor: &Poly<Integer>) -> bool {
    f.to_rational().exact_div_poly(&factor.to_rational()).is_some()
}

/// Eigenvalues at one `p`, largest modulus first.
#[derive(Clone, Debug)]
pub struct Dominance {
    pub eigenvalues: Vec<BigComplex>,
    /// How many share the largest modulus within the tie tolerance.
    pub ties: usize,
    /// Index of the eigenvalue whose `z = 1/lambda` is closest to a root of `N`.
    pub shared: Option<usize>,
    /// `|N(1/lambda)| / sum |n_k| |z|^k` for each eigenvalue.
    pub residue: Vec<f64>,
    /// Whether a shared eigenvalue attains the largest modulus.
    pub common_root_dominant: bool,
    /// `ln |lambda_shared| - ln max_{others} |lambda|`.
    pub shared_margin: Option<f64>,
}

fn eval_complex(c: &Poly<Rational>, p: &BigComplex) -> BigComplex {
    let prec = p.prec();
    let mut acc = BigComplex::zero(prec);
    for a in c.coeffs().iter().rev() {
        acc = &(&acc * p) + &BigComplex::from_rational(prec, a);
    }
    acc
}

/// Roots of a complex polynomial (low to high), zero roots included.
pub fn complex_roots(c: &[BigComplex], prec: u32) -> Result<Vec<BigComplex>> {
    let tiny = |x: &BigComplex| x.is_zero();
    let mut hi = c.len();
    while hi > 0 && tiny(&c[hi - 1]) {
        hi -= 1;
    }
    let c = &c[..hi];
    let v = c.iter().take_while(|x| tiny(x)).count();
    let rest = &c[v..];
    let mut out: Vec<BigComplex> = (0..v).map(|_| BigComplex::zero(prec)).collect();
    if rest.len() > 1 {
        out.extend(solve(&PolyProblem::new(rest)?, prec, AberthOptions::default())?);
    }
    Ok(out)
}

/// Classify the eigenvalues `1/z` of `D(z)` at a complex `p`.
pub fn classify_gf(g: &Gf, p: &BigComplex) -> Result<Dominance> {
    let prec = p.prec();
    let d: Vec<BigComplex> = g.den.coeffs().iter().map(|c| eval_complex(c, p)).collect();
    let n: Vec<BigComplex> = g.num.coeffs().iter().map(|c| eval_complex(c, p)).collect();
    // lambda^m D(1/lambda): coefficients reversed
    let rev: Vec<BigComplex> = d.iter().rev().cloned().collect();
    let mut lam = complex_roots(&rev, prec)?;
    lam.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap_or(std::cmp::Ordering::Equal));
    let tol = Float::with_val(64, Float::i_exp(1, -(prec as i32) / 4));
    let top = lam.first().map(|l| l.abs()).unwrap_or_else(|| Float::with_val(prec, 0));
    let ties = lam
        .iter()
        .take_while(|l| {
            if top.is_zero() {
                return true;
            }
            let gap = Float::with_val(64, (Float::with_val(prec, &top - l.abs()) / &top).abs());
            gap < tol
        })
        .count();
    let residue: Vec<f64> = lam
        .iter()
        .map(|l| {
            if l.is_zero() {
                return f64::INFINITY;
            }
            let z = l.recip();
            let mut val = BigComplex::zero(prec);
            let mut scale = Float::with_val(prec, 0);
            let za = z.abs();
            for a in n.iter().rev() {
                val = &(&val * &z) + a;
                scale = scale * &za + a.abs();
            }
            if scale.is_zero() {
                return 0.0;
            }
            let r = Float::with_val(64, val.abs() / scale);
            let (m, e) = r.to_f64_exp();
            if m == 0.0 { f64::NEG_INFINITY } else { e as f64 + m.abs().log2() }
        })
        .collect();
    let shared = residue
        .iter()
        .enumerate()
        .filter(|(_, r)| **r < -(prec as f64) / 4.0)
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i);
    let shared_margin = shared.map(|s| {
        let ls = lam[s].abs().to_f64().ln();
        let other = lam.iter().enumerate().filter(|(i, _)| *i != s).map(|(_, l)| l.abs().to_f64().ln()).fold(f64::NEG_INFINITY, f64::max);
        ls - other
    });
    let common_root_dominant = shared.map(|s| s < ties).unwrap_or(false);
    Ok(Dominance { eigenvalues: lam, ties, shared, residue, common_root_dominant, shared_margin })
}

/// At real `p`: `ln max|non-real lambda| - ln max|real lambda|`; positive where a complex pair dominates.
pub fn segment_gap(g: &Gf, p: &Float) -> Result<f64> {
    let prec = p.prec();
    let d = classify_gf(g, &BigComplex::real(p.clone()))?;
    let tol = Float::with_val(64, Float::i_exp(1, -(prec as i32) / 4));
    let (mut re, mut cx) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for l in &d.eigenvalues {
        let m = l.abs();
        let lm = if m.is_zero() { f64::NEG_INFINITY } else { m.to_f64().ln() };
        if Float::with_val(64, l.im.abs_ref()) <= Float::with_val(64, &tol * &m) {
            re = re.max(lm);
        } else {
            cx = cx.max(lm);
        }
    }
    Ok(cx - re)
}

/// [`classify_gf`] for a family at rational rho.
pub fn dominant_root_classify(family: Family, p: &BigComplex, rho: &Rational) -> Result<Dominance> {
    let g = family_gf(family, rho)?;
    classify_gf(&g, p)
}

/// Eigenvalue of largest modulus of the uniform transfer matrix at rational `p`.
pub fn lambda_max(family: Family, p: &Rational, rho: &Rational, prec: u32) -> Result<BigComplex> {
    let d = dominant_root_classify(family, &BigComplex::from_rational(prec, p), rho)?;
    d.eigenvalues.into_iter().next().ok_or_else(|| Error::Degenerate("no eigenvalues".into()))
}

/// A root of the isolated-zero locus with the eigenvalue picture at that `p`.
#[derive(Clone, Debug)]
pub struct IsolatedZero {
    pub p: BigComplex,
    pub dominance: Dominance,
}

impl IsolatedZero {
    /// The shared eigenvalue strictly dominates all others.
    pub fn is_valid(&self) -> bool {
        self.dominance.shared_margin.is_some_and(|m| m > 1e-9)
    }
}

/// Roots of the isolated-zero locus at which `N` and `D` really share a root, with their dominance.
pub fn isolated_zeros(family: Family, rho: &Rational, prec: u32) -> Result<Vec<IsolatedZero>> {
    let g = family_gf(family, rho)?;
    let f = normalize_univariate(&eliminant_fixed(LocusKind::Isolated, &g.num, &g.den)?)?;
    if f.deg0() == 0 {
        return Ok(Vec::new());
    }
    let zs = super::aberth_roots(&f.to_rational(), prec)?;
    let mut out = Vec::new();
    for r in zs.roots {
        let dominance = classify_gf(&g, &r.z)?;
        if let Some(s) = dominance.shared {
            // a repeated eigenvalue at the shared root is a double pole, not an isolated zero
            let l = &dominance.eigenvalues[s];
            let scale = l.abs().to_f64().max(1e-300);
            if dominance.eigenvalues.iter().enumerate().any(|(i, m)| i != s && m.dist(l) < 1e-12 * scale) {
                continue;
            }
            out.push(IsolatedZero { p: r.z, dominance });
        }
    }
    Ok(out)
}

/// Squarefree-free helper: the `p`-polynomial of a bivariate constraint at a fixed rho as integers.
pub fn bivariate_at(f: &BiPoly, rho: &Rational) -> Poly<Integer> {
    at_rho(f, rho).with_var(Var::P).to_primitive_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qpoly};

    fn ipoly(c: &[i64]) -> Poly<Integer> {
        Poly::new(c.iter().map(|&v| Integer::from(v)).collect(), Var::P)
    }

    #[test]
    fn planted_double_root() {
        let d = Poly::new(vec![qpoly(&[1], Var::P), qpoly(&[-2], Var::P), qpoly(&[1], Var::P)], Var::Z);
        assert!(matches!(double_root_eliminant(&d), Err(Error::Degenerate(_))));
    }

    #[test]
    fn even_denominator() {
        let d = Poly::new(vec![qpoly(&[1], Var::P), qpoly(&[], Var::P), qpoly(&[-1], Var::P)], Var::Z);
        assert!(opposite_root_eliminant(&d).unwrap().is_zero());
    }

    #[test]
    fn k4_endpoints_and_crossings() {
        let a = ipoly(&[4, 0, 32, -204, 452, -516, 329, -112, 16]);
        let dl = double_root_locus(Family::K4Ladder, &q(1, 1)).unwrap();
        assert!(contains_factor(&dl, &a), "{dl:?}");
        let ol = opposite_root_locus(Family::K4Ladder, &q(1, 1)).unwrap();
        assert!(contains_factor(&ol, &ipoly(&[-2, -4, 14, -13, 4])));
    }

    #[test]
    fn k4_dominant_at_half() {
        let d = dominant_root_classify(Family::K4Ladder, &BigComplex::new(256, 0.5, 0.0), &q(1, 1)).unwrap();
        assert_eq!(d.ties, 1);
        let want = (15.0 + 3.0 * 21f64.sqrt()) / 32.0;
        assert!((d.eigenvalues[0].re.to_f64() - want).abs() < 1e-15);
        let one = dominant_root_classify(Family::K4Ladder, &BigComplex::new(256, 1.0, 0.0), &q(1, 1)).unwrap();
        assert!((one.eigenvalues[0].re.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn k4_tie_on_crossing() {
        let quartic = ipoly(&[-2, -4, 14, -13, 4]);
        let x = crate::zeros::relation::refine_real_root(&quartic, &Float::with_val(53, -0.2430623), 256);
        let d = dominant_root_classify(Family::K4Ladder, &BigComplex::real(x), &q(1, 1)).unwrap();
        assert_eq!(d.ties, 2);
    }
}
