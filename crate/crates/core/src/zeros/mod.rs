//! Complex zeros of reliability polynomials and the structure of their limiting sets.

mod aberth;
mod eval;
pub mod critical;
pub mod locus;
pub mod relation;

pub use aberth::{aberth, eval_with_derivative, solve, AberthOptions, MpNewton, PolyProblem, RecurrenceProblem, RootProblem};
pub use eval::{CPoly, Xc};
pub use locus::{classify_gf, lambda_max, segment_gap, contains_factor, dominant_root_classify, double_root_locus, isolated_zero_locus, locus, locus_symbolic, opposite_root_locus, Dominance, LocusKind};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, squarefree_decomposition, modular_squarefree, Integer, Poly, Rational, Var};
use crate::graphs::{Destination, Family};
use crate::mp::{fmt_float, BigComplex};
use crate::transfer::scaled_reliability_integer;
use rug::ops::Pow;
use rug::Float;
use serde_json::{json, Value};

/// One root with its multiplicity and relative residual `|f(r)| / (‖f‖ max(1,|r|)^deg)`.
#[derive(Clone, Debug)]
pub struct Root {
    pub z: BigComplex,
    pub multiplicity: usize,
    pub residual: Float,
}

/// Which polynomial a zero set belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatterMeta {
    pub family: Family,
    pub n: usize,
    pub rho: Rational,
}

#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub meta: Option<ScatterMeta>,
    pub precision: u32,
    pub roots: Vec<Root>,
}

/// Default working precision for a degree.
pub fn default_precision(deg: usize) -> u32 {
    64 + 4 * deg as u32
}

fn to_complex(f: &Poly<Integer>, prec: u32) -> Vec<BigComplex> {
    f.coeffs().iter().map(|c| BigComplex::real(Float::with_val(prec, c))).collect()
}

/// Roots of one squarefree integer factor with `c_0 != 0`, doubling precision on failure.
fn solve_factor(f: &Poly<Integer>, prec: u32, opts: AberthOptions) -> Result<(Vec<BigComplex>, u32)> {
    let mut p = prec;
    let mut last = None;
    for _ in 0..3 {
        match aberth(&to_complex(f, p), p, opts) {
            Ok(r) => return Ok((r, p)),
            Err(e @ Error::NonConvergence { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        p *= 2;
    }
    Err(last.unwrap())
}

/// All roots of `f` with multiplicities (squarefree pre-pass, then Aberth on each factor).
pub fn aberth_roots(f: &Poly<Rational>, prec: u32) -> Result<ZeroSet> {
    aberth_roots_with(f, prec, AberthOptions::default())
}

pub fn aberth_roots_with(f: &Poly<Rational>, prec: u32, opts: AberthOptions) -> Result<ZeroSet> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::Invalid("constant polynomial has no roots".into()));
    }
    let g = f.to_primitive_integer();
    integer_roots(&g, prec, opts)
}

fn integer_roots(g: &Poly<Integer>, prec: u32, opts: AberthOptions) -> Result<ZeroSet> {
    let deg = g.deg0();
    let v = g.valuation();
    let rest = g.shift_down(v);
    let factors: Vec<(Poly<Integer>, usize)> = if rest.deg0() == 0 || modular_squarefree(&rest) {
        vec![(rest, 1)]
    } else {
        squarefree_decomposition(&rest.to_rational())?
            .into_iter()
            .map(|(h, m)| (h.to_primitive_integer(), m))
            .collect()
    };
    let mut roots = Vec::new();
    let mut used = prec;
    if v > 0 {
        roots.push(Root { z: BigComplex::zero(prec), multiplicity: v, residual: Float::with_val(64, 0) });
    }
    let norm = g.coeffs().iter().map(|c| Float::with_val(64, c).abs()).fold(Float::with_val(64, 0), |a, b| a.max(&b));
    for (h, m) in factors {
        if h.deg0() == 0 {
            continue;
        }
        let (rs, p) = solve_factor(&h, prec, opts)?;
        used = used.max(p);
        for z in rs {
            let residual = residual_of(g, &z, &norm, deg);
            roots.push(Root { z, multiplicity: m, residual });
        }
    }
    sort_roots(&mut roots);
    Ok(ZeroSet { meta: None, precision: used, roots })
}

fn residual_of(g: &Poly<Integer>, z: &BigComplex, norm: &Float, deg: usize) -> Float {
    let prec = z.prec();
    let (v, _) = eval_with_derivative(&to_complex(g, prec), z);
    let r = Float::with_val(64, z.abs()).max(&Float::with_val(64, 1));
    let scale = Float::with_val(64, r.pow(deg as u32)) * norm;
    Float::with_val(64, v.abs()) / scale
}

/// Zeros of `R_n(p)` for the family's printed destination (`S` for K4, `U` for K3).
pub fn zero_scatter(family: Family, n: usize, rho: &Rational, precision: Option<u32>) -> Result<ZeroSet> {
    zero_scatter_to(family, n, rho, crate::genfunc::builtin_destination(family), precision)
}

fn log2_int(c: &Integer) -> f64 {
    if *c == 0 {
        return f64::NEG_INFINITY;
    }
    let (m, e) = Float::with_val(64, c).to_f64_exp();
    e as f64 + m.abs().log2()
}

/// As [`zero_scatter`] for any destination.
///
/// The exact polynomial fixes degree, multiplicity of `p = 0` and squarefreeness;
/// the roots are refined on the generating-function recurrence.
pub fn zero_scatter_to(family: Family, n: usize, rho: &Rational, dest: Option<Destination>, precision: Option<u32>) -> Result<ZeroSet> {
    if n < 1 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    if *rho <= 0 {
        return Err(Error::Invalid("rho must be positive".into()));
    }
    let f = scaled_reliability_integer(family, n, rho, dest)?;
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    let prec = precision.unwrap_or_else(|| default_precision(deg));
    let v = f.valuation();
    let rest = f.shift_down(v);
    let meta = Some(ScatterMeta { family, n, rho: rho.clone() });
    if rest.deg0() > 0 && !modular_squarefree(&rest) {
        let mut z = integer_roots(&Poly::new(f.primitive().into_coeffs(), Var::P), prec, AberthOptions::default())?;
        z.meta = meta;
        return Ok(z);
    }
    let g = crate::genfunc::gf_from_transfer(family, rho, dest)?;
    let rec = crate::genfunc::Recurrence::from_gf(&g);
    let src = prec.max(128);
    let pb = RecurrenceProblem {
        b: rec.b.iter().map(|p| CPoly::from_rational(p, src)).collect(),
        init: rec.initial.iter().map(|p| CPoly::from_rational(p, src)).collect(),
        n,
        v,
        log2c: rest.coeffs().iter().map(log2_int).collect(),
    };
    let mut used = prec;
    let mut last = None;
    let mut found = None;
    for _ in 0..3 {
        match solve(&pb, used, AberthOptions::default()) {
            Ok(r) => {
                found = Some(r);
                break;
            }
            Err(e @ Error::NonConvergence { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        used *= 2;
    }
    let found = found.ok_or_else(|| last.unwrap())?;
    let scale = Float::with_val(64, rho.denom()).pow((crate::transfer::rho_degree(family) as usize * (n + 1)) as u32);
    let norm = f.coeffs().iter().map(|c| Float::with_val(64, c).abs()).fold(Float::with_val(64, 0), |a, b| a.max(&b)) / scale;
    let stage = pb.prepare(used);
    let mut roots = Vec::with_capacity(found.len() + 1);
    if v > 0 {
        roots.push(Root { z: BigComplex::zero(used), multiplicity: v, residual: Float::with_val(64, 0) });
    }
    for z in found {
        let val = stage.value(&eval::Cx { r: z.re.clone(), i: z.im.clone() });
        let r = Float::with_val(64, z.abs()).max(&Float::with_val(64, 1));
        let residual = Float::with_val(64, val.abs()) / (Float::with_val(64, r.pow(deg as u32)) * &norm);
        roots.push(Root { z, multiplicity: 1, residual });
    }
    sort_roots(&mut roots);
    Ok(ZeroSet { meta, precision: used, roots })
}

fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        let (ar, ai) = a.z.to_f64();
        let (br, bi) = b.z.to_f64();
        ar.total_cmp(&br).then(ai.total_cmp(&bi))
    });
}

impl ZeroSet {
    /// Number of roots counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Every root repeated by multiplicity.
    pub fn points(&self) -> Vec<&BigComplex> {
        self.roots.iter().flat_map(|r| std::iter::repeat(&r.z).take(r.multiplicity)).collect()
    }

    /// Distinct roots in f64.
    pub fn points_f64(&self) -> Vec<(f64, f64)> {
        self.roots.iter().map(|r| r.z.to_f64()).collect()
    }

    /// Distance from `(x, y)` to the nearest root.
    pub fn nearest(&self, x: f64, y: f64) -> Option<(f64, &Root)> {
        self.roots
            .iter()
            .map(|r| {
                let (a, b) = r.z.to_f64();
                ((a - x).hypot(b - y), r)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
    }

    pub fn max_residual(&self) -> Float {
        self.roots.iter().map(|r| r.residual.clone()).fold(Float::with_val(64, 0), |a, b| a.max(&b))
    }

    /// `re,im` lines at 20 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im\n");
        for z in self.points() {
            let (a, b) = z.fmt_digits(20);
            s.push_str(&a);
            s.push(',');
            s.push_str(&b);
            s.push('\n');
        }
        s
    }

    /// Reads `re,im` rows back at `prec` bits; repeated rows become multiplicities.
    pub fn from_csv(text: &str, prec: u32) -> Result<ZeroSet> {
        let mut roots: Vec<Root> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("re")) {
                continue;
            }
            let (a, b) = line.split_once(',').ok_or_else(|| Error::Invalid(format!("bad CSV row {}", i + 1)))?;
            let parse = |s: &str| {
                Float::parse(s.trim().replace('e', "@").replace('E', "@"))
                    .map(|v| Float::with_val(prec, v))
                    .map_err(|_| Error::Invalid(format!("bad number {s:?}")))
            };
            let z = BigComplex::from_floats(parse(a)?, parse(b)?);
            match roots.last_mut() {
                Some(r) if r.z == z => r.multiplicity += 1,
                _ => roots.push(Root { z, multiplicity: 1, residual: Float::with_val(64, 0) }),
            }
        }
        Ok(ZeroSet { meta: None, precision: prec, roots })
    }

    pub fn to_json(&self) -> Value {
        let meta = self.meta.as_ref().map(|m| {
            json!({"family": m.family.short_name(), "n": m.n, "rho": fmt_rational(&m.rho), "precision": self.precision})
        });
        let roots: Vec<Value> = self
            .roots
            .iter()
            .map(|r| {
                let (a, b) = r.z.fmt_digits(20);
                json!({"re": a, "im": b, "multiplicity": r.multiplicity, "residual": fmt_float(&r.residual, 6)})
            })
            .collect();
        json!({"metadata": meta, "precision": self.precision, "degree": self.degree(), "roots": roots})
    }

    /// Inverse of [`ZeroSet::to_json`]; roots are read at the stored precision.
    pub fn from_json(v: &Value) -> Result<ZeroSet> {
        let bad = |what: &str| Error::Invalid(format!("zero set JSON: bad {what}"));
        let precision = v["precision"].as_u64().ok_or_else(|| bad("precision"))? as u32;
        let meta = match &v["metadata"] {
            Value::Null => None,
            m => Some(ScatterMeta {
                family: m["family"].as_str().ok_or_else(|| bad("family"))?.parse()?,
                n: m["n"].as_u64().ok_or_else(|| bad("n"))? as usize,
                rho: m["rho"].as_str().and_then(crate::exact::parse_rational).ok_or_else(|| bad("rho"))?,
            }),
        };
        let parse = |x: &Value, what: &str| -> Result<Float> {
            let s = x.as_str().ok_or_else(|| bad(what))?;
            Float::parse(s).map(|f| Float::with_val(precision, f)).map_err(|_| bad(what))
        };
        let mut roots = Vec::new();
        for r in v["roots"].as_array().ok_or_else(|| bad("roots"))? {
            roots.push(Root {
                z: BigComplex::from_floats(parse(&r["re"], "re")?, parse(&r["im"], "im")?),
                multiplicity: r["multiplicity"].as_u64().ok_or_else(|| bad("multiplicity"))? as usize,
                residual: Float::with_val(64, parse(&r["residual"], "residual")?),
            });
        }
        Ok(ZeroSet { meta, precision, roots })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qpoly};

    #[test]
    fn json_round_trip() {
        let z = zero_scatter(Family::K4Ladder, 2, &q(1, 2), None).unwrap();
        let back = ZeroSet::from_json(&z.to_json()).unwrap();
        assert_eq!(back.to_csv(), z.to_csv());
        assert_eq!(back.meta, z.meta);
    }

    #[test]
    fn simple_quadratic() {
        let z = aberth_roots(&qpoly(&[-1, 0, 1], Var::P), 128).unwrap();
        let pts = z.points_f64();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].0 + 1.0).abs() < 1e-30 && (pts[1].0 - 1.0).abs() < 1e-30);
    }

    #[test]
    fn triple_zero() {
        let z = aberth_roots(&qpoly(&[0, 0, 0, 1], Var::P), 64).unwrap();
        assert_eq!(z.roots.len(), 1);
        assert_eq!(z.roots[0].multiplicity, 3);
        assert_eq!(z.degree(), 3);
    }

    #[test]
    fn repeated_factor() {
        // (p-2)^2 (p+1)
        let z = aberth_roots(&qpoly(&[4, 0, -3, 1], Var::P), 128).unwrap();
        assert_eq!(z.degree(), 3);
        let two = z.roots.iter().find(|r| r.multiplicity == 2).unwrap();
        assert!(two.z.dist(&BigComplex::new(128, 2.0, 0.0)) < 1e-30);
    }

    #[test]
    fn k4_single_cell() {
        let z = zero_scatter(Family::K4Ladder, 1, &q(1, 1), None).unwrap();
        assert_eq!(z.degree(), 6);
        assert!(z.nearest(0.0, 0.0).unwrap().0 < 1e-30);
        let f = qpoly(&[0, 1, 2, 0, -7, 7, -2], Var::P);
        for r in &z.roots {
            let v = f.eval_f64(r.z.to_f64().0);
            if r.z.im.to_f64().abs() < 1e-12 {
                assert!(v.abs() < 1e-9);
            }
            assert!(r.residual.to_f64() < 1e-15);
        }
    }

    #[test]
    fn csv_round_trip() {
        let z = aberth_roots(&qpoly(&[1, 0, 1], Var::P), 128).unwrap();
        let back = ZeroSet::from_csv(&z.to_csv(), 128).unwrap();
        assert_eq!(back.degree(), 2);
        assert!(back.roots[0].z.dist(&z.roots[0].z) < 1e-18);
    }
}
