//! Generating functions from the transfer matrices, by exact evaluation and interpolation.

use super::{Gf, GfSym};
use crate::error::{Error, Result};
use crate::exact::{charpoly, interpolate, ratfunc_reduce, Poly, RatFunc, Rational, Var};
use crate::graphs::{uniform_spec, Destination, Family};
use crate::transfer::cell_matrix;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

fn dest_row(family: Family, dest: Option<Destination>) -> Result<usize> {
    match (family, dest) {
        (Family::K4AllTerminal, _) => Ok(0),
        (Family::K4Ladder, Some(Destination::U)) => Err(Error::Invalid("destination U does not exist on the K4-ladder".into())),
        (_, Some(d)) => Ok(d.index()),
        (_, None) => Err(Error::Invalid("missing destination".into())),
    }
}

/// Reduced generating function over Q at a rational point `(p, rho)`.
pub fn point_gf(family: Family, p: &Rational, rho: &Rational, dest: Option<Destination>) -> Result<RatFunc<Rational>> {
    let row = dest_row(family, dest)?;
    let spec = uniform_spec(family, 1, p, rho, dest.or(family.default_destination()))?;
    let m0 = cell_matrix(family, &spec.cells[0]);
    let m1 = cell_matrix(family, &spec.cells[1]);
    let d = m1.dim;
    let rows: Vec<Vec<Rational>> = (0..d).map(|i| (0..d).map(|j| m1.get(i, j).clone()).collect()).collect();
    let den = charpoly(&rows, Var::Z)?.reversed(d);
    let mut v = m0.column(0);
    let mut s = Vec::with_capacity(d);
    for k in 0..d {
        if k > 0 {
            v = m1.mul_vec(&v);
        }
        s.push(v[row].clone());
    }
    let num = (&Poly::new(s, Var::Z) * &den).truncate(d);
    ratfunc_reduce(&num, &den)
}

/// Values at one interpolation node: a shape key and coefficient slots.
type Sample = (Vec<usize>, Vec<Vec<Rational>>);

/// Interpolation nodes 2, -1, 3, -2, 4, ...
fn node(j: usize) -> Rational {
    let k = (j / 2) as i64;
    Rational::from(if j % 2 == 0 { 2 + k } else { -1 - k })
}

/// Interpolate every slot as a polynomial in the node variable. Nodes whose shape key is below the
/// generic one (unlucky cancellations, degree drops) are discarded. The degree bound doubles until two
/// held-out nodes agree.
fn adaptive_interp(compute: &(dyn Fn(&Rational) -> Result<Sample> + Sync), var: Var) -> Result<(Vec<usize>, Vec<Vec<Poly<Rational>>>)> {
    let mut samples: Vec<(Rational, Sample)> = Vec::new();
    let mut k = 8usize;
    let mut next = 0usize;
    loop {
        if k > 1024 {
            return Err(Error::Degenerate("interpolation degree bound exceeded".into()));
        }
        let key_max = |ss: &[(Rational, Sample)]| -> Vec<usize> {
            let mut m: Vec<usize> = Vec::new();
            for (_, (key, _)) in ss {
                if m.len() < key.len() {
                    m.resize(key.len(), 0);
                }
                for (a, b) in m.iter_mut().zip(key) {
                    *a = (*a).max(*b);
                }
            }
            m
        };
        let usable = |ss: &[(Rational, Sample)]| -> usize {
            let km = key_max(ss);
            ss.iter().filter(|(_, (key, _))| *key == km).count()
        };
        while usable(&samples) < k + 2 {
            let batch: Vec<usize> = (next..next + (k + 2 - usable(&samples)).max(1)).collect();
            next += batch.len();
            use rayon::prelude::*;
            let got: Vec<Result<(Rational, Sample)>> = batch
                .par_iter()
                .map(|&j| {
                    let x = node(j);
                    compute(&x).map(|s| (x, s))
                })
                .collect();
            for g in got {
                match g {
                    Ok(v) => samples.push(v),
                    Err(Error::ZeroConstantTerm) | Err(Error::Degenerate(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            if next > 8 * k + 64 {
                return Err(Error::Degenerate("too many unlucky interpolation nodes".into()));
            }
        }
        let km = key_max(&samples);
        let good: Vec<&(Rational, Sample)> = samples.iter().filter(|(_, (key, _))| *key == km).collect();
        let (fit, check) = good.split_at(k);
        let slots = fit[0].1 .1.len();
        let mut out = Vec::with_capacity(slots);
        let mut ok = true;
        'slots: for s in 0..slots {
            let width = good.iter().map(|g| g.1 .1[s].len()).max().unwrap_or(0);
            let mut polys = Vec::with_capacity(width);
            for w in 0..width {
                let at = |g: &(Rational, Sample)| g.1 .1[s].get(w).cloned().unwrap_or_default();
                let xs: Vec<Rational> = fit.iter().map(|g| g.0.clone()).collect();
                let ys: Vec<Rational> = fit.iter().map(|g| at(g)).collect();
                let f = interpolate(&xs, &ys, var)?;
                for c in check {
                    if f.eval(&c.0) != at(c) {
                        ok = false;
                        break 'slots;
                    }
                }
                polys.push(f);
            }
            out.push(polys);
        }
        if ok {
            return Ok((km, out));
        }
        k *= 2;
    }
}

fn assemble<T>(key: &[usize], slots: Vec<Vec<Poly<Rational>>>, inner: impl Fn(Vec<Poly<Rational>>) -> T) -> (Vec<T>, Vec<T>) {
    let dn = key[0] + 1;
    let mut it = slots.into_iter().map(inner);
    let num: Vec<_> = (&mut it).take(dn).collect();
    let den: Vec<_> = it.collect();
    (num, den)
}

fn derive_at_rho(family: Family, rho: &Rational, dest: Option<Destination>) -> Result<Gf> {
    let compute = |p: &Rational| -> Result<Sample> {
        let g = point_gf(family, p, rho, dest)?;
        let key = vec![g.num.deg0(), g.den.deg0()];
        let mut slots: Vec<Vec<Rational>> = (0..=key[0]).map(|i| vec![g.num.coeff(i)]).collect();
        slots.extend((0..=key[1]).map(|i| vec![g.den.coeff(i)]));
        Ok((key, slots))
    };
    let (key, slots) = adaptive_interp(&compute, Var::P)?;
    let (num, den) = assemble(&key, slots, |mut v| v.pop().unwrap_or_else(|| Poly::zero_in(Var::P)));
    RatFunc::from_parts(Poly::new(num, Var::Z), Poly::new(den, Var::Z))
}

type Key = (Family, Rational, Option<Destination>);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Gf>>> {
    static C: OnceLock<Mutex<HashMap<Key, Arc<Gf>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Reduced generating function `sum R_n(p) z^n` at a rational rho, built from the transfer matrices.
///
/// The denominator is the reversed characteristic polynomial of the uniform cell matrix, the
/// numerator is fixed by the first series terms, and the common factor is removed. Results are cached.
pub fn gf_from_transfer(family: Family, rho: &Rational, dest: Option<Destination>) -> Result<Arc<Gf>> {
    let dest = if family == Family::K4AllTerminal { None } else { dest.or(family.default_destination()) };
    dest_row(family, dest)?;
    let key = (family, rho.clone(), dest);
    if let Some(g) = cache().lock().unwrap().get(&key) {
        return Ok(g.clone());
    }
    let g = Arc::new(derive_at_rho(family, rho, dest)?);
    cache().lock().unwrap().insert(key, g.clone());
    Ok(g)
}

type SymKey = (Family, Option<Destination>);

fn sym_cache() -> &'static Mutex<HashMap<SymKey, Arc<GfSym>>> {
    static C: OnceLock<Mutex<HashMap<SymKey, Arc<GfSym>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Generating function with symbolic rho: coefficients in `Q[p, rho]` (outer `p`, inner `rho`).
pub fn gf_symbolic(family: Family, dest: Option<Destination>) -> Result<Arc<GfSym>> {
    let dest = if family == Family::K4AllTerminal { None } else { dest.or(family.default_destination()) };
    let key = (family, dest);
    if let Some(g) = sym_cache().lock().unwrap().get(&key) {
        return Ok(g.clone());
    }
    let compute = |rho: &Rational| -> Result<Sample> {
        let g = derive_at_rho(family, rho, dest)?;
        let key = vec![g.num.deg0(), g.den.deg0()];
        let slots = g.num.coeffs().iter().chain(g.den.coeffs()).map(|c| c.coeffs().to_vec()).collect();
        Ok((key, slots))
    };
    let (k, slots) = adaptive_interp(&compute, Var::Rho)?;
    let (num, den) = assemble(&k, slots, |v| {
        let mut p = Poly::new(v, Var::P);
        if p.is_zero() {
            p = Poly::zero_in(Var::P);
        }
        p
    });
    let g = Arc::new(RatFunc::from_parts(Poly::new(num, Var::Z), Poly::new(den, Var::Z))?);
    sym_cache().lock().unwrap().insert(key, g.clone());
    Ok(g)
}
