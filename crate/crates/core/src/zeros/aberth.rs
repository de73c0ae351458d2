//! Simultaneous refinement of all roots with Aberth corrections and Jacobi-style rounds.
//!
//! A scaled double-precision stage moves the approximations into place; MPFR stages finish.

use super::eval::{mul_sub, newton_ratio, newton_ratio_fast, CPoly, Cx, MpPoly, Tmp, Xc};
use crate::error::{Error, Result};
use crate::mp::BigComplex;
use num_complex::Complex64;
use rayon::prelude::*;
use rug::float::Constant;
use rug::{Assign, Float};

/// Knobs for [`solve`].
#[derive(Clone, Copy, Debug)]
pub struct AberthOptions {
    /// Rounds per precision stage.
    pub max_iter: usize,
    /// Rounds for the double-precision stage.
    pub max_fast: usize,
    /// Perturbs the initial angles.
    pub seed: u64,
}

impl Default for AberthOptions {
    fn default() -> Self {
        AberthOptions { max_iter: 200, max_fast: 300, seed: 0 }
    }
}

/// Something whose roots can be refined: a Newton step in both arithmetics.
pub trait RootProblem: Sync {
    /// Number of roots sought.
    fn degree(&self) -> usize;
    /// `log2 |c_k|` of a polynomial with the same roots, for starting points.
    fn log2_coeffs(&self) -> Vec<f64>;
    /// `f / f'`, or `None` where it is undefined.
    fn newton_fast(&self, z: Complex64) -> Option<Complex64>;
    fn prepare(&self, prec: u32) -> Box<dyn MpNewton + '_>;
}

pub trait MpNewton: Sync {
    fn newton(&self, z: &Cx) -> Option<(Float, Float)>;
    fn value(&self, z: &Cx) -> BigComplex;
}

/// A polynomial given by coefficients with `c_0 != 0`.
pub struct PolyProblem {
    pub poly: CPoly,
}

impl PolyProblem {
    pub fn new(c: &[BigComplex]) -> Result<Self> {
        let d = c.len().saturating_sub(1);
        if c.is_empty() || c[0].is_zero() || c[d].is_zero() {
            return Err(Error::Invalid("root finder needs nonzero constant and leading coefficients".into()));
        }
        Ok(PolyProblem { poly: CPoly::from_complex(c) })
    }
}

struct PolyStage {
    p: MpPoly,
    prec: u32,
}

impl MpNewton for PolyStage {
    fn newton(&self, z: &Cx) -> Option<(Float, Float)> {
        let mut t = Tmp::new(self.prec);
        let (f, df) = self.p.eval(z, &mut t);
        newton_ratio(&f, &df, z, 0, self.prec)
    }

    fn value(&self, z: &Cx) -> BigComplex {
        let mut t = Tmp::new(self.prec);
        self.p.eval(z, &mut t).0.to_big()
    }
}

impl RootProblem for PolyProblem {
    fn degree(&self) -> usize {
        self.poly.deg()
    }

    fn log2_coeffs(&self) -> Vec<f64> {
        self.poly.fast.iter().map(|c| c.log2_abs()).collect()
    }

    fn newton_fast(&self, z: Complex64) -> Option<Complex64> {
        let zx = Xc::from_c64(z);
        let (f, df) = self.poly.eval_fast(zx);
        newton_ratio_fast(f, df, zx, 0)
    }

    fn prepare(&self, prec: u32) -> Box<dyn MpNewton + '_> {
        Box::new(PolyStage { p: self.poly.at(prec), prec })
    }
}

/// `R_n` from `R_j = -sum_k b_k R_{j-k}` with polynomial `b_k` and initial terms, divided by `p^v`.
pub struct RecurrenceProblem {
    pub b: Vec<CPoly>,
    pub init: Vec<CPoly>,
    pub n: usize,
    pub v: usize,
    /// Coefficient magnitudes of `R_n / p^v`.
    pub log2c: Vec<f64>,
}

impl RecurrenceProblem {
    fn eval_fast(&self, z: Xc) -> (Xc, Xc) {
        let s = self.init.len();
        if self.n < s {
            return self.init[self.n].eval_fast(z);
        }
        let bs: Vec<(Xc, Xc)> = self.b.iter().map(|p| p.eval_fast(z)).collect();
        let mut r: Vec<Xc> = Vec::with_capacity(self.n + 1);
        let mut dr: Vec<Xc> = Vec::with_capacity(self.n + 1);
        for p in &self.init {
            let (a, b) = p.eval_fast(z);
            r.push(a);
            dr.push(b);
        }
        for j in s..=self.n {
            let mut v = Xc::ZERO;
            let mut dv = Xc::ZERO;
            for (k, (bk, dbk)) in bs.iter().enumerate() {
                let i = j - 1 - k;
                v = v.sub(bk.mul(r[i]));
                dv = dv.sub(dbk.mul(r[i])).sub(bk.mul(dr[i]));
            }
            r.push(v);
            dr.push(dv);
        }
        (r[self.n], dr[self.n])
    }
}

struct RecStage<'a> {
    b: Vec<MpPoly>,
    init: Vec<MpPoly>,
    pb: &'a RecurrenceProblem,
    prec: u32,
}

impl RecStage<'_> {
    fn eval(&self, z: &Cx) -> (Cx, Cx) {
        let mut t = Tmp::new(self.prec);
        let s = self.init.len();
        let n = self.pb.n;
        if n < s {
            return self.init[n].eval(z, &mut t);
        }
        let bs: Vec<(Cx, Cx)> = self.b.iter().map(|p| p.eval(z, &mut t)).collect();
        let mut r: Vec<Cx> = Vec::with_capacity(n + 1);
        let mut dr: Vec<Cx> = Vec::with_capacity(n + 1);
        for p in &self.init {
            let (a, b) = p.eval(z, &mut t);
            r.push(a);
            dr.push(b);
        }
        for j in s..=n {
            let mut v = Cx::new(self.prec);
            let mut dv = Cx::new(self.prec);
            for (k, (bk, dbk)) in bs.iter().enumerate() {
                let i = j - 1 - k;
                mul_sub(&mut v, bk, &r[i], &mut t);
                mul_sub(&mut dv, dbk, &r[i], &mut t);
                mul_sub(&mut dv, bk, &dr[i], &mut t);
            }
            r.push(v);
            dr.push(dv);
        }
        let f = r.swap_remove(n);
        let df = dr.swap_remove(n);
        (f, df)
    }
}

impl MpNewton for RecStage<'_> {
    fn newton(&self, z: &Cx) -> Option<(Float, Float)> {
        let (f, df) = self.eval(z);
        newton_ratio(&f, &df, z, self.pb.v, self.prec)
    }

    fn value(&self, z: &Cx) -> BigComplex {
        self.eval(z).0.to_big()
    }
}

impl RootProblem for RecurrenceProblem {
    fn degree(&self) -> usize {
        self.log2c.len().saturating_sub(1)
    }

    fn log2_coeffs(&self) -> Vec<f64> {
        self.log2c.clone()
    }

    fn newton_fast(&self, z: Complex64) -> Option<Complex64> {
        let zx = Xc::from_c64(z);
        let (f, df) = self.eval_fast(zx);
        newton_ratio_fast(f, df, zx, self.v)
    }

    fn prepare(&self, prec: u32) -> Box<dyn MpNewton + '_> {
        Box::new(RecStage { b: self.b.iter().map(|p| p.at(prec)).collect(), init: self.init.iter().map(|p| p.at(prec)).collect(), pb: self, prec })
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `(log2 radius, angle)` of starting points on circles read off the Newton polygon.
fn initial_points(logc: &[f64], seed: u64) -> Vec<(f64, f64)> {
    let pts: Vec<(usize, f64)> = logc.iter().enumerate().filter(|(_, l)| l.is_finite()).map(|(k, &l)| (k, l)).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (q.1 - a.1) - (b.1 - a.1) * (q.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let mut out = Vec::new();
    let mut h = splitmix(seed);
    for (e, w) in hull.windows(2).enumerate() {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let m = j - i;
        let log_r = (li - lj) / m as f64;
        for t in 0..m {
            h = splitmix(h);
            let jitter = (h >> 11) as f64 / (1u64 << 53) as f64 * 0.1;
            let frac = (t as f64 + 0.25 + jitter) / m as f64 + 0.37 * e as f64;
            out.push((log_r, std::f64::consts::TAU * frac));
        }
    }
    out
}

fn fast_stage(pb: &dyn RootProblem, z: &mut [Complex64], max_iter: usize) -> usize {
    let d = z.len();
    let mut done = vec![false; d];
    let mut last = vec![f64::INFINITY; d];
    let mut rounds = 0;
    while rounds < max_iter && done.iter().any(|f| !f) {
        rounds += 1;
        let snapshot: &[Complex64] = z;
        let upd: Vec<Option<(Complex64, f64)>> = (0..d)
            .into_par_iter()
            .map(|i| {
                if done[i] {
                    return None;
                }
                let zi = snapshot[i];
                let w = match pb.newton_fast(zi) {
                    Some(w) => w,
                    None => return Some((zi * Complex64::new(1.0 + 1e-7, 1e-7) + Complex64::new(1e-12, 0.0), f64::INFINITY)),
                };
                let mut s = Complex64::new(0.0, 0.0);
                for (j, zj) in snapshot.iter().enumerate() {
                    if j != i {
                        let dz = zi - zj;
                        if dz.norm_sqr() > 0.0 {
                            s += dz.inv();
                        }
                    }
                }
                let q = Complex64::new(1.0, 0.0) - w * s;
                let u = if q.norm_sqr() > 0.0 && (w / q).is_finite() { w / q } else { w };
                Some((zi - u, u.norm() / zi.norm().max(1e-300)))
            })
            .collect();
        for (i, u) in upd.into_iter().enumerate() {
            if let Some((nz, rel)) = u {
                if nz.is_finite() {
                    z[i] = nz;
                }
                if rel < 1e-13 || (rel < 1e-7 && rel > 0.5 * last[i]) {
                    done[i] = true;
                }
                last[i] = rel;
            }
        }
    }
    rounds
}

fn trace() -> bool {
    std::env::var_os("LADDERREL_TRACE").is_some()
}

/// Refine all roots of `pb` at working precision `prec`.
///
/// Simple roots end with a relative correction below `2^(-prec/2)`; clustered ones below `2^(-prec/4)`.
pub fn solve(pb: &dyn RootProblem, prec: u32, opts: AberthOptions) -> Result<Vec<BigComplex>> {
    let d = pb.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    let init = initial_points(&pb.log2_coeffs(), opts.seed);
    let fits = init.iter().all(|(lr, _)| lr.abs() < 900.0);
    let mut zs: Vec<(Float, Float)>;
    if fits {
        let mut z: Vec<Complex64> = init.iter().map(|&(lr, th)| Complex64::from_polar(lr.exp2(), th)).collect();
        let r = fast_stage(pb, &mut z, opts.max_fast);
        if trace() {
            eprintln!("fast stage: {r} rounds");
        }
        zs = z.iter().map(|c| (Float::with_val(prec, c.re), Float::with_val(prec, c.im))).collect();
    } else {
        let tau = Float::with_val(prec, Constant::Pi) * 2u32;
        zs = init
            .iter()
            .map(|&(lr, th)| {
                let r = Float::with_val(prec, lr).exp2();
                let (s, c) = Float::with_val(prec, &tau * (th / std::f64::consts::TAU)).sin_cos(Float::new(prec));
                (Float::with_val(prec, &r * &c), Float::with_val(prec, &r * &s))
            })
            .collect();
    }
    let mut ladder = Vec::new();
    if prec > 1024 {
        ladder.push(256);
    }
    ladder.push(prec);
    let mut rounds = 0;
    let mut worst = 0.0;
    for (si, &sp) in ladder.iter().enumerate() {
        let last_stage = si + 1 == ladder.len();
        let stage = pb.prepare(sp);
        let z: Vec<Cx> = zs.iter().map(|(a, b)| Cx { r: Float::with_val(sp, a), i: Float::with_val(sp, b) }).collect();
        let (z, r, w) = mp_stage(stage.as_ref(), z, sp, opts.max_iter, last_stage);
        if trace() {
            eprintln!("stage {sp} bits: {r} rounds, worst {w:e}");
        }
        zs = z.into_iter().map(|c| (c.r, c.i)).collect();
        rounds = r;
        worst = w;
    }
    if worst > 0.0 {
        return Err(Error::NonConvergence { worst_residual: worst, iterations: rounds });
    }
    Ok(zs.into_iter().map(|(a, b)| BigComplex::from_floats(a, b)).collect())
}

/// Returns the roots, the rounds used and the worst relative correction among unconverged roots.
fn mp_stage(stage: &dyn MpNewton, mut z: Vec<Cx>, prec: u32, max_iter: usize, last_stage: bool) -> (Vec<Cx>, usize, f64) {
    let d = z.len();
    let mut done = vec![false; d];
    let mut last = vec![f64::INFINITY; d];
    let conv = -(prec as f64) / 2.0;
    let stall = -(prec as f64) / 4.0;
    let mut rounds = 0;
    while rounds < max_iter && done.iter().any(|f| !f) {
        rounds += 1;
        let snap: &[Cx] = &z;
        let upd: Vec<Option<(Float, Float, f64)>> = (0..d)
            .into_par_iter()
            .map(|i| if done[i] { None } else { Some(mp_step(stage, snap, i, prec)) })
            .collect();
        for (i, u) in upd.into_iter().enumerate() {
            if let Some((x, y, rel)) = u {
                z[i].r = x;
                z[i].i = y;
                // Near-multiple roots converge linearly; accept them at a quarter of the precision.
                let slow = if last_stage { 3.0 } else { 1.0 };
                if rel <= conv || (rel <= stall && rel > last[i] - slow) {
                    done[i] = true;
                }
                last[i] = rel;
            }
        }
    }
    let worst = if last_stage && done.iter().any(|f| !f) {
        (0..d).filter(|&i| !done[i]).map(|i| last[i].exp2()).fold(0.0, f64::max).max(f64::MIN_POSITIVE)
    } else {
        0.0
    };
    (z, rounds, worst)
}

/// New value of root `i` and `log2(|correction| / |z|)`.
fn mp_step(stage: &dyn MpNewton, z: &[Cx], i: usize, prec: u32) -> (Float, Float, f64) {
    let zi = &z[i];
    let (wr, wi) = match stage.newton(zi) {
        Some(w) => w,
        None => {
            let nx = Float::with_val(prec, &zi.r * (1.0 + 1e-9)) + 1e-20;
            return (nx, zi.i.clone(), 0.0);
        }
    };
    let mut s = Cx::new(prec);
    let mut a = Cx::new(prec);
    let mut n = Float::new(prec);
    let mut t = Float::new(prec);
    for (j, zj) in z.iter().enumerate() {
        if j == i {
            continue;
        }
        a.r.assign(&zi.r - &zj.r);
        a.i.assign(&zi.i - &zj.i);
        n.assign(a.r.square_ref());
        t.assign(a.i.square_ref());
        n += &t;
        if n.is_zero() {
            continue;
        }
        a.r /= &n;
        a.i /= &n;
        s.r += &a.r;
        s.i -= &a.i;
    }
    let w = Cx { r: wr, i: wi };
    let mut q = Cx { r: Float::with_val(prec, 1), i: Float::new(prec) };
    let mut tmp = Tmp::new(prec);
    mul_sub(&mut q, &w, &s, &mut tmp);
    let wq = &w.to_big() / &q.to_big();
    let u = if wq.is_finite() { wq } else { w.to_big() };
    let zabs = Float::with_val(64, zi.r.hypot_ref(&zi.i));
    let uabs = Float::with_val(64, u.re.hypot_ref(&u.im));
    let rel = if zabs.is_zero() { uabs.to_f64().log2() } else { (uabs / zabs).to_f64().log2() };
    (Float::with_val(prec, &zi.r - &u.re), Float::with_val(prec, &zi.i - &u.im), rel)
}

/// Roots of `sum c_k z^k` with nonzero `c_0` and `c_d`.
pub fn aberth(c: &[BigComplex], prec: u32, opts: AberthOptions) -> Result<Vec<BigComplex>> {
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    solve(&PolyProblem::new(c)?, prec, opts)
}

/// `f(z)` and `f'(z)` for coefficients low to high.
pub fn eval_with_derivative(c: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.prec();
    let p = CPoly::from_complex(c).at(prec);
    let mut t = Tmp::new(prec);
    let zc = Cx { r: z.re.clone(), i: z.im.clone() };
    let (f, d) = p.eval(&zc, &mut t);
    (f.to_big(), d.to_big())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(c: &[i64], prec: u32) -> Vec<BigComplex> {
        c.iter().map(|&v| BigComplex::new(prec, v as f64, 0.0)).collect()
    }

    #[test]
    fn unit_roots() {
        let mut r: Vec<f64> = aberth(&real(&[-1, 0, 1], 128), 128, AberthOptions::default()).unwrap().iter().map(|z| z.re.to_f64()).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 1.0).abs() < 1e-30 && (r[1] - 1.0).abs() < 1e-30);
    }

    #[test]
    fn wilkinson_like() {
        let mut c = vec![rug::Integer::from(1)];
        for k in 1..=12i64 {
            let mut n = vec![rug::Integer::new(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                n[i + 1] += a;
                n[i] -= rug::Integer::from(a * k);
            }
            c = n;
        }
        let cc: Vec<BigComplex> = c.iter().map(|a| BigComplex::real(Float::with_val(256, a))).collect();
        let mut r: Vec<f64> = aberth(&cc, 256, AberthOptions::default()).unwrap().iter().map(|z| z.re.to_f64()).collect();
        r.sort_by(f64::total_cmp);
        for (k, x) in r.iter().enumerate() {
            assert!((x - (k + 1) as f64).abs() < 1e-20);
        }
    }

    #[test]
    fn complex_coefficients() {
        let c = vec![BigComplex::new(128, 0.0, -1.0), BigComplex::zero(128), BigComplex::one(128)];
        let r = aberth(&c, 128, AberthOptions::default()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for z in &r {
            let (a, b) = z.to_f64();
            assert!((a.abs() - h).abs() < 1e-25 && (b.abs() - h).abs() < 1e-25 && a * b > 0.0);
        }
    }

    #[test]
    fn scaled_doubles() {
        let a = Xc::from_c64(Complex64::new(3.0, -4.0));
        let big = Xc::new(Complex64::new(1.0, 0.0), 5000);
        let p = a.mul(big).div(big).unwrap().to_c64();
        assert!((p - Complex64::new(3.0, -4.0)).norm() < 1e-12);
    }
}
