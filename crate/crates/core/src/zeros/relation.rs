//! Integer relations by lattice reduction, used to name the irreducible factor of an
//! eliminant that carries a given numerical root.

use crate::exact::{Integer, Poly, Var};
use rug::ops::Pow;
use rug::Float;

fn dot(a: &[Float], b: &[Float], prec: u32) -> Float {
    let mut s = Float::with_val(prec, 0);
    for (x, y) in a.iter().zip(b) {
        s += Float::with_val(prec, x * y);
    }
    s
}

fn gram_schmidt(b: &[Vec<Integer>], prec: u32) -> (Vec<Vec<Float>>, Vec<Float>) {
    let n = b.len();
    let rows: Vec<Vec<Float>> = b.iter().map(|r| r.iter().map(|x| Float::with_val(prec, x)).collect()).collect();
    let mut star: Vec<Vec<Float>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Float::with_val(prec, 0); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            let m = Float::with_val(prec, dot(&rows[i], &star[j], prec) / &norms[j]);
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= Float::with_val(prec, &m * s);
            }
            mu[i][j] = m;
        }
        norms.push(dot(&v, &v, prec));
        star.push(v);
    }
    (mu, norms)
}

/// LLL reduction with `delta = 0.99`, in place. Returns `false` if the step budget ran out.
pub fn lll(b: &mut [Vec<Integer>], prec: u32) -> bool {
    let n = b.len();
    if n < 2 {
        return true;
    }
    let delta = Float::with_val(prec, 0.99);
    let (mut mu, mut norms) = gram_schmidt(b, prec);
    let mut k = 1;
    let mut steps = 0usize;
    while k < n {
        steps += 1;
        if steps > 200_000 {
            return false;
        }
        for j in (0..k).rev() {
            let q = mu[k][j].clone().round();
            if q.is_zero() {
                continue;
            }
            let qi = q.to_integer().expect("finite");
            let bj = b[j].clone();
            for (x, y) in b[k].iter_mut().zip(&bj) {
                *x -= Integer::from(&qi * y);
            }
            for i in 0..j {
                let t = Float::with_val(prec, &q * &mu[j][i]);
                mu[k][i] -= t;
            }
            mu[k][j] -= &q;
        }
        let m2 = Float::with_val(prec, mu[k][k - 1].square_ref());
        let rhs = Float::with_val(prec, &delta - &m2) * &norms[k - 1];
        if norms[k] >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let m = mu[k][k - 1].clone();
            let big = Float::with_val(prec, &norms[k] + Float::with_val(prec, &m2 * &norms[k - 1]));
            mu[k][k - 1] = Float::with_val(prec, &m * &norms[k - 1]) / &big;
            norms[k] = Float::with_val(prec, &norms[k - 1] * &norms[k]) / &big;
            norms[k - 1] = big;
            for j in 0..k - 1 {
                let t = std::mem::replace(&mut mu[k - 1][j], Float::new(prec));
                mu[k - 1][j] = std::mem::replace(&mut mu[k][j], t);
            }
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = Float::with_val(prec, &mu[i][k - 1] - Float::with_val(prec, &m * &t));
                let u = Float::with_val(prec, &mu[k][k - 1] * &mu[i][k]);
                mu[i][k - 1] = t + u;
            }
            k = (k - 1).max(1);
        }
    }
    true
}

/// Smallest integer polynomial of degree at most `deg` found to vanish at `alpha`.
///
/// `alpha` should carry well over `(deg + 1) * coefficient bits`.
pub fn integer_relation(alpha: &Float, deg: usize, var: Var) -> Option<Poly<Integer>> {
    integer_relation_bits(alpha, deg, alpha.prec().saturating_sub(32), var)
}

/// [`integer_relation`] with `alpha` scaled by `2^bits`.
pub fn integer_relation_bits(alpha: &Float, deg: usize, bits: u32, var: Var) -> Option<Poly<Integer>> {
    let bits = bits.min(alpha.prec().saturating_sub(32));
    let prec = bits + 128;
    let scale = Float::with_val(prec, Float::i_exp(1, bits as i32));
    let mut b: Vec<Vec<Integer>> = Vec::with_capacity(deg + 1);
    let a = Float::with_val(prec, alpha);
    for i in 0..=deg {
        let mut row = vec![Integer::new(); deg + 2];
        row[i] = Integer::from(1);
        let v = Float::with_val(prec, (&a).pow(i as u32)) * &scale;
        row[deg + 1] = v.round().to_integer()?;
        b.push(row);
    }
    if !lll(&mut b, prec) {
        return None;
    }
    let c: Vec<Integer> = b[0][..=deg].to_vec();
    let p = Poly::new(c, var);
    if p.is_zero() {
        return None;
    }
    let p = p.shift_down(p.valuation());
    let p = p.primitive();
    Some(if p.lc() < 0 { p.neg_ref() } else { p })
}

/// Lowest-degree divisor of `f` through `alpha`, found by integer relations and confirmed by exact division.
pub fn factor_through(f: &Poly<Integer>, alpha: &Float) -> Option<Poly<Integer>> {
    let d = f.degree()?;
    let fr = f.to_rational();
    // coefficients of a factor are bounded by roughly 2^(deg + bits of f)
    let coeff_bits = f.max_bits() + d as u32 + 8;
    for k in 1..d {
        let bits = (k as u32 + 1) * coeff_bits + 64;
        if let Some(g) = integer_relation_bits(alpha, k, bits, f.var()) {
            if g.degree() == Some(k) && fr.exact_div_poly(&g.to_rational()).is_some() {
                return Some(g);
            }
        }
    }
    Some(f.clone())
}

/// Newton refinement of a simple real root of an integer polynomial to `prec` bits.
pub fn refine_real_root(f: &Poly<Integer>, x0: &Float, prec: u32) -> Float {
    let df = f.derivative();
    let mut x = Float::with_val(prec, x0);
    let mut p = x0.prec().max(32);
    loop {
        p = (2 * p).min(prec);
        x.set_prec(p);
        for _ in 0..3 {
            let fx = f.coeffs().iter().rev().fold(Float::with_val(p, 0), |acc, c| acc * &x + c);
            let dx = df.coeffs().iter().rev().fold(Float::with_val(p, 0), |acc, c| acc * &x + c);
            if dx.is_zero() {
                break;
            }
            x -= fx / dx;
        }
        if p == prec {
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let a = Float::with_val(256, 2).sqrt();
        let g = integer_relation(&a, 2, Var::X).unwrap();
        assert_eq!(g, Poly::from_i64s(&[-2, 0, 1], Var::X));
    }

    #[test]
    fn picks_the_right_factor() {
        // (x^2 - 2)(x^3 - x - 1)
        let f = Poly::from_i64s(&[2, 2, -1, -3, 0, 1], Var::X);
        let r = refine_real_root(&f, &Float::with_val(53, 1.3247), 512);
        let g = factor_through(&f, &r).unwrap();
        assert_eq!(g, Poly::from_i64s(&[-1, -1, 0, 1], Var::X));
    }
}
