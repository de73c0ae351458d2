use super::poly::{Poly, Var};
use super::ring::{GcdRing, Ring};
use crate::error::{Error, Result};
use rug::{Integer, Rational};

fn canonical<R: GcdRing>(f: Poly<R>) -> Poly<R> {
    if f.is_zero() {
        return f;
    }
    let u = f.lc().canonical_unit();
    if u.is_one() {
        f
    } else {
        f.scale(&u)
    }
}

/// Greatest common divisor, canonical up to units (monic over a field).
pub fn gcd<R: GcdRing>(a: &Poly<R>, b: &Poly<R>) -> Result<Poly<R>> {
    let var = if a.is_zero() { b.var() } else { a.var() };
    a.checked_add(&Poly::zero_in(b.var()))?;
    if a.is_zero() && b.is_zero() {
        return Ok(Poly::zero_in(var));
    }
    if a.is_zero() {
        return Ok(canonical(b.clone()));
    }
    if b.is_zero() {
        return Ok(canonical(a.clone()));
    }
    let (mut x, mut y) = if a.deg0() >= b.deg0() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if R::FIELD {
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y)?;
            x = y;
            y = r;
        }
        return Ok(canonical(x));
    }
    let c = x.content().gcd_with(&y.content());
    x = x.primitive();
    y = y.primitive();
    while !y.is_zero() {
        let r = x.pseudo_rem(&y)?;
        x = y;
        y = r.primitive();
    }
    Ok(canonical(x.primitive().scale(&c)))
}

/// Yun squarefree decomposition: `f = u · Π fᵢ^i` with each `fᵢ` squarefree and pairwise coprime.
pub fn squarefree_decomposition<R: GcdRing>(f: &Poly<R>) -> Result<Vec<(Poly<R>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let base = if R::FIELD { f.clone() } else { f.primitive() };
    let df = base.derivative();
    let g = gcd(&base, &df)?;
    let mut c = base.exact_div_poly(&g).ok_or_else(|| Error::Invalid("gcd does not divide".into()))?;
    let mut d = df
        .exact_div_poly(&g)
        .ok_or_else(|| Error::Invalid("gcd does not divide derivative".into()))?
        .minus(&c.derivative());
    let mut i = 1;
    while !c.is_constant() {
        let a = gcd(&c, &d)?;
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        c = c.exact_div_poly(&a).ok_or_else(|| Error::Invalid("yun step".into()))?;
        d = d
            .exact_div_poly(&a)
            .ok_or_else(|| Error::Invalid("yun step".into()))?
            .minus(&c.derivative());
        i += 1;
    }
    Ok(out)
}

/// Product of the squarefree factors.
pub fn squarefree_part<R: GcdRing>(f: &Poly<R>) -> Result<Poly<R>> {
    let parts = squarefree_decomposition(f)?;
    let mut r = Poly::constant(R::one(), f.var());
    for (p, _) in parts {
        r = &r * &p;
    }
    Ok(canonical(r))
}

/// Determinant by fraction-free Bareiss elimination. Consumes the matrix.
pub fn bareiss_det<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return R::zero(),
            }
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let rik = row[k].clone();
            for j in k + 1..n {
                let mut t = row[j].times(&pivot_row[k]);
                if !rik.is_zero() && !pivot_row[j].is_zero() {
                    t.minus_assign(&rik.times(&pivot_row[j]));
                }
                row[j] = t.exact_div(&prev).expect("bareiss division is exact");
            }
            row[k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.negate()
    } else {
        d
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), highest coefficients first.
pub fn sylvester<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Vec<Vec<R>> {
    let m = f.deg0();
    let n = g.deg0();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![R::zero(); size];
        for k in 0..=m {
            row[i + k] = f.coeff(m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![R::zero(); size];
        for k in 0..=n {
            row[i + k] = g.coeff(n - k);
        }
        rows.push(row);
    }
    rows
}

/// Resultant with respect to the polynomial's own variable.
pub fn resultant<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Result<R> {
    f.checked_add(&Poly::zero_in(g.var()))?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() && g.is_constant() {
        return Err(Error::Degenerate("both polynomials constant in the elimination variable".into()));
    }
    Ok(bareiss_det(sylvester(f, g)))
}

/// Swap the two variables of a bivariate polynomial.
pub fn swap_vars<R: Ring>(f: &Poly<Poly<R>>, new_outer: Var, new_inner: Var) -> Poly<Poly<R>> {
    let inner_deg = f.coeffs().iter().map(|c| c.deg0()).max().unwrap_or(0);
    let mut out = Vec::with_capacity(inner_deg + 1);
    for j in 0..=inner_deg {
        let v: Vec<R> = f.coeffs().iter().map(|c| c.coeff(j)).collect();
        out.push(Poly::new(v, new_inner));
    }
    Poly::new(out, new_outer)
}

/// Characteristic polynomial `det(x I - m)` over a field, by Hessenberg reduction.
pub fn charpoly<R: Ring>(m: &[Vec<R>], var: Var) -> Result<Poly<R>> {
    if !R::FIELD {
        return Err(Error::Unsupported("Hessenberg reduction needs a field".into()));
    }
    let n = m.len();
    let mut h: Vec<Vec<R>> = m.to_vec();
    for k in 1..n.saturating_sub(1) {
        let Some(piv) = (k..n).find(|&i| !h[i][k - 1].is_zero()) else {
            continue;
        };
        if piv != k {
            h.swap(piv, k);
            for row in h.iter_mut() {
                row.swap(piv, k);
            }
        }
        let t_inv = h[k][k - 1].inverse().expect("nonzero pivot");
        for i in k + 1..n {
            if h[i][k - 1].is_zero() {
                continue;
            }
            let u = h[i][k - 1].times(&t_inv);
            for j in k - 1..n {
                let v = u.times(&h[k][j]);
                h[i][j].minus_assign(&v);
            }
            for row in h.iter_mut() {
                let v = u.times(&row[i]);
                row[k].plus_assign(&v);
            }
        }
    }
    let x = Poly::var_in(var);
    let mut ps: Vec<Poly<R>> = vec![Poly::constant(R::one(), var)];
    for k in 1..=n {
        let lin = x.checked_sub(&Poly::constant(h[k - 1][k - 1].clone(), var))?;
        let mut pk = lin.checked_mul(&ps[k - 1])?;
        let mut t = R::one();
        for i in 1..k {
            t = t.times(&h[k - i][k - i - 1]);
            if t.is_zero() {
                break;
            }
            let c = t.times(&h[k - i - 1][k - 1]);
            if !c.is_zero() {
                pk = pk.checked_sub(&ps[k - i - 1].scale(&c))?;
            }
        }
        ps.push(pk);
    }
    Ok(ps.pop().unwrap())
}

/// `Res_outer(f, g)` as a polynomial in the inner variable, by evaluation at integers and interpolation.
///
/// Same value as [`resultant`] over `Q[inner]`; much faster once the inner degrees grow.
pub fn resultant_interp(f: &Poly<Poly<Rational>>, g: &Poly<Poly<Rational>>) -> Result<Poly<Rational>> {
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::ZeroPolynomial),
    };
    let inner = f.coeffs().iter().chain(g.coeffs()).map(|c| c.var()).find(|v| *v != Var::Free).unwrap_or(Var::Free);
    let hf = f.coeffs().iter().map(|c| c.deg0()).max().unwrap_or(0);
    let hg = g.coeffs().iter().map(|c| c.deg0()).max().unwrap_or(0);
    let bound = dg * hf + df * hg;
    let (lf, lg) = (f.lc(), g.lc());
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut x = Rational::new();
    while xs.len() <= bound {
        if !lf.eval(&x).is_zero() && !lg.eval(&x).is_zero() {
            let fx = Poly::new(f.coeffs().iter().map(|c| c.eval(&x)).collect(), Var::X);
            let gx = Poly::new(g.coeffs().iter().map(|c| c.eval(&x)).collect(), Var::X);
            ys.push(resultant(&fx, &gx)?);
            xs.push(x.clone());
        }
        x += 1;
    }
    interpolate(&xs, &ys, inner)
}

/// Newton interpolation over Q.
pub fn interpolate(xs: &[Rational], ys: &[Rational], var: Var) -> Result<Poly<Rational>> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(Error::Invalid("interpolation needs matching nonempty data".into()));
    }
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = Rational::from(&xs[i] - &xs[i - j]);
            if den.is_zero() {
                return Err(Error::Invalid("repeated interpolation node".into()));
            }
            let num = Rational::from(&dd[i] - &dd[i - 1]);
            dd[i] = num / den;
        }
    }
    let mut acc = Poly::constant(dd[n - 1].clone(), var);
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![Rational::from(-&xs[i]), Rational::from(1)], var);
        acc = &(&acc * &lin) + &Poly::constant(dd[i].clone(), var);
    }
    Ok(acc)
}

const PRIMES: [u64; 6] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    2305843009213693951,
    1152921504606846883,
    4611686018427386903,
];

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn modp_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let inv = powmod(*b.last().unwrap(), m - 2, m);
        while a.len() >= b.len() {
            let c = mulmod(*a.last().unwrap(), inv, m);
            let off = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                let t = mulmod(c, bj, m);
                a[off + j] = (a[off + j] + m - t) % m;
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Certify squarefreeness modulo a few word-size primes.
///
/// `true` means certainly squarefree; `false` means the test was inconclusive.
pub fn modular_squarefree(f: &Poly<Integer>) -> bool {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return true,
    };
    for &m in PRIMES.iter() {
        let mi = Integer::from(m);
        let red: Vec<u64> = f
            .coeffs()
            .iter()
            .map(|c| { let mut r = Integer::from(c % &mi); if r < 0 { r += &mi; } r.to_u64().unwrap() })
            .collect();
        if red[d] == 0 {
            continue;
        }
        let der: Vec<u64> = (1..=d).map(|i| mulmod(red[i], i as u64 % m, m)).collect();
        if modp_gcd_degree(red, der, m) == 0 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::qpoly;
    use crate::exact::ring::q;

    fn x(c: &[i64]) -> Poly<Rational> {
        qpoly(c, Var::X)
    }

    #[test]
    fn gcd_basic() {
        let g = gcd(&x(&[-1, 0, 1]), &x(&[-1, 1])).unwrap();
        assert_eq!(g, x(&[-1, 1]));
        let gi = gcd(
            &Poly::<Integer>::from_i64s(&[-2, 0, 2], Var::X),
            &Poly::<Integer>::from_i64s(&[-4, 4], Var::X),
        )
        .unwrap();
        assert_eq!(gi, Poly::from_i64s(&[-2, 2], Var::X));
    }

    #[test]
    fn squarefree_basic() {
        // (x-1)^2 (x+2)
        let f = &(&x(&[-1, 1]) * &x(&[-1, 1])) * &x(&[2, 1]);
        let parts = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts, vec![(x(&[2, 1]), 1), (x(&[-1, 1]), 2)]);
        assert_eq!(squarefree_part(&f).unwrap(), &x(&[-1, 1]) * &x(&[2, 1]));
    }

    #[test]
    fn resultant_basic() {
        assert!(resultant(&x(&[-1, 0, 1]), &x(&[-1, 1])).unwrap().is_zero());
        // Res(x - 3, x - 5) = 3 - 5 up to sign
        let r = resultant(&x(&[-3, 1]), &x(&[-5, 1])).unwrap();
        assert_eq!(r.clone().abs(), q(2, 1));
        assert!(matches!(resultant(&x(&[2]), &x(&[3])), Err(Error::Degenerate(_))));
    }

    #[test]
    fn resultant_symbolic() {
        // Res_x(x - a, x - b) = ±(b - a)
        let a = Poly::new(vec![q(0, 1), q(1, 1)], Var::Rho);
        let f: Poly<Poly<Rational>> = Poly::new(vec![a.negate(), Poly::one()], Var::X);
        let g: Poly<Poly<Rational>> =
            Poly::new(vec![Poly::constant(q(-7, 1), Var::Rho), Poly::one()], Var::X);
        let r = resultant(&f, &g).unwrap();
        assert_eq!(r, qpoly(&[-7, 1], Var::Rho));
    }

    #[test]
    fn interpolation_recovers() {
        let f = x(&[3, 0, -2, 5]);
        let xs: Vec<Rational> = (0..4).map(|i| q(i, 1)).collect();
        let ys: Vec<Rational> = xs.iter().map(|v| f.eval(v)).collect();
        assert_eq!(interpolate(&xs, &ys, Var::X).unwrap(), f);
    }

    #[test]
    fn modular_test() {
        let f = Poly::<Integer>::from_i64s(&[-1, 0, 1], Var::X);
        assert!(modular_squarefree(&f));
        let g = &f * &f;
        assert!(!modular_squarefree(&g));
    }

    #[test]
    fn charpoly_matches_determinant() {
        let m: Vec<Vec<Rational>> = vec![
            vec![q(2, 1), q(1, 3), q(0, 1), q(5, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(-1, 2)],
            vec![q(4, 1), q(0, 1), q(3, 1), q(1, 1)],
            vec![q(1, 1), q(2, 1), q(0, 1), q(0, 1)],
        ];
        let cp = charpoly(&m, Var::X).unwrap();
        assert_eq!(cp.deg0(), 4);
        for x in [q(0, 1), q(3, 2), q(-7, 1)] {
            let shifted: Vec<Vec<Rational>> = (0..4)
                .map(|i| (0..4).map(|j| if i == j { Rational::from(&x - &m[i][j]) } else { Rational::from(-&m[i][j]) }).collect())
                .collect();
            assert_eq!(cp.eval(&x), bareiss_det(shifted));
        }
    }
}
