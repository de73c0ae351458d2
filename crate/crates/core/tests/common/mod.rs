#![allow(dead_code)]

use ladderrel::exact::{Rational, Ring};
use ladderrel::graphs::{CellParams, Destination, Family, FamilySpec};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random rational strictly inside (0, 1) with a small denominator.
pub fn unit_rational(rng: &mut impl Rng) -> Rational {
    let den: i64 = rng.gen_range(2..=13);
    let num: i64 = rng.gen_range(1..den);
    Rational::from((num, den))
}

pub fn random_cell(family: Family, rng: &mut impl Rng) -> CellParams<Rational> {
    let k3 = family.is_k3();
    let mut r = || unit_rational(rng);
    CellParams {
        a: r(),
        b: r(),
        c: r(),
        d: r(),
        e: r(),
        f: if k3 { Some(r()) } else { None },
        s: r(),
        t: r(),
        u: if k3 { Some(r()) } else { None },
    }
}

pub fn random_spec(family: Family, n: usize, destination: Option<Destination>, rng: &mut impl Rng) -> FamilySpec<Rational> {
    let cells = (0..=n).map(|_| random_cell(family, rng)).collect();
    FamilySpec::new(family, destination, cells).expect("valid random spec")
}

pub fn one<R: Ring>() -> R {
    R::one()
}
