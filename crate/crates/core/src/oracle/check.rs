//! Randomized equivalence suite: transfer matrices against the enumeration and factoring oracles.

use super::{rel2_enum, rel2_enum_multi, rel2_factoring, rel_a_enum, ENUM_GUARD};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graphs::{explicit_graph, CellParams, Destination, ExplicitGraph, Family, FamilySpec};
use crate::transfer::reliability;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A rational strictly inside (0, 1) with denominator at most 13.
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
    FamilySpec::new(family, destination, cells).expect("random cells satisfy the boundary convention")
}

/// Up to 8 nodes, at most `ENUM_GUARD` uncertain elements, terminals `0` and `n - 1`.
pub fn random_graph(rng: &mut impl Rng) -> ExplicitGraph {
    let n: usize = rng.gen_range(2..=8);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(rng);
    let m = rng.gen_range(1..=pairs.len().min(ENUM_GUARD - n));
    let nodes = (0..n)
        .map(|i| (format!("v{i}"), if rng.gen_bool(0.3) { Rational::from(1) } else { unit_rational(rng) }))
        .collect();
    let edges = pairs[..m].iter().enumerate().map(|(k, &(u, v))| (u, v, unit_rational(rng), format!("e{k}"))).collect();
    ExplicitGraph::new(nodes, edges, (0, n - 1)).expect("terminals are in range")
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub label: String,
    pub trials: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.failures == 0)
    }
}

/// Transfer-matrix values equal enumeration for every destination of `trials` random specs.
pub fn check_family(family: Family, n: usize, trials: usize, rng: &mut impl Rng) -> Result<CaseReport> {
    let mut failures = 0;
    for _ in 0..trials {
        if family == Family::K4AllTerminal {
            let s = random_spec(family, n, None, rng);
            if reliability(&s)? != rel_a_enum(&explicit_graph(&s)?)? {
                failures += 1;
            }
            continue;
        }
        let dests = family.destinations();
        let base = random_spec(family, n, Some(dests[0]), rng);
        let specs: Vec<FamilySpec<Rational>> = dests
            .iter()
            .map(|&d| {
                let mut s = base.clone();
                s.destination = Some(d);
                s
            })
            .collect();
        let targets: Vec<usize> = specs.iter().map(|s| Ok(explicit_graph(s)?.terminals.1)).collect::<Result<_>>()?;
        let g = explicit_graph(&base)?;
        let brute = match rel2_enum_multi(&g, &targets) {
            Err(Error::Guard(..)) => specs.iter().map(|s| rel2_factoring(&explicit_graph(s)?)).collect::<Result<_>>()?,
            r => r?,
        };
        for (s, b) in specs.iter().zip(&brute) {
            if reliability(s)? != *b {
                failures += 1;
            }
        }
    }
    Ok(CaseReport { label: format!("{family} n={n}"), trials, failures })
}

/// Factoring equals enumeration on random small graphs.
pub fn check_graphs(trials: usize, rng: &mut impl Rng) -> Result<CaseReport> {
    let mut failures = 0;
    for _ in 0..trials {
        let g = random_graph(rng);
        if rel2_factoring(&g)? != rel2_enum(&g)? {
            failures += 1;
        }
    }
    Ok(CaseReport { label: "factoring vs enumeration".into(), trials, failures })
}

/// K4-ladder n = 1..3, both K3 variants n = 1..2, the all-terminal K4 n = 1..3, and random graphs.
pub fn equivalence_suite(seed: u64, trials: usize, graph_trials: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for n in 1..=3 {
        cases.push(check_family(Family::K4Ladder, n, trials, &mut rng)?);
    }
    for f_zero in [true, false] {
        for n in 1..=2 {
            cases.push(check_family(Family::K3Cylinder { f_zero }, n, trials, &mut rng)?);
        }
    }
    for n in 1..=3 {
        cases.push(check_family(Family::K4AllTerminal, n, trials, &mut rng)?);
    }
    cases.push(check_graphs(graph_trials, &mut rng)?);
    Ok(SuiteReport { seed, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(check_family(Family::K4Ladder, 1, 3, &mut rng).unwrap().failures, 0);
        assert_eq!(check_graphs(5, &mut rng).unwrap().failures, 0);
    }
}
