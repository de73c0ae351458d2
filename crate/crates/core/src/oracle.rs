//! Independent exact reliability: state enumeration and pivotal decomposition.

use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};
use crate::graphs::ExplicitGraph;

pub mod check;

/// Largest number of uncertain elements the enumerators accept.
pub const ENUM_GUARD: usize = 28;

fn is_zero(r: &Rational) -> bool {
    r.cmp0() == std::cmp::Ordering::Equal
}

fn is_one(r: &Rational) -> bool {
    *r == 1
}

/// Weight accumulator: u128 numerators when the common denominator fits, GMP otherwise.
struct Acc {
    small: u128,
    big: Integer,
}

impl Acc {
    fn new() -> Self {
        Acc { small: 0, big: Integer::new() }
    }
    fn add(&mut self, w: u128) {
        match self.small.checked_add(w) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = w;
            }
        }
    }
    fn total(self) -> Integer {
        self.big + self.small
    }
}

/// Per-element factor table: (weight if up, weight if down) as integers over `den`.
struct Factors {
    up: Vec<Integer>,
    down: Vec<Integer>,
}

impl Factors {
    fn of(ps: &[Rational]) -> (Self, Integer) {
        let mut den = Integer::from(1);
        for p in ps {
            den *= p.denom();
        }
        let up = ps.iter().map(|p| Integer::from(p.numer())).collect();
        let down = ps.iter().map(|p| Integer::from(p.denom() - p.numer())).collect();
        (Factors { up, down }, den)
    }
}

/// Weights of every subset mask of `ps` (bit i up means element i up), as u128 when possible.
fn subset_weights(f: &Factors, idx: &[usize]) -> Vec<Integer> {
    let k = idx.len();
    let mut w = vec![Integer::from(1); 1 << k];
    for (bit, &i) in idx.iter().enumerate() {
        let step = 1usize << bit;
        for m in 0..(1usize << k) {
            if m & step != 0 {
                w[m] *= &f.up[i];
            } else {
                w[m] *= &f.down[i];
            }
        }
    }
    w
}

/// Split-half weight tables so that each leaf costs one product.
struct HalfTables {
    lo_bits: usize,
    lo: Vec<Integer>,
    hi: Vec<Integer>,
    lo_small: Option<Vec<u128>>,
    hi_small: Option<Vec<u128>>,
}

impl HalfTables {
    fn new(f: &Factors, idx: &[usize], fits: bool) -> Self {
        let lo_bits = idx.len() / 2;
        let lo = subset_weights(f, &idx[..lo_bits]);
        let hi = subset_weights(f, &idx[lo_bits..]);
        let to_small = |v: &Vec<Integer>| v.iter().map(|x| x.to_u128()).collect::<Option<Vec<u128>>>();
        let (lo_small, hi_small) = if fits { (to_small(&lo), to_small(&hi)) } else { (None, None) };
        HalfTables { lo_bits, lo, hi, lo_small, hi_small }
    }
    fn small(&self, m: usize) -> Option<u128> {
        match (&self.lo_small, &self.hi_small) {
            (Some(l), Some(h)) => {
                let a = l[m & ((1 << self.lo_bits) - 1)];
                let b = h[m >> self.lo_bits];
                a.checked_mul(b)
            }
            _ => None,
        }
    }
    fn big(&self, m: usize) -> Integer {
        Integer::from(&self.lo[m & ((1 << self.lo_bits) - 1)] * &self.hi[m >> self.lo_bits])
    }
}

/// Bitmask reachability from `src` through up edges.
fn reach(src: usize, edges: &[(usize, usize)], up_mask: usize, fixed: &[(usize, usize)], alive: u64) -> u64 {
    let mut r = 1u64 << src;
    loop {
        let before = r;
        for &(u, v) in fixed {
            let (bu, bv) = (1u64 << u, 1u64 << v);
            if alive & bu != 0 && alive & bv != 0 && ((r & bu != 0) ^ (r & bv != 0)) {
                r |= bu | bv;
            }
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if up_mask & (1 << i) == 0 {
                continue;
            }
            let (bu, bv) = (1u64 << u, 1u64 << v);
            if (r & bu != 0) ^ (r & bv != 0) {
                r |= bu | bv;
            }
        }
        if r == before {
            return r;
        }
    }
}

/// Two-terminal reliability from the source to each listed destination, by enumeration.
pub fn rel2_enum_multi(g: &ExplicitGraph, dests: &[usize]) -> Result<Vec<Rational>> {
    let nn = g.nodes.len();
    if nn > 64 {
        return Err(Error::Guard(nn, 64));
    }
    let s = g.terminals.0;
    for &d in dests {
        if d >= nn {
            return Err(Error::Invalid("terminal missing".into()));
        }
    }
    // nodes: always-down ones are removed, uncertain ones enumerated
    let mut alive_fixed = 0u64;
    let mut node_unc: Vec<usize> = Vec::new();
    for (i, (_, r)) in g.nodes.iter().enumerate() {
        if is_one(r) {
            alive_fixed |= 1 << i;
        } else if !is_zero(r) {
            node_unc.push(i);
        }
    }
    let mut fixed_edges = Vec::new();
    let mut unc_edges: Vec<(usize, usize, Rational)> = Vec::new();
    for (u, v, p, _) in &g.edges {
        if is_one(p) {
            fixed_edges.push((*u, *v));
        } else if !is_zero(p) {
            unc_edges.push((*u, *v, p.clone()));
        }
    }
    let total = node_unc.len() + unc_edges.len();
    if total > ENUM_GUARD {
        return Err(Error::Guard(total, ENUM_GUARD));
    }
    let mut ps: Vec<Rational> = node_unc.iter().map(|&i| g.nodes[i].1.clone()).collect();
    ps.extend(unc_edges.iter().map(|e| e.2.clone()));
    let (factors, den) = Factors::of(&ps);
    let fits = den.significant_bits() <= 127;
    let mut acc: Vec<Acc> = dests.iter().map(|_| Acc::new()).collect();
    let node_idx: Vec<usize> = (0..node_unc.len()).collect();
    let node_w = subset_weights(&factors, &node_idx);
    for nm in 0..(1usize << node_unc.len()) {
        let mut alive = alive_fixed;
        for (b, &i) in node_unc.iter().enumerate() {
            if nm & (1 << b) != 0 {
                alive |= 1 << i;
            }
        }
        if alive & (1 << s) == 0 || !dests.iter().any(|&d| alive & (1 << d) != 0) {
            continue;
        }
        // edges whose endpoints are both up are uncertain; the others sum to one
        let mut live: Vec<(usize, usize)> = Vec::new();
        let mut live_idx: Vec<usize> = Vec::new();
        let mut dead_idx: Vec<usize> = Vec::new();
        for (j, (u, v, _)) in unc_edges.iter().enumerate() {
            if alive & (1 << u) != 0 && alive & (1 << v) != 0 {
                live.push((*u, *v));
                live_idx.push(node_unc.len() + j);
            } else {
                dead_idx.push(node_unc.len() + j);
            }
        }
        // dead edges contribute (num + den - num) = den each
        let mut outer = node_w[nm].clone();
        for &j in &dead_idx {
            outer *= ps[j].denom();
        }
        let tables = HalfTables::new(&factors, &live_idx, fits);
        let outer_small = if fits { outer.to_u128() } else { None };
        for em in 0..(1usize << live.len()) {
            let r = reach(s, &live, em, &fixed_edges, alive);
            for (k, &d) in dests.iter().enumerate() {
                if alive & (1 << d) != 0 && r & (1 << d) != 0 {
                    match (outer_small, tables.small(em)) {
                        (Some(o), Some(w)) => match o.checked_mul(w) {
                            Some(x) => acc[k].add(x),
                            None => acc[k].big += Integer::from(&outer * &tables.big(em)),
                        },
                        _ => acc[k].big += Integer::from(&outer * &tables.big(em)),
                    }
                }
            }
        }
    }
    Ok(acc.into_iter().map(|a| Rational::from((a.total(), den.clone()))).collect())
}

/// Two-terminal reliability by exhaustive state enumeration.
pub fn rel2_enum(g: &ExplicitGraph) -> Result<Rational> {
    Ok(rel2_enum_multi(g, &[g.terminals.1])?.pop().unwrap())
}

/// All-terminal reliability by enumeration; node reliabilities are ignored.
pub fn rel_a_enum(g: &ExplicitGraph) -> Result<Rational> {
    let nn = g.nodes.len();
    if nn > 64 {
        return Err(Error::Guard(nn, 64));
    }
    if nn <= 1 {
        return Ok(Rational::from(1));
    }
    let all = if nn == 64 { u64::MAX } else { (1u64 << nn) - 1 };
    let mut fixed = Vec::new();
    let mut unc: Vec<(usize, usize)> = Vec::new();
    let mut ps = Vec::new();
    for (u, v, p, _) in &g.edges {
        if is_one(p) {
            fixed.push((*u, *v));
        } else if !is_zero(p) {
            unc.push((*u, *v));
            ps.push(p.clone());
        }
    }
    if unc.len() > ENUM_GUARD {
        return Err(Error::Guard(unc.len(), ENUM_GUARD));
    }
    let (factors, den) = Factors::of(&ps);
    let idx: Vec<usize> = (0..ps.len()).collect();
    let tables = HalfTables::new(&factors, &idx, den.significant_bits() <= 127);
    let mut acc = Acc::new();
    for em in 0..(1usize << unc.len()) {
        if reach(0, &unc, em, &fixed, all) == all {
            match tables.small(em) {
                Some(w) => acc.add(w),
                None => acc.big += tables.big(em),
            }
        }
    }
    Ok(Rational::from((acc.total(), den)))
}

/// Working multigraph for the factoring oracle.
#[derive(Clone, Debug)]
struct Work {
    node: Vec<Option<Rational>>,
    edges: Vec<(usize, usize, Rational)>,
    s: usize,
    t: usize,
}

impl Work {
    fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).count()
    }

    fn delete_node(&mut self, v: usize) {
        self.node[v] = None;
        self.edges.retain(|e| e.0 != v && e.1 != v);
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.node.len()];
        let mut stack = vec![self.s];
        seen[self.s] = true;
        while let Some(u) = stack.pop() {
            if u == self.t {
                return true;
            }
            for e in &self.edges {
                let w = if e.0 == u { e.1 } else if e.1 == u { e.0 } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Apply reductions until none applies. Returns a multiplicative factor.
    fn reduce(&mut self) -> Rational {
        let mut factor = Rational::from(1);
        loop {
            let mut changed = false;
            // terminal node reliabilities factor out
            for v in [self.s, self.t] {
                if let Some(r) = self.node[v].clone() {
                    if !is_one(&r) {
                        factor *= &r;
                        self.node[v] = Some(Rational::from(1));
                    }
                }
            }
            self.edges.retain(|e| !is_zero(&e.2) && e.0 != e.1);
            for v in 0..self.node.len() {
                if let Some(r) = &self.node[v] {
                    if is_zero(r) {
                        self.delete_node(v);
                        changed = true;
                    }
                }
            }
            // parallel edges
            let mut i = 0;
            while i < self.edges.len() {
                let mut j = i + 1;
                while j < self.edges.len() {
                    let (a, b) = (self.edges[i].0, self.edges[i].1);
                    let (c, d) = (self.edges[j].0, self.edges[j].1);
                    if (a == c && b == d) || (a == d && b == c) {
                        let q = self.edges.swap_remove(j).2;
                        let p = self.edges[i].2.clone();
                        self.edges[i].2 = Rational::from(&p + &q) - Rational::from(&p * &q);
                        changed = true;
                    } else {
                        j += 1;
                    }
                }
                i += 1;
            }
            for v in 0..self.node.len() {
                if self.node[v].is_none() || v == self.s || v == self.t {
                    continue;
                }
                let inc: Vec<usize> = (0..self.edges.len()).filter(|&k| self.edges[k].0 == v || self.edges[k].1 == v).collect();
                if inc.len() <= 1 {
                    self.delete_node(v);
                    changed = true;
                } else if inc.len() == 2 {
                    let e1 = self.edges[inc[0]].clone();
                    let e2 = self.edges[inc[1]].clone();
                    let u = if e1.0 == v { e1.1 } else { e1.0 };
                    let w = if e2.0 == v { e2.1 } else { e2.0 };
                    let r = self.node[v].clone().unwrap();
                    let p = Rational::from(&e1.2 * &e2.2) * r;
                    self.delete_node(v);
                    self.edges.push((u, w, p));
                    changed = true;
                }
                if changed {
                    break;
                }
            }
            if !changed {
                return factor;
            }
        }
    }
}

fn factor_rec(mut w: Work) -> Rational {
    if w.s == w.t {
        return w.node[w.s].clone().unwrap_or_default();
    }
    let factor = w.reduce();
    if is_zero(&factor) || w.node[w.s].is_none() || w.node[w.t].is_none() {
        return Rational::new();
    }
    if !w.connected() {
        return Rational::new();
    }
    if w.edges.len() == 1 {
        return factor * &w.edges[0].2;
    }
    // pivot on the terminal-adjacent edge whose far endpoint has the highest degree
    let (k, u) = w
        .edges
        .iter()
        .enumerate()
        .filter_map(|(k, e)| {
            if e.0 == w.t {
                Some((k, e.1))
            } else if e.1 == w.t {
                Some((k, e.0))
            } else {
                None
            }
        })
        .max_by_key(|&(_, u)| (u == w.s, w.degree(u)))
        .expect("t has an incident edge when connected");
    let p = w.edges[k].2.clone();
    let q = Rational::from(1) - &p;
    let mut deleted = w.clone();
    deleted.edges.swap_remove(k);
    let mut total = q * factor_rec(deleted);
    if u == w.s {
        total += &p;
    } else {
        let ru = w.node[u].clone().unwrap();
        // edge up and u up: merge u into t
        let mut contracted = w.clone();
        contracted.edges.swap_remove(k);
        for e in contracted.edges.iter_mut() {
            if e.0 == u {
                e.0 = w.t;
            }
            if e.1 == u {
                e.1 = w.t;
            }
        }
        contracted.node[u] = None;
        total += Rational::from(&p * &ru) * factor_rec(contracted);
        // edge up, u down
        let mut removed = w.clone();
        removed.delete_node(u);
        total += Rational::from(&p * &(Rational::from(1) - ru)) * factor_rec(removed);
    }
    factor * total
}

/// Two-terminal reliability by pivotal decomposition with series-parallel reductions.
pub fn rel2_factoring(g: &ExplicitGraph) -> Result<Rational> {
    let w = Work {
        node: g.nodes.iter().map(|n| Some(n.1.clone())).collect(),
        edges: g.edges.iter().map(|e| (e.0, e.1, e.2.clone())).collect(),
        s: g.terminals.0,
        t: g.terminals.1,
    };
    Ok(factor_rec(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qpoly, Var};

    fn bridge(p: &Rational) -> ExplicitGraph {
        ExplicitGraph::with_edges(4, &[(0, 1, p.clone()), (0, 2, p.clone()), (1, 2, p.clone()), (1, 3, p.clone()), (2, 3, p.clone())], (0, 3)).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = ExplicitGraph::new(
            vec![("s".into(), q(1, 2)), ("t".into(), q(2, 3))],
            vec![(0, 1, q(3, 5), "e".into())],
            (0, 1),
        )
        .unwrap();
        assert_eq!(rel2_enum(&g).unwrap(), q(1, 5));
        assert_eq!(rel2_factoring(&g).unwrap(), q(1, 5));
        assert_eq!(rel_a_enum(&g).unwrap(), q(3, 5));
    }

    #[test]
    fn wheatstone_bridge() {
        let p = q(1, 2);
        assert_eq!(rel2_enum(&bridge(&p)).unwrap(), q(1, 2));
        let p = q(2, 7);
        let want = qpoly(&[0, 0, 2, 2, -5, 2], Var::P).eval(&p);
        assert_eq!(rel2_enum(&bridge(&p)).unwrap(), want);
        assert_eq!(rel2_factoring(&bridge(&p)).unwrap(), want);
    }

    #[test]
    fn series_and_parallel() {
        let (a, b) = (q(1, 3), q(3, 4));
        let s = ExplicitGraph::with_edges(3, &[(0, 1, a.clone()), (1, 2, b.clone())], (0, 2)).unwrap();
        assert_eq!(rel2_factoring(&s).unwrap(), Rational::from(&a * &b));
        let p = ExplicitGraph::with_edges(2, &[(0, 1, a.clone()), (0, 1, b.clone())], (0, 1)).unwrap();
        let want = Rational::from(&a + &b) - Rational::from(&a * &b);
        assert_eq!(rel2_factoring(&p).unwrap(), want);
        assert_eq!(rel2_enum(&p).unwrap(), want);
    }

    #[test]
    fn triangle_and_k4_all_terminal() {
        let p = q(2, 5);
        let tri = ExplicitGraph::with_edges(3, &[(0, 1, p.clone()), (1, 2, p.clone()), (0, 2, p.clone())], (0, 2)).unwrap();
        assert_eq!(rel_a_enum(&tri).unwrap(), qpoly(&[0, 0, 3, -2], Var::P).eval(&p));
        let mut e = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                e.push((i, j, p.clone()));
            }
        }
        let k4 = ExplicitGraph::with_edges(4, &e, (0, 1)).unwrap();
        assert_eq!(rel_a_enum(&k4).unwrap(), qpoly(&[0, 0, 0, 16, -33, 24, -6], Var::P).eval(&p));
        assert_eq!(rel2_enum(&k4).unwrap(), qpoly(&[0, 1, 2, 0, -7, 7, -2], Var::P).eval(&p));
        assert_eq!(rel2_factoring(&k4).unwrap(), qpoly(&[0, 1, 2, 0, -7, 7, -2], Var::P).eval(&p));
    }

    #[test]
    fn guard() {
        let e: Vec<_> = (0..29).map(|i| (i, i + 1, q(1, 2))).collect();
        let g = ExplicitGraph::with_edges(30, &e, (0, 29)).unwrap();
        assert!(matches!(rel2_enum(&g), Err(Error::Guard(29, 28))));
    }
}
