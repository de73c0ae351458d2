mod common;

use common::{rng, unit_rational};
use ladderrel::exact::{q, Rational};
use ladderrel::graphs::ExplicitGraph;
use ladderrel::oracle::{rel2_enum, rel2_factoring, rel_a_enum};
use rand::seq::SliceRandom;
use rand::Rng;

fn random_graph(r: &mut impl Rng) -> ExplicitGraph {
    let n: usize = r.gen_range(2..=8);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(r);
    let m = r.gen_range(1..=pairs.len().min(28 - n));
    let nodes = (0..n)
        .map(|i| (format!("v{i}"), if r.gen_bool(0.3) { q(1, 1) } else { unit_rational(r) }))
        .collect();
    let edges = pairs[..m].iter().enumerate().map(|(k, &(u, v))| (u, v, unit_rational(r), format!("e{k}"))).collect();
    ExplicitGraph::new(nodes, edges, (0, n - 1)).unwrap()
}

#[test]
fn factoring_equals_enumeration_on_random_graphs() {
    let mut r = rng(200);
    for trial in 0..100 {
        let g = random_graph(&mut r);
        let e = rel2_enum(&g).unwrap();
        assert_eq!(rel2_factoring(&g).unwrap(), e, "trial {trial}");
        assert!(e >= 0 && e <= 1);
        let a = rel_a_enum(&g).unwrap();
        assert!(a >= 0 && a <= 1);
    }
}

#[test]
fn zero_edges_change_nothing() {
    let mut r = rng(210);
    for _ in 0..30 {
        let g = random_graph(&mut r);
        let mut h = g.clone();
        let n = h.nodes.len();
        if n < 3 {
            continue;
        }
        let (u, v) = (r.gen_range(0..n), r.gen_range(0..n));
        if u == v {
            continue;
        }
        h.edges.push((u, v, Rational::new(), "zero".into()));
        assert_eq!(rel2_enum(&h).unwrap(), rel2_enum(&g).unwrap());
        assert_eq!(rel2_factoring(&h).unwrap(), rel2_factoring(&g).unwrap());
        assert_eq!(rel_a_enum(&h).unwrap(), rel_a_enum(&g).unwrap());
    }
}

#[test]
fn perfect_terminals_and_same_node() {
    let g = ExplicitGraph::new(vec![("s".into(), q(2, 3))], vec![], (0, 0)).unwrap();
    assert_eq!(rel2_enum(&g).unwrap(), q(2, 3));
    assert_eq!(rel2_factoring(&g).unwrap(), q(2, 3));
}
