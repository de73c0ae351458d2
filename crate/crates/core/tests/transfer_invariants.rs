mod common;

use common::{random_spec, rng, unit_rational};
use ladderrel::exact::{q, qpoly, Poly, Rational, Var};
use ladderrel::graphs::{explicit_graph, uniform_spec, Destination, Elem, ElementId, Family, FamilySpec};
use ladderrel::oracle::{rel2_enum, rel2_factoring};
use ladderrel::transfer::{failure_frequency, partial_derivative, reliability, reliability_polynomial, FailureModel};
use proptest::prelude::*;

fn sample_specs(seed: u64) -> Vec<FamilySpec<Rational>> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for n in 0..=2 {
        for d in [Destination::S, Destination::T] {
            out.push(random_spec(Family::K4Ladder, n, Some(d), &mut r));
        }
        out.push(random_spec(Family::K4AllTerminal, n, None, &mut r));
    }
    for f_zero in [false, true] {
        for d in [Destination::S, Destination::T, Destination::U] {
            out.push(random_spec(Family::K3Cylinder { f_zero }, 1, Some(d), &mut r));
        }
    }
    out
}

#[test]
fn multiaffine_in_every_element() {
    let mut r = rng(101);
    for spec in sample_specs(100) {
        for id in spec.elements() {
            let t = unit_rational(&mut r);
            let at = |v: Rational| reliability(&spec.with_element(id, v).unwrap()).unwrap();
            let (r0, r1, rt) = (at(q(0, 1)), at(q(1, 1)), at(t.clone()));
            let lin = Rational::from(1 - &t) * r0 + t * r1;
            assert_eq!(rt, lin, "{} {id}", spec.family);
        }
    }
}

#[test]
fn derivative_is_difference_of_endpoints() {
    for spec in sample_specs(110) {
        for id in spec.elements() {
            let at = |v: Rational| reliability(&spec.with_element(id, v).unwrap()).unwrap();
            assert_eq!(partial_derivative(&spec, id).unwrap(), at(q(1, 1)) - at(q(0, 1)), "{} {id}", spec.family);
        }
    }
}

#[test]
fn perfect_elements_give_one() {
    let one = q(1, 1);
    for family in Family::ALL {
        let dests: Vec<Option<Destination>> = if family == Family::K4AllTerminal {
            vec![None]
        } else {
            family.destinations().iter().map(|d| Some(*d)).collect()
        };
        for d in dests {
            for n in 0..=50 {
                let s = uniform_spec(family, n, &one, &one, d).unwrap();
                assert_eq!(reliability(&s).unwrap(), one, "{family} {d:?} n={n}");
            }
        }
    }
}

#[test]
fn bounded_and_monotone() {
    let mut r = rng(120);
    for spec in sample_specs(121) {
        let base = reliability(&spec).unwrap();
        assert!(base >= 0 && base <= 1);
        for id in spec.elements() {
            let cur = spec.get(id).unwrap().clone();
            let bump = Rational::from(&cur + &(Rational::from(1 - &cur) * unit_rational(&mut r)));
            let up = reliability(&spec.with_element(id, bump).unwrap()).unwrap();
            assert!(up >= base, "{} {id}", spec.family);
        }
    }
}

#[test]
fn zero_edge_is_deleted_edge() {
    let mut r = rng(130);
    for family in [Family::K4Ladder, Family::K3Cylinder { f_zero: false }] {
        let spec = random_spec(family, 1, family.default_destination(), &mut r);
        for id in spec.elements().into_iter().filter(|e| !e.kind.is_node()) {
            let zeroed = spec.with_element(id, q(0, 1)).unwrap();
            let full = explicit_graph(&spec).unwrap();
            let mut kept = full.clone();
            let label = id.to_string();
            kept.edges.iter_mut().filter(|e| e.3 == label).for_each(|e| e.2 = q(0, 1));
            let want = reliability(&zeroed).unwrap();
            assert_eq!(rel2_enum(&explicit_graph(&zeroed).unwrap()).unwrap(), want);
            assert_eq!(rel2_enum(&kept).unwrap(), want, "{family} {id}");
        }
    }
}

#[test]
fn k3_cylinder_n3_matches_factoring() {
    let mut r = rng(140);
    for f_zero in [false, true] {
        for d in [Destination::S, Destination::T, Destination::U] {
            let s = random_spec(Family::K3Cylinder { f_zero }, 3, Some(d), &mut r);
            assert_eq!(reliability(&s).unwrap(), rel2_factoring(&explicit_graph(&s).unwrap()).unwrap());
        }
    }
}

fn swap_last(spec: &FamilySpec<Rational>, pairs: &[(Elem, Elem)]) -> FamilySpec<Rational> {
    let mut s = spec.clone();
    let last = s.cells.last_mut().unwrap();
    let orig = last.clone();
    for &(x, y) in pairs {
        *last.get_mut(x).unwrap() = orig.get(y).unwrap().clone();
        *last.get_mut(y).unwrap() = orig.get(x).unwrap().clone();
    }
    s
}

#[test]
fn destination_symmetry_swaps_a_e_and_c_d() {
    let mut r = rng(150);
    let printed = [(Elem::A, Elem::E), (Elem::C, Elem::D), (Elem::S, Elem::T)];
    let other = [(Elem::A, Elem::C), (Elem::D, Elem::E), (Elem::S, Elem::T)];
    let mut other_fails = false;
    for n in 1..=3 {
        for _ in 0..5 {
            let s = random_spec(Family::K4Ladder, n, Some(Destination::S), &mut r);
            let mut t = s.clone();
            t.destination = Some(Destination::T);
            let rel_t = reliability(&t).unwrap();
            assert_eq!(reliability(&swap_last(&s, &printed)).unwrap(), rel_t);
            other_fails |= reliability(&swap_last(&s, &other)).unwrap() != rel_t;
        }
    }
    assert!(other_fails);
}

#[test]
fn uniform_examples() {
    let p = Poly::<Rational>::var_in(Var::P);
    let rho = Poly::<Rational>::var_in(Var::P).with_var(Var::P);
    let s = uniform_spec(Family::K4Ladder, 0, &p, &rho, Some(Destination::S)).unwrap();
    assert_eq!(reliability(&s).unwrap(), rho);
    let k4 = qpoly(&[0, 1, 2, 0, -7, 7, -2], Var::P);
    assert_eq!(reliability_polynomial(Family::K4Ladder, 1, &q(1, 1), Some(Destination::S)).unwrap(), k4);
    let g = explicit_graph(&uniform_spec(Family::K4Ladder, 1, &q(1, 3), &q(1, 1), Some(Destination::S)).unwrap()).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (4, 6));
    let all = qpoly(&[0, 0, 0, 16, -33, 24, -6], Var::P);
    assert_eq!(reliability_polynomial(Family::K4AllTerminal, 1, &q(1, 1), None).unwrap(), all);
    let a0 = uniform_spec(Family::K4AllTerminal, 0, &p, &p, None).unwrap();
    assert_eq!(reliability(&a0).unwrap(), p);
    let b0 = explicit_graph(&uniform_spec(Family::K4Ladder, 0, &q(1, 3), &q(1, 1), Some(Destination::S)).unwrap()).unwrap();
    assert_eq!((b0.nodes.len(), b0.edges.len()), (2, 1));
}

#[test]
fn k4_n2_polynomial_matches_enumeration() {
    let poly = reliability_polynomial(Family::K4Ladder, 2, &q(1, 1), Some(Destination::S)).unwrap();
    for (num, den) in [(1, 3), (2, 5), (5, 7)] {
        let p = q(num, den);
        let s = uniform_spec(Family::K4Ladder, 2, &p, &q(1, 1), Some(Destination::S)).unwrap();
        assert_eq!(poly.eval(&p), rel2_enum(&explicit_graph(&s).unwrap()).unwrap());
    }
}

#[test]
fn failure_frequency_is_chain_rule_on_uniform() {
    let p = q(1, 2);
    let s = uniform_spec(Family::K4Ladder, 1, &p, &q(1, 1), Some(Destination::S)).unwrap();
    let model: FailureModel = s.elements().into_iter().filter(|e| !e.kind.is_node()).map(|e| (e, q(1, 1))).collect();
    let drel = qpoly(&[0, 1, 2, 0, -7, 7, -2], Var::P).derivative().eval(&p);
    assert_eq!(failure_frequency(&s, &model).unwrap(), p * drel);
    let mut bad = model.clone();
    bad.insert(ElementId::new(Elem::U, 1), q(1, 1));
    assert!(failure_frequency(&s, &bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn random_k4_specs_match_enumeration(seed in any::<u64>(), n in 0usize..=2, dest_t in any::<bool>()) {
        let d = if dest_t { Destination::T } else { Destination::S };
        let s = random_spec(Family::K4Ladder, n, Some(d), &mut rng(seed));
        let g = explicit_graph(&s).unwrap();
        let v = reliability(&s).unwrap();
        prop_assert_eq!(&v, &rel2_enum(&g).unwrap());
        prop_assert_eq!(&v, &rel2_factoring(&g).unwrap());
    }
}
