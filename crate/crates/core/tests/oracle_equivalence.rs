mod common;

use common::{random_spec, rng};
use ladderrel::graphs::{explicit_graph, Destination, Family};
use ladderrel::oracle::{rel2_enum_multi, rel2_factoring, rel_a_enum};
use ladderrel::transfer::{k3_rejected_alias_reliability, reliability};

fn check_two_terminal(family: Family, n: usize, trials: usize, seed: u64) {
    let mut r = rng(seed);
    let dests = family.destinations();
    for trial in 0..trials {
        let base = random_spec(family, n, Some(dests[0]), &mut r);
        let g = explicit_graph(&base).unwrap();
        let targets: Vec<usize> = dests
            .iter()
            .map(|&d| {
                let mut s = base.clone();
                s.destination = Some(d);
                explicit_graph(&s).unwrap().terminals.1
            })
            .collect();
        let brute = rel2_enum_multi(&g, &targets).unwrap();
        for (k, &d) in dests.iter().enumerate() {
            let mut s = base.clone();
            s.destination = Some(d);
            assert_eq!(reliability(&s).unwrap(), brute[k], "{family} n={n} dest={d:?} trial {trial}");
        }
    }
}

#[test]
fn k3_cylinder_n2_matches_enumeration() {
    check_two_terminal(Family::K3Cylinder { f_zero: false }, 2, 3, 11);
}

#[test]
fn k3_cylinder_f_zero_n2_matches_enumeration() {
    check_two_terminal(Family::K3Cylinder { f_zero: true }, 2, 3, 12);
}

#[test]
fn k3_small_n_match_enumeration() {
    for f_zero in [false, true] {
        for n in 0..=1 {
            check_two_terminal(Family::K3Cylinder { f_zero }, n, 10, 13 + n as u64);
        }
    }
}

#[test]
fn k4_ladder_matches_enumeration() {
    for n in 0..=2 {
        check_two_terminal(Family::K4Ladder, n, 10, 20 + n as u64);
    }
    check_two_terminal(Family::K4Ladder, 3, 3, 23);
}

#[test]
fn k4_all_terminal_matches_enumeration() {
    let mut r = rng(30);
    for n in 0..=3 {
        for _ in 0..10 {
            let s = random_spec(Family::K4AllTerminal, n, None, &mut r);
            assert_eq!(reliability(&s).unwrap(), rel_a_enum(&explicit_graph(&s).unwrap()).unwrap(), "n={n}");
        }
    }
}

#[test]
fn rejected_alias_disagrees_with_enumeration() {
    let mut r = rng(40);
    let family = Family::K3Cylinder { f_zero: false };
    let mut differs = false;
    for _ in 0..3 {
        for d in [Destination::S, Destination::T, Destination::U] {
            let s = random_spec(family, 2, Some(d), &mut r);
            let brute = rel2_factoring(&explicit_graph(&s).unwrap()).unwrap();
            assert_eq!(reliability(&s).unwrap(), brute);
            differs |= k3_rejected_alias_reliability(&s).unwrap() != brute;
        }
    }
    assert!(differs, "the alternative alias reading should break oracle equality");
}

#[test]
fn factoring_matches_enumeration_on_family_graphs() {
    let mut r = rng(50);
    for family in [Family::K4Ladder, Family::K3Cylinder { f_zero: false }] {
        for n in 0..=2 {
            let s = random_spec(family, n, family.default_destination(), &mut r);
            let g = explicit_graph(&s).unwrap();
            assert_eq!(rel2_factoring(&g).unwrap(), reliability(&s).unwrap(), "{family} n={n}");
        }
    }
}
