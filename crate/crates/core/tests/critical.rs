use ladderrel::exact::{BiPoly, Integer, Poly, Rational, Var};
use ladderrel::graphs::Family;
use ladderrel::zeros::critical::critical_rho_exact;
use ladderrel::zeros::locus_symbolic;
use ladderrel::zeros::LocusKind;

fn bi(rows: &[&[i64]]) -> BiPoly {
    let np = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let c = (0..np)
        .map(|i| Poly::new(rows.iter().map(|r| Rational::from(r.get(i).copied().unwrap_or(0))).collect(), Var::Rho))
        .collect();
    Poly::new(c, Var::P)
}

fn ip(c: &[i64], v: Var) -> Poly<Integer> {
    Poly::from_i64s(c, v)
}

fn rho_c1_poly() -> Poly<Integer> {
    ip(&[-32768, -198656, 3990544, -12843528, 16258037, -6757568, -2015436, -575540, 4636356, -3082436, 624640], Var::Rho)
}

fn p_c1_poly() -> Poly<Integer> {
    ip(&[40, -364, 1064, -700, -1946, 4296, -3465, 1074, 146, -176, 32], Var::P)
}

fn check(a: &BiPoly, b: &BiPoly) {
    let e = critical_rho_exact(a, b).unwrap();
    assert!(e.rho_eliminant.to_rational().exact_div_poly(&rho_c1_poly().to_rational()).is_some());
    assert!(e.p_eliminant.to_rational().exact_div_poly(&p_c1_poly().to_rational()).is_some());
    let pt = e
        .points
        .iter()
        .find(|c| (c.rho.to_f64() - 0.175221381869).abs() < 1e-9)
        .expect("rho_c1 present");
    assert!((pt.p.to_f64() + 0.604692601721).abs() < 1e-9);
    assert_eq!(pt.rho_poly, rho_c1_poly());
    assert_eq!(pt.p_poly, p_c1_poly());
}

#[test]
fn printed_curves_give_rho_c1() {
    let iso = bi(&[&[2], &[2, 4, -11, 4], &[0, 12, -40, 45, -20, 3]]);
    let opp = bi(&[
        &[4, -14, 8],
        &[0, 8, -46, 130, -153, 80, -16],
        &[0, 0, 4, 18, -130, 249, -232, 119, -33, 4],
    ]);
    check(&iso, &opp);
}

#[test]
fn derived_loci_give_rho_c1() {
    let iso = locus_symbolic(Family::K4Ladder, LocusKind::Isolated).unwrap();
    let opp = locus_symbolic(Family::K4Ladder, LocusKind::Opposite).unwrap();
    check(&iso, &opp);
}

#[test]
fn bisection_agrees_with_elimination_on_rho_c1() {
    use ladderrel::exact::q;
    use ladderrel::zeros::critical::{bisect_structure, Structure};
    let b = bisect_structure(Family::K4Ladder, Structure::IsolatedValid { at_least: 3 }, &q(1, 10), &q(3, 10), 1e-7).unwrap();
    assert!((b.rho.to_f64() - 0.175221381869).abs() < 1e-6);
    let p = b.observation.p.unwrap().to_f64();
    assert!((p.0 + 0.604692601721).abs() < 1e-5 && p.1.abs() < 1e-12);
}

#[test]
fn k4_two_rightmost_isolated_zeros() {
    use ladderrel::exact::q;
    use ladderrel::zeros::critical::{bisect_structure, Structure};
    let b = bisect_structure(Family::K4Ladder, Structure::IsolatedValid { at_least: 2 }, &q(3, 10), &q(1, 2), 1e-7).unwrap();
    assert!((b.rho.to_f64() - 0.406657811123).abs() < 1e-6);
}

#[test]
fn non_monotone_bracket_is_reported() {
    use ladderrel::exact::q;
    use ladderrel::zeros::critical::{bisect_structure, Structure};
    let e = bisect_structure(Family::K4Ladder, Structure::IsolatedValid { at_least: 2 }, &q(1, 2), &q(3, 5), 1e-3).unwrap_err();
    assert!(matches!(e, ladderrel::Error::NotMonotone(_)));
}
