use ladderrel::exact::{q, BiPoly, Integer, Poly, Rational, Var};
use ladderrel::graphs::Family;
use ladderrel::zeros::locus::{at_rho, locus_symbolic, normalize_univariate};
use ladderrel::zeros::{contains_factor, isolated_zero_locus, LocusKind};

/// Rows are rho powers, each a list of p coefficients.
fn bi(rows: &[&[i64]]) -> BiPoly {
    let np = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let c = (0..np)
        .map(|i| Poly::new(rows.iter().map(|r| Rational::from(r.get(i).copied().unwrap_or(0))).collect(), Var::Rho))
        .collect();
    Poly::new(c, Var::P)
}

fn bi_divides(f: &BiPoly, g: &BiPoly) -> bool {
    f.exact_div_poly(g).is_some()
}

#[test]
fn k4_symbolic_opposite_contains_crossing_curve() {
    let want = bi(&[
        &[4, -14, 8],
        &[0, 8, -46, 130, -153, 80, -16],
        &[0, 0, 4, 18, -130, 249, -232, 119, -33, 4],
    ]);
    let f = locus_symbolic(Family::K4Ladder, LocusKind::Opposite).unwrap();
    assert!(bi_divides(&f, &want), "{f:?}");
}

#[test]
fn k4_symbolic_isolated_contains_common_root_curve() {
    let want = bi(&[&[2], &[2, 4, -11, 4], &[0, 12, -40, 45, -20, 3]]);
    let f = locus_symbolic(Family::K4Ladder, LocusKind::Isolated).unwrap();
    assert!(bi_divides(&f, &want), "{f:?}");
}

#[test]
fn k4_symbolic_double_specializes_to_fixed_rho() {
    let f = locus_symbolic(Family::K4Ladder, LocusKind::Double).unwrap();
    for rho in [q(1, 1), q(2, 5)] {
        let s = normalize_univariate(&at_rho(&f, &rho)).unwrap();
        let d = ladderrel::zeros::double_root_locus(Family::K4Ladder, &rho).unwrap();
        assert!(contains_factor(&s, &d) || contains_factor(&d, &s), "rho {rho}");
    }
}

#[test]
fn k3_isolated_contains_common_root_curve() {
    let eq = bi(&[
        &[-2, -6, 28, -16],
        &[0, -1, -39, 172, -316, 230, -56],
        &[0, 0, 12, 42, -416, 947, -899, 382, -60],
        &[0, 0, 0, 27, -45, 33, -90, 135, -77, 15],
    ]);
    for rho in [q(1, 1), q(2, 5)] {
        let want: Poly<Integer> = normalize_univariate(&at_rho(&eq, &rho)).unwrap();
        let f = isolated_zero_locus(Family::K3Cylinder { f_zero: false }, &rho).unwrap();
        assert!(contains_factor(&f, &want), "rho {rho}");
    }
}
