use torsion_core::bigpoly::MPoly;
use torsion_core::curves::{
    division_poly, modified_division_poly, numeric_torsion_oracle, NumericCurve, QuarticModel, WeierstrassCurve,
};
use torsion_core::numcert::{roots_univariate, Complex, Float};

mod common;

use common::{fp_roots, oracle_agreement, random_deltas, unmatched};

const PREC: u32 = 256;

#[test]
fn fp_roots_are_projected_torsion() {
    for p in [3u32, 5, 7] {
        for delta in random_deltas(0x0dd + p as u64, 3) {
            oracle_agreement(p, &delta, PREC).unwrap();
        }
    }
}

#[test]
fn fp_is_symmetric_under_minus_inverse_pair() {
    // (x, y) -> (-x, y) maps E_delta to E_-delta and (x, y) -> (1/x, y/x^2)
    // maps E_delta to E_1/delta, both fixing the origin, so
    // x^N delta^D F_p(-1/x, -1/delta) = +-F_p(x, delta).
    for p in [3u32, 5, 7, 11] {
        let f = modified_division_poly(p).unwrap();
        let dx = f.degree_in("x").or_zero();
        let dd = f.degree_in("delta").or_zero();
        assert_eq!((dx, dd), ((p * p - 1) / 2, (p * p - 1) / 4));
        let names = f.vars().names().to_vec();
        let pos = |v: &str| names.iter().position(|n| n == v).unwrap();
        let (ix, id) = (pos("x"), pos("delta"));
        let terms: Vec<_> = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let (i, j) = (m.0[ix], m.0[id]);
                let c = if (i + j) % 2 == 1 { -c.clone() } else { c.clone() };
                (c, vec![("x", dx - i), ("delta", dd - j)])
            })
            .collect();
        let g = MPoly::from_terms(terms);
        assert!(g.equals(&f) || g.equals(&-&f), "p = {p}");
    }
}

#[test]
fn roots_at_minus_inverse_delta_are_minus_inverse_roots() {
    let tol = Float::pow2(-100);
    for delta in random_deltas(7, 2) {
        let inv = -&delta.inv(PREC);
        let moved: Vec<Complex> = fp_roots(5, &delta, PREC).unwrap().iter().map(|r| -&r.inv(PREC)).collect();
        assert_eq!(unmatched(&fp_roots(5, &inv, PREC).unwrap(), &moved, &tol), 0);
    }
}

#[test]
fn psi3_short_curve_matches_oracle() {
    let psi = division_poly(&WeierstrassCurve::short(1, 1), 3).unwrap();
    let roots: Vec<Complex> = roots_univariate(&psi, 200).unwrap().into_iter().map(|b| b.mid).collect();
    let oracle: Vec<Complex> = numeric_torsion_oracle(&NumericCurve::from_i64(0, 1, 1, 200), 3, 200)
        .unwrap()
        .into_iter()
        .map(|b| b.mid)
        .collect();
    assert_eq!(unmatched(&roots, &oracle, &Float::pow2(-150)), 0);
}

#[test]
fn division_poly_degrees() {
    let curve = WeierstrassCurve::edelta_scaled();
    for n in [3u32, 5, 7] {
        let psi = division_poly(&curve, n).unwrap();
        assert_eq!(psi.degree_in("X").or_zero(), (n * n - 1) / 2, "n = {n}");
    }
    for p in [3u32, 5, 7, 11] {
        let f = modified_division_poly(p).unwrap();
        assert_eq!(f.degree_in("x").or_zero(), (p * p - 1) / 2);
    }
}

#[test]
fn singular_delta_rejected() {
    assert!(QuarticModel::new(Complex::one(), PREC).is_err());
    assert!(QuarticModel::new(Complex::i(), PREC).is_err());
    assert!(QuarticModel::new(Complex::from_i64(2), PREC).is_ok());
}
