use std::collections::BTreeMap;
use std::sync::OnceLock;

use torsion_core::curves::modified_division_poly;
use torsion_core::numcert::{
    build_certificate, eval_ball, verify_certificate, CertError, Certificate, Complex, ComplexBall, Float, PointValue,
    Transform,
};

const PREC: u32 = 256;

fn cert() -> &'static Certificate {
    static CERT: OnceLock<Certificate> = OnceLock::new();
    CERT.get_or_init(|| build_certificate(7, PREC).expect("p = 7 certificate"))
}

fn first_ball(c: &mut Certificate) -> &mut ComplexBall {
    c.points
        .iter_mut()
        .find_map(|p| match &mut p.value {
            PointValue::Ball { ball, .. } => Some(ball),
            _ => None,
        })
        .unwrap()
}

/// Largest `log2 |F_base(base, delta_i)|` recomputed from scratch.
fn max_residual_exp(c: &Certificate) -> i64 {
    let f3 = modified_division_poly(3).unwrap();
    let fp = modified_division_poly(c.p).unwrap();
    let mut worst = i64::MIN;
    for pt in &c.points {
        let PointValue::Ball { ball, .. } = &pt.value else { continue };
        let f = if pt.base_order == 3 { &f3 } else { &fp };
        let base = pt.transform.apply(ball, c.precision).unwrap();
        for d in [&c.delta1, &c.delta2] {
            let r = eval_ball(f, &[("x", &base), ("delta", d)], c.precision).unwrap().abs_upper();
            if !r.is_zero() {
                worst = worst.max(r.mag_exp());
            }
        }
    }
    worst
}

#[test]
fn p7_certificate_shape() {
    let c = cert();
    let report = verify_certificate(c);
    assert!(report.passed(), "{report}");
    assert_eq!(c.points.len(), 22);
    assert_eq!(c.order_counts(), BTreeMap::from([(3, 1), (4, 6), (6, 3), (7, 3), (14, 9)]));
    assert!(max_residual_exp(c) < -(PREC as i64) / 4);
}

#[test]
fn delta_product_matches_u() {
    // delta1 delta2 = -1/u^2
    let c = cert();
    let u = &c.u.value;
    let prod = c.delta1.mul(&c.delta2, PREC).mul(&u.mul(u, PREC), PREC);
    assert!(prod.add(&ComplexBall::from_i64(1), PREC).abs_upper() < Float::pow2(-150));
}

#[test]
fn json_round_trip() {
    let c = cert();
    let back = Certificate::from_json(&c.to_json()).unwrap();
    assert_eq!(&back, c);
    assert!(verify_certificate(&back).passed());
    assert_eq!(back.to_json(), c.to_json());
}

#[test]
fn perturbed_point_rejected() {
    let mut c = cert().clone();
    let b = first_ball(&mut c);
    b.mid = &b.mid + &Complex::real(Float::pow2(-20));
    let report = verify_certificate(&c);
    assert!(!report.passed());
    assert!(report.failures().iter().any(|e| e.name.starts_with("point")));
}

#[test]
fn equal_deltas_rejected() {
    let mut c = cert().clone();
    c.delta2 = c.delta1.clone();
    let report = verify_certificate(&c);
    assert!(!report.passed());
    assert!(report.failures().iter().any(|e| e.name == "2-torsion images disjoint"));
}

#[test]
fn duplicate_point_rejected() {
    let mut c = cert().clone();
    let last = c.points.len() - 1;
    c.points[last] = c.points[last - 4].clone();
    assert!(!verify_certificate(&c).passed());
}

#[test]
fn wrong_order_or_transform_rejected() {
    let mut c = cert().clone();
    let i = c.points.iter().position(|p| p.order == 14).unwrap();
    c.points[i].order = 7;
    assert!(!verify_certificate(&c).passed());
    let mut c = cert().clone();
    let i = c.points.iter().position(|p| p.transform == Transform::Neg).unwrap();
    c.points[i].transform = Transform::Inv;
    assert!(!verify_certificate(&c).passed());
}

#[test]
fn loose_tolerance_or_missing_points_rejected() {
    let mut c = cert().clone();
    c.tolerance_exp = 0;
    assert!(!verify_certificate(&c).passed());
    let mut c = cert().clone();
    c.points.truncate(18);
    assert!(!verify_certificate(&c).passed());
}

#[test]
fn low_precision_refused() {
    assert_eq!(build_certificate(7, 64), Err(CertError::LowPrecision(64)));
}

#[test]
fn precision_refinement() {
    let hi = build_certificate(7, 384).unwrap();
    assert!(verify_certificate(&hi).passed());
    let (lo_r, hi_r) = (max_residual_exp(cert()), max_residual_exp(&hi));
    assert!(hi_r < lo_r - 64, "residual exponents {lo_r} -> {hi_r}");
    // Same u root, same deltas to the lower precision.
    assert_eq!(hi.u.root_index, cert().u.root_index);
    assert!(!hi.delta1.disjoint(&cert().delta1) || (&hi.delta1.mid - &cert().delta1.mid).abs_l1() < Float::pow2(-200));
}
