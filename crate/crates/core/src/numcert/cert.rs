use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{eval_ball, roots_balls, roots_upoly, specialize, Complex, ComplexBall, Float};
use crate::bigpoly::MPoly;
use crate::curves::{modified_division_poly, CurveError};
use crate::intersect::{delta_pair_from_u, reduce_fp_mod_f3, resultant_profile, IntersectError, ReductionPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("precision {0} is below 128 bits")]
    LowPrecision(u32),
    #[error("no root of the multiplicity-{0} part carries enough common points")]
    NoSuitableRoot(u32),
    #[error("u-side profile has no part of multiplicity above 1")]
    NoRepeatedPart,
    #[error("found {found} common v for u, expected at least {expected}; raise the precision")]
    TooFewCommon { found: usize, expected: usize },
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Intersect(#[from] IntersectError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Root(#[from] super::RootError),
    #[error(transparent)]
    Poly(#[from] crate::bigpoly::PolyError),
}

/// Map taking a base torsion image to its orbit partner: `x`, `-x`, `1/x`, `-1/x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    Id,
    Neg,
    Inv,
    NegInv,
}

impl Transform {
    pub const ALL: [Transform; 4] = [Transform::Id, Transform::Neg, Transform::Inv, Transform::NegInv];

    /// The map is an involution, so this also recovers the base point.
    pub fn apply(self, z: &ComplexBall, prec: u32) -> Option<ComplexBall> {
        match self {
            Transform::Id => Some(z.clone()),
            Transform::Neg => Some(z.neg()),
            Transform::Inv => z.inv(prec),
            Transform::NegInv => z.inv(prec).map(|b| b.neg()),
        }
    }

    fn label(self, name: &str) -> String {
        match self {
            Transform::Id => name.to_string(),
            Transform::Neg => format!("-{name}"),
            Transform::Inv => format!("1/{name}"),
            Transform::NegInv => format!("-1/{name}"),
        }
    }
}

/// A shared point: an exact symbol among `0, oo, 1, -1, i, -i`, or a ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PointValue {
    Symbol { symbol: String },
    Ball { ball: ComplexBall, approx: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertPoint {
    pub label: String,
    /// Claimed exact order of the torsion points above this image.
    pub order: u32,
    pub value: PointValue,
    /// How the point arises from a base image of order `base_order`.
    pub transform: Transform,
    pub base_order: u32,
    /// `log2` upper bounds of `|F_base(T(value), delta_i)|` at build time.
    pub residual_exp: Vec<Option<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct USource {
    pub factor: String,
    pub degree: usize,
    pub multiplicity: u32,
    pub root_index: usize,
    pub value: ComplexBall,
}

/// Record of the shared projective torsion images of `E_delta1`, `E_delta2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: u32,
    pub precision: u32,
    /// Residuals and separations are checked against `2^tolerance_exp`.
    pub tolerance_exp: i64,
    pub u: USource,
    pub delta1: ComplexBall,
    pub delta2: ComplexBall,
    pub points: Vec<CertPoint>,
}

impl Certificate {
    /// Count of points per claimed order.
    pub fn order_counts(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for pt in &self.points {
            *m.entry(pt.order).or_insert(0) += 1;
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Certificate, serde_json::Error> {
        serde_json::from_str(s)
    }
}

const SYMBOLS: [&str; 6] = ["0", "oo", "1", "-1", "i", "-i"];

fn symbol_value(s: &str) -> Option<Option<Complex>> {
    Some(match s {
        "0" => Some(Complex::zero()),
        "oo" => None,
        "1" => Some(Complex::one()),
        "-1" => Some(Complex::from_i64(-1)),
        "i" => Some(Complex::i()),
        "-i" => Some(-&Complex::i()),
        _ => return None,
    })
}

fn approx(b: &ComplexBall) -> String {
    format!("{} + {}*i", b.mid.re.to_decimal(30), b.mid.im.to_decimal(30))
}

/// `|f(at)|` upper bound for a polynomial with absolute coefficients,
/// evaluated at `|at|`: a scale for relative residuals.
fn magnitude(f: &MPoly, at: &[(&str, &ComplexBall)], prec: u32) -> Result<Float, CertError> {
    use num_traits::Signed;
    let g = f.map_coeffs(|c| c.abs());
    let abs: Vec<(&str, ComplexBall)> =
        at.iter().map(|(v, z)| (*v, ComplexBall::exact(Complex::real(z.abs_upper())))).collect();
    let refs: Vec<(&str, &ComplexBall)> = abs.iter().map(|(v, z)| (*v, z)).collect();
    Ok(eval_ball(&g, &refs, prec)?.abs_upper())
}

/// Roots `v` of `C_{p,0}(u0, v)` at which `C_{p,1}(u0, v)` is below
/// `2^-(prec/4)` relative to the size of its terms.
pub fn common_v_roots(u0: &ComplexBall, pair: &ReductionPair, prec: u32) -> Result<Vec<ComplexBall>, CertError> {
    let coeffs = specialize(&pair.c0, "v", &[("u", u0)], prec)?;
    let roots = roots_balls(&coeffs, prec)?;
    let tol = Float::pow2(-(prec as i64) / 4);
    let mut out = Vec::new();
    for v in roots {
        let at = [("u", u0), ("v", &v)];
        let r = eval_ball(&pair.c1, &at, prec)?.abs_upper();
        let scale = &magnitude(&pair.c1, &at, prec)? + &Float::one();
        if r < &tol * &scale {
            out.push(v);
        }
    }
    Ok(out)
}

fn residual(f: &MPoly, x: &ComplexBall, delta: &ComplexBall, prec: u32) -> Result<Float, CertError> {
    Ok(eval_ball(f, &[("x", x), ("delta", delta)], prec)?.abs_upper())
}

fn exp_of(f: &Float) -> Option<i64> {
    (!f.is_zero()).then(|| f.mag_exp())
}

/// Builds the certificate for `F_p`: picks the first root `u` (in sorted
/// order) of the highest-multiplicity part of `Res_v(C_{p,0}, C_{p,1})`
/// that carries as many common `v` as that multiplicity, and assembles the
/// order-4 images, the orbit of `u` and the orbits of the common `v`.
pub fn build_certificate(p: u32, prec: u32) -> Result<Certificate, CertError> {
    if prec < 128 {
        return Err(CertError::LowPrecision(prec));
    }
    let pair = reduce_fp_mod_f3(p)?;
    let profile = resultant_profile(&pair, "v")?;
    let part = profile.parts.iter().filter(|q| q.multiplicity > 1).max_by_key(|q| q.multiplicity);
    let part = part.ok_or(CertError::NoRepeatedPart)?;
    let need = part.multiplicity as usize;
    let us = roots_upoly(&part.poly, prec)?;
    for (root_index, u) in us.iter().enumerate() {
        let Ok((d1, d2)) = delta_pair_from_u(u, prec) else {
            continue;
        };
        let vs = common_v_roots(u, &pair, prec)?;
        if vs.len() < need {
            continue;
        }
        let source = USource {
            factor: format!("Res_v(C_{{{p},0}}, C_{{{p},1}}) part of multiplicity {}", part.multiplicity),
            degree: part.degree(),
            multiplicity: part.multiplicity,
            root_index,
            value: u.clone(),
        };
        let cert = assemble(p, prec, source, d1, d2, &vs)?;
        let report = verify_certificate(&cert);
        if report.passed() {
            return Ok(cert);
        }
    }
    Err(CertError::NoSuitableRoot(part.multiplicity))
}

fn assemble(
    p: u32,
    prec: u32,
    u: USource,
    d1: ComplexBall,
    d2: ComplexBall,
    vs: &[ComplexBall],
) -> Result<Certificate, CertError> {
    let f3 = modified_division_poly(3)?;
    let fp = modified_division_poly(p)?;
    let mut points = Vec::new();
    for s in SYMBOLS {
        points.push(CertPoint {
            label: s.to_string(),
            order: 4,
            value: PointValue::Symbol { symbol: s.to_string() },
            transform: Transform::Id,
            base_order: 4,
            residual_exp: Vec::new(),
        });
    }
    let mut orbit = |name: &str, base: &ComplexBall, f: &MPoly, order: u32| -> Result<(), CertError> {
        for t in Transform::ALL {
            let value = t.apply(base, prec).ok_or_else(|| CertError::Check(format!("{name} is zero")))?;
            let residual_exp = [&d1, &d2]
                .iter()
                .map(|d| residual(f, base, d, prec).map(|r| exp_of(&r)))
                .collect::<Result<_, _>>()?;
            points.push(CertPoint {
                label: t.label(name),
                order: if t == Transform::Id { order } else { 2 * order },
                value: PointValue::Ball { approx: approx(&value), ball: value },
                transform: t,
                base_order: order,
                residual_exp,
            });
        }
        Ok(())
    };
    orbit("u", &u.value.clone(), &f3, 3)?;
    for (k, v) in vs.iter().enumerate() {
        orbit(&format!("v{}", k + 1), v, &fp, p)?;
    }
    Ok(Certificate { p, precision: prec, tolerance_exp: -(prec as i64) / 4, u, delta1: d1, delta2: d2, points })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of [`verify_certificate`]: one entry per check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertReport {
    pub entries: Vec<CheckEntry>,
}

impl CertReport {
    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.entries.push(CheckEntry { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }
}

impl fmt::Display for CertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{} {}: {}", if e.pass { "PASS" } else { "FAIL" }, e.name, e.detail)?;
        }
        write!(f, "{}", if self.passed() { "certificate verified" } else { "certificate REJECTED" })
    }
}

/// Finite value of a point as a ball, `None` for `oo`.
fn point_ball(pt: &CertPoint) -> Result<Option<ComplexBall>, String> {
    match &pt.value {
        PointValue::Ball { ball, .. } => Ok(Some(ball.clone())),
        PointValue::Symbol { symbol } => match symbol_value(symbol) {
            Some(v) => Ok(v.map(ComplexBall::exact)),
            None => Err(format!("unknown symbol `{symbol}`")),
        },
    }
}

/// `|a - b| > rad_a + rad_b + tol` with certainty.
fn separated(a: &ComplexBall, b: &ComplexBall, tol: &Float) -> bool {
    let r = &(&a.rad + &b.rad) + tol;
    (&a.mid - &b.mid).norm_sq() > &r * &r
}

/// Re-checks every claim from the certificate and the exact `F_3`, `F_p`
/// alone: point count and order pattern, torsion residuals at both deltas,
/// pairwise distinctness, nondegenerate deltas and disjoint 2-torsion images.
pub fn verify_certificate(cert: &Certificate) -> CertReport {
    let mut rep = CertReport::default();
    let prec = cert.precision;
    if prec < 128 {
        rep.push("precision", false, format!("{prec} bits is below 128"));
        return rep;
    }
    let max_exp = -(prec as i64) / 4;
    if cert.tolerance_exp > max_exp {
        rep.push("tolerance", false, format!("2^{} is looser than 2^{max_exp}", cert.tolerance_exp));
        return rep;
    }
    let tol = Float::pow2(cert.tolerance_exp);
    let polys = (modified_division_poly(3), modified_division_poly(cert.p));
    let (Ok(f3), Ok(fp)) = polys else {
        rep.push("polynomials", false, format!("F_3 or F_{} unavailable", cert.p));
        return rep;
    };

    // Order pattern: six order-4 symbols, the orbit of u, orbits of the v's.
    let counts = cert.order_counts();
    let n_v = counts.get(&cert.p).copied().unwrap_or(0);
    let mut expect = BTreeMap::from([(4u32, 6usize), (3, 1), (6, 3)]);
    expect.insert(cert.p, n_v);
    expect.insert(2 * cert.p, 3 * n_v);
    let need = (cert.u.multiplicity as usize).max(1);
    let pattern_ok = counts == expect && n_v >= need && cert.points.len() == 10 + 4 * n_v;
    rep.push(
        "order pattern",
        pattern_ok,
        format!("{} points, orders {:?}, at least {need} common v", cert.points.len(), counts),
    );

    // Residuals.
    let deltas = [&cert.delta1, &cert.delta2];
    let mut balls: Vec<(String, Option<ComplexBall>)> = Vec::new();
    for pt in &cert.points {
        let value = match point_ball(pt) {
            Ok(v) => v,
            Err(e) => {
                rep.push(format!("point {}", pt.label), false, e);
                continue;
            }
        };
        balls.push((pt.label.clone(), value.clone()));
        match (&pt.value, pt.order) {
            (PointValue::Symbol { symbol }, 4) => {
                let ok = pt.base_order == 4 && pt.transform == Transform::Id && SYMBOLS.contains(&symbol.as_str());
                rep.push(format!("point {}", pt.label), ok, "order-4 image, exact");
            }
            (PointValue::Symbol { .. }, n) => {
                rep.push(format!("point {}", pt.label), false, format!("exact symbol claimed order {n}"));
            }
            (PointValue::Ball { ball, .. }, n) => {
                let f = match pt.base_order {
                    3 => &f3,
                    b if b == cert.p => &fp,
                    b => {
                        rep.push(format!("point {}", pt.label), false, format!("base order {b} unsupported"));
                        continue;
                    }
                };
                let want = if pt.transform == Transform::Id { pt.base_order } else { 2 * pt.base_order };
                if n != want {
                    rep.push(format!("point {}", pt.label), false, format!("order {n} inconsistent with its orbit"));
                    continue;
                }
                let Some(base) = pt.transform.apply(ball, prec) else {
                    rep.push(format!("point {}", pt.label), false, "ball contains 0");
                    continue;
                };
                let mut worst = Float::zero();
                let mut ok = true;
                for d in deltas {
                    match residual(f, &base, d, prec) {
                        Ok(r) => {
                            ok &= r < tol;
                            worst = worst.max(r);
                        }
                        Err(_) => ok = false,
                    }
                }
                let shown = if worst.is_zero() { "0".to_string() } else { format!("2^{}", worst.mag_exp()) };
                rep.push(
                    format!("point {}", pt.label),
                    ok,
                    format!("|F_{}| <= {shown} at both deltas (tolerance 2^{})", pt.base_order, cert.tolerance_exp),
                );
            }
        }
    }

    // Pairwise distinctness.
    let mut clashes = Vec::new();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let distinct = match (&balls[i].1, &balls[j].1) {
                (None, None) => false,
                (Some(a), Some(b)) => separated(a, b, &tol),
                _ => true,
            };
            if !distinct {
                clashes.push(format!("{} ~ {}", balls[i].0, balls[j].0));
            }
        }
    }
    rep.push(
        "distinct points",
        clashes.is_empty(),
        if clashes.is_empty() { format!("{} points pairwise separated", balls.len()) } else { clashes.join(", ") },
    );

    // Deltas and their 2-torsion images.
    let one = ComplexBall::from_i64(1);
    let zero = ComplexBall::from_i64(0);
    let mut images = Vec::new();
    for (k, d) in deltas.iter().enumerate() {
        let d2 = d.mul(d, prec);
        let d4 = d2.mul(&d2, prec);
        let ok = separated(&d4, &zero, &tol) && separated(&d4, &one, &tol);
        rep.push(format!("delta{} nondegenerate", k + 1), ok, "delta^4 away from 0 and 1");
        let set: Vec<ComplexBall> = Transform::ALL.iter().filter_map(|t| t.apply(d, prec)).collect();
        images.push(set);
    }
    let disjoint = images.len() == 2
        && images[0].len() == 4
        && images[1].len() == 4
        && images[0].iter().all(|a| images[1].iter().all(|b| separated(a, b, &tol)));
    rep.push("2-torsion images disjoint", disjoint, "{±delta1^±1} and {±delta2^±1}");
    rep
}
