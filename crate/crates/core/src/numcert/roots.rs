use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use super::complex::{Complex, ComplexBall};
use super::float::Float;
use crate::bigpoly::{gcd_upoly, MPoly, PolyError, UPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("root iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("input is not squarefree")]
    NotSquarefree,
    #[error("constant or zero polynomial has no roots to isolate")]
    NoRoots,
    #[error("inclusion disks {0} and {1} overlap; precision too low")]
    Overlap(usize, usize),
    #[error("precision {0} below the 64-bit minimum")]
    LowPrecision(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

const SEED_PREC: u32 = 128;
const MAX_SWEEPS: usize = 2000;

/// Isolating balls for all complex roots of an exact squarefree polynomial
/// in one variable, sorted by real then imaginary part.
pub fn roots_univariate(f: &MPoly, prec: u32) -> Result<Vec<ComplexBall>, RootError> {
    let (_, u) = f.to_upoly()?;
    roots_upoly(&u, prec)
}

pub fn roots_upoly(f: &UPoly, prec: u32) -> Result<Vec<ComplexBall>, RootError> {
    match f.degree() {
        None | Some(0) => return Err(RootError::NoRoots),
        _ => {}
    }
    if gcd_upoly(f, &f.derivative()).degree() != Some(0) {
        return Err(RootError::NotSquarefree);
    }
    let coeffs: Vec<ComplexBall> = f.coeffs().iter().map(ComplexBall::from_bigint).collect();
    roots_balls(&coeffs, prec)
}

/// Roots of a polynomial whose coefficients (low to high) are only known
/// to lie in balls. Each returned ball contains exactly one root of every
/// polynomial with coefficients in the given balls.
pub fn roots_balls(coeffs: &[ComplexBall], prec: u32) -> Result<Vec<ComplexBall>, RootError> {
    if prec < 64 {
        return Err(RootError::LowPrecision(prec));
    }
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.mid.is_zero() && c.rad.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(RootError::NoRoots);
    }
    let mids: Vec<Complex> = coeffs.iter().map(|c| c.mid.clone()).collect();
    let seeds = aberth(&mids, SEED_PREC.min(prec))?;
    let polished: Vec<Complex> = seeds.iter().map(|z| polish(&mids, z, SEED_PREC.min(prec), prec)).collect();
    let mut balls = isolate(&coeffs, &polished, prec)?;
    sort_roots(&mut balls);
    Ok(balls)
}

/// Deterministic order: real part quantized to 2^-64, then imaginary part.
pub fn sort_roots(balls: &mut [ComplexBall]) {
    balls.sort_by(|a, b| {
        let qa = a.mid.re.mul_pow2(64).floor();
        let qb = b.mid.re.mul_pow2(64).floor();
        qa.cmp(&qb).then_with(|| a.mid.im.cmp(&b.mid.im))
    });
}

fn log2_abs(z: &Complex) -> f64 {
    // Adequate for seeding only.
    let e = z.re.mag_exp().max(z.im.mag_exp());
    if e == i64::MIN {
        return f64::NEG_INFINITY;
    }
    let scale = Float::pow2(-e);
    let (re, im) = (&z.re * &scale, &z.im * &scale);
    let m = re.to_f64().hypot(im.to_f64());
    e as f64 + m.log2()
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(k, log2 |a_k|)`.
fn initial_points(coeffs: &[Complex]) -> Vec<Complex64> {
    let pts: Vec<(usize, f64)> =
        coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, log2_abs(c))).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let n = coeffs.len() - 1;
    let mut out = Vec::with_capacity(n);
    // Zero roots from vanishing low coefficients sit on a tiny circle.
    let first = pts[0].0;
    for j in 0..first {
        let ang = std::f64::consts::TAU * j as f64 / first as f64 + 0.4;
        out.push(Complex64::from_polar(1e-30, ang));
    }
    for (seg, w) in hull.windows(2).enumerate() {
        let (i, li) = w[0];
        let (k, lk) = w[1];
        let m = k - i;
        let log_r = ((li - lk) / m as f64).clamp(-1000.0, 1000.0);
        let r = log_r.exp2();
        let offset = 0.7 + 1.3 * seg as f64;
        for j in 0..m {
            let ang = std::f64::consts::TAU * j as f64 / m as f64 + offset;
            out.push(Complex64::from_polar(r, ang));
        }
    }
    debug_assert_eq!(out.len(), n);
    out
}

fn to_c64(z: &Complex) -> Complex64 {
    Complex64::new(z.re.to_f64(), z.im.to_f64())
}

/// Aberth-Ehrlich iteration at precision `wp`. The deflation sums are
/// accumulated in double precision; only the Newton ratios need `wp` bits.
fn aberth(coeffs: &[Complex], wp: u32) -> Result<Vec<Complex>, RootError> {
    let n = coeffs.len() - 1;
    if n == 1 {
        return Ok(vec![(-&coeffs[0]).div(&coeffs[1], wp)]);
    }
    let mut z: Vec<Complex> = initial_points(coeffs).iter().map(|c| Complex::from_f64(c.re, c.im).round_rel(wp)).collect();
    let mut zf: Vec<Complex64> = z.iter().map(to_c64).collect();
    let mut done = vec![false; n];
    let tol = Float::pow2(-(wp as i64) + 12);
    let noise = Float::pow2(-(wp as i64) + 8);
    let abs_coeffs: Vec<Float> = coeffs.iter().map(|c| c.abs_l1().round_up_abs(64)).collect();
    // Bound on |f(z)| coming from rounding alone; below it the step is noise.
    let floor = |z: &Complex| {
        let r = z.abs_l1().round_up_abs(64);
        let mut acc = Float::zero();
        for a in abs_coeffs.iter().rev() {
            acc = (&(&acc * &r) + a).round_up_abs(64);
        }
        &acc * &noise
    };
    for _sweep in 0..MAX_SWEEPS {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (f, df) = Complex::horner_d(coeffs, &z[i], wp);
            if f.is_zero() || f.abs_l1() <= floor(&z[i]) {
                done[i] = true;
                continue;
            }
            if df.is_zero() {
                // Nudge off a critical point.
                z[i] = (&z[i] + &Complex::from_f64(1e-3, 1e-3)).round_rel(wp);
                zf[i] = to_c64(&z[i]);
                all = false;
                continue;
            }
            let ratio = f.div(&df, wp);
            let mut s = Complex64::zero();
            for j in 0..n {
                if j != i {
                    let d = zf[i] - zf[j];
                    if d.norm_sqr() > 0.0 {
                        s += d.inv();
                    }
                }
            }
            let s = Complex::from_f64(s.re, s.im);
            let den = (&Complex::one() - &(&ratio * &s)).round_rel(wp);
            let w = if den.is_zero() { ratio } else { ratio.div(&den, wp) };
            z[i] = (&z[i] - &w).round_rel(wp);
            zf[i] = to_c64(&z[i]);
            let scale = z[i].abs_l1().max(Float::pow2(-(wp as i64) / 2));
            if w.abs_l1() <= &tol * &scale {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Ok(z);
        }
    }
    Err(RootError::NoConvergence(MAX_SWEEPS))
}

/// Newton refinement from `from` bits up to `prec` bits.
fn polish(coeffs: &[Complex], z0: &Complex, from: u32, prec: u32) -> Complex {
    let mut z = z0.clone();
    let mut p = from;
    loop {
        p = (2 * p).min(prec + 32);
        let (f, df) = Complex::horner_d(coeffs, &z, p + 16);
        if !df.is_zero() {
            z = (&z - &f.div(&df, p + 16)).round_rel(p);
        }
        if p >= prec + 32 {
            break;
        }
    }
    // Two more steps at full precision absorb any early-stage error.
    for _ in 0..2 {
        let (f, df) = Complex::horner_d(coeffs, &z, prec + 48);
        if df.is_zero() {
            break;
        }
        z = (&z - &f.div(&df, prec + 48)).round_rel(prec + 32);
    }
    z
}

/// Weierstrass inclusion: with `W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j))`
/// the disks `D(z_i, n |W_i|)` cover all roots, and a connected component of
/// `k` disks holds exactly `k` roots. Pairwise disjoint disks therefore
/// isolate every root.
fn isolate(coeffs: &[ComplexBall], z: &[Complex], prec: u32) -> Result<Vec<ComplexBall>, RootError> {
    let n = z.len();
    let wp = prec + 32;
    let lc = coeffs.last().unwrap();
    let zb: Vec<ComplexBall> = z.iter().map(|c| ComplexBall::exact(c.clone())).collect();
    let mut balls = Vec::with_capacity(n);
    for i in 0..n {
        let f = ComplexBall::horner(coeffs, &zb[i], wp);
        let mut den = lc.clone();
        for j in 0..n {
            if j != i {
                den = den.mul(&zb[i].sub(&zb[j], wp), wp);
            }
        }
        let w = f.div(&den, wp).ok_or(RootError::Overlap(i, i))?;
        let r = (&w.abs_upper() * &Float::from_i64(n as i64)).round_up_abs(30);
        balls.push(ComplexBall::new(z[i].clone(), r));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !balls[i].disjoint(&balls[j]) {
                return Err(RootError::Overlap(i, j));
            }
        }
    }
    Ok(balls)
}
