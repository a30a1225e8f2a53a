//! Checks shared by the property suites and the acceptance run. Each
//! returns `Err` with a description instead of panicking so the acceptance
//! binary can report it.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torsion_core::bigpoly::{
    factor_upoly, gcd_upoly, resultant_modular, resultant_subresultant, squarefree_upoly, MPoly, UPoly,
};
use torsion_core::curves::{modified_division_poly, numeric_torsion_oracle, QuarticModel};
use torsion_core::numcert::{roots_balls, specialize, Complex, ComplexBall, Float};

pub fn random_mpoly(rng: &mut impl Rng, vars: &[&str], terms: usize, max_exp: u32, coeff: i64) -> MPoly {
    let ts = (0..terms)
        .map(|_| {
            let c = rng.gen_range(-coeff..=coeff);
            let mono = vars.iter().map(|v| (*v, rng.gen_range(0..=max_exp))).collect();
            (c, mono)
        })
        .collect();
    MPoly::from_terms(ts)
}

pub fn random_upoly(rng: &mut impl Rng, deg: usize, coeff: i64) -> UPoly {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-coeff..=coeff)).collect();
    if c[deg] == 0 {
        c[deg] = 1;
    }
    UPoly::from_i64(&c)
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn ring_laws(f: &MPoly, g: &MPoly, h: &MPoly) -> Result<(), String> {
    let ctx = || format!("f = {f}, g = {g}, h = {h}");
    ensure((f + g).equals(&(g + f)), || format!("addition not commutative: {}", ctx()))?;
    ensure((f * g).equals(&(g * f)), || format!("multiplication not commutative: {}", ctx()))?;
    ensure((&(f * g) * h).equals(&(f * &(g * h))), || format!("multiplication not associative: {}", ctx()))?;
    ensure((&(f + g) + h).equals(&(f + &(g + h))), || format!("addition not associative: {}", ctx()))?;
    ensure((f * &(g + h)).equals(&(&(f * g) + &(f * h))), || format!("not distributive: {}", ctx()))?;
    ensure((f - f).is_zero(), || format!("f - f != 0: {}", ctx()))?;
    ensure(f.pow(3).equals(&(&(f * f) * f)), || format!("f^3 != f f f: {}", ctx()))
}

pub fn pseudo_division_identity(f: &MPoly, g: &MPoly, var: &str) -> Result<(), String> {
    let pd = f.pseudo_divrem(g, var).map_err(|e| e.to_string())?;
    let lhs = &g.lc_in(var).pow(pd.scale_power) * f;
    let rhs = &(&pd.quotient * g) + &pd.remainder;
    ensure(lhs.equals(&rhs), || format!("lc^k f != q g + r for f = {f}, g = {g}"))?;
    ensure(pd.remainder.degree_in(var) < g.degree_in(var), || format!("remainder degree too high: {}", pd.remainder))
}

pub fn resultant_agreement(f: &MPoly, g: &MPoly, var: &str) -> Result<(), String> {
    let a = resultant_subresultant(f, g, var).map_err(|e| e.to_string())?;
    let b = resultant_modular(f, g, var).map_err(|e| e.to_string())?;
    ensure(a.equals(&b), || format!("Res_{var}({f}, {g}): subresultant {a} vs modular {b}"))
}

pub fn squarefree_reexpansion(f: &UPoly) -> Result<(), String> {
    let d = squarefree_upoly(f).map_err(|e| e.to_string())?;
    ensure(&d.expand() == f, || format!("re-expansion differs for {:?}", f.coeffs()))?;
    for (i, (a, _)) in d.factors.iter().enumerate() {
        ensure(gcd_upoly(a, &a.derivative()).degree() == Some(0), || format!("factor {i} not squarefree"))?;
        for (b, _) in &d.factors[i + 1..] {
            ensure(gcd_upoly(a, b).degree() == Some(0), || "factors not coprime".to_string())?;
        }
    }
    Ok(())
}

pub fn factor_reexpansion(f: &UPoly) -> Result<(), String> {
    let fs = factor_upoly(f).map_err(|e| e.to_string())?;
    let mut prod = UPoly::one();
    for (g, k) in &fs {
        prod = &prod * &g.pow(*k);
    }
    let mut c = f.content();
    if f.lc().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    ensure(prod.scale(&c) == *f, || format!("factors do not multiply back to {:?}", f.coeffs()))
}

pub fn bigint_round_trip(n: &BigInt) -> Result<(), String> {
    let back: BigInt = n.to_string().parse().map_err(|_| format!("cannot parse {n}"))?;
    ensure(&back == n, || format!("{n} round-trips to {back}"))?;
    ensure(n.to_string() != "-0", || "negative zero".into())?;
    Ok(())
}

/// Greedy one-to-one matching within `tol`; returns the unmatched count.
pub fn unmatched(a: &[Complex], b: &[Complex], tol: &Float) -> usize {
    let mut used = vec![false; b.len()];
    let mut missing = 0;
    for x in a {
        match b.iter().enumerate().find(|(j, y)| !used[*j] && &(x - *y).abs_l1() < tol) {
            Some((j, _)) => used[j] = true,
            None => missing += 1,
        }
    }
    missing + used.iter().filter(|u| !**u).count()
}

pub fn fp_roots(p: u32, delta: &Complex, prec: u32) -> Result<Vec<Complex>, String> {
    let f = modified_division_poly(p).map_err(|e| e.to_string())?;
    let d = ComplexBall::exact(delta.clone());
    let coeffs = specialize(&f, "x", &[("delta", &d)], prec).map_err(|e| e.to_string())?;
    Ok(roots_balls(&coeffs, prec).map_err(|e| e.to_string())?.into_iter().map(|b| b.mid).collect())
}

/// Roots of `F_p(x, delta)` against group-law `p`-torsion of the Legendre
/// model, carried to the quartic, within `2^-(prec/2)`.
pub fn oracle_agreement(p: u32, delta: &Complex, prec: u32) -> Result<(), String> {
    let model = QuarticModel::new(delta.clone(), prec).map_err(|e| e.to_string())?;
    let xs: Vec<Complex> = numeric_torsion_oracle(&model.nonsingular(), p, prec)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|b| model.from_nonsingular(Some(&b.mid)).ok_or("torsion image at infinity".to_string()))
        .collect::<Result<_, _>>()?;
    let roots = fp_roots(p, delta, prec)?;
    ensure(roots.len() as u32 == (p * p - 1) / 2, || format!("p = {p}: {} roots", roots.len()))?;
    let miss = unmatched(&roots, &xs, &Float::pow2(-(prec as i64) / 2));
    ensure(miss == 0, || format!("p = {p}, delta = {:?}: {miss} unmatched", delta.to_f64()))
}

pub fn random_deltas(seed: u64, n: usize) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Complex::from_f64(rng.gen_range(0.2..1.8), rng.gen_range(0.1..1.5))).collect()
}
