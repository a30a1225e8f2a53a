//! Resultants of multivariate polynomials.
//!
//! Two independent routes: the subresultant remainder sequence over the
//! coefficient ring, and a multimodular route (evaluation at integer points
//! modulo word-size primes, dense interpolation, Chinese remaindering) whose
//! prime and point counts come from a coefficient bound and a degree bound.
//! The modular route always re-checks its answer at fresh random points.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::modp::{self, Crt, Field, PrimeStream, ZpPoly};
use super::{MPoly, Monomial, PolyError, Vars};

/// Which route computes a resultant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResultantStrategy {
    /// Modular for inputs above 40 total degree or 100 terms, subresultant otherwise.
    #[default]
    Auto,
    Subresultant,
    Modular,
}

const AUTO_DEGREE: u32 = 40;
const AUTO_TERMS: usize = 100;
const EXTRA_PRIMES: usize = 2;
const VERIFY_POINTS: usize = 3;

/// Resultant of `f` and `g` eliminating `var`, with automatic strategy.
pub fn resultant(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly, PolyError> {
    resultant_with(f, g, var, ResultantStrategy::Auto)
}

pub fn resultant_with(f: &MPoly, g: &MPoly, var: &str, strategy: ResultantStrategy) -> Result<MPoly, PolyError> {
    let strategy = match strategy {
        ResultantStrategy::Auto => {
            let big = |p: &MPoly| p.degree().or_zero() > AUTO_DEGREE || p.nterms() > AUTO_TERMS;
            if big(f) || big(g) {
                ResultantStrategy::Modular
            } else {
                ResultantStrategy::Subresultant
            }
        }
        s => s,
    };
    match strategy {
        ResultantStrategy::Modular => resultant_modular(f, g, var),
        _ => resultant_subresultant(f, g, var),
    }
}

fn prepare(f: &MPoly, g: &MPoly, var: &str) -> Result<(MPoly, MPoly, u32, u32), PolyError> {
    let vars = f.vars().union(g.vars()).union(&Vars::new(&[var]));
    let f = f.with_vars(&vars);
    let g = g.with_vars(&vars);
    let m = f.degree_in(var).finite().ok_or_else(|| PolyError::ZeroInVariable(var.to_string()))?;
    let n = g.degree_in(var).finite().ok_or_else(|| PolyError::ZeroInVariable(var.to_string()))?;
    Ok((f, g, m, n))
}

/// Resultant by the subresultant remainder sequence.
pub fn resultant_subresultant(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly, PolyError> {
    let (f, g, m, n) = prepare(f, g, var)?;
    if m == 0 {
        return Ok(f.pow(n));
    }
    if n == 0 {
        return Ok(g.pow(m));
    }
    let (mut a, mut b) = (f, g);
    let mut negate = false;
    if m < n {
        std::mem::swap(&mut a, &mut b);
        negate = m % 2 == 1 && n % 2 == 1;
    }
    let vars = a.vars().clone();
    let mut lead = MPoly::one(vars.clone());
    let mut h = MPoly::one(vars);
    loop {
        let da = a.degree_in(var).or_zero();
        let db = b.degree_in(var).or_zero();
        let d = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_divrem(&b, var)?.remainder;
        if r.is_zero() {
            return Ok(MPoly::zero(a.vars().clone()));
        }
        a = b;
        b = r.div_exact_unwrap(&(&lead * &h.pow(d)));
        lead = a.lc_in(var);
        h = match d {
            0 => h,
            1 => lead.clone(),
            _ => lead.pow(d).div_exact_unwrap(&h.pow(d - 1)),
        };
        if b.degree_in(var).or_zero() == 0 {
            let da = a.degree_in(var).or_zero();
            let out = b.pow(da).div_exact_unwrap(&h.pow(da - 1));
            return Ok(if negate { -out } else { out });
        }
    }
}

/// Bivariate dense layout after Kronecker substitution of the remaining
/// variables into one variable `t`: `coeffs[j]` is the coefficient of
/// `var^j` as a sparse list of `(t-exponent, value)`.
struct Packed {
    coeffs: Vec<Vec<(u64, BigInt)>>,
}

impl Packed {
    fn new(f: &MPoly, var_idx: usize, rest: &[usize], weights: &[u64]) -> Self {
        let deg = f.terms().iter().map(|(m, _)| m.0[var_idx]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Vec::new(); deg + 1];
        for (m, c) in f.terms() {
            let e: u64 = rest.iter().zip(weights).map(|(&i, &w)| m.0[i] as u64 * w).sum();
            coeffs[m.0[var_idx] as usize].push((e, c.clone()));
        }
        Packed { coeffs }
    }

    /// log2 of sum over j of ||coeff_j||_1^2, rounded up.
    fn row_norm_bits(&self) -> f64 {
        let max_bits = self
            .coeffs
            .iter()
            .map(|c| c.iter().map(|(_, v)| v.magnitude().clone()).sum::<num_bigint::BigUint>().bits())
            .max()
            .unwrap_or(0);
        2.0 * max_bits as f64 + ((self.coeffs.len() as f64).log2()).ceil()
    }

    fn image(&self, k: &Field) -> Vec<ZpPoly> {
        self.coeffs
            .iter()
            .map(|c| {
                let deg = c.iter().map(|(e, _)| *e).max().unwrap_or(0) as usize;
                let mut out = vec![0u64; if c.is_empty() { 0 } else { deg + 1 }];
                for (e, v) in c {
                    out[*e as usize] = k.add(out[*e as usize], k.from_bigint(v));
                }
                modp::trim(&mut out);
                out
            })
            .collect()
    }
}

/// Resultant by evaluation/interpolation modulo word-size primes.
pub fn resultant_modular(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly, PolyError> {
    let (f, g, m, n) = prepare(f, g, var)?;
    if m == 0 {
        return Ok(f.pow(n));
    }
    if n == 0 {
        return Ok(g.pow(m));
    }
    let vars = f.vars().clone();
    let var_idx = vars.index(var).unwrap();
    let rest: Vec<usize> = (0..vars.len())
        .filter(|&i| i != var_idx && (f.terms().iter().any(|(t, _)| t.0[i] > 0) || g.terms().iter().any(|(t, _)| t.0[i] > 0)))
        .collect();
    // Per-variable degree bounds and the Kronecker weights.
    let deg_of = |p: &MPoly, i: usize| p.terms().iter().map(|(t, _)| t.0[i]).max().unwrap_or(0) as u64;
    let bounds: Vec<u64> = rest.iter().map(|&i| n as u64 * deg_of(&f, i) + m as u64 * deg_of(&g, i)).collect();
    let mut weights = Vec::with_capacity(rest.len());
    let mut w = 1u64;
    for b in &bounds {
        weights.push(w);
        w = w.checked_mul(b + 1).expect("Kronecker degree overflow");
    }
    let dbound: u64 = bounds.iter().zip(&weights).map(|(b, w)| b * w).sum();
    let pf = Packed::new(&f, var_idx, &rest, &weights);
    let pg = Packed::new(&g, var_idx, &rest, &weights);
    // Goldstein-Graham: coefficients of det are bounded by the Hadamard bound
    // of the matrix of entry 1-norms.
    let bound_bits = (n as f64 * pf.row_norm_bits() / 2.0 + m as f64 * pg.row_norm_bits() / 2.0).ceil() as u64 + 1;
    let needed = modp::primes_for_bits(bound_bits) + EXTRA_PRIMES;

    let npoints = dbound as usize + 1;
    let mut stream = PrimeStream::new();
    let mut used: Vec<(u64, Vec<u64>)> = Vec::with_capacity(needed);
    while used.len() < needed {
        let batch: Vec<u64> = stream.by_ref().take(needed - used.len()).collect();
        let images: Vec<Option<(u64, Vec<u64>)>> =
            batch.par_iter().map(|&p| modular_image(&pf, &pg, p, npoints).map(|v| (p, v))).collect();
        used.extend(images.into_iter().flatten());
    }
    let primes: Vec<u64> = used.iter().map(|(p, _)| *p).collect();
    let crt = Crt::new(&primes);
    let coeffs: Vec<BigInt> = (0..npoints)
        .into_par_iter()
        .map(|i| {
            let residues: Vec<u64> = used.iter().map(|(_, v)| v[i]).collect();
            crt.combine(&residues)
        })
        .collect();

    // Undo the Kronecker packing.
    let out_vars = vars.clone();
    let mut raw = Vec::new();
    for (e, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut mono = Monomial::one(out_vars.len());
        let mut e = e as u64;
        for (k, &i) in rest.iter().enumerate().rev() {
            mono.0[i] = (e / weights[k]) as u32;
            e %= weights[k];
        }
        raw.push((mono, c));
    }
    let result = MPoly::from_raw(out_vars, raw);
    verify(&f, &g, var_idx, &rest, &result, stream)?;
    Ok(result)
}

/// Values of the resultant at `npoints` good points modulo `p`, interpolated
/// to plain coefficients. `None` if `p` kills a leading coefficient.
fn modular_image(pf: &Packed, pg: &Packed, p: u64, npoints: usize) -> Option<Vec<u64>> {
    let k = Field::new(p).ok()?;
    let fi = pf.image(&k);
    let gi = pg.image(&k);
    if fi.last()?.is_empty() || gi.last()?.is_empty() {
        return None;
    }
    let mut xs = Vec::with_capacity(npoints);
    let mut ys = Vec::with_capacity(npoints);
    let mut a = vec![0u64; fi.len()];
    let mut b = vec![0u64; gi.len()];
    let mut t = 0u64;
    while xs.len() < npoints {
        t += 1;
        let x = k.from_u64(t);
        for (dst, c) in a.iter_mut().zip(&fi) {
            *dst = modp::eval(&k, c, x);
        }
        for (dst, c) in b.iter_mut().zip(&gi) {
            *dst = modp::eval(&k, c, x);
        }
        if *a.last().unwrap() == 0 || *b.last().unwrap() == 0 {
            continue;
        }
        xs.push(x);
        ys.push(modp::resultant(&k, &a, &b));
    }
    let poly = modp::interpolate(&k, &xs, &ys);
    let mut out: Vec<u64> = poly.iter().map(|&c| k.to_u64(c)).collect();
    out.resize(npoints, 0);
    Some(out)
}

/// Checks the result against directly computed univariate resultants at
/// random points modulo a prime not used for the reconstruction.
fn verify(f: &MPoly, g: &MPoly, var_idx: usize, rest: &[usize], result: &MPoly, mut stream: PrimeStream) -> Result<(), PolyError> {
    let q = stream.next().expect("prime");
    let k = Field::new(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_2e5u64 ^ q);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < VERIFY_POINTS {
        attempts += 1;
        if attempts > 100 {
            return Err(PolyError::VerificationFailed);
        }
        let point: Vec<u64> = rest.iter().map(|_| rng.gen_range(1..q)).collect();
        let image = |p: &MPoly| -> Vec<u64> {
            let deg = p.terms().iter().map(|(t, _)| t.0[var_idx]).max().unwrap_or(0) as usize;
            let mut out = vec![0u64; deg + 1];
            for (t, c) in p.terms() {
                let mut v = k.from_bigint(c);
                for (&i, &x) in rest.iter().zip(&point) {
                    v = k.mul(v, k.pow(k.from_u64(x), t.0[i] as u64));
                }
                let j = t.0[var_idx] as usize;
                out[j] = k.add(out[j], v);
            }
            out
        };
        let a = image(f);
        let b = image(g);
        if *a.last().unwrap() == 0 || *b.last().unwrap() == 0 {
            continue;
        }
        let expect = modp::resultant(&k, &a, &b);
        let mut got = 0u64;
        for (t, c) in result.terms() {
            let mut v = k.from_bigint(c);
            for (&i, &x) in rest.iter().zip(&point) {
                v = k.mul(v, k.pow(k.from_u64(x), t.0[i] as u64));
            }
            got = k.add(got, v);
        }
        if got != expect {
            return Err(PolyError::VerificationFailed);
        }
        checked += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> MPoly {
        MPoly::var("x")
    }

    #[test]
    fn linear_against_quadratic() {
        let f = x().add_constant(-2);
        let g = x().pow(2).add_constant(1);
        for s in [ResultantStrategy::Subresultant, ResultantStrategy::Modular] {
            let r = resultant_with(&f, &g, "x", s).unwrap();
            assert_eq!(r.as_constant(), Some(BigInt::from(5)), "{s:?}");
        }
    }

    #[test]
    fn zero_in_var_is_an_error() {
        let z = MPoly::zero(Vars::new(&["x"]));
        assert!(matches!(resultant(&z, &x(), "x"), Err(PolyError::ZeroInVariable(_))));
    }

    #[test]
    fn swap_sign() {
        let f = &(&x().pow(3) * &MPoly::var("u")).add_constant(1) + &x();
        let g = &x().pow(2) - &MPoly::var("u").pow(2);
        let r1 = resultant_subresultant(&f, &g, "x").unwrap();
        let r2 = resultant_subresultant(&g, &f, "x").unwrap();
        // (-1)^(3*2) = 1
        assert!(r1.equals(&r2));
        let h = x().add_constant(3);
        let r3 = resultant_subresultant(&f, &h, "x").unwrap();
        let r4 = resultant_subresultant(&h, &f, "x").unwrap();
        assert!(r3.equals(&-&r4));
    }

    #[test]
    fn three_variables_use_kronecker() {
        let u = MPoly::var("u");
        let v = MPoly::var("v");
        let f = &(&x().pow(2) * &u) + &(&v * &x()).add_constant(-1);
        let g = &(&x().pow(3) - &(&u * &v)) + &v.pow(2);
        let a = resultant_subresultant(&f, &g, "x").unwrap();
        let b = resultant_modular(&f, &g, "x").unwrap();
        assert!(a.equals(&b));
    }

    fn arb_bivariate() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((any::<i64>(), 0u32..5, 0u32..4), 1..8).prop_map(|ts| {
            let mut f = MPoly::from_terms(ts.into_iter().map(|(c, i, j)| (c, vec![("x", i), ("u", j)])).collect());
            f = &f + &MPoly::from_terms(vec![(1, vec![("x", 5)])]);
            f
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn modular_agrees_with_subresultant(f in arb_bivariate(), g in arb_bivariate()) {
            let a = resultant_subresultant(&f, &g, "x").unwrap();
            let b = resultant_modular(&f, &g, "x").unwrap();
            prop_assert!(a.equals(&b));
        }

        #[test]
        fn planted_factor_gives_zero(f in arb_bivariate(), g in arb_bivariate()) {
            let common = &x() - &MPoly::var("u");
            let r = resultant_modular(&(&f * &common), &(&g * &common), "x").unwrap();
            prop_assert!(r.is_zero());
        }
    }
}
