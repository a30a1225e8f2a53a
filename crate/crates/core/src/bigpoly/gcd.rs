use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::dense::UPoly;
use super::modp::{self, Crt, Field, PrimeStream};
use super::{MPoly, Vars};

/// Greatest common divisor of two integer polynomials in one variable,
/// primitive with positive leading coefficient.
///
/// Images modulo word-size primes are combined by CRT until the candidate
/// stops changing, then confirmed by exact trial division.
pub fn gcd_upoly(f: &UPoly, g: &UPoly) -> UPoly {
    if f.is_zero() {
        return g.primitive_part();
    }
    if g.is_zero() {
        return f.primitive_part();
    }
    let f = f.primitive_part();
    let g = g.primitive_part();
    if f.degree() == Some(0) || g.degree() == Some(0) {
        return UPoly::one();
    }
    if f == g {
        return f;
    }
    let h = f.lc().unwrap().gcd(g.lc().unwrap());
    let mut best = f.degree().unwrap().min(g.degree().unwrap()) + 1;
    let mut primes: Vec<u64> = Vec::new();
    let mut images: Vec<Vec<u64>> = Vec::new();
    let mut previous: Option<UPoly> = None;
    for p in PrimeStream::new() {
        if (f.lc().unwrap() % p).is_zero() || (g.lc().unwrap() % p).is_zero() {
            continue;
        }
        let k = Field::new(p).unwrap();
        let mut gp = modp::gcd(&k, &f.to_zp(&k), &g.to_zp(&k));
        let d = gp.len() - 1;
        if d == 0 {
            return UPoly::one();
        }
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            primes.clear();
            images.clear();
            previous = None;
        }
        let hp = k.from_bigint(&h);
        for c in gp.iter_mut() {
            *c = k.to_u64(k.mul(*c, hp));
        }
        primes.push(p);
        images.push(gp);
        let crt = Crt::new(&primes);
        let coeffs: Vec<BigInt> = (0..=d)
            .map(|i| {
                let residues: Vec<u64> = images.iter().map(|im| im[i]).collect();
                crt.combine(&residues)
            })
            .collect();
        let candidate = UPoly::new(coeffs).primitive_part();
        if previous.as_ref() == Some(&candidate)
            && f.div_exact(&candidate).is_some()
            && g.div_exact(&candidate).is_some()
        {
            return candidate;
        }
        previous = Some(candidate);
    }
    unreachable!("prime stream exhausted")
}

impl MPoly {
    /// Greatest common divisor, primitive over the integers with positive
    /// leading coefficient. `gcd(f, 0)` is the primitive part of `f`.
    pub fn gcd(&self, g: &MPoly) -> MPoly {
        let vars = self.vars().union(g.vars());
        let f = self.with_vars(&vars);
        let g = g.with_vars(&vars);
        if f.is_zero() {
            return g.primitive_part();
        }
        if g.is_zero() {
            return f.primitive_part();
        }
        let mut used = f.used_vars();
        for v in g.used_vars() {
            if !used.contains(&v) {
                used.push(v);
            }
        }
        if used.len() <= 1 {
            let var = used.first().cloned().unwrap_or_else(|| "x".to_string());
            let (_, uf) = f.to_upoly().unwrap();
            let (_, ug) = g.to_upoly().unwrap();
            let h = gcd_upoly(&uf, &ug);
            return MPoly::from_upoly(&var, &h).with_vars(&vars.union(&Vars::new(&[var.as_str()])));
        }
        let main = Vars::new(&used).names()[0].clone();
        let cf = f.content_in(&main);
        let cg = g.content_in(&main);
        let c = cf.gcd(&cg);
        let pf = f.div_exact_unwrap(&cf);
        let pg = g.div_exact_unwrap(&cg);
        let core = if pf.degree_in(&main).or_zero() == 0 || pg.degree_in(&main).or_zero() == 0 {
            MPoly::one(vars.clone())
        } else {
            let last = prs_last(&pf, &pg, &main);
            let cl = last.content_in(&main);
            last.div_exact_unwrap(&cl)
        };
        (&c * &core).with_vars(&vars).primitive_part()
    }

    /// Content with respect to `var`: gcd of the coefficients of the powers
    /// of `var`, as a polynomial in the remaining variables.
    pub fn content_in(&self, var: &str) -> MPoly {
        let mut acc = MPoly::zero(self.vars().clone());
        for c in self.coeffs_in(var) {
            if c.is_zero() {
                continue;
            }
            acc = acc.gcd(&c);
            if acc.is_one() {
                break;
            }
        }
        // The sign convention follows the leading coefficient in `var`.
        if self.lc_in(var).signum() < 0 {
            acc = -&acc;
        }
        acc
    }
}

/// Last nonzero member of the subresultant remainder sequence of `a`, `b`
/// (both of positive degree in `var`).
fn prs_last(a: &MPoly, b: &MPoly, var: &str) -> MPoly {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    let vars = a.vars().clone();
    let mut g = MPoly::one(vars.clone());
    let mut h = MPoly::one(vars);
    loop {
        let d = a.degree_in(var).or_zero() - b.degree_in(var).or_zero();
        let r = a.pseudo_divrem(&b, var).expect("positive degree divisor").remainder;
        if r.is_zero() {
            return b;
        }
        if r.degree_in(var).or_zero() == 0 {
            return r;
        }
        a = b;
        b = r.div_exact_unwrap(&(&g * &h.pow(d)));
        g = a.lc_in(var);
        h = match d {
            0 => h,
            1 => g.clone(),
            _ => g.pow(d).div_exact_unwrap(&h.pow(d - 1)),
        };
    }
}
