use num_bigint::BigInt;

use super::{IntersectError, ReductionPair};
use crate::bigpoly::{MPoly, Monomial, Vars};

/// `C_{p,i}(u, v) = u^{k_i} * D_i(u^4, v/u)` with `D_i` in `(s, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedPair {
    pub p: u32,
    pub c0: MPoly,
    pub c1: MPoly,
    pub k0: u32,
    pub k1: u32,
}

impl CompressedPair {
    pub fn decompress(&self) -> (MPoly, MPoly) {
        (decompress_poly(self.k0, &self.c0), decompress_poly(self.k1, &self.c1))
    }
}

/// Writes `c(u, v)` as `u^k * d(s, w)`. A term `u^i v^j` becomes
/// `u^(i+j) w^j`, so every `i + j` must agree modulo 4.
pub fn compress_poly(c: &MPoly) -> Result<(u32, MPoly), IntersectError> {
    let vars = c.vars();
    let iu = vars.index("u");
    let iv = vars.index("v");
    let exps = |m: &Monomial| (iu.map_or(0, |i| m.0[i]), iv.map_or(0, |i| m.0[i]));
    if let Some(other) = c.used_vars().into_iter().find(|v| v != "u" && v != "v") {
        return Err(IntersectError::BadVariable(other));
    }
    let k = c.terms().iter().map(|(m, _)| exps(m).0 + exps(m).1).min().unwrap_or(0);
    let out = Vars::new(&["s", "w"]);
    let mut raw = Vec::with_capacity(c.nterms());
    for (m, coeff) in c.terms() {
        let (i, j) = exps(m);
        if (i + j - k) % 4 != 0 {
            return Err(IntersectError::Shape { poly: "C".into(), term: format!("{coeff}*u^{i}*v^{j}") });
        }
        let mut mono = Monomial::one(2);
        mono.0[0] = (i + j - k) / 4;
        mono.0[1] = j;
        raw.push((mono, coeff.clone()));
    }
    Ok((k, MPoly::from_raw(out, raw)))
}

/// `u^k * d(u^4, v/u)` as a polynomial in `(u, v)`.
pub fn decompress_poly(k: u32, d: &MPoly) -> MPoly {
    let vars = d.vars();
    let is = vars.index("s");
    let iw = vars.index("w");
    let terms: Vec<(BigInt, Vec<(&str, u32)>)> = d
        .terms()
        .iter()
        .map(|(m, c)| {
            let a = is.map_or(0, |i| m.0[i]);
            let b = iw.map_or(0, |i| m.0[i]);
            (c.clone(), vec![("u", k + 4 * a - b), ("v", b)])
        })
        .collect();
    let mut out = MPoly::from_terms(terms);
    if out.is_zero() {
        out = MPoly::zero(Vars::new(&["u", "v"]));
    }
    out
}

pub fn compress(pair: &ReductionPair) -> Result<CompressedPair, IntersectError> {
    let tag = |e: IntersectError, name: &str| match e {
        IntersectError::Shape { term, .. } => IntersectError::Shape { poly: format!("C_{{{},{name}}}", pair.p), term },
        other => other,
    };
    let (k0, c0) = compress_poly(&pair.c0).map_err(|e| tag(e, "0"))?;
    let (k1, c1) = compress_poly(&pair.c1).map_err(|e| tag(e, "1"))?;
    Ok(CompressedPair { p: pair.p, c0, c1, k0, k1 })
}
