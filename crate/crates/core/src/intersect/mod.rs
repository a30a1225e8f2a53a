//! Pairs of quartics sharing 3- and p-torsion images: the obstruction
//! polynomials `C_{p,0}`, `C_{p,1}`, their compressed forms in `s = u^4`,
//! `w = v/u`, resultant profiles, and the counting bound.

mod bound;
mod compress;
mod profile;

use num_bigint::BigInt;
use thiserror::Error;

use crate::bigpoly::{MPoly, PolyError};
use crate::curves::{modified_division_poly, CurveError};
use crate::numcert::RootError;

pub use bound::{coordinate_counts, delta_pair_from_u, pigeonhole_bound, IntersectionBound};
pub use compress::{compress, compress_poly, decompress_poly, CompressedPair};
pub use profile::{
    real_cyclotomic_reciprocal, resultant_profile, resultant_profile_compressed, profile_of, ProfilePart,
    ResultantProfile, TrivialFactor,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectError {
    #[error("p = {0} is not supported here (use 5, 7, 11, 13 or 17)")]
    UnsupportedPrime(u32),
    #[error("pseudo-remainder has delta-degree {0}, expected at most 1")]
    RemainderDegree(u32),
    #[error("term {term} of {poly} breaks the u^4, v/u shape")]
    Shape { poly: String, term: String },
    #[error("resultant vanishes identically; common factor {gcd}")]
    ZeroResultant { gcd: String },
    #[error("unknown elimination variable `{0}`")]
    BadVariable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// How a raw remainder coefficient was normalized:
/// `raw = sign * content * monomial * normalized`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub sign: i32,
    pub content: BigInt,
    pub monomial: Vec<(String, u32)>,
}

/// `C_{p,0}(u, v)` and `C_{p,1}(u, v)`: `F_3(u, delta)` divides
/// `F_p(v, delta)` in `delta` exactly when both vanish (away from `u = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPair {
    pub p: u32,
    pub c0: MPoly,
    pub c1: MPoly,
    pub norm0: Normalization,
    pub norm1: Normalization,
    /// Power of `lc_delta F_3 = 2u^3` used by the pseudo-division.
    pub scale_power: u32,
}

impl ReductionPair {
    /// The pseudo-remainder `prem(F_p(v, delta), F_3(u, delta), delta)`
    /// rebuilt from the normalized pair.
    pub fn remainder(&self) -> MPoly {
        let undo = |c: &MPoly, n: &Normalization| {
            let mut out = c.scale(&(&n.content * n.sign));
            for (v, e) in &n.monomial {
                out = &out * &MPoly::var(v).pow(*e);
            }
            out
        };
        let d = MPoly::var("delta");
        &(&undo(&self.c1, &self.norm1) * &d) + &undo(&self.c0, &self.norm0)
    }
}

fn normalize(c: &MPoly) -> (MPoly, Normalization) {
    let cp = c.content_primitive();
    let (mono, prim) = cp.primitive.strip_monomial();
    let monomial =
        prim.vars().names().iter().zip(mono.0.iter()).filter(|(_, e)| **e > 0).map(|(v, e)| (v.clone(), *e)).collect();
    (prim.trim_vars(), Normalization { sign: cp.sign, content: cp.content, monomial })
}

/// Pseudo-divides `F_p(v, delta)` by `F_3(u, delta)` in `delta` and
/// normalizes both remainder coefficients: integer content, sign and any
/// monomial factor are removed.
pub fn reduce_fp_mod_f3(p: u32) -> Result<ReductionPair, IntersectError> {
    if !matches!(p, 5 | 7 | 11 | 13 | 17) {
        return Err(IntersectError::UnsupportedPrime(p));
    }
    let f3 = modified_division_poly(3)?;
    let fp = modified_division_poly(p)?;
    reduce_polys(p, &fp, &f3)
}

/// [`reduce_fp_mod_f3`] with `F_p(x, delta)` and `F_3(x, delta)` supplied.
pub fn reduce_polys(p: u32, fp: &MPoly, f3: &MPoly) -> Result<ReductionPair, IntersectError> {
    let g = f3.rename("x", "u");
    let f = fp.rename("x", "v");
    let pd = f.pseudo_divrem(&g, "delta")?;
    let r = pd.remainder;
    if let Some(d) = r.degree_in("delta").finite() {
        if d > 1 {
            return Err(IntersectError::RemainderDegree(d));
        }
    }
    let (c1, norm1) = normalize(&r.coeff_of("delta", 1).trim_vars());
    let (c0, norm0) = normalize(&r.coeff_of("delta", 0).trim_vars());
    Ok(ReductionPair { p, c0, c1, norm0, norm1, scale_power: pd.scale_power })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p5_pair_rebuilds_remainder() {
        let f3 = modified_division_poly(3).unwrap();
        let f5 = modified_division_poly(5).unwrap();
        let pair = reduce_polys(5, &f5, &f3).unwrap();
        let pd = f5.rename("x", "v").pseudo_divrem(&f3.rename("x", "u"), "delta").unwrap();
        assert!(pair.remainder().equals(&pd.remainder));
        assert!(pair.c0.is_primitive() && pair.c1.is_primitive());
        assert_eq!(reduce_fp_mod_f3(3), Err(IntersectError::UnsupportedPrime(3)));
    }
}
