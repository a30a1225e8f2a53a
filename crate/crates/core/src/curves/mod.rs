//! Curve models, division polynomials, the modified division polynomials
//! `F_p(x, delta)` of the quartic family, and a numeric group-law oracle.

mod divpoly;
mod oracle;
mod quartic;

use num_bigint::BigInt;
use thiserror::Error;

use crate::bigpoly::{MPoly, PolyError};
use crate::numcert::RootError;

pub use divpoly::{division_poly, DivisionPolySet};
pub use oracle::{numeric_division_poly, numeric_torsion_oracle, NumPoint, NumericCurve};
pub use quartic::{
    j_invariant_edelta, j_of_t, torsion_image_orbit, two_and_four_torsion_images, GaussRat, ProjValue, QuarticModel,
    RationalFunction,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("division polynomial index must be at least 1")]
    ZeroIndex,
    #[error("p = {0} is not one of the supported primes 3, 5, 7, 11, 13, 17")]
    UnsupportedPrime(u32),
    #[error("delta^4 is 0 or 1; the quartic is singular")]
    DegenerateDelta,
    #[error("singular curve")]
    Singular,
    #[error("normalization check failed: {0}")]
    Normalization(String),
    #[error("group law check failed for root {index}: {detail}")]
    OracleMismatch { index: usize, detail: String },
    #[error("oracle supports 1 <= n <= 20, got {0}")]
    OracleRange(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// `Y^2 = X^3 + a2 X^2 + a4 X + a6` with coefficients polynomial in any
/// parameter variables. The curve variable is `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a2: MPoly,
    pub a4: MPoly,
    pub a6: MPoly,
}

impl WeierstrassCurve {
    pub fn new(a2: MPoly, a4: MPoly, a6: MPoly) -> WeierstrassCurve {
        WeierstrassCurve { a2, a4, a6 }
    }

    /// `Y^2 = X^3 + A X + B` with integer `A`, `B`.
    pub fn short(a: i64, b: i64) -> WeierstrassCurve {
        let e = crate::bigpoly::Vars::empty();
        WeierstrassCurve::new(MPoly::zero(e.clone()), MPoly::constant(e.clone(), a), MPoly::constant(e, b))
    }

    /// Integral form of the nonsingular model of the quartic family:
    /// `Y^2 = X (X - 4 delta^2)(X - (delta^2 + 1)^2)`. It is the Legendre
    /// form `Y^2 = X(X - 1)(X - lambda)`, `lambda = (delta + 1/delta)^2 / 4`,
    /// with `X` scaled by `4 delta^2`.
    pub fn edelta_scaled() -> WeierstrassCurve {
        let d = MPoly::var("delta");
        let d2 = d.pow(2);
        let s = d2.add_constant(1).pow(2);
        let four_d2 = d2.scale(&BigInt::from(4));
        let a2 = -&(&four_d2 + &s);
        let a4 = &four_d2 * &s;
        let a6 = MPoly::zero(d.vars().clone());
        WeierstrassCurve::new(a2, a4, a6)
    }

    /// `[b2, b4, b6, b8]` for `a1 = a3 = 0`.
    pub fn b_invariants(&self) -> [MPoly; 4] {
        let c = |k: i64| BigInt::from(k);
        let b2 = self.a2.scale(&c(4));
        let b4 = self.a4.scale(&c(2));
        let b6 = self.a6.scale(&c(4));
        let b8 = &(&self.a2 * &self.a6).scale(&c(4)) - &(&self.a4 * &self.a4);
        [b2, b4, b6, b8]
    }

    /// `X^3 + a2 X^2 + a4 X + a6`.
    pub fn rhs(&self) -> MPoly {
        let x = MPoly::var("X");
        &(&(&x.pow(3) + &(&self.a2 * &x.pow(2))) + &(&self.a4 * &x)) + &self.a6
    }

    /// `(2Y)^2 = 4 (X^3 + a2 X^2 + a4 X + a6)`.
    pub fn two_y_squared(&self) -> MPoly {
        self.rhs().scale(&BigInt::from(4))
    }

    pub fn discriminant(&self) -> MPoly {
        let [b2, b4, b6, b8] = self.b_invariants();
        let c = |k: i64| BigInt::from(k);
        let t1 = &(&b2 * &b2) * &b8;
        let t2 = b4.pow(3).scale(&c(8));
        let t3 = (&b6 * &b6).scale(&c(27));
        let t4 = (&(&b2 * &b4) * &b6).scale(&c(9));
        &(&(&(-&t1) - &t2) - &t3) + &t4
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.discriminant().is_zero()
    }
}

pub const SUPPORTED_PRIMES: [u32; 6] = [3, 5, 7, 11, 13, 17];

/// `F_p(x, delta)`: the polynomial whose roots in `x` are the projections
/// of the points of exact order `p` on the quartic `E_delta`.
///
/// Built from `psi_p` of the integral nonsingular model with
/// `X = 2 delta (delta^2 + 1)(delta x - 1) / (x - delta)`, denominators
/// cleared, content in `Z[delta]` removed and the sign fixed so that the
/// coefficient of `x^((p^2-1)/2) delta^((p^2-1)/8)` is positive. The degree
/// claims and the leading coefficient `delta^((p^2-1)/8)` are checked.
pub fn modified_division_poly(p: u32) -> Result<MPoly, CurveError> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(CurveError::UnsupportedPrime(p));
    }
    let psi = division_poly(&WeierstrassCurve::edelta_scaled(), p)?;
    let d = MPoly::var("delta");
    let x = MPoly::var("x");
    let num = (&(&d * &d.pow(2).add_constant(1)) * &(&d * &x).add_constant(-1)).scale(&BigInt::from(2));
    let den = &x - &d;
    let g = psi.substitute_rational("X", &num, &den)?;
    let c = g.content_in("x");
    let g = g.div_exact(&c)?.expect("content divides").primitive_part();
    let dx = (p * p - 1) / 2;
    let k = (p * p - 1) / 8;
    let g = match g.coeff_of_monomial(&[("x", dx), ("delta", k)]).sign() {
        num_bigint::Sign::Minus => -&g,
        num_bigint::Sign::Plus => g,
        num_bigint::Sign::NoSign => {
            return Err(CurveError::Normalization(format!("coefficient of x^{dx} delta^{k} vanishes")));
        }
    };
    if g.degree_in("x").or_zero() != dx {
        return Err(CurveError::Normalization(format!("x-degree {:?}, expected {dx}", g.degree_in("x"))));
    }
    if g.degree_in("delta").or_zero() != (p * p - 1) / 4 {
        return Err(CurveError::Normalization(format!("delta-degree {:?}", g.degree_in("delta"))));
    }
    if !g.lc_in("x").equals(&d.pow(k)) {
        return Err(CurveError::Normalization(format!("leading coefficient in x is {}", g.lc_in("x"))));
    }
    Ok(g.trim_vars())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_exact() {
        let f3 = modified_division_poly(3).unwrap();
        let expect = MPoly::from_terms(vec![
            (2, vec![("x", 3), ("delta", 2)]),
            (1, vec![("x", 4), ("delta", 1)]),
            (-1, vec![("delta", 1)]),
            (-2, vec![("x", 1)]),
        ]);
        assert_eq!(f3, expect);
    }

    #[test]
    fn short_curve_psi3() {
        let f = division_poly(&WeierstrassCurve::short(1, 1), 3).unwrap();
        // 3X^4 + 6X^2 + 12X - 1
        let e = MPoly::from_terms(vec![(3, vec![("X", 4)]), (6, vec![("X", 2)]), (12, vec![("X", 1)]), (-1, vec![])]);
        assert!(f.equals(&e));
        assert_eq!(division_poly(&WeierstrassCurve::short(1, 1), 0), Err(CurveError::ZeroIndex));
        assert_eq!(modified_division_poly(19), Err(CurveError::UnsupportedPrime(19)));
    }
}
