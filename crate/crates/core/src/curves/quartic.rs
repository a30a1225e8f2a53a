use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::oracle::NumericCurve;
use super::CurveError;
use crate::bigpoly::MPoly;
use crate::numcert::Complex;

/// Exact Gaussian rational `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> GaussRat {
        GaussRat { re, im }
    }

    pub fn int(n: i64) -> GaussRat {
        GaussRat::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn ratio(n: i64, d: i64) -> GaussRat {
        GaussRat::new(BigRational::new(n.into(), d.into()), BigRational::zero())
    }

    pub fn i() -> GaussRat {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<GaussRat> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, k: u32) -> GaussRat {
        (0..k).fold(GaussRat::int(1), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_one() => write!(f, "i"),
            (true, false) if (-&self.im).is_one() => write!(f, "-i"),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*i", self.re, sign, self.im.abs())
            }
        }
    }
}

/// Point of the projective line with an exact finite coordinate or `oo`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjValue {
    Finite(GaussRat),
    Infinity,
}

impl ProjValue {
    pub fn int(n: i64) -> ProjValue {
        ProjValue::Finite(GaussRat::int(n))
    }

    pub fn neg(&self) -> ProjValue {
        match self {
            ProjValue::Finite(a) => ProjValue::Finite(a.neg()),
            ProjValue::Infinity => ProjValue::Infinity,
        }
    }

    pub fn inv(&self) -> ProjValue {
        match self {
            ProjValue::Finite(a) => a.inv().map_or(ProjValue::Infinity, ProjValue::Finite),
            ProjValue::Infinity => ProjValue::int(0),
        }
    }

    pub fn to_complex(&self, prec: u32) -> Option<Complex> {
        let ProjValue::Finite(a) = self else {
            return None;
        };
        let f = |r: &BigRational| {
            crate::numcert::Float::from_bigint(r.numer()).div(&crate::numcert::Float::from_bigint(r.denom()), prec)
        };
        Some(Complex::new(f(&a.re), f(&a.im)))
    }
}

impl fmt::Display for ProjValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjValue::Finite(a) => write!(f, "{a}"),
            ProjValue::Infinity => write!(f, "oo"),
        }
    }
}

/// `{a, -a, 1/a, -1/a}` without repetitions, sorted.
pub fn torsion_image_orbit(a: &ProjValue) -> Vec<ProjValue> {
    let mut out = vec![a.clone(), a.neg(), a.inv(), a.inv().neg()];
    out.sort();
    out.dedup();
    out
}

/// Projections of the 2-torsion and of the exact 4-torsion of `E_delta`:
/// `{±delta^±1}` and `{0, oo, ±1, ±i}`.
pub fn two_and_four_torsion_images(delta: &GaussRat) -> Result<(Vec<ProjValue>, Vec<ProjValue>), CurveError> {
    let d4 = delta.pow(4);
    if d4.is_zero() || d4 == GaussRat::int(1) {
        return Err(CurveError::DegenerateDelta);
    }
    let two = torsion_image_orbit(&ProjValue::Finite(delta.clone()));
    let mut four = vec![
        ProjValue::int(0),
        ProjValue::Infinity,
        ProjValue::int(1),
        ProjValue::int(-1),
        ProjValue::Finite(GaussRat::i()),
        ProjValue::Finite(GaussRat::i().neg()),
    ];
    four.sort();
    Ok((two, four))
}

/// Ratio `num / den` of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: MPoly,
    pub den: MPoly,
}

/// `j(E_delta) = 16 (t + 14)^3 / (t - 2)^2` with `t = delta^4 + delta^-4`,
/// returned with denominators cleared in `delta`:
/// `16 (delta^8 + 14 delta^4 + 1)^3 / (delta^4 (delta^4 - 1)^4)`.
pub fn j_invariant_edelta() -> RationalFunction {
    let d = MPoly::var("delta");
    let inner = &(&d.pow(8) + &d.pow(4).scale(&BigInt::from(14))).add_constant(1);
    let num = inner.pow(3).scale(&BigInt::from(16));
    let den = &d.pow(4) * &d.pow(4).add_constant(-1).pow(4);
    RationalFunction { num, den }
}

/// The same formula as a function of `t = delta^4 + delta^-4`.
pub fn j_of_t(t: &BigRational) -> Result<BigRational, CurveError> {
    let two = BigRational::from_integer(2.into());
    // t = 2 exactly when delta^4 = 1.
    if *t == two {
        return Err(CurveError::DegenerateDelta);
    }
    let a = t + BigRational::from_integer(14.into());
    let b = t - two;
    Ok(BigRational::from_integer(16.into()) * &a * &a * &a / (&b * &b))
}

/// The quartic `E_delta: y^2 = x^4 - (delta^2 + 1/delta^2) x^2 + 1` at a
/// numeric `delta`, with origin `(delta, 0)` and projection `(x, y) -> x`.
#[derive(Clone, Debug)]
pub struct QuarticModel {
    pub delta: Complex,
    prec: u32,
}

impl QuarticModel {
    pub fn new(delta: Complex, prec: u32) -> Result<QuarticModel, CurveError> {
        let d4 = {
            let d2 = (&delta * &delta).round_rel(prec);
            (&d2 * &d2).round_rel(prec)
        };
        let tol = crate::numcert::Float::pow2(-(prec as i64) / 2);
        if d4.abs_l1() < tol || (&d4 - &Complex::one()).abs_l1() < tol {
            return Err(CurveError::DegenerateDelta);
        }
        Ok(QuarticModel { delta, prec })
    }

    /// The curve equation with denominators cleared, in `(x, y, delta)`:
    /// `delta^2 y^2 - delta^2 x^4 + (delta^4 + 1) x^2 - delta^2`.
    pub fn equation() -> MPoly {
        let x = MPoly::var("x");
        let y = MPoly::var("y");
        let d2 = MPoly::var("delta").pow(2);
        let t = &(&d2 * &y.pow(2)) - &(&d2 * &x.pow(4));
        &(&t + &(&d2.pow(2).add_constant(1) * &x.pow(2))) - &d2
    }

    /// `lambda = (delta + 1/delta)^2 / 4`.
    pub fn lambda(&self) -> Complex {
        let p = self.prec;
        let d2 = (&self.delta * &self.delta).round_rel(p);
        let n = (&d2 + &Complex::one()).round_rel(p);
        (&n * &n).div(&d2, p).mul_pow2(-2)
    }

    /// Legendre form `Y^2 = X(X - 1)(X - lambda)` of the nonsingular model.
    pub fn nonsingular(&self) -> NumericCurve {
        let l = self.lambda();
        NumericCurve::new(-&(&l + &Complex::one()), l, Complex::zero(), self.prec)
    }

    /// `X = (delta^2 + 1)(delta x - 1) / (2 delta (x - delta))`; `None` at the origin.
    pub fn to_nonsingular(&self, x: &Complex) -> Option<Complex> {
        let p = self.prec;
        let d = &self.delta;
        let den = (&(x - d) * d).mul_pow2(1);
        if den.is_zero() {
            return None;
        }
        let d2p1 = (&(d * d) + &Complex::one()).round_rel(p);
        let num = &d2p1 * &(&(d * x) - &Complex::one());
        Some(num.div(&den, p))
    }

    /// Inverse map `x = (2 delta^2 X - (delta^2 + 1)) / (delta (2X - (delta^2 + 1)))`.
    /// `None` stands for `x = oo`.
    pub fn from_nonsingular(&self, big_x: Option<&Complex>) -> Option<Complex> {
        let p = self.prec;
        let d = &self.delta;
        let Some(big_x) = big_x else {
            return Some(d.clone());
        };
        let d2 = (d * d).round_rel(p);
        let d2p1 = &d2 + &Complex::one();
        let num = &(&d2 * big_x).mul_pow2(1) - &d2p1;
        let den = d * &(&big_x.mul_pow2(1) - &d2p1);
        if den.round_rel(p).is_zero() {
            return None;
        }
        Some(num.div(&den, p))
    }
}
