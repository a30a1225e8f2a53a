use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::float::Float;

/// Complex number with dyadic parts. Ring operations are exact; call
/// [`Complex::round`] to keep mantissas bounded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Complex {
        Complex { re, im }
    }

    pub fn zero() -> Complex {
        Complex::new(Float::zero(), Float::zero())
    }

    pub fn one() -> Complex {
        Complex::new(Float::one(), Float::zero())
    }

    pub fn i() -> Complex {
        Complex::new(Float::zero(), Float::one())
    }

    pub fn real(x: Float) -> Complex {
        Complex::new(x, Float::zero())
    }

    pub fn from_i64(n: i64) -> Complex {
        Complex::real(Float::from_i64(n))
    }

    pub fn from_bigint(n: &BigInt) -> Complex {
        Complex::real(Float::from_bigint(n))
    }

    pub fn from_f64(re: f64, im: f64) -> Complex {
        Complex::new(Float::from_f64(re), Float::from_f64(im))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sq(&self) -> Float {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// `|re| + |im|`, an upper bound for the modulus.
    pub fn abs_l1(&self) -> Float {
        &self.re.abs() + &self.im.abs()
    }

    /// Modulus rounded to `prec` bits (not a bound).
    pub fn abs(&self, prec: u32) -> Float {
        self.norm_sq().round(2 * prec).sqrt(prec)
    }

    /// Upper bound on `log2 |z|`, `i64::MIN` for zero.
    pub fn mag_exp(&self) -> i64 {
        self.re.mag_exp().max(self.im.mag_exp()).saturating_add(1)
    }

    pub fn round(&self, prec: u32) -> Complex {
        Complex::new(self.re.round(prec), self.im.round(prec))
    }

    /// Both parts rounded to a common absolute grid set by the larger part,
    /// so a tiny part does not keep a huge mantissa.
    pub fn round_rel(&self, prec: u32) -> Complex {
        let e = self.re.mag_exp().max(self.im.mag_exp());
        if e == i64::MIN {
            return Complex::zero();
        }
        let grid = e - prec as i64;
        Complex::new(round_to_grid(&self.re, grid), round_to_grid(&self.im, grid))
    }

    pub fn scale(&self, k: &Float) -> Complex {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn mul_pow2(&self, k: i64) -> Complex {
        Complex::new(self.re.mul_pow2(k), self.im.mul_pow2(k))
    }

    /// Quotient with about `prec` relative bits.
    pub fn div(&self, other: &Complex, prec: u32) -> Complex {
        let d = other.norm_sq();
        let n = self * &other.conj();
        Complex::new(n.re.div(&d, prec + 4), n.im.div(&d, prec + 4)).round_rel(prec)
    }

    pub fn inv(&self, prec: u32) -> Complex {
        Complex::one().div(self, prec)
    }

    /// Principal square root with about `prec` bits.
    pub fn sqrt(&self, prec: u32) -> Complex {
        if self.is_zero() {
            return Complex::zero();
        }
        let p = prec + 8;
        let r = self.abs(p);
        let a = (&r + &self.re).mul_pow2(-1);
        let b = (&r - &self.re).mul_pow2(-1);
        let a = if a.signum() < 0 { Float::zero() } else { a };
        let b = if b.signum() < 0 { Float::zero() } else { b };
        let re = a.sqrt(p);
        let mut im = b.sqrt(p);
        if self.im.signum() < 0 {
            im = -im;
        }
        Complex::new(re, im).round_rel(prec)
    }

    /// `sum c_k z^k` by Horner with rounding after each step; coefficients low to high.
    pub fn horner(coeffs: &[Complex], z: &Complex, prec: u32) -> Complex {
        let mut acc = Complex::zero();
        for c in coeffs.iter().rev() {
            acc = (&(&acc * z) + c).round_rel(prec);
        }
        acc
    }

    /// Value and derivative by Horner.
    pub fn horner_d(coeffs: &[Complex], z: &Complex, prec: u32) -> (Complex, Complex) {
        let mut f = Complex::zero();
        let mut df = Complex::zero();
        for c in coeffs.iter().rev() {
            df = (&(&df * z) + &f).round_rel(prec);
            f = (&(&f * z) + c).round_rel(prec);
        }
        (f, df)
    }
}

fn round_to_grid(x: &Float, grid: i64) -> Float {
    let e = x.mag_exp();
    if e == i64::MIN {
        return Float::zero();
    }
    if e < grid {
        // Below half the grid spacing rounds to zero; keep one bit otherwise.
        return if e < grid - 1 { Float::zero() } else { x.round(1) };
    }
    x.round((e - grid).max(1) as u32)
}

impl std::ops::Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl std::ops::Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl std::ops::Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        Complex::new(re, im)
    }
}

impl std::ops::Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

/// Closed disk `{z : |z - mid| <= rad}` used as an enclosure.
///
/// Every operation returns a ball containing all results of the operation
/// applied to points of the input balls. Midpoints are rounded to the
/// working precision and the rounding error is added to the radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexBall {
    pub mid: Complex,
    pub rad: Float,
}

const RAD_BITS: u32 = 30;

impl ComplexBall {
    pub fn new(mid: Complex, rad: Float) -> ComplexBall {
        assert!(rad.signum() >= 0, "negative radius");
        ComplexBall { mid, rad: rad.round_up_abs(RAD_BITS) }
    }

    pub fn exact(mid: Complex) -> ComplexBall {
        ComplexBall { mid, rad: Float::zero() }
    }

    pub fn from_i64(n: i64) -> ComplexBall {
        ComplexBall::exact(Complex::from_i64(n))
    }

    pub fn from_bigint(n: &BigInt) -> ComplexBall {
        ComplexBall::exact(Complex::from_bigint(n))
    }

    /// Rounds the midpoint to `prec` bits relative to its size and widens
    /// the radius by the rounding error.
    pub fn rounded(&self, prec: u32) -> ComplexBall {
        let m = self.mid.round_rel(prec);
        let err = (&(&m - &self.mid)).abs_l1();
        ComplexBall::new(m, &self.rad + &err)
    }

    /// Upper bound on `|z|` over the ball.
    pub fn abs_upper(&self) -> Float {
        (&self.mid.abs_l1() + &self.rad).round_up_abs(RAD_BITS)
    }

    /// Lower bound on `|z|` over the ball (0 if the ball reaches the origin).
    pub fn abs_lower(&self) -> Float {
        // max(|re|, |im|) <= |mid|, and sqrt(re^2 + im^2) >= max(|re|, |im|).
        let m = self.mid.re.abs().max(self.mid.im.abs());
        let d = &m - &self.rad;
        if d.signum() <= 0 {
            Float::zero()
        } else {
            d
        }
    }

    pub fn contains(&self, z: &Complex) -> bool {
        (&self.mid - z).norm_sq() <= &self.rad * &self.rad
    }

    /// True when the balls are certainly disjoint.
    pub fn disjoint(&self, other: &ComplexBall) -> bool {
        let r = &self.rad + &other.rad;
        (&self.mid - &other.mid).norm_sq() > &r * &r
    }

    pub fn add(&self, other: &ComplexBall, prec: u32) -> ComplexBall {
        ComplexBall::new(&self.mid + &other.mid, &self.rad + &other.rad).rounded(prec)
    }

    pub fn sub(&self, other: &ComplexBall, prec: u32) -> ComplexBall {
        ComplexBall::new(&self.mid - &other.mid, &self.rad + &other.rad).rounded(prec)
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall { mid: -&self.mid, rad: self.rad.clone() }
    }

    pub fn mul(&self, other: &ComplexBall, prec: u32) -> ComplexBall {
        // |ab - a'b'| <= |a| rb + |b| ra + ra rb
        let r = &(&(&self.mid.abs_l1() * &other.rad) + &(&other.mid.abs_l1() * &self.rad)) + &(&self.rad * &other.rad);
        ComplexBall::new(&self.mid * &other.mid, r).rounded(prec)
    }

    /// Reciprocal; `None` if the ball may contain zero.
    pub fn inv(&self, prec: u32) -> Option<ComplexBall> {
        let lo = self.abs_lower();
        if lo.is_zero() {
            return None;
        }
        let m = self.mid.inv(prec + 8);
        // Error of the midpoint quotient: check |m * mid - 1| and bound via |1/mid|.
        let resid = (&(&m * &self.mid) - &Complex::one()).abs_l1();
        let inv_lo = Float::one().div(&lo, RAD_BITS).mul_pow2(1);
        let mid_err = &resid * &inv_lo;
        // |1/z - 1/mid| <= r / (|mid| (|mid| - r)) for |z - mid| <= r.
        let lo_mid = self.mid.re.abs().max(self.mid.im.abs());
        let spread = if self.rad.is_zero() {
            Float::zero()
        } else {
            let den = (&lo_mid * &lo).round(RAD_BITS);
            self.rad.div(&den, RAD_BITS).mul_pow2(1)
        };
        Some(ComplexBall::new(m, &mid_err + &spread).rounded(prec))
    }

    pub fn div(&self, other: &ComplexBall, prec: u32) -> Option<ComplexBall> {
        Some(self.mul(&other.inv(prec)?, prec))
    }

    /// Polynomial with exact ball coefficients (low to high) evaluated by Horner.
    pub fn horner(coeffs: &[ComplexBall], z: &ComplexBall, prec: u32) -> ComplexBall {
        let mut acc = ComplexBall::from_i64(0);
        for c in coeffs.iter().rev() {
            acc = acc.mul(z, prec).add(c, prec);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt_of_minus_one() {
        let r = Complex::from_i64(-1).sqrt(100);
        assert_eq!(r, Complex::i());
        let z = Complex::from_f64(3.0, -4.0).sqrt(200);
        let back = &z * &z;
        assert!((&back - &Complex::from_f64(3.0, -4.0)).abs_l1() < Float::pow2(-190));
    }

    #[test]
    fn division() {
        let a = Complex::from_f64(1.0, 2.0);
        let b = Complex::from_f64(-3.0, 0.5);
        let q = a.div(&b, 200);
        assert!((&(&q * &b) - &a).abs_l1() < Float::pow2(-190));
    }

    fn exact_rat(n: i64, d: i64) -> (Float, ComplexBall) {
        // Ball enclosing n/d computed at low precision.
        let prec = 40;
        let b = ComplexBall::from_i64(n).div(&ComplexBall::from_i64(d), prec).unwrap();
        (Float::from_i64(n).div(&Float::from_i64(d), 400), b)
    }

    proptest! {
        #[test]
        fn ball_containment(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let (xa, ba) = exact_rat(a, b);
            let (xc, bc) = exact_rat(c, d);
            prop_assert!(ba.contains(&Complex::real(xa.clone())));
            let prod = ba.mul(&bc, 30);
            // Exact product a c / (b d) at 400 bits is within 2^-390 of the truth.
            let exact = Float::from_i64(a * c).div(&Float::from_i64(b * d), 400);
            let wide = ComplexBall::new(prod.mid.clone(), &prod.rad + &Float::pow2(-380));
            prop_assert!(wide.contains(&Complex::real(exact)));
            let sum = ba.add(&bc, 20);
            let exact_sum = &xa + &xc;
            let wide = ComplexBall::new(sum.mid.clone(), &sum.rad + &Float::pow2(-380));
            prop_assert!(wide.contains(&Complex::real(exact_sum)));
            if a != 0 {
                let inv = ba.inv(30).unwrap();
                let exact_inv = Float::from_i64(b).div(&Float::from_i64(a), 400);
                let wide = ComplexBall::new(inv.mid.clone(), &inv.rad + &Float::pow2(-380));
                prop_assert!(wide.contains(&Complex::real(exact_inv)));
            }
        }

        #[test]
        fn horner_containment(cs in prop::collection::vec(-50i64..50, 1..8), re in -3i64..3, im in -3i64..3) {
            let coeffs: Vec<ComplexBall> = cs.iter().map(|&c| ComplexBall::from_i64(c)).collect();
            let z = ComplexBall::exact(Complex::from_f64(re as f64 / 2.0, im as f64 / 3.0)).rounded(10);
            let val = ComplexBall::horner(&coeffs, &z, 10);
            let zc = z.mid.clone();
            let exact_coeffs: Vec<Complex> = cs.iter().map(|&c| Complex::from_i64(c)).collect();
            let mut acc = Complex::zero();
            for c in exact_coeffs.iter().rev() {
                acc = &(&acc * &zc) + c;
            }
            prop_assert!(val.contains(&acc));
        }
    }
}
