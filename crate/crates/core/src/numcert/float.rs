use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Dyadic number `man * 2^exp` with an arbitrary-precision mantissa.
///
/// Addition, subtraction and multiplication are exact. Rounding only happens
/// through [`Float::round`] and the division and square-root helpers, each
/// of which documents its error.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FloatRepr", try_from = "FloatRepr")]
pub struct Float {
    man: BigInt,
    exp: i64,
}

/// Serialized form: decimal mantissa and binary exponent, exact.
#[derive(Serialize, Deserialize)]
struct FloatRepr {
    man: String,
    exp: i64,
}

impl From<Float> for FloatRepr {
    fn from(f: Float) -> Self {
        FloatRepr { man: f.man.to_string(), exp: f.exp }
    }
}

impl TryFrom<FloatRepr> for Float {
    type Error = String;
    fn try_from(r: FloatRepr) -> Result<Self, String> {
        let man: BigInt = r.man.parse().map_err(|_| format!("bad mantissa `{}`", r.man))?;
        Ok(Float::new(man, r.exp))
    }
}

impl Float {
    pub fn new(man: BigInt, exp: i64) -> Float {
        if man.is_zero() {
            return Float { man, exp: 0 };
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Float { man, exp }
        } else {
            Float { man: man >> tz, exp: exp + tz as i64 }
        }
    }

    pub fn zero() -> Float {
        Float { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Float {
        Float { man: BigInt::one(), exp: 0 }
    }

    pub fn from_i64(n: i64) -> Float {
        Float::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: &BigInt) -> Float {
        Float::new(n.clone(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Float {
        Float { man: BigInt::one(), exp: e }
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Float {
        assert!(x.is_finite(), "non-finite f64");
        if x == 0.0 {
            return Float::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        Float::new(BigInt::from(m) * sign, e)
    }

    pub fn to_f64(&self) -> f64 {
        if self.man.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = bits - 60;
        let (m, e) = if shift > 0 { (&self.man >> shift as u64, self.exp + shift) } else { (self.man.clone(), self.exp) };
        let m = m.to_f64().unwrap();
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0 * m.signum();
        }
        m * 2f64.powi(e as i32)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Float {
        Float { man: self.man.abs(), exp: self.exp }
    }

    /// Smallest `e` with `|self| < 2^e`; `i64::MIN` for zero.
    pub fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.man.bits() as i64 + self.exp
        }
    }

    /// Mantissa bit length.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Nearest value with at most `prec` mantissa bits. The error is at most
    /// `2^(mag_exp - prec)`.
    pub fn round(&self, prec: u32) -> Float {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let half = BigInt::one() << (shift - 1);
        let man = if self.man.is_negative() { -((-&self.man + half) >> shift) } else { (&self.man + half) >> shift };
        Float::new(man, self.exp + shift as i64)
    }

    /// Upper bound for `|self|` with at most `prec` mantissa bits.
    pub fn round_up_abs(&self, prec: u32) -> Float {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.abs();
        }
        let shift = bits - prec as u64;
        let man = (self.man.abs() >> shift) + 1u32;
        Float::new(man, self.exp + shift as i64)
    }

    pub fn mul_pow2(&self, k: i64) -> Float {
        if self.is_zero() {
            return Float::zero();
        }
        Float { man: self.man.clone(), exp: self.exp + k }
    }

    /// Quotient with `prec` bits. The error is below `2^(mag_exp(q) - prec + 1)`.
    pub fn div(&self, other: &Float, prec: u32) -> Float {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Float::zero();
        }
        let shift = prec as i64 + 2 + other.man.bits() as i64 - self.man.bits() as i64;
        let shift = shift.max(0);
        let num = &self.man << shift as u64;
        let q = num / &other.man;
        Float::new(q, self.exp - shift - other.exp).round(prec)
    }

    /// Square root of a nonnegative value with `prec` bits; error below
    /// `2^(mag_exp(r) - prec + 1)`.
    pub fn sqrt(&self, prec: u32) -> Float {
        assert!(self.signum() >= 0, "square root of a negative value");
        if self.is_zero() {
            return Float::zero();
        }
        // Scale so that the integer square root has about prec + 2 bits.
        let target = 2 * (prec as i64 + 2);
        let mut shift = (target - self.man.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.man << shift as u64;
        let r = m.sqrt();
        Float::new(r, (self.exp - shift) / 2).round(prec)
    }

    /// Exact comparison of absolute values.
    pub fn cmp_abs(&self, other: &Float) -> Ordering {
        self.abs().cmp(&other.abs())
    }

    /// Floor as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            // Arithmetic shift rounds toward negative infinity.
            &self.man >> (-self.exp) as u64
        }
    }

    /// Decimal rendering with `digits` significant digits (approximate).
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let neg = self.man.is_negative();
        let a = self.abs();
        // Estimate the decimal exponent, then compute floor(a * 10^(digits - 1 - e10)).
        let e10 = ((a.mag_exp() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let scale = digits as i64 - 1 - e10;
        let ten = BigInt::from(10);
        let scaled = if scale >= 0 {
            &a * &Float::from_bigint(&ten.pow(scale as u32))
        } else {
            a.div(&Float::from_bigint(&ten.pow((-scale) as u32)), (digits as f64 * 3.4) as u32 + 16)
        };
        let n = scaled.round((digits as f64 * 3.4) as u32 + 16).floor();
        let s = n.to_string();
        let point = s.len() as i64 - scale;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), s)
        } else if point as usize >= s.len() {
            format!("{}{}", s, "0".repeat(point as usize - s.len()))
        } else {
            format!("{}.{}", &s[..point as usize], &s[point as usize..])
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self - other;
        d.man.sign().cmp(&Sign::NoSign)
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(f.precision().unwrap_or(20)))
    }
}

fn aligned(a: &Float, b: &Float) -> (BigInt, BigInt, i64) {
    if a.exp == b.exp {
        (a.man.clone(), b.man.clone(), a.exp)
    } else if a.exp > b.exp {
        (&a.man << (a.exp - b.exp) as u64, b.man.clone(), b.exp)
    } else {
        (a.man.clone(), &b.man << (b.exp - a.exp) as u64, a.exp)
    }
}

impl std::ops::Add for &Float {
    type Output = Float;
    fn add(self, rhs: &Float) -> Float {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = aligned(self, rhs);
        Float::new(a + b, e)
    }
}

impl std::ops::Sub for &Float {
    type Output = Float;
    fn sub(self, rhs: &Float) -> Float {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return -rhs;
        }
        let (a, b, e) = aligned(self, rhs);
        Float::new(a - b, e)
    }
}

impl std::ops::Mul for &Float {
    type Output = Float;
    fn mul(self, rhs: &Float) -> Float {
        if self.is_zero() || rhs.is_zero() {
            return Float::zero();
        }
        // Both mantissas are odd, so the product is already normalized.
        Float { man: &self.man * &rhs.man, exp: self.exp + rhs.exp }
    }
}

impl std::ops::Neg for &Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float { man: -&self.man, exp: self.exp }
    }
}

impl std::ops::Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float { man: -self.man, exp: self.exp }
    }
}
