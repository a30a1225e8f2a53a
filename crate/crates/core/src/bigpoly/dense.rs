//! Dense univariate polynomials over the integers.
//!
//! Used for the large one-variable objects (resultants, their squarefree
//! parts) where a sparse term list wastes time.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{self, Field, ZpPoly};

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

/// Above this many limbs of work, multiplication packs both operands into
/// single integers (Kronecker substitution).
const KRONECKER_THRESHOLD: usize = 1 << 14;

impl UPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { coeffs: vec![BigInt::one()] }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        UPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^k`; the low coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> UPoly {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        UPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend_from_slice(&self.coeffs);
        UPoly { coeffs: c }
    }

    pub fn scale(&self, k: &BigInt) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn div_exact_scalar(&self, k: &BigInt) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = self.content();
        if self.lc().unwrap().is_negative() {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_exact_scalar(&c)
        }
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut result = UPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Image modulo a prime, in Montgomery form.
    pub fn to_zp(&self, k: &Field) -> ZpPoly {
        let mut out: ZpPoly = self.coeffs.iter().map(|c| k.from_bigint(c)).collect();
        modp::trim(&mut out);
        out
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`
    /// over the integers.
    pub fn div_exact(&self, g: &UPoly) -> Option<UPoly> {
        let dg = g.degree()?;
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let df = self.degree().unwrap();
        if df < dg {
            return None;
        }
        // Cheap rejections before the long division.
        if !(self.lc().unwrap() % g.lc().unwrap()).is_zero() {
            return None;
        }
        let tf = self.trailing_zeros();
        let tg = g.trailing_zeros();
        if tf < tg {
            return None;
        }
        let lcg = g.lc().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); df - dg + 1];
        for i in (0..=df - dg).rev() {
            let top = &r[i + dg];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(lcg);
            if !rem.is_zero() {
                return None;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                if !gj.is_zero() {
                    r[i + j] -= &qi * gj;
                }
            }
            q[i] = qi;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UPoly::new(q))
    }

    /// Division by the monic linear polynomial `x - a`.
    pub fn div_linear(&self, a: &BigInt) -> Option<UPoly> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + carry * a;
            q[i - 1] = carry.clone();
        }
        let rem = &self.coeffs[0] + carry * a;
        rem.is_zero().then(|| UPoly::new(q))
    }

    /// Substitutes `x^k` for `x`.
    pub fn inflate(&self, k: usize) -> UPoly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * k] = a.clone();
        }
        UPoly { coeffs: c }
    }
}

fn add_sub(f: &UPoly, g: &UPoly, neg: bool) -> UPoly {
    let n = f.coeffs.len().max(g.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.coeffs.get(i);
        let b = g.coeffs.get(i);
        out.push(match (a, b, neg) {
            (Some(a), Some(b), false) => a + b,
            (Some(a), Some(b), true) => a - b,
            (Some(a), None, _) => a.clone(),
            (None, Some(b), false) => b.clone(),
            (None, Some(b), true) => -b,
            (None, None, _) => unreachable!(),
        });
    }
    UPoly::new(out)
}

fn schoolbook(f: &UPoly, g: &UPoly) -> UPoly {
    let mut out = vec![BigInt::zero(); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    UPoly::new(out)
}

/// Packs coefficients into one integer with `slot` limbs per coefficient,
/// evaluating at 2^(64 slot). Requires every |c| < 2^(64 slot - 1).
fn pack(f: &UPoly, slot: usize) -> BigInt {
    let mut pos = vec![0u64; f.coeffs.len() * slot];
    let mut neg = vec![0u64; f.coeffs.len() * slot];
    for (i, c) in f.coeffs.iter().enumerate() {
        let target = if c.is_negative() { &mut neg } else { &mut pos };
        for (k, d) in c.magnitude().iter_u64_digits().enumerate() {
            target[i * slot + k] = d;
        }
    }
    BigInt::from_biguint(Sign::Plus, biguint_from_u64s(&pos)) - BigInt::from_biguint(Sign::Plus, biguint_from_u64s(&neg))
}

fn biguint_from_u64s(digits: &[u64]) -> BigUint {
    let mut bytes = Vec::with_capacity(digits.len() * 8);
    for d in digits {
        bytes.extend_from_slice(&d.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

/// Inverse of [`pack`] with balanced digits.
fn unpack(v: &BigInt, slot: usize, len: usize) -> UPoly {
    let negative = v.is_negative();
    let digits: Vec<u64> = v.magnitude().iter_u64_digits().collect();
    let mut out = Vec::with_capacity(len);
    let mut borrow = false;
    let half = BigUint::one() << (64 * slot - 1);
    let full = BigUint::one() << (64 * slot);
    for i in 0..len {
        let lo = (i * slot).min(digits.len());
        let hi = ((i + 1) * slot).min(digits.len());
        let mut d = biguint_from_u64s(&digits[lo..hi]);
        if borrow {
            d += 1u32;
        }
        let c = if d >= half {
            borrow = true;
            -BigInt::from(&full - &d)
        } else {
            borrow = false;
            BigInt::from(d)
        };
        out.push(if negative { -c } else { c });
    }
    UPoly::new(out)
}

fn kronecker(f: &UPoly, g: &UPoly) -> UPoly {
    let n = f.coeffs.len().min(g.coeffs.len()) as u64;
    let bits = f.max_bits() + g.max_bits() + 64 - n.leading_zeros() as u64 + 2;
    let slot = bits.div_ceil(64) as usize;
    let pf = pack(f, slot);
    let pg = pack(g, slot);
    unpack(&(pf * pg), slot, f.coeffs.len() + g.coeffs.len() - 1)
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, g: &UPoly) -> UPoly {
        if self.is_zero() || g.is_zero() {
            return UPoly::zero();
        }
        let work = self.coeffs.len() * g.coeffs.len();
        let limbs = (self.max_bits() + g.max_bits()) as usize / 64 + 1;
        if self.coeffs.len().min(g.coeffs.len()) > 8 && work * limbs > KRONECKER_THRESHOLD {
            kronecker(self, g)
        } else {
            schoolbook(self, g)
        }
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, g: &UPoly) -> UPoly {
        add_sub(self, g, false)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, g: &UPoly) -> UPoly {
        add_sub(self, g, true)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_upoly(max_len: usize, max_bits: u32) -> impl Strategy<Value = UPoly> {
        prop::collection::vec(any::<i64>(), 0..max_len).prop_map(move |v| {
            UPoly::new(v.into_iter().map(|c| BigInt::from(c) << (max_bits as usize)).collect())
        })
    }

    proptest! {
        #[test]
        fn kronecker_matches_schoolbook(f in arb_upoly(40, 70), g in arb_upoly(40, 10)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assert_eq!(kronecker(&f, &g), schoolbook(&f, &g));
        }

        #[test]
        fn exact_division_inverts_multiplication(f in arb_upoly(12, 3), g in arb_upoly(8, 0)) {
            prop_assume!(!g.is_zero());
            let h = &f * &g;
            prop_assert_eq!(h.div_exact(&g), Some(f));
        }
    }

    #[test]
    fn non_divisor_rejected() {
        let f = UPoly::from_i64(&[1, 0, 1]);
        let g = UPoly::from_i64(&[-1, 1]);
        assert_eq!(f.div_exact(&g), None);
        assert_eq!(f.div_linear(&BigInt::from(1)), None);
        let h = UPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(h.div_linear(&BigInt::from(1)), Some(UPoly::from_i64(&[1, 1])));
    }

    #[test]
    fn inflate_and_primitive() {
        let f = UPoly::from_i64(&[-2, 4]);
        assert_eq!(f.inflate(4), UPoly::from_i64(&[-2, 0, 0, 0, 4]));
        assert_eq!(f.scale(&BigInt::from(-3)).primitive_part(), UPoly::from_i64(&[-1, 2]));
    }
}
