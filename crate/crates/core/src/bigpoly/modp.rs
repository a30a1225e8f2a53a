//! Word-size prime fields and dense univariate polynomials over them.
//!
//! Elements are kept in Montgomery form inside [`Field`]; use
//! [`Field::from_u64`] / [`Field::to_u64`] at the boundaries.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::PolyError;

/// Largest modulus handed out by [`PrimeStream`]; keeps sums below 2^63.
pub const PRIME_CEILING: u64 = 1 << 62;

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes descending from [`PRIME_CEILING`].
#[derive(Clone, Debug)]
pub struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream { next: PRIME_CEILING - 1 }
    }

    /// Starts below `ceiling` (exclusive).
    pub fn below(ceiling: u64) -> Self {
        PrimeStream { next: ceiling.min(PRIME_CEILING) - 1 }
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 2 {
            let n = self.next;
            self.next -= 1;
            if is_prime_u64(n) {
                return Some(n);
            }
        }
        None
    }
}

/// Prime field with Montgomery multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    p: u64,
    /// -p^{-1} mod 2^64
    pinv: u64,
    /// 2^128 mod p
    r2: u64,
}

impl Field {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p <= 2 || p >= PRIME_CEILING || !is_prime_u64(p) {
            return Err(PolyError::BadModulus(p));
        }
        let mut inv: u64 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let pinv = inv.wrapping_neg();
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Ok(Field { p, pinv, r2 })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn from_u64(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let r = (a.magnitude() % self.p).to_u64().unwrap();
        let r = if a.sign() == Sign::Minus { (self.p - r) % self.p } else { r };
        self.from_u64(r)
    }

    pub fn to_u64(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.from_u64(1)
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

/// Dense polynomial mod p, coefficients low to high in Montgomery form,
/// no trailing zeros.
pub type ZpPoly = Vec<u64>;

pub fn trim(f: &mut ZpPoly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn eval(k: &Field, f: &[u64], x: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
}

pub fn derivative(k: &Field, f: &[u64]) -> ZpPoly {
    let mut out: ZpPoly = f.iter().enumerate().skip(1).map(|(i, &c)| k.mul(c, k.from_u64(i as u64))).collect();
    trim(&mut out);
    out
}

pub fn mul(k: &Field, f: &[u64], g: &[u64]) -> ZpPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(a, b));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `f` by nonzero `g`, in place; returns the quotient.
pub fn divrem_in_place(k: &Field, f: &mut ZpPoly, g: &[u64]) -> ZpPoly {
    trim(f);
    let dg = degree(g).expect("division by zero polynomial");
    let ginv = k.inv(g[dg]);
    if f.len() <= dg {
        return Vec::new();
    }
    let mut q = vec![0u64; f.len() - dg];
    for i in (dg..f.len()).rev() {
        let c = f[i];
        if c == 0 {
            continue;
        }
        let t = k.mul(c, ginv);
        q[i - dg] = t;
        for j in 0..=dg {
            f[i - dg + j] = k.sub(f[i - dg + j], k.mul(t, g[j]));
        }
    }
    trim(f);
    trim(&mut q);
    q
}

pub fn make_monic(k: &Field, f: &mut ZpPoly) {
    if let Some(d) = degree(f) {
        let inv = k.inv(f[d]);
        for c in f.iter_mut() {
            *c = k.mul(*c, inv);
        }
    }
}

/// Monic gcd.
pub fn gcd(k: &Field, f: &[u64], g: &[u64]) -> ZpPoly {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        divrem_in_place(k, &mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    make_monic(k, &mut a);
    a
}

/// Resultant of two polynomials taken at their actual degrees. Callers that
/// need formal degrees must check the leading coefficients first.
pub fn resultant(k: &Field, f: &[u64], g: &[u64]) -> u64 {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut acc = k.one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return k.mul(acc, k.pow(b[0], da as u64));
        }
        if da == 0 {
            return k.mul(acc, k.pow(a[0], db as u64));
        }
        if da < db {
            if da % 2 == 1 && db % 2 == 1 {
                acc = k.neg(acc);
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // res(a, b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
        let lcb = b[db];
        divrem_in_place(k, &mut a, &b);
        if a.is_empty() {
            return 0;
        }
        let dr = a.len() - 1;
        acc = k.mul(acc, k.pow(lcb, (da - dr) as u64));
        if da % 2 == 1 && db % 2 == 1 {
            acc = k.neg(acc);
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Interpolating polynomial through `(xs[i], ys[i])`, all in Montgomery
/// form. Points must be distinct.
pub fn interpolate(k: &Field, xs: &[u64], ys: &[u64]) -> ZpPoly {
    let n = xs.len();
    // Newton divided differences, in place.
    let mut c = ys.to_vec();
    let mut diffs = Vec::with_capacity(n);
    for j in 1..n {
        diffs.clear();
        for i in j..n {
            diffs.push(k.sub(xs[i], xs[i - j]));
        }
        let invs = batch_inverse(k, &diffs);
        for i in (j..n).rev() {
            c[i] = k.mul(k.sub(c[i], c[i - 1]), invs[i - j]);
        }
    }
    // Expand the Newton form from the top.
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + c[i]
        let xi = xs[i];
        let mut carry = 0u64;
        for coef in out.iter_mut().take(n - i) {
            let cur = *coef;
            *coef = k.sub(carry, k.mul(cur, xi));
            carry = cur;
        }
        out[0] = k.add(out[0], c[i]);
    }
    trim(&mut out);
    out
}

/// Montgomery's simultaneous inversion.
pub fn batch_inverse(k: &Field, xs: &[u64]) -> Vec<u64> {
    let mut prefix = Vec::with_capacity(xs.len());
    let mut acc = k.one();
    for &x in xs {
        prefix.push(acc);
        acc = k.mul(acc, x);
    }
    let mut inv = k.inv(acc);
    let mut out = vec![0u64; xs.len()];
    for i in (0..xs.len()).rev() {
        out[i] = k.mul(inv, prefix[i]);
        inv = k.mul(inv, xs[i]);
    }
    out
}

/// Chinese remaindering of residues modulo pairwise distinct primes into the
/// symmetric range.
#[derive(Clone, Debug)]
pub struct Crt {
    primes: Vec<u64>,
    modulus: BigUint,
    /// (p_0 ... p_{j-1})^{-1} mod p_j, plain representation.
    prefix_inv: Vec<u64>,
}

impl Crt {
    pub fn new(primes: &[u64]) -> Self {
        let mut modulus = BigUint::one();
        let mut prefix_inv = Vec::with_capacity(primes.len());
        for &p in primes {
            let m = (&modulus % p).to_u64().unwrap();
            let k = Field::new(p).expect("prime modulus");
            prefix_inv.push(if m == 0 { 0 } else { k.to_u64(k.inv(k.from_u64(m))) });
            modulus *= p;
        }
        Crt { primes: primes.to_vec(), modulus, prefix_inv }
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// Combines plain (non-Montgomery) residues, one per prime.
    pub fn combine(&self, residues: &[u64]) -> BigInt {
        debug_assert_eq!(residues.len(), self.primes.len());
        let mut x = BigUint::zero();
        let mut m = BigUint::one();
        for (j, (&p, &r)) in self.primes.iter().zip(residues).enumerate() {
            if j > 0 {
                let xm = (&x % p).to_u64().unwrap();
                let t = ((r + p - xm) as u128 * self.prefix_inv[j] as u128 % p as u128) as u64;
                if t != 0 {
                    x += &m * t;
                }
            } else {
                x = BigUint::from(r);
            }
            m *= p;
        }
        let half = &self.modulus >> 1;
        if x > half {
            BigInt::from_biguint(Sign::Minus, &self.modulus - x)
        } else {
            BigInt::from(x)
        }
    }
}

/// Number of bits needed so that the product of primes exceeds `2 * 2^bits`.
pub fn primes_for_bits(bits: u64) -> usize {
    // Every prime from the stream exceeds 2^61.
    ((bits + 2) as usize).div_ceil(61)
}

/// Integer residues mod `p` as plain values.
pub fn bigint_mod(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_roundtrip() {
        let k = Field::new(PrimeStream::new().next().unwrap()).unwrap();
        for a in [0u64, 1, 2, 12345, k.modulus() - 1] {
            assert_eq!(k.to_u64(k.from_u64(a)), a);
        }
        let a = k.from_u64(123456789);
        assert_eq!(k.to_u64(k.mul(a, k.inv(a))), 1);
    }

    #[test]
    fn small_moduli() {
        let k = Field::new(7).unwrap();
        // x^2 - 1 at 3 is 8 = 1 mod 7
        let f = vec![k.from_i64(-1), 0, k.one()];
        assert_eq!(k.to_u64(eval(&k, &f, k.from_u64(3))), 1);
        assert!(Field::new(2).is_err());
        assert!(Field::new(9).is_err());
    }

    #[test]
    fn resultant_mod_p() {
        let k = Field::new(101).unwrap();
        // res(x - 2, x^2 + 1) = 5
        let f = vec![k.from_i64(-2), k.one()];
        let g = vec![k.one(), 0, k.one()];
        assert_eq!(k.to_u64(resultant(&k, &f, &g)), 5);
        assert_eq!(k.to_u64(resultant(&k, &g, &f)), 5);
    }

    #[test]
    fn interpolation_recovers() {
        let k = Field::new(1_000_003).unwrap();
        let f: Vec<u64> = [5i64, -3, 0, 7, 11].iter().map(|&c| k.from_i64(c)).collect();
        let xs: Vec<u64> = (1..=5).map(|i| k.from_u64(i * 3)).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| eval(&k, &f, x)).collect();
        assert_eq!(interpolate(&k, &xs, &ys), f);
    }

    #[test]
    fn crt_symmetric() {
        let primes: Vec<u64> = PrimeStream::new().take(3).collect();
        let crt = Crt::new(&primes);
        let x = BigInt::parse_bytes(b"-123456789012345678901234567890123", 10).unwrap();
        let residues: Vec<u64> = primes.iter().map(|&p| bigint_mod(&x, p)).collect();
        assert_eq!(crt.combine(&residues), x);
    }

    #[test]
    fn prime_stream_is_descending_primes() {
        let ps: Vec<u64> = PrimeStream::below(100).take(4).collect();
        assert_eq!(ps, vec![97, 89, 83, 79]);
    }
}
