use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MPoly, Monomial, PolyError, Vars};

fn aligned(f: &MPoly, g: &MPoly) -> (MPoly, MPoly) {
    let vars = f.vars().union(g.vars());
    (f.with_vars(&vars), g.with_vars(&vars))
}

fn merge(f: &MPoly, g: &MPoly, negate_g: bool) -> MPoly {
    if f.vars() != g.vars() {
        let (f, g) = aligned(f, g);
        return merge(&f, &g, negate_g);
    }
    let (a, b) = (f.terms(), g.terms());
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.grlex_cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_g { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_g { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        out.push((m.clone(), if negate_g { -c } else { c.clone() }));
    }
    MPoly::from_sorted(f.vars().clone(), out)
}

fn multiply(f: &MPoly, g: &MPoly) -> MPoly {
    if f.vars() != g.vars() {
        let (f, g) = aligned(f, g);
        return multiply(&f, &g);
    }
    let vars = f.vars().clone();
    if f.is_zero() || g.is_zero() {
        return MPoly::zero(vars);
    }
    let (small, big) = if f.nterms() <= g.nterms() { (f, g) } else { (g, f) };
    if small.nterms() == 1 {
        let (m, c) = &small.terms()[0];
        let terms = big.terms().iter().map(|(m2, c2)| (m.mul(m2), c * c2)).collect();
        // Multiplying by a monomial preserves a monomial order.
        return MPoly::from_sorted(vars, terms);
    }
    let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(f.nterms() * 2 + g.nterms() * 2);
    for (m1, c1) in small.terms() {
        for (m2, c2) in big.terms() {
            let prod = c1 * c2;
            acc.entry(m1.mul(m2)).and_modify(|c| *c += &prod).or_insert(prod);
        }
    }
    MPoly::from_raw(vars, acc.into_iter().collect())
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        merge(self, rhs, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        multiply(self, rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// Binary operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `f op g` with variable lists merged as needed.
pub fn arith(f: &MPoly, g: &MPoly, op: ArithOp) -> MPoly {
    match op {
        ArithOp::Add => f + g,
        ArithOp::Sub => f - g,
        ArithOp::Mul => f * g,
    }
}

impl MPoly {
    pub fn scale(&self, k: &BigInt) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.vars().clone());
        }
        self.map_coeffs(|c| c * k)
    }

    /// Divides every coefficient by `k`, which must divide them exactly.
    pub fn div_exact_scalar(&self, k: &BigInt) -> MPoly {
        self.map_coeffs(|c| {
            let (q, r) = c.div_rem(k);
            debug_assert!(r.is_zero(), "inexact scalar division");
            q
        })
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one(self.vars().clone());
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

    /// Power with a signed exponent; negative exponents are rejected.
    pub fn try_pow(&self, e: i64) -> Result<MPoly, PolyError> {
        if e < 0 {
            return Err(PolyError::NegativeExponent(e));
        }
        Ok(self.pow(u32::try_from(e).map_err(|_| PolyError::NegativeExponent(e))?))
    }

    pub fn add_constant(&self, c: i64) -> MPoly {
        self + &MPoly::constant(self.vars().clone(), c)
    }

    /// Product of a list, over the union of their variables.
    pub fn product<'a>(items: impl IntoIterator<Item = &'a MPoly>) -> MPoly {
        items.into_iter().fold(MPoly::one(Vars::empty()), |acc, f| &acc * f)
    }

    /// Whether two polynomials are equal after aligning variable lists.
    pub fn equals(&self, other: &MPoly) -> bool {
        (self - other).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one() || (-c).is_one())
    }
}
