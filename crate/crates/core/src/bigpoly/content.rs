use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MPoly, Monomial};

/// `f = sign * content * primitive`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentPrimitive {
    pub content: BigInt,
    pub primitive: MPoly,
    pub sign: i32,
}

impl MPoly {
    /// Integer content (gcd of coefficients), always non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in self.terms() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits off the integer content and the sign of the leading
    /// coefficient. The zero polynomial gives content 0 and sign +1.
    pub fn content_primitive(&self) -> ContentPrimitive {
        if self.is_zero() {
            return ContentPrimitive { content: BigInt::zero(), primitive: self.clone(), sign: 1 };
        }
        let content = self.content();
        let sign = self.signum();
        let div = if sign < 0 { -&content } else { content.clone() };
        let primitive = if div.is_one() { self.clone() } else { self.div_exact_scalar(&div) };
        ContentPrimitive { content, primitive, sign }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> MPoly {
        self.content_primitive().primitive
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let n = self.vars().len();
        let mut it = self.terms().iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one(n);
        };
        let mut m = first.clone();
        for (t, _) in it {
            for (a, b) in m.0.iter_mut().zip(&t.0) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Divides out the monomial content; returns it with the quotient.
    pub fn strip_monomial(&self) -> (Monomial, MPoly) {
        let m = self.monomial_content();
        if m.is_one() {
            return (m, self.clone());
        }
        let terms = self.terms().iter().map(|(t, c)| (t.div(&m).unwrap(), c.clone())).collect();
        (m, MPoly::from_sorted(self.vars().clone(), terms))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one() && self.leading_coeff().is_some_and(|c| c.is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn content_examples() {
        let f = MPoly::from_terms(vec![(6, vec![("x", 2)]), (9, vec![("x", 1)])]);
        let cp = f.content_primitive();
        assert_eq!(cp.content, BigInt::from(3));
        assert_eq!(cp.sign, 1);
        assert_eq!(cp.primitive, MPoly::from_terms(vec![(2, vec![("x", 2)]), (3, vec![("x", 1)])]));

        let g = MPoly::from_terms(vec![(-4, vec![])]);
        let cp = g.content_primitive();
        assert_eq!((cp.content, cp.sign), (BigInt::from(4), -1));
        assert!(cp.primitive.is_one());
    }

    #[test]
    fn zero_content() {
        let z = MPoly::zero(super::super::Vars::new(&["x"]));
        let cp = z.content_primitive();
        assert!(cp.content.is_zero() && cp.primitive.is_zero());
    }

    #[test]
    fn monomial_strip() {
        let f = MPoly::from_terms(vec![(2, vec![("x", 3), ("u", 1)]), (1, vec![("x", 1), ("u", 2)])]);
        let (m, q) = f.strip_monomial();
        assert_eq!(m.0.to_vec(), vec![1, 1]);
        assert_eq!(q, MPoly::from_terms(vec![(2, vec![("x", 2)]), (1, vec![("u", 1)])]));
    }
}
