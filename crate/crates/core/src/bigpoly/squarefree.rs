use num_bigint::BigInt;
use num_traits::Signed;

use super::dense::UPoly;
use super::gcd::gcd_upoly;
use super::{MPoly, PolyError};

/// `f = sign * content * prod(factor_i ^ multiplicity_i)` with primitive,
/// squarefree, pairwise coprime factors of positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub var: Option<String>,
    pub sign: i32,
    pub content: BigInt,
    /// Sorted by increasing multiplicity.
    pub factors: Vec<(UPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> UPoly {
        let mut acc = UPoly::new(vec![if self.sign < 0 { -&self.content } else { self.content.clone() }]);
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn factors_mpoly(&self) -> Vec<(MPoly, u32)> {
        let var = self.var.as_deref().unwrap_or("x");
        self.factors.iter().map(|(f, m)| (MPoly::from_upoly(var, f), *m)).collect()
    }

    /// `(degree, multiplicity)` pairs.
    pub fn shape(&self) -> Vec<(usize, u32)> {
        self.factors.iter().map(|(f, m)| (f.degree().unwrap(), *m)).collect()
    }
}

/// Yun's squarefree decomposition of a polynomial in one variable.
pub fn squarefree_decompose(f: &MPoly) -> Result<SquarefreeDecomposition, PolyError> {
    let (var, u) = f.to_upoly()?;
    let mut d = squarefree_upoly(&u)?;
    d.var = var;
    Ok(d)
}

pub fn squarefree_upoly(f: &UPoly) -> Result<SquarefreeDecomposition, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let content = f.content();
    let sign = if f.lc().unwrap().is_negative() { -1 } else { 1 };
    let prim = f.primitive_part();
    let mut factors = Vec::new();
    if prim.degree().unwrap() > 0 {
        let df = prim.derivative();
        let a0 = gcd_upoly(&prim, &df);
        let mut b = prim.div_exact(&a0).expect("gcd divides f");
        let c = df.div_exact(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while b.degree().unwrap() > 0 {
            let a = gcd_upoly(&b, &d);
            b = b.div_exact(&a).expect("gcd divides b");
            let c = d.div_exact(&a).expect("gcd divides d");
            d = &c - &b.derivative();
            if a.degree().unwrap() > 0 {
                factors.push((a, i));
            }
            i += 1;
        }
    }
    // Primitive factors with positive leading coefficients multiply to the
    // primitive part, so the sign of the input is all that remains.
    debug_assert!(factors.iter().all(|(f, _)| f.lc().unwrap().is_positive()));
    Ok(SquarefreeDecomposition { var: None, sign, content, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn cube() {
        let f = MPoly::var("x").pow(3);
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.content, BigInt::one());
        assert_eq!(d.shape(), vec![(1, 3)]);
        assert_eq!(d.factors[0].0, UPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn two_parts() {
        // (x-1)^2 (x+2)
        let f = &MPoly::var("x").add_constant(-1).pow(2) * &MPoly::var("x").add_constant(2);
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.factors, vec![(UPoly::from_i64(&[2, 1]), 1), (UPoly::from_i64(&[-1, 1]), 2)]);
        assert_eq!(MPoly::from_upoly("x", &d.expand()), f);
    }

    #[test]
    fn sign_and_content() {
        let f = UPoly::from_i64(&[-6, 0, -6]);
        let d = squarefree_upoly(&f).unwrap();
        assert_eq!((d.sign, d.content.clone()), (-1, BigInt::from(6)));
        assert_eq!(d.expand(), f);
        assert!(squarefree_upoly(&UPoly::zero()).is_err());
        assert!(squarefree_decompose(&(&MPoly::var("x") * &MPoly::var("u"))).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn reexpansion(a in prop::collection::vec(-5i64..6, 2..4),
                       b in prop::collection::vec(-5i64..6, 2..4),
                       k in 1u32..4) {
            let f = &UPoly::from_i64(&a).pow(k) * &UPoly::from_i64(&b);
            prop_assume!(!f.is_zero());
            let d = squarefree_upoly(&f).unwrap();
            prop_assert_eq!(d.expand(), f);
            for (p, _) in &d.factors {
                let g = gcd_upoly(p, &p.derivative());
                prop_assert_eq!(g.degree(), Some(0));
            }
        }
    }
}
