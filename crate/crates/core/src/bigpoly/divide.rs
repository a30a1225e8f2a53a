use num_integer::Integer;
use num_traits::Zero;

use super::{Degree, MPoly, PolyError, Vars};

/// Result of pseudo-division in one variable:
/// `lc(g)^scale_power * f = quotient * g + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivRem {
    pub quotient: MPoly,
    pub remainder: MPoly,
    pub scale_power: u32,
}

impl MPoly {
    /// Pseudo-division of `self` by `g` with respect to `var`, with exact
    /// integer arithmetic. The scale power is `deg f - deg g + 1` when
    /// `deg f >= deg g` and 0 otherwise.
    pub fn pseudo_divrem(&self, g: &MPoly, var: &str) -> Result<PseudoDivRem, PolyError> {
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dg = g.degree_in(var).or_zero();
        if dg == 0 {
            return Err(PolyError::DivisorConstantIn(var.to_string()));
        }
        let vars = self.vars().union(g.vars()).union(&Vars::new(&[var]));
        let f = self.with_vars(&vars);
        let g = g.with_vars(&vars);
        let zero = MPoly::zero(vars.clone());
        let df = match f.degree_in(var) {
            Degree::Zero => return Ok(PseudoDivRem { quotient: zero.clone(), remainder: zero, scale_power: 0 }),
            Degree::Finite(d) => d,
        };
        if df < dg {
            return Ok(PseudoDivRem { quotient: zero, remainder: f, scale_power: 0 });
        }
        let lcg = g.lc_in(var);
        let mut q = zero;
        let mut r = f;
        let mut steps = df - dg + 1;
        let total = steps;
        loop {
            let dr = match r.degree_in(var) {
                Degree::Finite(d) if d >= dg => d,
                _ => break,
            };
            let s = r.lc_in(var).shift(var, dr - dg);
            q = &(&lcg * &q) + &s;
            r = &(&lcg * &r) - &(&s * &g);
            steps -= 1;
        }
        if steps > 0 {
            let k = lcg.pow(steps);
            q = &k * &q;
            r = &k * &r;
        }
        Ok(PseudoDivRem { quotient: q, remainder: r, scale_power: total })
    }

    /// Exact quotient `self / g` over the integers, or `None` when `g` does
    /// not divide `self`.
    pub fn div_exact(&self, g: &MPoly) -> Result<Option<MPoly>, PolyError> {
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let vars = self.vars().union(g.vars());
        let mut r = self.with_vars(&vars);
        let g = g.with_vars(&vars);
        if let Some(c) = g.as_constant() {
            let ok = r.terms().iter().all(|(_, a)| a.is_multiple_of(&c));
            return Ok(ok.then(|| r.div_exact_scalar(&c)));
        }
        let (gm, gc) = g.leading_term().unwrap().clone();
        let mut q_terms = Vec::new();
        while let Some((rm, rc)) = r.leading_term().cloned() {
            let Some(m) = rm.div(&gm) else {
                return Ok(None);
            };
            let (c, rem) = rc.div_rem(&gc);
            if !rem.is_zero() {
                return Ok(None);
            }
            let t = MPoly::from_sorted(vars.clone(), vec![(m.clone(), c.clone())]);
            r = &r - &(&t * &g);
            q_terms.push((m, c));
        }
        Ok(Some(MPoly::from_raw(vars, q_terms)))
    }

    /// Exact division that must succeed; panics otherwise.
    pub(crate) fn div_exact_unwrap(&self, g: &MPoly) -> MPoly {
        self.div_exact(g).expect("nonzero divisor").expect("exact division")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> MPoly {
        MPoly::from_terms(vec![
            (2, vec![("u", 3), ("delta", 2)]),
            (1, vec![("u", 4), ("delta", 1)]),
            (-1, vec![("delta", 1)]),
            (-2, vec![("u", 1)]),
        ])
    }

    fn check_identity(f: &MPoly, g: &MPoly, var: &str) {
        let pd = f.pseudo_divrem(g, var).unwrap();
        let lhs = &g.lc_in(var).pow(pd.scale_power) * f;
        let rhs = &(&pd.quotient * g) + &pd.remainder;
        assert!(lhs.equals(&rhs));
        assert!(pd.remainder.degree_in(var) < g.degree_in(var));
    }

    #[test]
    fn delta_squared_by_f3() {
        let f = MPoly::var("delta").pow(2);
        let g = f3();
        check_identity(&f, &g, "delta");
        let pd = f.pseudo_divrem(&g, "delta").unwrap();
        assert_eq!(pd.remainder.degree_in("delta"), Degree::Finite(1));
    }

    #[test]
    fn self_division_leaves_nothing() {
        let g = f3();
        let pd = g.pseudo_divrem(&g, "delta").unwrap();
        assert!(pd.remainder.is_zero());
    }

    #[test]
    fn division_errors() {
        let z = MPoly::zero(Vars::new(&["x"]));
        assert_eq!(f3().pseudo_divrem(&z, "delta"), Err(PolyError::DivisionByZero));
        let c = MPoly::var("u");
        assert!(matches!(f3().pseudo_divrem(&c, "delta"), Err(PolyError::DivisorConstantIn(_))));
    }

    #[test]
    fn exact_division() {
        let a = &MPoly::var("x").add_constant(1) * &MPoly::var("u").add_constant(-3);
        let b = &a * &f3();
        assert!(b.div_exact(&f3()).unwrap().unwrap().equals(&a));
        assert!(f3().div_exact(&a).unwrap().is_none());
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((-9i64..10, 0u32..4, 0u32..4), 1..6).prop_map(|ts| {
            MPoly::from_terms(ts.into_iter().map(|(c, i, j)| (c, vec![("x", i), ("u", j)])).collect())
        })
    }

    proptest! {
        #[test]
        fn pseudo_division_identity(f in small_poly(), g in small_poly()) {
            prop_assume!(g.degree_in("x").or_zero() >= 1);
            check_identity(&f, &g, "x");
        }
    }
}
