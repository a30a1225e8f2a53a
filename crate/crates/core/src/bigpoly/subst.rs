use super::modp::{self, Field};
use super::{MPoly, PolyError, Vars};

/// Image of a polynomial under reduction mod p and evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModImage {
    /// Every variable was assigned.
    Residue(u64),
    /// One variable left; plain residues, low to high.
    Univariate { var: String, coeffs: Vec<u64> },
}

impl MPoly {
    /// `den^d * f(var = num/den)` with `d = deg_var f`.
    pub fn substitute_rational(&self, var: &str, num: &MPoly, den: &MPoly) -> Result<MPoly, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let Some(d) = self.degree_in(var).finite() else {
            return Ok(self.clone());
        };
        let coeffs = self.coeffs_in(var);
        let target = self.vars().union(num.vars()).union(den.vars());
        // Horner in the homogenized form: acc = acc * num + c_k * den^(d-k).
        let mut den_pows = vec![MPoly::one(target.clone())];
        for k in 1..=d as usize {
            let next = &den_pows[k - 1] * den;
            den_pows.push(next);
        }
        let mut acc = MPoly::zero(target.clone());
        for (k, c) in coeffs.iter().enumerate().rev() {
            acc = &acc * num;
            if !c.is_zero() {
                acc = &acc + &(c * &den_pows[d as usize - k]);
            }
        }
        // The substituted variable is gone unless num/den mention it.
        let keep_var = num.vars().index(var).is_some() || den.vars().index(var).is_some();
        let out = if keep_var { acc } else { acc.drop_var(var) };
        Ok(out)
    }

    /// Polynomial substitution `f(var = g)`.
    pub fn substitute(&self, var: &str, g: &MPoly) -> MPoly {
        let one = MPoly::one(g.vars().clone());
        self.substitute_rational(var, g, &one).expect("nonzero denominator")
    }

    /// Removes a variable whose exponent is zero in every term.
    pub fn drop_var(&self, var: &str) -> MPoly {
        let Some(i) = self.vars().index(var) else {
            return self.clone();
        };
        debug_assert!(self.terms().iter().all(|(m, _)| m.0[i] == 0));
        let names: Vec<&String> = self.vars().names().iter().filter(|v| *v != var).collect();
        let vars = Vars::new(&names);
        let terms = self
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.0.remove(i);
                (m2, c.clone())
            })
            .collect();
        MPoly::from_sorted(vars, terms)
    }

    /// Reduces coefficients mod `prime` and evaluates the assigned variables.
    /// At most one variable may stay unassigned; its leading coefficient must
    /// survive the reduction, otherwise the prime is unlucky.
    pub fn eval_mod(&self, assignments: &[(&str, u64)], prime: u64) -> Result<ModImage, PolyError> {
        let k = Field::new(prime)?;
        let vars = self.vars();
        let free: Vec<&String> = vars
            .names()
            .iter()
            .filter(|v| !assignments.iter().any(|(a, _)| a == v) && self.degree_in(v).or_zero() > 0)
            .collect();
        if free.len() > 1 {
            return Err(PolyError::NotUnivariate(free.into_iter().cloned().collect()));
        }
        let free_idx = free.first().map(|v| vars.index(v).unwrap());
        let vals: Vec<(usize, u64)> =
            assignments.iter().filter_map(|(v, x)| vars.index(v).map(|i| (i, k.from_u64(*x)))).collect();
        let deg = free_idx.map_or(0, |i| self.terms().iter().map(|(m, _)| m.0[i]).max().unwrap_or(0) as usize);
        let mut out = vec![0u64; deg + 1];
        for (m, c) in self.terms() {
            let mut t = k.from_bigint(c);
            for &(i, x) in &vals {
                t = k.mul(t, k.pow(x, m.0[i] as u64));
            }
            let j = free_idx.map_or(0, |i| m.0[i] as usize);
            out[j] = k.add(out[j], t);
        }
        match free_idx {
            None => Ok(ModImage::Residue(k.to_u64(out[0]))),
            Some(i) => {
                let lc = self.lc_in(&vars.names()[i]);
                let lc_image = lc.eval_mod(assignments, prime)?;
                if lc_image == ModImage::Residue(0) {
                    return Err(PolyError::UnluckyPrime(prime));
                }
                let mut coeffs: Vec<u64> = out.iter().map(|&c| k.to_u64(c)).collect();
                modp::trim(&mut coeffs);
                Ok(ModImage::Univariate { var: vars.names()[i].clone(), coeffs })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn inverse_delta() {
        let f = MPoly::var("x").pow(2);
        let one = MPoly::constant(Vars::empty(), 1);
        let d = MPoly::var("delta");
        let r = f.substitute_rational("x", &one, &d).unwrap();
        // delta^2 * (1/delta)^2 = 1
        assert!(r.is_one());
    }

    #[test]
    fn model_change_of_variables() {
        let x = MPoly::var("x");
        let d = MPoly::var("delta");
        let num = &d.pow(2).add_constant(1) * &(&d * &x).add_constant(-1);
        let den = (&d * &(&x - &d)).scale(&BigInt::from(2));
        // f = X, substituted by a fresh variable name.
        let f = MPoly::var("X");
        let r = f.substitute_rational("X", &num, &den).unwrap();
        assert!(r.equals(&num));
        assert!(f.substitute_rational("X", &num, &MPoly::zero(Vars::empty())).is_err());
        // Variable-free input is unchanged.
        let c = MPoly::constant(Vars::new(&["u"]), 7);
        assert!(c.substitute_rational("X", &num, &den).unwrap().equals(&c));
    }

    #[test]
    fn eval_mod_examples() {
        let f = MPoly::var("x").pow(2).add_constant(-1);
        assert_eq!(f.eval_mod(&[("x", 3)], 7).unwrap(), ModImage::Residue(1));
        let g = MPoly::from_terms(vec![(7, vec![("x", 2), ("u", 1)]), (1, vec![("x", 1)])]);
        assert_eq!(g.eval_mod(&[("u", 2)], 7), Err(PolyError::UnluckyPrime(7)));
        assert_eq!(
            g.eval_mod(&[("u", 2)], 11).unwrap(),
            ModImage::Univariate { var: "x".into(), coeffs: vec![0, 1, 3] }
        );
        assert!(matches!(g.eval_mod(&[], 11), Err(PolyError::NotUnivariate(_))));
    }

    fn small() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((any::<i32>(), 0u32..4, 0u32..4), 1..6)
            .prop_map(|ts| MPoly::from_terms(ts.into_iter().map(|(c, i, j)| (c, vec![("x", i), ("u", j)])).collect()))
    }

    proptest! {
        #[test]
        fn eval_mod_is_a_homomorphism(f in small(), g in small(), x in 0u64..1000, u in 0u64..1000) {
            let p = 1_000_000_007u64;
            let at = [("x", x), ("u", u)];
            let r = |h: &MPoly| match h.eval_mod(&at, p).unwrap() { ModImage::Residue(r) => r as u128, _ => unreachable!() };
            prop_assert_eq!(r(&(&f * &g)) as u128, r(&f) * r(&g) % p as u128);
            prop_assert_eq!(r(&(&f + &g)), (r(&f) + r(&g)) % p as u128);
        }

        #[test]
        fn ring_laws(f in small(), g in small(), h in small()) {
            prop_assert!((&(&f * &g) * &h).equals(&(&f * &(&g * &h))));
            prop_assert!((&f * &g).equals(&(&g * &f)));
            prop_assert!((&f * &(&g + &h)).equals(&(&(&f * &g) + &(&f * &h))));
            prop_assert!((&(&f + &g) + &h).equals(&(&f + &(&g + &h))));
            prop_assert!((&f - &f).is_zero());
        }
    }
}
