//! Exact integer and sparse multivariate polynomial arithmetic.
//!
//! [`MPoly`] is a sparse polynomial with [`BigInt`] coefficients over an
//! ordered list of named variables. Terms are kept in graded lexicographic
//! order (leading term first) with the variable order fixed module-wide by
//! [`var_rank`]: `x`, `X`, `delta`, `u`, `v`, `s`, `w`, `a`, `t`, then any
//! other name alphabetically.

mod arith;
mod content;
pub mod dense;
mod divide;
mod factor;
mod gcd;
pub mod modp;
mod resultant;
mod squarefree;
mod subst;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

pub use arith::{arith, ArithOp};
pub use content::ContentPrimitive;
pub use dense::UPoly;
pub use divide::PseudoDivRem;
pub use factor::{factor_squarefree, factor_upoly};
pub use gcd::gcd_upoly;
pub use resultant::{resultant, resultant_modular, resultant_subresultant, ResultantStrategy};
pub use squarefree::{squarefree_decompose, squarefree_upoly, SquarefreeDecomposition};
pub use subst::ModImage;
pub use text::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor has degree 0 in `{0}`")]
    DivisorConstantIn(String),
    #[error("polynomial is zero in `{0}`")]
    ZeroInVariable(String),
    #[error("expected a polynomial in at most one variable, found {0:?}")]
    NotUnivariate(Vec<String>),
    #[error("prime {0} divides a needed leading coefficient")]
    UnluckyPrime(u64),
    #[error("modulus {0} is not an odd prime in machine range")]
    BadModulus(u64),
    #[error("unassigned variable `{0}`")]
    Unassigned(String),
    #[error("zero polynomial has no squarefree decomposition")]
    ZeroPolynomial,
    #[error("modular resultant failed verification at a fresh point")]
    VerificationFailed,
}

/// Degree of a polynomial. The zero polynomial has its own variant instead
/// of a negative sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Zero,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Zero => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Degree with the zero polynomial mapped to 0. Only for callers that
    /// have already handled zero.
    pub fn or_zero(self) -> u32 {
        self.finite().unwrap_or(0)
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::Zero, Degree::Zero) => Ordering::Equal,
            (Degree::Zero, _) => Ordering::Less,
            (_, Degree::Zero) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Zero => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

const KNOWN_VARS: [&str; 10] = ["x", "X", "delta", "u", "v", "s", "w", "a", "t", "y"];

/// Module-wide variable order. Known names come first in a fixed order,
/// everything else sorts alphabetically after them.
pub fn var_rank(name: &str) -> (usize, &str) {
    match KNOWN_VARS.iter().position(|v| *v == name) {
        Some(i) => (i, ""),
        None => (KNOWN_VARS.len(), name),
    }
}

/// Exponent vector, one entry per variable of the owning polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    /// Graded lexicographic comparison.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Ordered list of variable names, shared between polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<Vec<String>>);

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let mut v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        v.sort_by(|a, b| var_rank(a).cmp(&var_rank(b)));
        v.dedup();
        Vars(Arc::new(v))
    }

    pub fn empty() -> Self {
        Vars(Arc::new(Vec::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn union(&self, other: &Vars) -> Vars {
        if self == other {
            return self.clone();
        }
        let mut all: Vec<&String> = self.0.iter().chain(other.0.iter()).collect();
        all.sort_by(|a, b| var_rank(a).cmp(&var_rank(b)));
        all.dedup();
        Vars(Arc::new(all.into_iter().cloned().collect()))
    }
}

/// Sparse multivariate polynomial with exact integer coefficients.
///
/// Invariants: no zero coefficients, no repeated monomials, terms sorted
/// descending in graded lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Vars,
    terms: Vec<(Monomial, BigInt)>,
}

impl MPoly {
    pub fn zero(vars: Vars) -> Self {
        MPoly { vars, terms: Vec::new() }
    }

    pub fn constant<T: Into<BigInt>>(vars: Vars, c: T) -> Self {
        let c = c.into();
        let n = vars.len();
        if c.is_zero() {
            MPoly::zero(vars)
        } else {
            MPoly { vars, terms: vec![(Monomial::one(n), c)] }
        }
    }

    pub fn one(vars: Vars) -> Self {
        MPoly::constant(vars, 1)
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(name: &str) -> Self {
        let vars = Vars::new(&[name]);
        let mut m = Monomial::one(1);
        m.0[0] = 1;
        MPoly { vars, terms: vec![(m, BigInt::one())] }
    }

    /// Builds a polynomial from `(coefficient, [(var, exp), ...])` pairs.
    /// Repeated monomials are combined.
    pub fn from_terms<C: Into<BigInt>>(terms: Vec<(C, Vec<(&str, u32)>)>) -> Self {
        let names: Vec<&str> = terms.iter().flat_map(|(_, m)| m.iter().map(|(v, _)| *v)).collect();
        let vars = Vars::new(&names);
        let raw = terms
            .into_iter()
            .map(|(c, m)| {
                let mut mono = Monomial::one(vars.len());
                for (v, e) in m {
                    mono.0[vars.index(v).unwrap()] += e;
                }
                (mono, c.into())
            })
            .collect();
        MPoly::from_raw(vars, raw)
    }

    /// Canonicalizes an arbitrary list of terms over `vars`.
    pub fn from_raw(vars: Vars, mut raw: Vec<(Monomial, BigInt)>) -> Self {
        raw.sort_by(|a, b| b.0.grlex_cmp(&a.0));
        let mut terms: Vec<(Monomial, BigInt)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            if let Some((lm, lc)) = terms.last_mut() {
                if *lm == m {
                    *lc += c;
                    continue;
                }
            }
            terms.push((m, c));
        }
        terms.retain(|(_, c)| !c.is_zero());
        MPoly { vars, terms }
    }

    /// Trusted constructor: terms must already be canonical.
    pub(crate) fn from_sorted(vars: Vars, terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0.grlex_cmp(&w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly { vars, terms }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Total degree.
    pub fn degree(&self) -> Degree {
        match self.terms.first() {
            None => Degree::Zero,
            Some((m, _)) => Degree::Finite(m.total_degree()),
        }
    }

    /// Degree in one variable; a variable absent from the list has degree 0.
    pub fn degree_in(&self, var: &str) -> Degree {
        if self.is_zero() {
            return Degree::Zero;
        }
        match self.vars.index(var) {
            None => Degree::Finite(0),
            Some(i) => Degree::Finite(self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap()),
        }
    }

    /// Lowest exponent of `var` over all terms.
    pub fn min_degree_in(&self, var: &str) -> u32 {
        match self.vars.index(var) {
            None => 0,
            Some(i) => self.terms.iter().map(|(m, _)| m.0[i]).min().unwrap_or(0),
        }
    }

    /// Variables that actually occur with positive exponent.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.iter().any(|(m, _)| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Leading coefficient in graded lexicographic order.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn with_vars(&self, vars: &Vars) -> MPoly {
        if &self.vars == vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|v| vars.index(v).expect("target variable list must contain every variable"))
            .collect();
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(vars.len());
                for (i, &k) in m.0.iter().enumerate() {
                    e.0[map[i]] = k;
                }
                (e, c.clone())
            })
            .collect();
        // Reordering variables can change the term order.
        MPoly::from_raw(vars.clone(), raw)
    }

    /// Drops variables that do not occur.
    pub fn trim_vars(&self) -> MPoly {
        let used = self.used_vars();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars = Vars::new(&used);
        let idx: Vec<usize> = used.iter().map(|v| self.vars.index(v).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(idx.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        MPoly::from_sorted(vars, terms)
    }

    /// Renames a variable. The target name must not already be in use.
    pub fn rename(&self, from: &str, to: &str) -> MPoly {
        if self.vars.index(from).is_none() {
            return self.clone();
        }
        assert!(self.vars.index(to).is_none(), "rename target `{to}` already present");
        let names: Vec<String> =
            self.vars.names().iter().map(|v| if v == from { to.to_string() } else { v.clone() }).collect();
        let tmp = MPoly { vars: Vars(Arc::new(names.clone())), terms: self.terms.clone() };
        tmp.with_vars(&Vars::new(&names))
    }

    /// Coefficients with respect to `var`, indexed by power. Each coefficient
    /// keeps the full variable list (with `var` at exponent 0).
    pub fn coeffs_in(&self, var: &str) -> Vec<MPoly> {
        let Some(i) = self.vars.index(var) else {
            return vec![self.clone()];
        };
        let d = self.degree_in(var).or_zero() as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut m2 = m.clone();
            m2.0[i] = 0;
            buckets[k].push((m2, c.clone()));
        }
        // Removing one coordinate can reorder terms of equal total degree.
        buckets.into_iter().map(|b| MPoly::from_raw(self.vars.clone(), b)).collect()
    }

    /// Coefficient of `var^k`.
    pub fn coeff_of(&self, var: &str, k: u32) -> MPoly {
        let Some(i) = self.vars.index(var) else {
            return if k == 0 { self.clone() } else { MPoly::zero(self.vars.clone()) };
        };
        let raw = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] == k)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.0[i] = 0;
                (m2, c.clone())
            })
            .collect();
        MPoly::from_raw(self.vars.clone(), raw)
    }

    /// Leading coefficient with respect to `var`.
    pub fn lc_in(&self, var: &str) -> MPoly {
        self.coeff_of(var, self.degree_in(var).or_zero())
    }

    /// Coefficient of an exact monomial given as `(var, exp)` pairs.
    pub fn coeff_of_monomial(&self, mono: &[(&str, u32)]) -> BigInt {
        let mut target = Monomial::one(self.vars.len());
        for (v, e) in mono {
            match self.vars.index(v) {
                Some(i) => target.0[i] = *e,
                None if *e == 0 => {}
                None => return BigInt::zero(),
            }
        }
        self.terms.iter().find(|(m, _)| *m == target).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, var: &str, k: u32) -> MPoly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let vars = self.vars.union(&Vars::new(&[var]));
        let f = self.with_vars(&vars);
        let i = vars.index(var).unwrap();
        let raw = f
            .terms
            .into_iter()
            .map(|(mut m, c)| {
                m.0[i] += k;
                (m, c)
            })
            .collect();
        MPoly::from_raw(vars, raw)
    }

    /// Divides every term by `var^k`; panics if some term has lower degree.
    pub fn unshift(&self, var: &str, k: u32) -> MPoly {
        if k == 0 {
            return self.clone();
        }
        let i = self.vars.index(var).expect("variable present");
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.0[i] = m2.0[i].checked_sub(k).expect("monomial divisibility");
                (m2, c.clone())
            })
            .collect();
        MPoly::from_raw(self.vars.clone(), raw)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: &str) -> MPoly {
        let Some(i) = self.vars.index(var) else {
            return MPoly::zero(self.vars.clone());
        };
        let raw = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = m2.0[i];
                m2.0[i] -= 1;
                (m2, c * BigInt::from(e))
            })
            .collect();
        MPoly::from_raw(self.vars.clone(), raw)
    }

    /// Substitutes an integer for a variable.
    pub fn eval_int(&self, var: &str, value: &BigInt) -> MPoly {
        let Some(i) = self.vars.index(var) else {
            return self.clone();
        };
        let d = self.degree_in(var).or_zero() as usize;
        let mut pows = Vec::with_capacity(d + 1);
        pows.push(BigInt::one());
        for k in 1..=d {
            let next = &pows[k - 1] * value;
            pows.push(next);
        }
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = m2.0[i] as usize;
                m2.0[i] = 0;
                (m2, c * &pows[e])
            })
            .collect();
        MPoly::from_raw(self.vars.clone(), raw)
    }

    /// Evaluates at integer values for every variable.
    pub fn eval_all(&self, values: &[(&str, BigInt)]) -> Result<BigInt, PolyError> {
        let mut f = self.clone();
        for (v, x) in values {
            f = f.eval_int(v, x);
        }
        if let Some(v) = f.used_vars().first() {
            return Err(PolyError::Unassigned(v.clone()));
        }
        Ok(f.as_constant().unwrap())
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let c2 = f(c);
                (!c2.is_zero()).then(|| (m.clone(), c2))
            })
            .collect();
        MPoly::from_sorted(self.vars.clone(), terms)
    }

    /// Largest coefficient magnitude in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    /// Sum of absolute values of the coefficients.
    pub fn norm1(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).sum()
    }

    /// Dense univariate view if at most one variable occurs.
    pub fn to_upoly(&self) -> Result<(Option<String>, UPoly), PolyError> {
        let used = self.used_vars();
        if used.len() > 1 {
            return Err(PolyError::NotUnivariate(used));
        }
        let var = used.first().cloned();
        let mut coeffs = vec![BigInt::zero(); self.degree().finite().map_or(0, |d| d as usize + 1)];
        let idx = var.as_ref().and_then(|v| self.vars.index(v));
        for (m, c) in &self.terms {
            let e = idx.map_or(0, |i| m.0[i]) as usize;
            coeffs[e] = c.clone();
        }
        Ok((var, UPoly::new(coeffs)))
    }

    /// Sparse view of a dense univariate polynomial in `var`.
    pub fn from_upoly(var: &str, p: &UPoly) -> MPoly {
        let vars = Vars::new(&[var]);
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Monomial(SmallVec::from_elem(k as u32, 1)), c.clone()))
            .collect();
        MPoly::from_sorted(vars, terms)
    }

    /// Positive if the leading coefficient is positive.
    pub fn signum(&self) -> i32 {
        match self.leading_coeff() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{:?}]({})", self.vars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vars_are_ranked() {
        let v = Vars::new(&["v", "u", "zeta", "x", "delta"]);
        assert_eq!(v.names(), &["x", "delta", "u", "v", "zeta"]);
    }

    #[test]
    fn degree_of_zero_is_distinguished() {
        let z = MPoly::zero(Vars::new(&["x"]));
        assert_eq!(z.degree(), Degree::Zero);
        assert!(Degree::Zero < Degree::Finite(0));
        assert_eq!(z.degree_in("x").finite(), None);
    }

    #[test]
    fn grlex_order_and_coeffs() {
        let f = MPoly::from_terms(vec![(1, vec![("x", 1)]), (3, vec![("x", 2)]), (-2, vec![("u", 3)]), (5, vec![])]);
        let lead: Vec<u32> = f.terms()[0].0 .0.to_vec();
        assert_eq!(lead, vec![0, 3]);
        assert_eq!(f.degree_in("x"), Degree::Finite(2));
        assert_eq!(f.coeffs_in("x").len(), 3);
        assert_eq!(f.coeff_of_monomial(&[("x", 2)]), BigInt::from(3));
    }

    #[test]
    fn rename_reorders() {
        let f = MPoly::from_terms(vec![(1, vec![("x", 2), ("delta", 1)])]);
        let g = f.rename("x", "v");
        assert_eq!(g.vars().names(), &["delta", "v"]);
        assert_eq!(g.coeff_of_monomial(&[("v", 2), ("delta", 1)]), BigInt::from(1));
    }
}
