use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CompressedPair, IntersectError, ReductionPair};
use crate::bigpoly::{factor_upoly, resultant_modular, squarefree_upoly, MPoly, UPoly};

/// A known factor of the resultant, removed before the squarefree split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialFactor {
    pub label: String,
    pub poly: UPoly,
    pub multiplicity: u32,
}

/// Product of the remaining irreducible factors that share one multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfilePart {
    pub poly: UPoly,
    pub multiplicity: u32,
    /// Degrees of the irreducible factors over `Q`, when computed.
    pub factor_degrees: Option<Vec<usize>>,
}

impl ProfilePart {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// `Res = sign * content * var^monomial_power * prod trivial * prod parts`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantProfile {
    pub eliminated: String,
    pub var: String,
    pub sign: i32,
    pub content: BigInt,
    pub monomial_power: u32,
    pub trivial: Vec<TrivialFactor>,
    pub parts: Vec<ProfilePart>,
}

impl ResultantProfile {
    pub fn total_degree(&self) -> usize {
        let t: usize = self.trivial.iter().map(|f| f.poly.degree().unwrap_or(0) * f.multiplicity as usize).sum();
        let p: usize = self.parts.iter().map(|f| f.degree() * f.multiplicity as usize).sum();
        self.monomial_power as usize + t + p
    }

    pub fn expand(&self) -> UPoly {
        let c = if self.sign < 0 { -&self.content } else { self.content.clone() };
        let mut acc = UPoly::monomial(self.monomial_power as usize).scale(&c);
        for f in &self.trivial {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        for f in &self.parts {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        acc
    }

    /// `(degree, multiplicity)` of the nontrivial parts.
    pub fn shape(&self) -> Vec<(usize, u32)> {
        self.parts.iter().map(|p| (p.degree(), p.multiplicity)).collect()
    }

    /// Factors every part over `Q` and records the degrees.
    pub fn factor_parts(&mut self) -> Result<(), IntersectError> {
        for part in &mut self.parts {
            let mut d: Vec<usize> = factor_upoly(&part.poly)?.iter().map(|(f, _)| f.degree().unwrap_or(0)).collect();
            d.sort_unstable();
            part.factor_degrees = Some(d);
        }
        Ok(())
    }

    /// Degree-sorted factor degrees grouped by multiplicity, falling back
    /// to the part degree when a part was not factored.
    pub fn factor_shape(&self) -> Vec<(Vec<usize>, u32)> {
        self.parts
            .iter()
            .map(|p| (p.factor_degrees.clone().unwrap_or_else(|| vec![p.degree()]), p.multiplicity))
            .collect()
    }
}

fn fmt_content(c: &BigInt) -> String {
    let k = c.trailing_zeros().unwrap_or(0);
    if k > 1 && (c >> k).is_one() {
        format!("2^{k}")
    } else {
        c.to_string()
    }
}

impl fmt::Display for ResultantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "resultant eliminating {} in {}", self.eliminated, self.var)?;
        writeln!(f, "  sign {}", if self.sign < 0 { "-" } else { "+" })?;
        writeln!(f, "  content {}", fmt_content(&self.content))?;
        writeln!(f, "  {}^{}", self.var, self.monomial_power)?;
        for t in &self.trivial {
            writeln!(f, "  ({})^{}", t.label, t.multiplicity)?;
        }
        for p in &self.parts {
            let c = p.poly.coeffs();
            let n = c.len();
            write!(f, "  part degree {} multiplicity {}", p.degree(), p.multiplicity)?;
            if n >= 2 {
                write!(f, " leading ({}, {})", c[n - 1], c[n - 2])?;
            }
            if let Some(d) = &p.factor_degrees {
                let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                write!(f, " irreducible degrees [{}]", d.join(", "))?;
            }
            writeln!(f)?;
        }
        writeln!(f, "  total degree {}", self.total_degree())
    }
}

/// `w^m c_p(-1/w)` made primitive with positive leading coefficient, where
/// `c_p(y) = 1 + sum_{k=1}^{m} D_k(y)`, `m = (p-1)/2` and `D_k` are the
/// Dickson polynomials `D_0 = 2`, `D_1 = y`, `D_{k+1} = y D_k - D_{k-1}`.
/// The roots are `-1/(zeta + zeta^-1)` for `zeta` a primitive `p`-th root of 1.
pub fn real_cyclotomic_reciprocal(p: u32) -> UPoly {
    let m = ((p - 1) / 2) as usize;
    let y = UPoly::monomial(1);
    let mut prev = UPoly::from_i64(&[2]);
    let mut cur = y.clone();
    let mut c = &UPoly::from_i64(&[1]) + &cur;
    for _ in 1..m {
        let next = &(&y * &cur) - &prev;
        prev = cur;
        cur = next;
        c = &c + &cur;
    }
    let coeffs = c.coeffs();
    let mut out = vec![BigInt::zero(); m + 1];
    for (k, a) in coeffs.iter().enumerate() {
        out[m - k] = if k % 2 == 1 { -a } else { a.clone() };
    }
    UPoly::new(out).primitive_part()
}

fn candidates(var: &str, p: u32) -> Vec<(String, UPoly)> {
    let lin = |c: i64| UPoly::from_i64(&[c, 1]);
    match var {
        "s" => vec![(format!("{var} - 1"), lin(-1))],
        "w" => vec![
            (format!("{var} - 1"), lin(-1)),
            (format!("{var} + 1"), lin(1)),
            (format!("R_{p}({var})"), real_cyclotomic_reciprocal(p)),
        ],
        _ => vec![(format!("{var}^4 - 1"), UPoly::from_i64(&[-1, 0, 0, 0, 1]))],
    }
}

/// Splits `r`, a polynomial in `var`, into content, a power of `var`, the
/// given trivial factors and the squarefree parts of what remains.
pub fn profile_of(
    r: &UPoly,
    var: &str,
    eliminated: &str,
    trivial: &[(String, UPoly)],
) -> Result<ResultantProfile, IntersectError> {
    let lc = r.lc().ok_or_else(|| IntersectError::ZeroResultant { gcd: "?".into() })?;
    let sign = if lc.is_negative() { -1 } else { 1 };
    let content = r.content();
    let mut rest = r.primitive_part();
    let monomial_power = rest.trailing_zeros() as u32;
    rest = rest.shift_down(monomial_power as usize);
    let mut found = Vec::new();
    for (label, f) in trivial {
        let mut k = 0;
        while let Some(q) = rest.div_exact(f) {
            rest = q;
            k += 1;
        }
        if k > 0 {
            found.push(TrivialFactor { label: label.clone(), poly: f.clone(), multiplicity: k });
        }
    }
    let sq = squarefree_upoly(&rest)?;
    let parts = sq
        .factors
        .into_iter()
        .map(|(poly, multiplicity)| ProfilePart { poly, multiplicity, factor_degrees: None })
        .collect();
    Ok(ResultantProfile {
        eliminated: eliminated.to_string(),
        var: var.to_string(),
        sign,
        content,
        monomial_power,
        trivial: found,
        parts,
    })
}

fn profile_pair(c0: &MPoly, c1: &MPoly, eliminate: &str, other: &str, p: u32) -> Result<ResultantProfile, IntersectError> {
    let r = resultant_modular(c0, c1, eliminate)?;
    if r.is_zero() {
        return Err(IntersectError::ZeroResultant { gcd: c0.gcd(c1).to_string() });
    }
    let (_, u) = r.to_upoly()?;
    profile_of(&u, other, eliminate, &candidates(other, p))
}

/// `Res_var(C_{p,0}, C_{p,1})` for `var` in `{u, v}`, profiled.
pub fn resultant_profile(pair: &ReductionPair, eliminate: &str) -> Result<ResultantProfile, IntersectError> {
    let other = match eliminate {
        "u" => "v",
        "v" => "u",
        _ => return Err(IntersectError::BadVariable(eliminate.to_string())),
    };
    profile_pair(&pair.c0, &pair.c1, eliminate, other, pair.p)
}

/// `Res_var(D_{p,0}, D_{p,1})` for `var` in `{s, w}`, profiled.
pub fn resultant_profile_compressed(pair: &CompressedPair, eliminate: &str) -> Result<ResultantProfile, IntersectError> {
    let other = match eliminate {
        "s" => "w",
        "w" => "s",
        _ => return Err(IntersectError::BadVariable(eliminate.to_string())),
    };
    profile_pair(&pair.c0, &pair.c1, eliminate, other, pair.p)
}
