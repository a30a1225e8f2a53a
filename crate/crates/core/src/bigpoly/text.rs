//! Line-oriented text format.
//!
//! ```text
//! # vars: x delta
//! 2 x^3 delta^2
//! 1 x^4 delta^1
//! -1 delta^1
//! -2 x^1
//! ```
//!
//! One term per line in canonical order, decimal coefficient first. Lines
//! starting with `#` are comments, except the `# vars:` header which fixes
//! the variable list so the zero polynomial and unused variables survive a
//! round trip.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use super::{MPoly, Monomial, Vars};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: bad coefficient `{text}`")]
    Coefficient { line: usize, text: String },
    #[error("line {line}: bad factor `{text}`")]
    Factor { line: usize, text: String },
}

impl MPoly {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# vars:");
        for v in self.vars().names() {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        for (m, c) in self.terms() {
            out.push_str(&c.to_string());
            for (v, e) in self.vars().names().iter().zip(&m.0) {
                if *e > 0 {
                    out.push_str(&format!(" {v}^{e}"));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<MPoly, ParseError> {
        let mut header: Option<Vec<String>> = None;
        let mut parsed: Vec<(BigInt, Vec<(String, u32)>)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(vs) = rest.trim().strip_prefix("vars:") {
                    header = Some(vs.split_whitespace().map(str::to_string).collect());
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let ctext = parts.next().unwrap();
            let c: BigInt = ctext.parse().map_err(|_| ParseError::Coefficient { line: i + 1, text: ctext.to_string() })?;
            let mut factors = Vec::new();
            for f in parts {
                let (v, e) = match f.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| ParseError::Factor { line: i + 1, text: f.to_string() })?),
                    None => (f, 1),
                };
                if v.is_empty() || !v.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                    return Err(ParseError::Factor { line: i + 1, text: f.to_string() });
                }
                factors.push((v.to_string(), e));
            }
            parsed.push((c, factors));
        }
        let mut names: Vec<String> = header.unwrap_or_default();
        for (_, fs) in &parsed {
            for (v, _) in fs {
                if !names.contains(v) {
                    names.push(v.clone());
                }
            }
        }
        let vars = Vars::new(&names);
        let raw = parsed
            .into_iter()
            .map(|(c, fs)| {
                let mut m = Monomial::one(vars.len());
                for (v, e) in fs {
                    m.0[vars.index(&v).unwrap()] += e;
                }
                (m, c)
            })
            .collect();
        Ok(MPoly::from_raw(vars, raw))
    }
}

/// Compact human-readable form, e.g. `2*x^3*delta^2 + x^4*delta - 2*x`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, e) in self.vars().names().iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() || !mag.is_one() {
                factors.insert(0, mag.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn f3_text() {
        let f = MPoly::from_terms(vec![
            (2, vec![("x", 3), ("delta", 2)]),
            (1, vec![("x", 4), ("delta", 1)]),
            (-1, vec![("delta", 1)]),
            (-2, vec![("x", 1)]),
        ]);
        let text = f.to_text();
        assert_eq!(text, "# vars: x delta\n1 x^4 delta^1\n2 x^3 delta^2\n-2 x^1\n-1 delta^1\n");
        assert_eq!(MPoly::from_text(&text).unwrap(), f);
        assert_eq!(f.to_string(), "x^4*delta + 2*x^3*delta^2 - 2*x - delta");
    }

    #[test]
    fn zero_keeps_vars() {
        let z = MPoly::zero(Vars::new(&["u", "v"]));
        assert_eq!(MPoly::from_text(&z.to_text()).unwrap(), z);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(MPoly::from_text("abc x^2"), Err(ParseError::Coefficient { line: 1, .. })));
        assert!(matches!(MPoly::from_text("3 x^q"), Err(ParseError::Factor { .. })));
    }

    proptest! {
        #[test]
        fn text_round_trip(ts in prop::collection::vec((any::<i128>(), 0u32..6, 0u32..6, 0u32..3), 0..12)) {
            let f = MPoly::from_terms(ts.into_iter().map(|(c, a, b, d)| (c, vec![("x", a), ("delta", b), ("v", d)])).collect());
            let g = MPoly::from_text(&f.to_text()).unwrap();
            prop_assert_eq!(g, f);
        }
    }
}
