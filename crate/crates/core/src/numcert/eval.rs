use crate::bigpoly::{MPoly, PolyError};

use super::complex::{Complex, ComplexBall};

fn powers(z: &ComplexBall, d: usize, prec: u32) -> Vec<ComplexBall> {
    let mut out = Vec::with_capacity(d + 1);
    out.push(ComplexBall::from_i64(1));
    for k in 1..=d {
        let next = out[k - 1].mul(z, prec);
        out.push(next);
    }
    out
}

/// Enclosure of `f` at the given points. Every variable that occurs in `f`
/// must be assigned.
pub fn eval_ball(f: &MPoly, at: &[(&str, &ComplexBall)], prec: u32) -> Result<ComplexBall, PolyError> {
    let vars = f.vars().names();
    let mut tables = Vec::with_capacity(vars.len());
    for v in vars {
        let d = f.degree_in(v).or_zero() as usize;
        match at.iter().find(|(name, _)| name == v) {
            Some((_, z)) => tables.push(powers(z, d, prec)),
            None if d == 0 => tables.push(vec![ComplexBall::from_i64(1)]),
            None => return Err(PolyError::Unassigned(v.clone())),
        }
    }
    let mut acc = ComplexBall::from_i64(0);
    for (m, c) in f.terms() {
        let mut t = ComplexBall::from_bigint(c);
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = t.mul(&tables[i][e as usize], prec);
            }
        }
        acc = acc.add(&t, prec);
    }
    Ok(acc)
}

/// Coefficients (low to high in `free`) of `f` after assigning the other
/// variables.
pub fn specialize(f: &MPoly, free: &str, at: &[(&str, &ComplexBall)], prec: u32) -> Result<Vec<ComplexBall>, PolyError> {
    f.coeffs_in(free).iter().map(|c| eval_ball(c, at, prec)).collect()
}

/// Midpoint-only evaluation.
pub fn eval_complex(f: &MPoly, at: &[(&str, &Complex)], prec: u32) -> Result<Complex, PolyError> {
    let balls: Vec<(&str, ComplexBall)> = at.iter().map(|(v, z)| (*v, ComplexBall::exact((*z).clone()))).collect();
    let refs: Vec<(&str, &ComplexBall)> = balls.iter().map(|(v, b)| (*v, b)).collect();
    Ok(eval_ball(f, &refs, prec)?.mid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcert::Float;

    #[test]
    fn f3_at_a_point() {
        let f = MPoly::from_terms(vec![
            (2, vec![("x", 3), ("delta", 2)]),
            (1, vec![("x", 4), ("delta", 1)]),
            (-1, vec![("delta", 1)]),
            (-2, vec![("x", 1)]),
        ]);
        let x = ComplexBall::from_i64(2);
        let d = ComplexBall::from_i64(-3);
        // 2*8*9 + 16*(-3) + 3 - 4 = 95
        let v = eval_ball(&f, &[("x", &x), ("delta", &d)], 64).unwrap();
        assert_eq!(v.mid, Complex::from_i64(95));
        assert!(v.rad.is_zero());
        assert!(eval_ball(&f, &[("x", &x)], 64).is_err());
        let c = specialize(&f, "delta", &[("x", &x)], 64).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[2].mid, Complex::from_i64(16));
        let z = eval_complex(&f, &[("x", &Complex::i()), ("delta", &Complex::one())], 64).unwrap();
        // 2 i^3 + (i^4 - 1) - 2i = -4i
        assert_eq!(z, Complex::new(Float::zero(), Float::from_i64(-4)));
    }
}
