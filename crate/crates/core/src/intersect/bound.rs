use super::{IntersectError, ResultantProfile};
use crate::numcert::{roots_balls, sort_roots, ComplexBall, Float};

/// Outcome of the pigeonhole count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionBound {
    pub u_count: usize,
    pub v_count: usize,
    /// Some `u` carries at least this many common `v`.
    pub multiplicity: usize,
    /// 6 order-4 images, 4 from the orbit of `u`, 4 per common `v`.
    pub cardinality: usize,
}

/// Number of distinct nontrivial roots on each side: the summed degrees of
/// the squarefree parts, multiplicities ignored.
pub fn coordinate_counts(u_side: &ResultantProfile, v_side: &ResultantProfile) -> (usize, usize) {
    let count = |p: &ResultantProfile| p.parts.iter().map(|q| q.degree()).sum();
    (count(u_side), count(v_side))
}

pub fn pigeonhole_bound(u_count: usize, v_count: usize) -> Result<IntersectionBound, IntersectError> {
    if u_count == 0 || v_count == 0 {
        return Err(IntersectError::Precondition("coordinate counts must be positive".into()));
    }
    let multiplicity = v_count.div_ceil(u_count);
    Ok(IntersectionBound { u_count, v_count, multiplicity, cardinality: 6 + 4 + 4 * multiplicity })
}

/// The two roots `delta` of `2u^3 delta^2 + (u^4 - 1) delta - 2u`, sorted.
/// Rejects `u^4 = 0`, `u^4 = 1` and `u^8 + 14u^4 + 1 = 0` (a double root)
/// when the ball for the offending quantity contains 0.
pub fn delta_pair_from_u(u: &ComplexBall, prec: u32) -> Result<(ComplexBall, ComplexBall), IntersectError> {
    let u2 = u.mul(u, prec);
    let u3 = u2.mul(u, prec);
    let u4 = u2.mul(&u2, prec);
    let u4m1 = u4.sub(&ComplexBall::from_i64(1), prec);
    let disc = u4.mul(&u4, prec).add(&u4.mul(&ComplexBall::from_i64(14), prec), prec).add(&ComplexBall::from_i64(1), prec);
    let zero = Float::zero();
    if u4.abs_lower() == zero {
        return Err(IntersectError::Precondition("u^4 = 0".into()));
    }
    if u4m1.abs_lower() == zero {
        return Err(IntersectError::Precondition("u^4 = 1".into()));
    }
    if disc.abs_lower() == zero {
        return Err(IntersectError::Precondition("u^8 + 14u^4 + 1 = 0".into()));
    }
    let two = ComplexBall::from_i64(2);
    let coeffs = [u.mul(&two, prec).neg(), u4m1, u3.mul(&two, prec)];
    let mut r = roots_balls(&coeffs, prec)?;
    sort_roots(&mut r);
    let d2 = r.pop().expect("quadratic");
    let d1 = r.pop().expect("quadratic");
    Ok((d1, d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcert::Complex;

    #[test]
    fn pigeonhole() {
        let b = pigeonhole_bound(120, 264).unwrap();
        assert_eq!((b.multiplicity, b.cardinality), (3, 22));
        assert_eq!(pigeonhole_bound(7, 7).unwrap().cardinality, 14);
        assert_eq!(pigeonhole_bound(1, 5).unwrap().cardinality, 30);
        assert!(pigeonhole_bound(0, 5).is_err());
    }

    #[test]
    fn delta_pair_vieta() {
        let prec = 256;
        let u = ComplexBall::exact(Complex::from_f64(0.7, 0.3));
        let (d1, d2) = delta_pair_from_u(&u, prec).unwrap();
        // d1 d2 u^2 = -1
        let prod = d1.mul(&d2, prec).mul(&u.mul(&u, prec), prec);
        assert!(prod.contains(&Complex::from_i64(-1)) || (&prod.mid + &Complex::one()).abs_l1() < Float::pow2(-200));
        assert!(delta_pair_from_u(&ComplexBall::from_i64(1), prec).is_err());
        assert!(delta_pair_from_u(&ComplexBall::from_i64(0), prec).is_err());
    }
}
