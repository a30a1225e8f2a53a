use std::collections::HashMap;

use num_bigint::BigInt;

use super::{CurveError, WeierstrassCurve};
use crate::bigpoly::MPoly;

/// Division polynomials of a curve `Y^2 = X^3 + a2 X^2 + a4 X + a6`,
/// memoized by index.
///
/// Entry `n` holds `f_n = psi_n` for odd `n` and `f_n = psi_n / (2Y)` for
/// even `n`, so every entry is a polynomial in `X` alone. With
/// `R = (2Y)^2 = 4(X^3 + a2 X^2 + a4 X + a6)`:
///
/// * `f_{2m} = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)`
/// * `f_{2m+1} = R^2 f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3` for even `m`
/// * `f_{2m+1} = f_{m+2} f_m^3 - R^2 f_{m-1} f_{m+1}^3` for odd `m`
#[derive(Clone, Debug)]
pub struct DivisionPolySet {
    curve: WeierstrassCurve,
    r2: MPoly,
    memo: HashMap<u32, MPoly>,
}

impl DivisionPolySet {
    pub fn new(curve: &WeierstrassCurve) -> DivisionPolySet {
        let x = MPoly::var("X");
        let [b2, b4, b6, b8] = curve.b_invariants();
        let c = |k: i64| BigInt::from(k);
        let mut memo = HashMap::new();
        let vars = x.vars().union(curve.a2.vars()).union(curve.a4.vars()).union(curve.a6.vars());
        memo.insert(0, MPoly::zero(vars.clone()));
        memo.insert(1, MPoly::one(vars.clone()));
        memo.insert(2, MPoly::one(vars.clone()));
        let xp = |k: u32| x.pow(k);
        let f3 = &(&(&(&xp(4).scale(&c(3)) + &(&b2 * &xp(3))) + &(&b4 * &xp(2)).scale(&c(3))) + &(&b6 * &x).scale(&c(3))) + &b8;
        let f4 = [
            xp(6).scale(&c(2)),
            &b2 * &xp(5),
            (&b4 * &xp(4)).scale(&c(5)),
            (&b6 * &xp(3)).scale(&c(10)),
            (&b8 * &xp(2)).scale(&c(10)),
            &(&(&b2 * &b8) - &(&b4 * &b6)) * &x,
            &(&b4 * &b8) - &(&b6 * &b6),
        ];
        memo.insert(3, f3.with_vars(&vars));
        memo.insert(4, f4.iter().fold(MPoly::zero(vars.clone()), |acc, t| &acc + t));
        let r = curve.two_y_squared();
        let r2 = (&r * &r).with_vars(&vars);
        DivisionPolySet { curve: curve.clone(), r2, memo }
    }

    pub fn curve(&self) -> &WeierstrassCurve {
        &self.curve
    }

    /// `f_n` as described on the type.
    pub fn get(&mut self, n: u32) -> &MPoly {
        self.ensure(n);
        &self.memo[&n]
    }

    fn ensure(&mut self, n: u32) {
        if self.memo.contains_key(&n) {
            return;
        }
        let m = n / 2;
        let needed: Vec<u32> = if n % 2 == 0 { vec![m - 2, m - 1, m, m + 1, m + 2] } else { vec![m - 1, m, m + 1, m + 2] };
        for k in needed {
            self.ensure(k);
        }
        let f = |k: u32| &self.memo[&k];
        let value = if n % 2 == 0 {
            let a = f(m + 2) * &f(m - 1).pow(2);
            let b = f(m - 2) * &f(m + 1).pow(2);
            f(m) * &(&a - &b)
        } else {
            let a = f(m + 2) * &f(m).pow(3);
            let b = f(m - 1) * &f(m + 1).pow(3);
            if m % 2 == 0 {
                &(&self.r2 * &a) - &b
            } else {
                &a - &(&self.r2 * &b)
            }
        };
        self.memo.insert(n, value);
    }
}

/// `f_n` for the curve; see [`DivisionPolySet`] for the even-index convention.
pub fn division_poly(curve: &WeierstrassCurve, n: u32) -> Result<MPoly, CurveError> {
    if n == 0 {
        return Err(CurveError::ZeroIndex);
    }
    Ok(DivisionPolySet::new(curve).get(n).clone())
}
