use super::CurveError;
use crate::numcert::{roots_balls, Complex, ComplexBall, Float};

/// `Y^2 = X^3 + a2 X^2 + a4 X + a6` over the complex numbers at a fixed
/// working precision.
#[derive(Clone, Debug)]
pub struct NumericCurve {
    pub a2: Complex,
    pub a4: Complex,
    pub a6: Complex,
    pub prec: u32,
}

/// Affine point or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumPoint {
    Infinity,
    Affine(Complex, Complex),
}

type Dense = Vec<Complex>;

fn dmul(a: &Dense, b: &Dense, prec: u32) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out.iter().map(|c| c.round_rel(prec)).collect()
}

fn dsub(a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    let z = Complex::zero();
    (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect()
}

fn dtrim(mut a: Dense) -> Dense {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

impl NumericCurve {
    pub fn new(a2: Complex, a4: Complex, a6: Complex, prec: u32) -> NumericCurve {
        NumericCurve { a2, a4, a6, prec }
    }

    pub fn from_i64(a2: i64, a4: i64, a6: i64, prec: u32) -> NumericCurve {
        NumericCurve::new(Complex::from_i64(a2), Complex::from_i64(a4), Complex::from_i64(a6), prec)
    }

    /// `X^3 + a2 X^2 + a4 X + a6`, low to high.
    pub fn cubic(&self) -> Dense {
        vec![self.a6.clone(), self.a4.clone(), self.a2.clone(), Complex::one()]
    }

    pub fn discriminant(&self) -> Complex {
        // Discriminant of the cubic times 16.
        let p = self.prec;
        let (a, b, c) = (&self.a2, &self.a4, &self.a6);
        let m = |x: &Complex, y: &Complex| (x * y).round_rel(p);
        let a2 = m(a, a);
        let t1 = m(&a2, &m(b, b));
        let t2 = m(&m(b, b), b).scale(&Float::from_i64(4));
        let t3 = m(&m(&a2, a), c).scale(&Float::from_i64(4));
        let t4 = m(c, c).scale(&Float::from_i64(27));
        let t5 = m(&m(a, b), c).scale(&Float::from_i64(18));
        (&(&(&(&t1 - &t2) - &t3) - &t4) + &t5).scale(&Float::from_i64(16))
    }

    pub fn on_curve_residual(&self, p: &NumPoint) -> Float {
        match p {
            NumPoint::Infinity => Float::zero(),
            NumPoint::Affine(x, y) => {
                let r = Complex::horner(&self.cubic(), x, self.prec);
                (&(y * y) - &r).abs_l1()
            }
        }
    }

    fn close(&self, a: &Complex, b: &Complex) -> bool {
        let tol = Float::pow2(-(self.prec as i64) / 2);
        let scale = &Float::one() + &a.abs_l1().max(b.abs_l1());
        (a - b).abs_l1() < &tol * &scale
    }

    pub fn add(&self, p: &NumPoint, q: &NumPoint) -> NumPoint {
        let (NumPoint::Affine(x1, y1), NumPoint::Affine(x2, y2)) = (p, q) else {
            return if *p == NumPoint::Infinity { q.clone() } else { p.clone() };
        };
        let pr = self.prec;
        let slope = if self.close(x1, x2) {
            if self.close(y1, &-y2) {
                return NumPoint::Infinity;
            }
            // Tangent: (3 x^2 + 2 a2 x + a4) / (2 y)
            let x1s = (x1 * x1).round_rel(pr);
            let num = &(&x1s.scale(&Float::from_i64(3)) + &(&self.a2 * x1).mul_pow2(1)) + &self.a4;
            num.div(&y1.mul_pow2(1), pr)
        } else {
            (y2 - y1).div(&(x2 - x1), pr)
        };
        let l2 = (&slope * &slope).round_rel(pr);
        let x3 = (&(&(&l2 - &self.a2) - x1) - x2).round_rel(pr);
        let y3 = (&(&slope * &(x1 - &x3)) - y1).round_rel(pr);
        NumPoint::Affine(x3, y3)
    }

    pub fn neg(&self, p: &NumPoint) -> NumPoint {
        match p {
            NumPoint::Infinity => NumPoint::Infinity,
            NumPoint::Affine(x, y) => NumPoint::Affine(x.clone(), -y),
        }
    }

    /// `[k] P` by repeated addition (`k` is small in every use here).
    pub fn mul(&self, k: u32, p: &NumPoint) -> NumPoint {
        let mut acc = NumPoint::Infinity;
        for _ in 0..k {
            acc = self.add(&acc, p);
        }
        acc
    }

    /// A point with the given `X`, choosing the principal square root.
    pub fn lift(&self, x: &Complex) -> NumPoint {
        let r = Complex::horner(&self.cubic(), x, self.prec + 16);
        NumPoint::Affine(x.clone(), r.sqrt(self.prec))
    }
}

/// `f_n` of [`super::DivisionPolySet`] evaluated coefficient-wise for a
/// numeric curve, low to high. Computed independently of the symbolic path.
pub fn numeric_division_poly(curve: &NumericCurve, n: u32) -> Result<Vec<Complex>, CurveError> {
    if n == 0 {
        return Err(CurveError::ZeroIndex);
    }
    let p = curve.prec + 64;
    let c = |k: i64| Complex::from_i64(k);
    let (a2, a4, a6) = (&curve.a2, &curve.a4, &curve.a6);
    let sc = |z: &Complex, k: i64| z.scale(&Float::from_i64(k));
    let b2 = sc(a2, 4);
    let b4 = sc(a4, 2);
    let b6 = sc(a6, 4);
    let b8 = &sc(&(a2 * a6), 4) - &(a4 * a4);
    let r: Dense = curve.cubic().iter().map(|z| sc(z, 4)).collect();
    let r2 = dmul(&r, &r, p);
    let mut f: Vec<Dense> = vec![vec![], vec![c(1)], vec![c(1)]];
    f.push(vec![b8.clone(), sc(&b6, 3), sc(&b4, 3), b2.clone(), c(3)]);
    f.push(vec![
        &(&b4 * &b8) - &(&b6 * &b6),
        &(&b2 * &b8) - &(&b4 * &b6),
        sc(&b8, 10),
        sc(&b6, 10),
        sc(&b4, 5),
        b2.clone(),
        c(2),
    ]);
    for k in 5..=n as usize {
        let m = k / 2;
        let val = if k % 2 == 0 {
            let a = dmul(&f[m + 2], &dmul(&f[m - 1], &f[m - 1], p), p);
            let b = dmul(&f[m - 2], &dmul(&f[m + 1], &f[m + 1], p), p);
            dmul(&f[m], &dsub(&a, &b), p)
        } else {
            let cube = |g: &Dense| dmul(g, &dmul(g, g, p), p);
            let a = dmul(&f[m + 2], &cube(&f[m]), p);
            let b = dmul(&f[m - 1], &cube(&f[m + 1]), p);
            if m % 2 == 0 {
                dsub(&dmul(&r2, &a, p), &b)
            } else {
                dsub(&a, &dmul(&r2, &b, p))
            }
        };
        f.push(dtrim(val));
    }
    Ok(f.swap_remove(n as usize))
}

/// `X`-coordinates of the nonzero `n`-torsion points, each confirmed by the
/// group law: `[n-1] P = -P` within `2^(-prec/2)`.
///
/// For even `n` the three 2-torsion abscissas are included.
pub fn numeric_torsion_oracle(curve: &NumericCurve, n: u32, prec: u32) -> Result<Vec<ComplexBall>, CurveError> {
    if n == 0 || n > 20 {
        return Err(CurveError::OracleRange(n));
    }
    let curve = NumericCurve { prec, ..curve.clone() };
    let tol = Float::pow2(-(prec as i64) / 2);
    if curve.discriminant().abs_l1() < tol {
        return Err(CurveError::Singular);
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let to_balls = |d: &Dense| -> Vec<ComplexBall> { d.iter().map(|z| ComplexBall::exact(z.clone())).collect() };
    let mut xs = Vec::new();
    if n % 2 == 0 {
        xs.extend(roots_balls(&to_balls(&curve.cubic()), prec)?);
    }
    let f = numeric_division_poly(&curve, n)?;
    if f.len() > 1 {
        xs.extend(roots_balls(&to_balls(&f), prec)?);
    }
    for (index, x) in xs.iter().enumerate() {
        let p = curve.lift(&x.mid);
        let q = curve.mul(n - 1, &p);
        let ok = match (&q, curve.neg(&p)) {
            (NumPoint::Affine(x1, y1), NumPoint::Affine(x2, y2)) => curve.close(x1, &x2) && curve.close(y1, &y2),
            _ => false,
        };
        if !ok {
            return Err(CurveError::OracleMismatch { index, detail: format!("[{}]P != -P", n - 1) });
        }
    }
    Ok(xs)
}
