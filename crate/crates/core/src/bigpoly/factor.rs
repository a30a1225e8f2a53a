//! Factorization over the integers (Zassenhaus): distinct- and equal-degree
//! splitting modulo a small prime, Hensel lifting along a factor tree, and
//! subset recombination filtered by the degree patterns of several primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::UPoly;
use super::modp::{self, is_prime_u64, Field, ZpPoly};
use super::squarefree::squarefree_upoly;
use super::PolyError;

/// Number of good primes whose degree patterns are intersected.
const PATTERN_PRIMES: usize = 5;

/// Irreducible factors of `f` over `Q`, primitive with positive leading
/// coefficient, each with its multiplicity. Sorted by degree, then by
/// coefficients. The integer content of `f` is dropped.
pub fn factor_upoly(f: &UPoly) -> Result<Vec<(UPoly, u32)>, PolyError> {
    let sq = squarefree_upoly(f)?;
    let mut out = Vec::new();
    for (g, m) in &sq.factors {
        for h in factor_squarefree(g) {
            out.push((h, *m));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    Ok(out)
}

/// Factors a primitive squarefree polynomial of positive degree.
pub fn factor_squarefree(f: &UPoly) -> Vec<UPoly> {
    let mut f = f.primitive_part();
    let mut out = Vec::new();
    if f.trailing_zeros() > 0 {
        out.push(UPoly::monomial(1));
        f = f.shift_down(f.trailing_zeros());
    }
    match f.degree() {
        None | Some(0) => return out,
        Some(1) => {
            out.push(f);
            return out;
        }
        Some(n) if n >= 4 && is_palindromic(&f) => {
            out.extend(factor_palindromic(&f));
            return out;
        }
        _ => {}
    }
    out.extend(zassenhaus(&f));
    out
}

fn is_palindromic(f: &UPoly) -> bool {
    f.coeffs().iter().eq(f.coeffs().iter().rev())
}

/// Factors a squarefree palindromic `f` through `f(w) = w^m g(w + 1/w)`.
/// Modulo a prime the factors of `f` pair up with their reciprocals, so the
/// subset search on `f` itself is exponential; on `g` it is not. For each
/// irreducible `h | g` with root `t`, `w^d h(w + 1/w)` splits only when
/// `t^2 - 4` is a square in `Q(t)`, which needs `h(2) h(-2)` to be a square.
fn factor_palindromic(f: &UPoly) -> Vec<UPoly> {
    let mut out = Vec::new();
    let mut f = f.clone();
    if f.degree().unwrap() % 2 == 1 {
        f = f.div_linear(&-BigInt::one()).expect("odd palindromic vanishes at -1");
        out.push(UPoly::from_i64(&[1, 1]));
    }
    for h in factor_squarefree(&fold_reciprocal(&f)) {
        let big = unfold_reciprocal(&h);
        let norm = h.eval(&BigInt::from(2)) * h.eval(&BigInt::from(-2));
        let big = big.primitive_part();
        if !norm.is_negative() && norm.sqrt().pow(2) == norm && !self_reciprocal_mod_p(&h, &big) {
            out.extend(zassenhaus(&big));
        } else {
            out.push(big);
        }
    }
    out
}

/// Primes tried when looking for a self-reciprocal factor.
const RECIPROCAL_PRIMES: usize = 40;

/// Whether some good prime gives `big = w^d h(w + 1/w)` an irreducible factor
/// that is its own reciprocal. If `big = k k*` over `Q` then `k` holds one root
/// of each pair `{r, 1/r}`, so no such factor exists; finding one proves `big`
/// irreducible. Detected by counting: fewer than twice the factors of `h`.
fn self_reciprocal_mod_p(h: &UPoly, big: &UPoly) -> bool {
    let mut tried = 0;
    let mut p = 2u64;
    while tried < RECIPROCAL_PRIMES {
        p += 1;
        if !is_prime_u64(p) {
            continue;
        }
        let k = Field::new(p).unwrap();
        let (Some(nh), Some(nb)) = (modular_factor_count(h, &k), modular_factor_count(big, &k)) else {
            continue;
        };
        tried += 1;
        if nb < 2 * nh {
            return true;
        }
    }
    false
}

/// Number of irreducible factors modulo `p`, if `f` stays squarefree of the same degree.
fn modular_factor_count(f: &UPoly, k: &Field) -> Option<usize> {
    if (f.lc().unwrap() % k.modulus()).is_zero() {
        return None;
    }
    let mut fp = f.to_zp(k);
    modp::make_monic(k, &mut fp);
    if modp::gcd(k, &fp, &modp::derivative(k, &fp)).len() != 1 {
        return None;
    }
    Some(distinct_degree(k, &fp).iter().map(|(g, d)| (g.len() - 1) / d).sum())
}

/// `g` with `f(w) = w^m g(w + 1/w)` for palindromic `f` of degree `2m`.
fn fold_reciprocal(f: &UPoly) -> UPoly {
    let c = f.coeffs();
    let m = (c.len() - 1) / 2;
    // v[k] = w^k + w^-k as a polynomial in z = w + 1/w.
    let z = UPoly::monomial(1);
    let mut prev = UPoly::from_i64(&[2]);
    let mut cur = z.clone();
    let mut g = UPoly::new(vec![c[m].clone()]);
    for k in 1..=m {
        g = &g + &cur.scale(&c[m + k]);
        let next = &(&z * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    g
}

/// `w^d h(w + 1/w)` for `h` of degree `d`.
fn unfold_reciprocal(h: &UPoly) -> UPoly {
    let c = h.coeffs();
    let d = c.len() - 1;
    let quad = UPoly::from_i64(&[1, 0, 1]);
    let mut acc = UPoly::new(vec![c[d].clone()]);
    for i in 0..d {
        acc = &(&acc * &quad) + &UPoly::new(vec![c[d - 1 - i].clone()]).shift_up(i + 1);
    }
    acc
}

struct ModularPattern {
    field: Field,
    /// Monic `f mod p`.
    f: ZpPoly,
    /// `(product of the irreducible factors of degree d, d)`.
    ddf: Vec<(ZpPoly, usize)>,
    count: usize,
}

fn zassenhaus(f: &UPoly) -> Vec<UPoly> {
    let n = f.degree().unwrap();
    let lc = f.lc().unwrap().clone();
    let mut patterns: Vec<ModularPattern> = Vec::new();
    let mut p = 2u64;
    while patterns.len() < PATTERN_PRIMES {
        p += 1;
        if !is_prime_u64(p) || (&lc % p).is_zero() {
            continue;
        }
        let k = Field::new(p).unwrap();
        let mut fp = f.to_zp(&k);
        modp::make_monic(&k, &mut fp);
        if modp::gcd(&k, &fp, &modp::derivative(&k, &fp)).len() != 1 {
            continue;
        }
        let ddf = distinct_degree(&k, &fp);
        let count = ddf.iter().map(|(g, d)| (g.len() - 1) / d).sum();
        if count == 1 {
            return vec![f.clone()];
        }
        patterns.push(ModularPattern { field: k, f: fp, ddf, count });
    }
    // Degrees a true factor can have: subset sums allowed by every prime.
    let mut allowed = vec![true; n + 1];
    for pat in &patterns {
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for (g, d) in &pat.ddf {
            for _ in 0..(g.len() - 1) / d {
                for s in (*d..=n).rev() {
                    if sums[s - d] {
                        sums[s] = true;
                    }
                }
            }
        }
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
    }
    if (1..n).all(|d| !allowed[d]) {
        return vec![f.clone()];
    }
    let best = patterns.iter().min_by_key(|p| p.count).unwrap();
    let k = best.field;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let frob = FrobeniusMatrix::new(&k, &best.f);
    let mut modular: Vec<ZpPoly> = Vec::new();
    for (g, d) in &best.ddf {
        equal_degree(&k, &frob, g, *d, &mut rng, &mut modular);
    }
    // Lift to a bound covering any factor of degree at most n/2.
    let norm2 = f.coeffs().iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + 1u32;
    let bound: BigInt = (&lc.abs() * &norm2) << (n / 2 + 2);
    let pz = BigInt::from(k.modulus());
    let lifted = hensel_lift(f, &k, &modular, &pz, &bound);
    recombine(f, lifted.factors, &lifted.modulus, &allowed)
}

/// `x^(p i) mod f` for `i < deg f`, as rows.
struct FrobeniusMatrix {
    rows: Vec<ZpPoly>,
}

impl FrobeniusMatrix {
    fn new(k: &Field, f: &[u64]) -> FrobeniusMatrix {
        let n = f.len() - 1;
        let p = k.modulus() as usize;
        let xp = if p < 2 * n { shift_pow(k, f, p) } else { powmod(k, &[0, k.one()], k.modulus(), f) };
        let mut rows = Vec::with_capacity(n);
        let mut cur: ZpPoly = vec![k.one()];
        for _ in 0..n {
            rows.push(cur.clone());
            cur = mulmod(k, &cur, &xp, f);
        }
        FrobeniusMatrix { rows }
    }

    /// `h^p mod f` for `h` reduced mod `f`.
    fn apply(&self, k: &Field, h: &[u64]) -> ZpPoly {
        let n = self.rows.len();
        let mut acc = vec![0u128; n];
        let p = k.modulus() as u128;
        for (i, &c) in h.iter().enumerate() {
            if c == 0 {
                continue;
            }
            // Frobenius fixes the coefficients, so h^p = sum c_i x^(p i).
            let c = k.to_u64(c) as u128;
            for (a, &r) in acc.iter_mut().zip(&self.rows[i]) {
                *a += c * k.to_u64(r) as u128;
                if *a >= 1 << 120 {
                    *a %= p;
                }
            }
        }
        let mut out: ZpPoly = acc.into_iter().map(|a| k.from_u64((a % p) as u64)).collect();
        modp::trim(&mut out);
        out
    }
}

/// `x^e mod f` by repeated multiplication by `x`, for small `e`.
fn shift_pow(k: &Field, f: &[u64], e: usize) -> ZpPoly {
    let n = f.len() - 1;
    let mut cur = vec![0u64; n];
    cur[0] = k.one();
    for _ in 0..e {
        let top = cur[n - 1];
        for i in (1..n).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..n {
                cur[i] = k.sub(cur[i], k.mul(top, f[i]));
            }
        }
    }
    modp::trim(&mut cur);
    cur
}

fn mulmod(k: &Field, a: &[u64], b: &[u64], f: &[u64]) -> ZpPoly {
    let mut t = modp::mul(k, a, b);
    modp::divrem_in_place(k, &mut t, f);
    t
}

fn powmod(k: &Field, base: &[u64], mut e: u64, f: &[u64]) -> ZpPoly {
    let mut b = base.to_vec();
    modp::divrem_in_place(k, &mut b, f);
    let mut r: ZpPoly = vec![k.one()];
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(k, &r, &b, f);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(k, &b, &b, f);
        }
    }
    r
}

fn sub_poly(k: &Field, a: &[u64], b: &[u64]) -> ZpPoly {
    let n = a.len().max(b.len());
    let mut out: ZpPoly = (0..n).map(|i| k.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
    modp::trim(&mut out);
    out
}

fn distinct_degree(k: &Field, f: &[u64]) -> Vec<(ZpPoly, usize)> {
    let frob = FrobeniusMatrix::new(k, f);
    let x: ZpPoly = vec![0, k.one()];
    let mut rest = f.to_vec();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = frob.apply(k, &h);
        let g = modp::gcd(k, &rest, &sub_poly(k, &h, &x));
        if g.len() > 1 {
            let q = modp::divrem_in_place(k, &mut rest.clone(), &g);
            rest = q;
            out.push((g, d));
        }
    }
    if rest.len() > 1 {
        let d = rest.len() - 1;
        out.push((rest, d));
    }
    out
}

/// Splits `g`, a product of distinct monic irreducibles of degree `d`.
fn equal_degree(k: &Field, frob: &FrobeniusMatrix, g: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ZpPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let p = k.modulus();
    loop {
        let a: ZpPoly = {
            let mut a: ZpPoly = (0..n).map(|_| k.from_u64(rng.gen_range(0..p))).collect();
            modp::trim(&mut a);
            a
        };
        if a.len() < 2 {
            continue;
        }
        // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
        let mut y = a.clone();
        let mut norm = a.clone();
        for _ in 1..d {
            y = frob.apply(k, &y);
            modp::divrem_in_place(k, &mut y, g);
            norm = mulmod(k, &norm, &y, g);
        }
        let b = powmod(k, &norm, (p - 1) / 2, g);
        let h = modp::gcd(k, g, &sub_poly(k, &b, &[k.one()]));
        let dh = h.len() - 1;
        if dh > 0 && dh < n {
            let q = modp::divrem_in_place(k, &mut g.to_vec(), &h);
            equal_degree(k, frob, &h, d, rng, out);
            equal_degree(k, frob, &q, d, rng, out);
            return;
        }
    }
}

// ---- Hensel lifting over Z / p^k, coefficients kept in [0, m) ----

fn to_z(k: &Field, f: &[u64]) -> Vec<BigInt> {
    f.iter().map(|&c| BigInt::from(k.to_u64(c))).collect()
}

fn reduce(v: &mut Vec<BigInt>, m: &BigInt) {
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
    }
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = (&UPoly::new(a.to_vec()) * &UPoly::new(b.to_vec())).into_coeffs();
    reduce(&mut v, m);
    v
}

fn zadd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut v: Vec<BigInt> = (0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect();
    reduce(&mut v, m);
    v
}

fn zsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut v: Vec<BigInt> = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    reduce(&mut v, m);
    v
}

/// Division with remainder by a monic `h` modulo `m`.
fn zdivrem(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let dh = h.len() - 1;
    if a.len() <= dh {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dh];
    for i in (dh..a.len()).rev() {
        let c = r[i].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for j in 0..dh {
            if !h[j].is_zero() {
                r[i - dh + j] -= &c * &h[j];
            }
        }
        q[i - dh] = c;
    }
    r.truncate(dh);
    reduce(&mut r, m);
    reduce(&mut q, m);
    (q, r)
}

/// Extended gcd mod p for coprime `a`, `b`: `s a + t b = 1`.
fn xgcd(k: &Field, a: &[u64], b: &[u64]) -> (ZpPoly, ZpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (ZpPoly, ZpPoly) = (vec![k.one()], Vec::new());
    let (mut t0, mut t1): (ZpPoly, ZpPoly) = (Vec::new(), vec![k.one()]);
    while !r1.is_empty() {
        let mut r = r0.clone();
        let q = modp::divrem_in_place(k, &mut r, &r1);
        let s = sub_poly(k, &s0, &modp::mul(k, &q, &s1));
        let t = sub_poly(k, &t0, &modp::mul(k, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    // r0 is a nonzero constant.
    let inv = k.inv(r0[0]);
    let sc = |v: &mut ZpPoly| v.iter_mut().for_each(|c| *c = k.mul(*c, inv));
    sc(&mut s0);
    sc(&mut t0);
    (s0, t0)
}

struct Node {
    poly: Vec<BigInt>,
    children: Option<(usize, usize)>,
    /// `s * left + t * right = 1` modulo the current modulus.
    s: Vec<BigInt>,
    t: Vec<BigInt>,
    leaf: Option<usize>,
}

struct Lifted {
    factors: Vec<Vec<BigInt>>,
    modulus: BigInt,
}

fn build_tree(k: &Field, leaves: &[(ZpPoly, usize)], nodes: &mut Vec<Node>) -> (usize, ZpPoly) {
    if leaves.len() == 1 {
        let (g, i) = &leaves[0];
        nodes.push(Node { poly: to_z(k, g), children: None, s: Vec::new(), t: Vec::new(), leaf: Some(*i) });
        return (nodes.len() - 1, g.clone());
    }
    // Split into halves of similar total degree.
    let total: usize = leaves.iter().map(|(g, _)| g.len() - 1).sum();
    let mut acc = 0;
    let mut cut = 1;
    for (j, (g, _)) in leaves.iter().enumerate() {
        acc += g.len() - 1;
        if 2 * acc >= total {
            cut = (j + 1).clamp(1, leaves.len() - 1);
            break;
        }
    }
    let (li, lp) = build_tree(k, &leaves[..cut], nodes);
    let (ri, rp) = build_tree(k, &leaves[cut..], nodes);
    let (s, t) = xgcd(k, &lp, &rp);
    let prod = modp::mul(k, &lp, &rp);
    nodes.push(Node { poly: to_z(k, &prod), children: Some((li, ri)), s: to_z(k, &s), t: to_z(k, &t), leaf: None });
    (nodes.len() - 1, prod)
}

/// One quadratic Hensel step at an internal node, from modulus `m` to `m2`.
fn hensel_step(nodes: &mut [Node], idx: usize, m2: &BigInt) {
    let Some((li, ri)) = nodes[idx].children else {
        return;
    };
    let f = nodes[idx].poly.clone();
    let (g, h) = (nodes[li].poly.clone(), nodes[ri].poly.clone());
    let (s, t) = (nodes[idx].s.clone(), nodes[idx].t.clone());
    let e = zsub(&f, &zmul(&g, &h, m2), m2);
    let (q, r) = zdivrem(&zmul(&s, &e, m2), &h, m2);
    let g2 = zadd(&g, &zadd(&zmul(&t, &e, m2), &zmul(&q, &g, m2), m2), m2);
    let h2 = zadd(&h, &r, m2);
    let one = [BigInt::one()];
    let b = zsub(&zadd(&zmul(&s, &g2, m2), &zmul(&t, &h2, m2), m2), &one, m2);
    let (c, d) = zdivrem(&zmul(&s, &b, m2), &h2, m2);
    let s2 = zsub(&s, &d, m2);
    let t2 = zsub(&zsub(&t, &zmul(&t, &b, m2), m2), &zmul(&c, &g2, m2), m2);
    nodes[li].poly = g2;
    nodes[ri].poly = h2;
    nodes[idx].s = s2;
    nodes[idx].t = t2;
    hensel_step(nodes, li, m2);
    hensel_step(nodes, ri, m2);
}

/// Lifts `lc^-1 f = prod factors (mod p)` until the modulus exceeds `2 bound`.
fn hensel_lift(f: &UPoly, k: &Field, factors: &[ZpPoly], p: &BigInt, bound: &BigInt) -> Lifted {
    let mut nodes = Vec::new();
    let leaves: Vec<(ZpPoly, usize)> = factors.iter().cloned().zip(0..).collect();
    let (root, _) = build_tree(k, &leaves, &mut nodes);
    let lc = f.lc().unwrap();
    let mut m = p.clone();
    let target: BigInt = bound * 2;
    while m <= target {
        m = &m * &m;
        let inv = lc.modinv(&m).expect("lc is a unit mod p");
        let mut fm: Vec<BigInt> = f.coeffs().iter().map(|c| c * &inv).collect();
        reduce(&mut fm, &m);
        nodes[root].poly = fm;
        hensel_step(&mut nodes, root, &m);
    }
    let mut out = vec![Vec::new(); factors.len()];
    for node in nodes {
        if let Some(i) = node.leaf {
            out[i] = node.poly;
        }
    }
    Lifted { factors: out, modulus: m }
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let c = c.mod_floor(m);
    if &c > half {
        c - m
    } else {
        c
    }
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        if visit(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Low-order coefficients checked before a trial division.
const LOW_TERMS: usize = 4;

/// Whether `lc * prod factors`, read with symmetric residues mod `m`, divides
/// `lc f` as a power series to `low.len()` terms. Palindromic inputs make the
/// constant term alone a weak filter: a factor times its reciprocal has
/// constant term 1.
fn low_terms_divide<'a>(
    low: &[BigInt],
    lc: &BigInt,
    factors: impl Iterator<Item = &'a [BigInt]>,
    m: &BigInt,
    half: &BigInt,
) -> bool {
    let k = low.len();
    let mut g = vec![BigInt::zero(); k];
    g[0] = lc.clone();
    for h in factors {
        let mut next = vec![BigInt::zero(); k];
        for (i, gi) in g.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, hj) in h.iter().take(k - i).enumerate() {
                next[i + j] += gi * hj;
            }
        }
        g = next.iter().map(|c| c.mod_floor(m)).collect();
    }
    let g: Vec<BigInt> = g.iter().map(|c| symmetric(c, m, half)).collect();
    if g[0].is_zero() {
        return false;
    }
    let mut q: Vec<BigInt> = Vec::with_capacity(k);
    for i in 0..k {
        let mut r = low[i].clone();
        for j in 1..=i {
            r -= &g[j] * &q[i - j];
        }
        let (qi, rem) = r.div_rem(&g[0]);
        if !rem.is_zero() {
            return false;
        }
        q.push(qi);
    }
    true
}

fn recombine(f: &UPoly, mut lifted: Vec<Vec<BigInt>>, m: &BigInt, allowed: &[bool]) -> Vec<UPoly> {
    let half = m >> 1usize;
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let lc = f.lc().unwrap().clone();
        let low: Vec<BigInt> = f.coeffs().iter().take(LOW_TERMS).map(|c| &lc * c).collect();
        let n = f.degree().unwrap();
        let mut found: Option<(Vec<usize>, UPoly)> = None;
        let r = lifted.len();
        combinations(r, size, |idx| {
            // The coefficient bound covers degree n/2, so test whichever of
            // the subset and its complement is the smaller factor.
            let deg: usize = idx.iter().map(|&i| lifted[i].len() - 1).sum();
            let (pick, deg): (Vec<usize>, usize) = if 2 * deg <= n {
                (idx.to_vec(), deg)
            } else {
                ((0..r).filter(|i| !idx.contains(i)).collect(), n - deg)
            };
            if !allowed[deg] {
                return false;
            }
            if !low_terms_divide(&low, &lc, pick.iter().map(|&i| &lifted[i][..]), m, &half) {
                return false;
            }
            let mut g = vec![lc.clone()];
            for &i in &pick {
                g = zmul(&g, &lifted[i], m);
            }
            let g = UPoly::new(g.iter().map(|c| symmetric(c, m, &half)).collect()).primitive_part();
            if let Some(q) = f.div_exact(&g) {
                found = Some((pick, q));
                out.push(g);
                return true;
            }
            false
        });
        match found {
            Some((idx, q)) => {
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                f = q;
            }
            None => size += 1,
        }
    }
    out.push(f.primitive_part());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_i64(c)
    }

    fn degrees(f: &UPoly) -> Vec<(usize, u32)> {
        factor_upoly(f).unwrap().iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect()
    }

    #[test]
    fn small_products() {
        // (x^2 + 1)(x^3 - 2)(3x + 5)
        let f = &(&up(&[1, 0, 1]) * &up(&[-2, 0, 0, 1])) * &up(&[5, 3]);
        let fs = factor_upoly(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[0].0, up(&[5, 3]));
        let prod = fs.iter().fold(UPoly::one(), |a, (g, _)| &a * g);
        assert_eq!(prod, f);
        assert_eq!(degrees(&up(&[1, 0, 0, 0, 1])), vec![(4, 1)]);
        assert_eq!(degrees(&(&up(&[-1, 1]).pow(3) * &up(&[0, 1]))), vec![(1, 3), (1, 1)]);
        // Modulo 7 the quadratic splits and the quartic stays whole, so the
        // quadratic needs two of three modular factors.
        let f = &up(&[-5, 6, 5, 9, -5]) * &up(&[-7, 4, -1]);
        assert_eq!(degrees(&f), vec![(2, 1), (4, 1)]);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        assert_eq!(degrees(&up(&[1, 0, -10, 0, 1])), vec![(4, 1)]);
        // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
        assert_eq!(degrees(&up(&[-1, 0, 0, 0, 0, 0, 0, 0, 1])), vec![(1, 1), (1, 1), (2, 1), (4, 1)]);
    }

    #[test]
    fn palindromic_inputs() {
        // A factor times its reciprocal: (x^2 + 2x + 3)(3x^2 + 2x + 1).
        let f = up(&[3, 8, 14, 8, 3]);
        let fs = factor_upoly(&f).unwrap();
        assert_eq!(fs.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>(), vec![up(&[1, 2, 3]), up(&[3, 2, 1])]);
        // (x^2 + x + 1)(x^4 + 3x^3 - x^2 + 3x + 1)(x + 1): both even parts irreducible.
        let f = &(&up(&[1, 1, 1]) * &up(&[1, 3, -1, 3, 1])) * &up(&[1, 1]);
        assert_eq!(degrees(&f), vec![(1, 1), (2, 1), (4, 1)]);
        let g = fold_reciprocal(&up(&[1, 3, -1, 3, 1]));
        assert_eq!(g, up(&[-3, 3, 1]));
        assert_eq!(unfold_reciprocal(&g), up(&[1, 3, -1, 3, 1]));
    }

    #[test]
    fn cyclotomic_products() {
        // x^105 - 1 has 8 cyclotomic factors of degrees 1,2,4,6,8,12,24,48.
        let mut c = vec![0i64; 106];
        c[0] = -1;
        c[105] = 1;
        let d: Vec<usize> = degrees(&up(&c)).iter().map(|x| x.0).collect();
        assert_eq!(d, vec![1, 2, 4, 6, 8, 12, 24, 48]);
    }
}
