//! Complete factorization over the rationals.
//!
//! Squarefree decomposition, then per squarefree part: distinct-degree and
//! equal-degree factorization modulo a small prime, linear Hensel lifting,
//! and recombination of lifted factors by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rational::{self, from_z, to_primitive, zdiv_exact, zmul, zprimitive, ztrim, QPoly, ZPoly};
use super::Poly;
use crate::scalar::Rationals;

/// Number of admissible primes examined when choosing the modulus.
const PRIME_TRIALS: usize = 5;
const FIRST_PRIME: u64 = 1009;

/// `p = c * prod f_i^{e_i}` with monic irreducible `f_i`, sorted by degree
/// and then coefficients.
pub fn factor(p: &QPoly) -> (BigRational, Vec<(QPoly, usize)>) {
    if p.is_zero() {
        return (BigRational::zero(), Vec::new());
    }
    let lc = p.lc();
    let mut out = Vec::new();
    for (sq, e) in rational::squarefree_decomposition(p) {
        for f in factor_squarefree(&sq) {
            out.push((f, e));
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    (lc, out)
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn factor_squarefree(p: &QPoly) -> Vec<QPoly> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let (_, z) = to_primitive(p);
    let mut out: Vec<QPoly> = factor_primitive_squarefree(&z).iter().map(|f| from_z(f).monic()).collect();
    out.sort_by(canonical_cmp);
    out
}

pub fn is_irreducible(p: &QPoly) -> bool {
    p.deg() >= 1 && p.is_squarefree() && factor_squarefree(p).len() == 1
}

/// Distinct rational roots.
pub fn rational_roots(p: &QPoly) -> Vec<BigRational> {
    let mut roots: Vec<BigRational> = factor(p)
        .1
        .into_iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, _)| -f.coeff(0))
        .collect();
    roots.sort();
    roots
}

pub(crate) fn canonical_cmp(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..=a.deg()).rev() {
            let c = a.coeff(i).cmp(&b.coeff(i));
            if c.is_ne() {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Irreducible primitive factors of a primitive squarefree integer polynomial.
fn factor_primitive_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let f = zprimitive(f);
    let mut out = Vec::new();
    let mut f = f;
    if f.len() >= 2 && f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f = ztrim(f[1..].to_vec());
    }
    if f.len() <= 2 {
        if f.len() == 2 {
            out.push(f);
        }
        return out;
    }
    let Some((p, modular)) = choose_prime(&f) else {
        unreachable!("a squarefree polynomial stays squarefree modulo almost all primes")
    };
    if modular.len() == 1 {
        out.push(f);
        return out;
    }
    let bound = coefficient_bound(&f);
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let lifted = multilift(&f, &modular, p, k);
    out.extend(recombine(f, lifted, &pk));
    out
}

/// `2 * |lc| * 2^n * ||f||_2`, a bound on coefficients of scaled factors.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    BigInt::from(2) * f.last().unwrap().abs() * (BigInt::one() << n) * norm
}

fn choose_prime(f: &[BigInt]) -> Option<(u64, Vec<Vec<u64>>)> {
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    let mut p = FIRST_PRIME;
    let lc = f.last().unwrap();
    while tried < PRIME_TRIALS && p < 1 << 31 {
        if is_prime(p) && !(lc % p).is_zero() {
            let fp = Zp::new(p);
            let g = fp.reduce(f);
            if fp.is_squarefree(&g) {
                tried += 1;
                let count: usize = fp.ddf(&fp.monic(&g)).iter().map(|(g, d)| (g.len() - 1) / d).sum();
                if best.as_ref().is_none_or(|(_, b)| count < b.len()) {
                    let factors = fp.factor_squarefree(&fp.monic(&g));
                    best = Some((p, factors));
                    if count == 1 {
                        break;
                    }
                }
            }
        }
        p += 2;
    }
    best
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_nonneg(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn to_big(v: &[u64]) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `f = lc(f) * prod g_i (mod p)` to modulus `p^k`; returns monic lifts.
fn multilift(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<ZPoly> {
    let fp = Zp::new(p);
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let mut out = Vec::with_capacity(factors.len());
    let mut target: ZPoly = f.to_vec();
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            let lc = target.last().unwrap().clone();
            let inv = mod_inverse(&lc, &pk);
            out.push(ztrim(target.iter().map(|c| mod_nonneg(&(c * &inv), &pk)).collect()));
            break;
        }
        let g = &factors[i];
        let lc = fp.reduce(&[target.last().unwrap().clone()])[0];
        let mut h = vec![lc];
        for other in &factors[i + 1..] {
            h = fp.mul(&h, other);
        }
        let (gl, hl) = hensel_pair(&target, g, &h, p, k);
        out.push(gl);
        target = hl;
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible modulo p^k");
    e.x.mod_floor(m)
}

/// Linear Hensel lifting of `f = g * h (mod p)` with `g` monic to `p^k`.
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let fp = Zp::new(p);
    let (one, s, t) = fp.ext_gcd(g, h);
    assert!(one == vec![1], "modular factors must be coprime");
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let mut gl = to_big(g);
    let mut hl = to_big(h);
    // keep the true leading coefficient so deg and lc never change
    *hl.last_mut().unwrap() = f.last().unwrap().clone();
    let mut pj = BigInt::from(p);
    for _ in 1..k {
        let prod = zmul(&gl, &hl);
        let n = f.len().max(prod.len());
        let diff: ZPoly = (0..n)
            .map(|i| f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default())
            .collect();
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let ep = fp.reduce(&e);
        let (q, r) = fp.divrem(&fp.mul(&t, &ep), g);
        let dh = fp.add(&fp.mul(&s, &ep), &fp.mul(&q, h));
        for (i, c) in r.iter().enumerate() {
            gl[i] += &pj * c;
        }
        for (i, c) in dh.iter().enumerate() {
            if i >= hl.len() {
                hl.push(BigInt::zero());
            }
            hl[i] += &pj * c;
        }
        pj *= p;
    }
    let gl = ztrim(gl.iter().map(|c| mod_nonneg(c, &pk)).collect());
    let hl = ztrim(hl.iter().map(|c| mod_nonneg(c, &pk)).collect());
    (gl, hl)
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, pk: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        let mut combo: Vec<usize> = (0..s).collect();
        loop {
            if let Some(g) = try_subset(&f, &lifted, &combo, pk) {
                found = Some((combo.clone(), g));
                break;
            }
            if !next_combination(&mut combo, lifted.len()) {
                break;
            }
        }
        match found {
            Some((combo, g)) => {
                f = zdiv_exact(&f, &g).expect("trial division succeeded");
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                }
                out.push(g);
            }
            None => s += 1,
        }
    }
    if f.len() > 1 {
        out.push(zprimitive(&f));
    }
    out
}

fn try_subset(f: &[BigInt], lifted: &[ZPoly], combo: &[usize], pk: &BigInt) -> Option<ZPoly> {
    let lc = f.last().unwrap();
    // constant-term filter before the full product
    let mut c0 = lc.clone();
    for &i in combo {
        c0 = symmetric(&(c0 * &lifted[i][0]), pk);
    }
    if !c0.is_zero() && !(lc * &f[0]).is_multiple_of(&c0) {
        return None;
    }
    let mut g = vec![lc.clone()];
    for &i in combo {
        g = zmul(&g, &lifted[i]).iter().map(|c| symmetric(c, pk)).collect();
    }
    let g = zprimitive(&ztrim(g));
    zdiv_exact(f, &g).map(|_| g)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Arithmetic in `F_p[x]`, `p < 2^31`, polynomials low-to-high.
struct Zp {
    p: u64,
}

impl Zp {
    fn new(p: u64) -> Self {
        Zp { p }
    }

    fn trim(&self, mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn reduce(&self, f: &[BigInt]) -> Vec<u64> {
        let p = BigInt::from(self.p);
        self.trim(f.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect())
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(v)
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(v)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    fn monic(&self, a: &[u64]) -> Vec<u64> {
        let inv = self.inv(*a.last().unwrap());
        a.iter().map(|&c| c * inv % self.p).collect()
    }

    fn divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db] * inv % self.p;
            if c != 0 {
                for (j, &bc) in b.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - c * bc % self.p) % self.p;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    fn rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.divrem(a, b).1
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a)
        }
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().unwrap());
        let sc = |v: &[u64]| self.trim(v.iter().map(|&c| c * inv % self.p).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    }

    fn derivative(&self, a: &[u64]) -> Vec<u64> {
        let v = a.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % self.p) % self.p).collect();
        self.trim(v)
    }

    fn is_squarefree(&self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.gcd(a, &d).len() == 1
    }

    fn powmod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> Vec<u64> {
        let mut acc = vec![1u64];
        let base = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn ddf(&self, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let pbig = BigUint::from(self.p);
        let mut i = 0;
        while f.len() > 2 * (i + 1) {
            i += 1;
            h = self.powmod(&h, &pbig, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((f, d));
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
    fn edf(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        let e = (num_traits::pow(BigUint::from(self.p), d) - 1u32) / 2u32;
        loop {
            let a: Vec<u64> = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() <= 1 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, f), &[1]);
            let g = self.gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let other = self.monic(&self.divrem(f, &g).0);
                self.edf(&g, d, rng, out);
                self.edf(&other, d, rng, out);
                return;
            }
        }
    }

    fn factor_squarefree(&self, f: &[u64]) -> Vec<Vec<u64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            self.edf(&g, d, &mut rng, &mut out);
        }
        out.sort();
        out
    }
}

/// Convenience for tests and callers holding integer coefficient lists.
pub fn qpoly(cs: &[i64]) -> QPoly {
    Poly::from_i64s(Rationals, cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn product(fs: &[(QPoly, usize)]) -> QPoly {
        fs.iter().fold(qpoly(&[1]), |acc, (f, e)| acc.mul(&f.pow(*e as u32)))
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // minimal polynomial of sqrt2 + sqrt3 + sqrt5: splits into many factors mod every prime
        let f = qpoly(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert!(is_irreducible(&f));
    }

    #[test]
    fn cyclotomic_products_split_correctly() {
        // x^12 - 1 = product of cyclotomic polynomials for divisors of 12
        let f = qpoly(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let (c, fs) = factor(&f);
        assert_eq!(c, rat(1, 1));
        assert_eq!(fs.len(), 6);
        assert_eq!(product(&fs), f);
        assert!(fs.iter().all(|(g, _)| is_irreducible(g)));
    }

    #[test]
    fn non_monic_with_multiplicities() {
        // 6 (x - 1/2)^2 (3x + 1) (x^2 + x + 1)
        let a = Poly::from_rationals(Rationals, &[rat(-1, 2), rat(1, 1)]);
        let f = a.pow(2).mul(&qpoly(&[1, 3])).mul(&qpoly(&[1, 1, 1])).scale(&rat(6, 1));
        let (c, fs) = factor(&f);
        assert_eq!(product(&fs).scale(&c), f);
        assert_eq!(fs.iter().map(|(g, e)| (g.deg(), *e)).collect::<Vec<_>>(), vec![(1, 2), (1, 1), (2, 1)]);
        assert_eq!(rational_roots(&f), vec![rat(-1, 3), rat(1, 2)]);
    }

    #[test]
    fn reducible_quartic_with_large_coefficients() {
        let g = qpoly(&[1234567, -89, 1]);
        let h = qpoly(&[-98765, 4321, 17]);
        let (_, fs) = factor(&g.mul(&h));
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, g);
        assert_eq!(fs[1].0, h.monic());
    }

    #[test]
    fn x_factor_and_linear() {
        let (_, fs) = factor(&qpoly(&[0, 0, 0, -8, 1]));
        assert_eq!(fs, vec![(qpoly(&[-8, 1]), 1), (qpoly(&[0, 1]), 3)]);
    }
}
