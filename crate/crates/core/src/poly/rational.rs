//! Integer-coefficient helpers for polynomials over the rationals:
//! contents, primitive parts, pseudo-division and the subresultant PRS.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::scalar::Rationals;

pub type QPoly = Poly<Rationals>;

/// Integer polynomial, low-to-high, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

pub fn ztrim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn zcontent(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides by the content and makes the leading coefficient positive.
pub fn zprimitive(p: &[BigInt]) -> ZPoly {
    let c = zcontent(p);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if p.last().is_some_and(|l| l.is_negative()) { -c } else { c };
    p.iter().map(|x| x / &c).collect()
}

/// Writes `p = c * q` with `q` a primitive integer polynomial with positive
/// leading coefficient.
pub fn to_primitive(p: &QPoly) -> (BigRational, ZPoly) {
    if p.is_zero() {
        return (BigRational::zero(), Vec::new());
    }
    let den = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: ZPoly = p.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
    let prim = zprimitive(&ints);
    let c = BigRational::new(ints.last().unwrap().clone(), den) / BigRational::from(prim.last().unwrap().clone());
    (c, prim)
}

pub fn from_z(p: &[BigInt]) -> QPoly {
    Poly::new(Rationals, p.iter().map(|c| BigRational::from(c.clone())).collect())
}

pub fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) a mod b`.
pub fn zprem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return r;
    }
    let lb = &b[db];
    let mut steps = r.len() - b.len() + 1;
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
        r = ztrim(r);
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb.clone(), steps);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Exact division of integer polynomials; `None` when not exact.
pub fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[k + j] -= &c * bc;
            }
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| ztrim(q))
}

/// Resultant of two integer polynomials by the subresultant PRS.
pub fn zresultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (mut a, mut b) = (ztrim(a.to_vec()), ztrim(b.to_vec()));
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = -s;
        }
    }
    if b.len() == 1 {
        return s * num_traits::pow(b[0].clone(), a.len() - 1);
    }
    let (ca, cb) = (zcontent(&a), zcontent(&b));
    let t = num_traits::pow(ca.clone(), b.len() - 1) * num_traits::pow(cb.clone(), a.len() - 1);
    a = a.iter().map(|x| x / &ca).collect();
    b = b.iter().map(|x| x / &cb).collect();
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = zprem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let div = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.iter().map(|x| x / &div).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.len() == 1 {
            let da = a.len() - 1;
            let hh = num_traits::pow(b[0].clone(), da) / num_traits::pow(h, da - 1);
            return s * t * hh;
        }
    }
}

/// Resultant of two polynomials over the rationals.
pub fn resultant(a: &QPoly, b: &QPoly) -> BigRational {
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    let (ca, za) = to_primitive(a);
    let (cb, zb) = to_primitive(b);
    let scale = pow_q(&ca, b.deg()) * pow_q(&cb, a.deg());
    scale * BigRational::from(zresultant(&za, &zb))
}

fn pow_q(r: &BigRational, e: usize) -> BigRational {
    num_traits::pow(r.clone(), e)
}

/// Monic gcd over the rationals via the primitive PRS.
pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (_, mut x) = to_primitive(a);
    let (_, mut y) = to_primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = zprem(&x, &y);
        x = y;
        y = zprimitive(&r);
    }
    from_z(&x).monic()
}

/// Squarefree part over the rationals using the fraction-free gcd.
pub fn squarefree_part(p: &QPoly) -> QPoly {
    if p.deg() == 0 {
        return p.monic();
    }
    let g = gcd(p, &p.derivative());
    p.div_exact(&g).expect("gcd divides").monic()
}

/// Yun decomposition over the rationals using the fraction-free gcd.
pub fn squarefree_decomposition(p: &QPoly) -> Vec<(QPoly, usize)> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = gcd(&f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = gcd(&b, &d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b.derivative());
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(cs: &[i64]) -> QPoly {
        Poly::from_i64s(Rationals, cs)
    }

    fn z(cs: &[i64]) -> ZPoly {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn subresultant_agrees_with_field_euclid() {
        let cases = [
            (vec![1, 2, 3, 4, 5], vec![-7, 0, 2, 1]),
            (vec![0, -1, 0, 1], vec![-4, 0, 1]),
            (vec![3, 0, 0, 0, 0, 1], vec![1, 1]),
            (vec![2, -3, 1], vec![6, -5, 1]),
            (vec![5, 1, 0, 0, 7, 0, 2], vec![1, 0, 3, 0, 1]),
        ];
        for (a, b) in cases {
            let (pa, pb) = (q(&a), q(&b));
            assert_eq!(resultant(&pa, &pb), pa.euclid_resultant(&pb), "{a:?} {b:?}");
            assert_eq!(resultant(&pb, &pa), pb.euclid_resultant(&pa), "{b:?} {a:?}");
        }
    }

    #[test]
    fn resultant_with_contents() {
        let a = Poly::from_rationals(Rationals, &[rat(1, 2), rat(3, 4), rat(2, 3)]);
        let b = Poly::from_rationals(Rationals, &[rat(-5, 7), rat(6, 1)]);
        assert_eq!(resultant(&a, &b), a.euclid_resultant(&b));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = z(&[1, 2, 3, 4, 5]);
        let b = z(&[-7, 0, 2]);
        let r = zprem(&a, &b);
        // lc(b)^3 a - r is divisible by b
        let lhs: ZPoly = a.iter().map(|c| c * BigInt::from(8)).collect();
        let diff: ZPoly = ztrim((0..lhs.len()).map(|i| &lhs[i] - r.get(i).cloned().unwrap_or_default()).collect());
        assert!(zdiv_exact(&diff, &b).is_some());
    }

    #[test]
    fn fraction_free_gcd() {
        let a = q(&[-1, 0, 1]).mul(&q(&[1, 3]));
        let b = q(&[-1, 0, 1]).mul(&q(&[5, 0, 2]));
        assert_eq!(gcd(&a, &b), q(&[-1, 0, 1]));
        assert_eq!(gcd(&a, &b), a.euclid_gcd(&b));
    }

    #[test]
    fn primitive_form() {
        let p = Poly::from_rationals(Rationals, &[rat(-1, 2), rat(3, 4)]);
        let (c, z0) = to_primitive(&p);
        assert_eq!(z0, z(&[-2, 3]));
        assert_eq!(from_z(&z0).scale(&c), p);
    }
}
