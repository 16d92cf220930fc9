//! Dense univariate polynomials over an exact field.
//!
//! Invariant: `coeffs` is stored low-to-high with no trailing zeros, so the
//! zero polynomial has an empty coefficient list and `degree()` is `None`.

pub mod factor;
pub mod linalg;
pub mod rational;
pub mod trager;

use std::fmt;

use num_rational::BigRational;

use crate::scalar::Field;

#[derive(Clone)]
pub struct Poly<K: Field> {
    field: K,
    coeffs: Vec<K::Elem>,
}

impl<K: Field> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<K: Field> Eq for Poly<K> {}

impl<K: Field> std::hash::Hash for Poly<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render("x"))
    }
}

impl<K: Field> Poly<K> {
    pub fn new(field: K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: K) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: K) -> Self {
        let one = field.one();
        Poly { field, coeffs: vec![one] }
    }

    pub fn x(field: K) -> Self {
        let (z, o) = (field.zero(), field.one());
        Poly { field, coeffs: vec![z, o] }
    }

    pub fn constant(field: K, c: K::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(field: K, c: K::Elem, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    pub fn from_rationals(field: K, cs: &[BigRational]) -> Self {
        let coeffs = cs.iter().map(|c| field.from_rational(c)).collect();
        Poly::new(field, coeffs)
    }

    pub fn from_i64s(field: K, cs: &[i64]) -> Self {
        let coeffs = cs.iter().map(|&c| field.from_i64(c)).collect();
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K::Elem> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> K::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> K::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let cs = (0..n).map(|i| f.add(&self.coeff(i), &o.coeff(i))).collect();
        Poly::new(f.clone(), cs)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let cs = (0..n).map(|i| f.sub(&self.coeff(i), &o.coeff(i))).collect();
        Poly::new(f.clone(), cs)
    }

    pub fn neg(&self) -> Self {
        let cs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly { field: self.field.clone(), coeffs: cs }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), out)
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let cs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), cs)
    }

    /// Multiply by `x^n`.
    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut cs = vec![self.field.zero(); n];
        cs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs: cs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("polynomial division by zero");
        let inv = f.inv(&d.lc()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f.clone()), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if !f.is_zero(&c) {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = f.sub(&r[k + j], &f.mul(&c, dc));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(f.clone(), q), Poly::new(f.clone(), r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.field.is_one(&self.lc())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        self.field.poly_gcd(self, o)
    }

    /// Monic gcd by the plain Euclidean algorithm.
    pub fn euclid_gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*a + t*b` and `g` monic (or zero).
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let f = a.field.clone();
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(f.clone()), Poly::zero(f.clone()));
        let (mut t0, mut t1) = (Poly::zero(f.clone()), Poly::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.lc()).expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::new(f.clone(), cs)
    }

    pub fn eval(&self, x: &K::Elem) -> K::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(self.field.clone(), c.clone()));
        }
        acc
    }

    /// `self(x + a)`.
    pub fn taylor_shift(&self, a: &K::Elem) -> Self {
        let g = Poly::new(self.field.clone(), vec![a.clone(), self.field.one()]);
        self.compose(&g)
    }

    /// `x^n * self(1/x)`; requires `n >= deg`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.coeffs.len() <= n + 1, "reverse below degree");
        let mut cs = vec![self.field.zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            cs[n - i] = c.clone();
        }
        Poly::new(self.field.clone(), cs)
    }

    /// Multiplicity of `x` as a factor.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| self.field.is_zero(c)).count()
    }

    /// Yun's algorithm: pairs `(a_i, i)` with `self = lc * prod a_i^i`,
    /// every `a_i` monic, squarefree and pairwise coprime. Only nonconstant
    /// factors are returned.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.div_exact(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d);
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

    /// Monic squarefree part.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    pub fn resultant(&self, o: &Self) -> K::Elem {
        self.field.poly_resultant(self, o)
    }

    /// Resultant by the Euclidean algorithm over the field.
    pub fn euclid_resultant(&self, o: &Self) -> K::Elem {
        let f = self.field.clone();
        if self.is_zero() || o.is_zero() {
            return f.zero();
        }
        let mut a = self.clone();
        let mut b = o.clone();
        let mut acc = f.one();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return f.mul(&acc, &f.pow(&b.lc(), m as u64));
            }
            if m < n {
                if (m * n) % 2 == 1 {
                    acc = f.neg(&acc);
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return f.zero();
            }
            let k = r.deg();
            if (m * n) % 2 == 1 {
                acc = f.neg(&acc);
            }
            acc = f.mul(&acc, &f.pow(&b.lc(), (m - k) as u64));
            // res(a, b) = (-1)^{mn} lc(b)^{m-k} res(b, a mod b)
            a = b;
            b = r;
        }
    }

    /// Lagrange interpolation through distinct abscissae.
    pub fn interpolate(field: K, points: &[(K::Elem, K::Elem)]) -> Self {
        // Newton divided differences
        let n = points.len();
        let mut coef: Vec<K::Elem> = points.iter().map(|p| p.1.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = field.sub(&coef[i], &coef[i - 1]);
                let den = field.sub(&points[i].0, &points[i - j].0);
                coef[i] = field.div(&num, &den).expect("distinct interpolation nodes");
            }
        }
        let mut acc = Poly::zero(field.clone());
        for i in (0..n).rev() {
            let lin = Poly::new(field.clone(), vec![field.neg(&points[i].0), field.one()]);
            acc = acc.mul(&lin).add(&Poly::constant(field.clone(), coef[i].clone()));
        }
        acc
    }

    pub fn map_coeffs<L: Field>(&self, target: L, f: impl Fn(&K::Elem) -> L::Elem) -> Poly<L> {
        let cs = self.coeffs.iter().map(f).collect();
        Poly::new(target, cs)
    }

    /// Human-readable form, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut s = f.render(c);
            let compound = s.trim_start_matches('-').contains(['+', '-', ' ']);
            if compound {
                s = format!("({s})");
            }
            let neg = !compound && s.starts_with('-');
            let mag = if neg { s[1..].to_string() } else { s };
            let term = match i {
                0 => mag.clone(),
                _ => {
                    let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if mag == "1" {
                        mono
                    } else {
                        format!("{mag}*{mono}")
                    }
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rationals};

    fn p(cs: &[i64]) -> Poly<Rationals> {
        Poly::from_i64s(Rationals, cs)
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[-1, 0, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_and_ext_gcd() {
        let a = p(&[-1, 0, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 0, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]));
        let (g, s, t) = Poly::ext_gcd(&a, &b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)(x+2)^2 x^3
        let f = p(&[-1, 1]).mul(&p(&[2, 1]).pow(2)).mul(&p(&[0, 1]).pow(3)).scale(&rat(5, 1));
        let sq = f.squarefree_decomposition();
        assert_eq!(sq, vec![(p(&[-1, 1]), 1), (p(&[2, 1]), 2), (p(&[0, 1]), 3)]);
    }

    #[test]
    fn resultant_matches_product_formula() {
        // res((x-1)(x-2), (x-3)) = (1-3)(2-3) = 2
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 1]);
        assert_eq!(a.euclid_resultant(&b), rat(2, 1));
        assert_eq!(a.resultant(&b), rat(2, 1));
        assert_eq!(b.resultant(&a), rat(2, 1));
        // common root gives zero
        assert_eq!(a.resultant(&p(&[-1, 1])), rat(0, 1));
        // res(x^2+1, x^2-2) = prod over roots of x^2+1 of (r^2-2) = 9
        assert_eq!(p(&[1, 0, 1]).resultant(&p(&[-2, 0, 1])), rat(9, 1));
        // deg 3 vs deg 2 sign check against explicit roots: a=(x)(x-1)(x+1), b=x^2-4
        let a = p(&[0, -1, 0, 1]);
        let b = p(&[-4, 0, 1]);
        // prod_{r in {0,1,-1}} (r^2-4) = (-4)(-3)(-3) = -36
        assert_eq!(a.resultant(&b), rat(-36, 1));
        // res(b, a) = (-1)^6 res(a, b)
        assert_eq!(b.resultant(&a), rat(-36, 1));
    }

    #[test]
    fn interpolation_recovers() {
        let f = p(&[3, 0, -2, 1]);
        let pts: Vec<_> = (0..4).map(|i| (rat(i, 1), f.eval(&rat(i, 1)))).collect();
        assert_eq!(Poly::interpolate(Rationals, &pts), f);
    }

    #[test]
    fn render_readable() {
        assert_eq!(p(&[-1, 0, 3, 1]).render("z"), "z^3 + 3*z^2 - 1");
        assert_eq!(p(&[0, -1]).render("z"), "-z");
        assert_eq!(Poly::from_rationals(Rationals, &[rat(1, 2)]).render("z"), "1/2");
    }
}
