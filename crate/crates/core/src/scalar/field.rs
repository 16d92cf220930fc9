use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Poly;

/// A field of characteristic zero, used as a context object.
///
/// Elements carry no reference to their field; every operation goes through
/// the field value. This keeps elements small and lets the same element type
/// be shared by structurally identical fields.
pub trait Field: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, r: &BigRational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Monic gcd of two polynomials; fields may override with faster methods.
    fn poly_gcd(&self, a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self>
    where
        Self: Sized,
    {
        a.euclid_gcd(b)
    }

    fn poly_resultant(&self, a: &Poly<Self>, b: &Poly<Self>) -> Self::Elem
    where
        Self: Sized,
    {
        a.euclid_resultant(b)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_rational(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn render(&self, a: &BigRational) -> String {
        crate::scalar::rational_to_string(a)
    }
    fn poly_gcd(&self, a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        crate::poly::rational::gcd(a, b)
    }
    fn poly_resultant(&self, a: &Poly<Self>, b: &Poly<Self>) -> BigRational {
        crate::poly::rational::resultant(a, b)
    }
}

/// Fields over which univariate polynomials can be factored completely.
pub trait Factorization: Field {
    /// Monic irreducible factors of a squarefree polynomial, sorted canonically.
    fn factor_squarefree(&self, p: &Poly<Self>) -> Vec<Poly<Self>>
    where
        Self: Sized;
}

impl Factorization for Rationals {
    fn factor_squarefree(&self, p: &Poly<Self>) -> Vec<Poly<Self>> {
        crate::poly::factor::factor_squarefree(p)
    }
}

/// `base[t] / (modulus)` for a monic modulus assumed irreducible over `base`.
///
/// Used for critical-value classes: the field generated over the map's
/// coefficient field by one root of an irreducible factor.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientField<K: Field> {
    modulus: Poly<K>,
}

impl<K: Field> QuotientField<K> {
    /// The caller guarantees irreducibility; this is not re-checked.
    pub fn new(modulus: Poly<K>) -> Self {
        let modulus = modulus.monic();
        assert!(modulus.degree().unwrap_or(0) >= 1, "modulus must be non-constant");
        QuotientField { modulus }
    }

    pub fn base(&self) -> &K {
        self.modulus.field()
    }

    pub fn modulus(&self) -> &Poly<K> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// The class of the generator `t`.
    pub fn generator(&self) -> Vec<K::Elem> {
        self.reduce(&Poly::x(self.base().clone()))
    }

    /// Embed a base-field element.
    pub fn lift(&self, a: &K::Elem) -> Vec<K::Elem> {
        self.reduce(&Poly::constant(self.base().clone(), a.clone()))
    }

    pub fn reduce(&self, p: &Poly<K>) -> Vec<K::Elem> {
        let r = p.rem(&self.modulus);
        let n = self.degree();
        (0..n).map(|i| r.coeff(i)).collect()
    }

    fn as_poly(&self, a: &[K::Elem]) -> Poly<K> {
        Poly::new(self.base().clone(), a.to_vec())
    }
}

impl<K: Field> Field for QuotientField<K> {
    type Elem = Vec<K::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base().zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.lift(&self.base().one())
    }
    fn from_rational(&self, r: &BigRational) -> Self::Elem {
        self.lift(&self.base().from_rational(r))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base().is_zero(c))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base().sub(x, y)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.as_poly(a).mul(&self.as_poly(b)))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base().neg(x)).collect()
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let (g, s, _) = Poly::ext_gcd(&self.as_poly(a), &self.modulus);
        // g is a unit because the modulus is irreducible
        if g.degree() != Some(0) {
            return None;
        }
        Some(self.reduce(&s))
    }
    fn render(&self, a: &Self::Elem) -> String {
        format!("[{}] mod ({})", self.as_poly(a).render("t"), self.modulus.render("t"))
    }
}
