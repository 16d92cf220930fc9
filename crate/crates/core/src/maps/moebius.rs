use std::fmt;

use super::{RationalMap, SpherePoint};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{ExactScalar, Field, NumberField};

/// `z -> (a z + b) / (c z + d)` with `ad - bc != 0`.
///
/// Invariant: the first nonzero entry of `(a, b, c, d)` is 1, so equality
/// of values is equality of projective classes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Moebius {
    field: NumberField,
    a: ExactScalar,
    b: ExactScalar,
    c: ExactScalar,
    d: ExactScalar,
}

impl fmt::Debug for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Moebius({})", self.render("z"))
    }
}

impl PartialOrd for Moebius {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Moebius {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (&self.a, &self.b, &self.c, &self.d).cmp(&(&o.a, &o.b, &o.c, &o.d))
    }
}

impl Moebius {
    pub fn new(field: &NumberField, a: ExactScalar, b: ExactScalar, c: ExactScalar, d: ExactScalar) -> Result<Self> {
        for x in [&a, &b, &c, &d] {
            field.validate(x)?;
        }
        let k = field;
        let det = k.sub(&k.mul(&a, &d), &k.mul(&b, &c));
        if k.is_zero(&det) {
            return Err(Error::InvalidInput("Moebius transformation with zero determinant".into()));
        }
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !k.is_zero(x)).cloned().expect("nonzero entry");
        let inv = k.inv(&lead).expect("nonzero");
        Ok(Moebius { a: k.mul(&a, &inv), b: k.mul(&b, &inv), c: k.mul(&c, &inv), d: k.mul(&d, &inv), field: k.clone() })
    }

    pub fn from_i64s(field: &NumberField, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(field, field.from_i64(a), field.from_i64(b), field.from_i64(c), field.from_i64(d))
    }

    pub fn identity(field: &NumberField) -> Self {
        Self::from_i64s(field, 1, 0, 0, 1).expect("identity")
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coefficients(&self) -> [&ExactScalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field)
    }

    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        let k = &self.field;
        match p {
            SpherePoint::Infinity => {
                if k.is_zero(&self.c) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(k.div(&self.a, &self.c).expect("nonzero"))
                }
            }
            SpherePoint::Finite(z) => {
                let den = k.add(&k.mul(&self.c, z), &self.d);
                if k.is_zero(&den) {
                    SpherePoint::Infinity
                } else {
                    let num = k.add(&k.mul(&self.a, z), &self.b);
                    SpherePoint::Finite(k.div(&num, &den).expect("nonzero"))
                }
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &Self) -> Self {
        let k = &self.field;
        let m = |x: &ExactScalar, y: &ExactScalar, z: &ExactScalar, w: &ExactScalar| k.add(&k.mul(x, y), &k.mul(z, w));
        let a = m(&self.a, &o.a, &self.b, &o.c);
        let b = m(&self.a, &o.b, &self.b, &o.d);
        let c = m(&self.c, &o.a, &self.d, &o.c);
        let d = m(&self.c, &o.b, &self.d, &o.d);
        Self::new(k, a, b, c, d).expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> Self {
        let k = &self.field;
        Self::new(k, self.d.clone(), k.neg(&self.b), k.neg(&self.c), self.a.clone()).expect("invertible")
    }

    /// Smallest `n <= max` with `self^n = id`.
    pub fn order(&self, max: usize) -> Option<usize> {
        let mut g = self.clone();
        for n in 1..=max {
            if g.is_identity() {
                return Some(n);
            }
            g = g.compose(self);
        }
        None
    }

    /// True when no power of `self` is the identity.
    ///
    /// An element of order `n` over a field of degree `e` needs
    /// `phi(n) <= 2e`, and `phi(n) >= sqrt(n / 2)`, so orders above `8 e^2`
    /// cannot occur.
    pub fn has_infinite_order(&self) -> bool {
        let e = self.field.degree();
        self.order(8 * e * e + 8).is_none()
    }

    pub fn to_map(&self) -> RationalMap {
        let k = &self.field;
        let num = Poly::new(k.clone(), vec![self.b.clone(), self.a.clone()]);
        let den = Poly::new(k.clone(), vec![self.d.clone(), self.c.clone()]);
        RationalMap::new(num, den).expect("Moebius maps are valid rational maps")
    }

    pub fn from_map(m: &RationalMap) -> Option<Self> {
        if m.degree() != 1 {
            return None;
        }
        let (n, d) = (m.num(), m.den());
        Self::new(m.field(), n.coeff(1), n.coeff(0), d.coeff(1), d.coeff(0)).ok()
    }

    /// The fixed points on the sphere that lie in the field.
    pub fn fixed_points(&self) -> Vec<SpherePoint> {
        let k = &self.field;
        // c z^2 + (d - a) z - b = 0, with infinity fixed iff c = 0
        let q = Poly::new(k.clone(), vec![k.neg(&self.b), k.sub(&self.d, &self.a), self.c.clone()]);
        let mut out: Vec<SpherePoint> = if q.is_zero() {
            Vec::new()
        } else {
            crate::poly::trager::roots_in_field(&q).into_iter().map(|(r, _)| SpherePoint::Finite(r)).collect()
        };
        if k.is_zero(&self.c) {
            out.push(SpherePoint::Infinity);
        }
        out
    }

    pub fn render(&self, var: &str) -> String {
        self.to_map().render(var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_with_infinity() {
        let q = NumberField::rationals();
        let t = Moebius::from_i64s(&q, 1, 1, 0, 1).unwrap();
        assert_eq!(t.apply(&SpherePoint::from_i64(&q, 0)), SpherePoint::from_i64(&q, 1));
        let inv = Moebius::from_i64s(&q, 0, 1, 1, 0).unwrap();
        assert_eq!(inv.apply(&SpherePoint::from_i64(&q, 0)), SpherePoint::Infinity);
        assert_eq!(inv.apply(&SpherePoint::Infinity), SpherePoint::from_i64(&q, 0));
        let r = Moebius::from_i64s(&q, -1, -2, 0, 1).unwrap();
        assert_eq!(r.apply(&SpherePoint::from_i64(&q, 3)), SpherePoint::from_i64(&q, -5));
    }

    #[test]
    fn canonical_scaling_and_group_laws() {
        let q = NumberField::rationals();
        let a = Moebius::from_i64s(&q, 2, 4, 0, 2).unwrap();
        let b = Moebius::from_i64s(&q, 1, 2, 0, 1).unwrap();
        assert_eq!(a, b);
        let s = Moebius::from_i64s(&q, 0, 1, 1, 0).unwrap();
        assert!(s.compose(&s).is_identity());
        assert_eq!(s.order(10), Some(2));
        assert!(b.compose(&b.inverse()).is_identity());
        assert_eq!(b.order(50), None);
        assert!(Moebius::from_i64s(&q, 1, 2, 2, 4).is_err());
    }

    #[test]
    fn fixed_points_of_involution() {
        let q = NumberField::rationals();
        let s = Moebius::from_i64s(&q, 0, 1, 1, 0).unwrap();
        let fp = s.fixed_points();
        assert_eq!(fp, vec![SpherePoint::from_i64(&q, -1), SpherePoint::from_i64(&q, 1)]);
    }
}
