use std::fmt;

use super::SpherePoint;
use crate::error::{Error, Result};
use crate::poly::trager::KPoly;
use crate::poly::Poly;
use crate::scalar::{ExactScalar, Field, NumberField, Rationals};

/// A rational map `num / den` of the sphere over a number field.
///
/// Invariant: `gcd(num, den) = 1` and `den` is monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: KPoly,
    den: KPoly,
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMap({})", self.render("z"))
    }
}

impl RationalMap {
    pub fn new(num: KPoly, den: KPoly) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::InvalidInput("denominator is the zero polynomial".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.deg() > 0 {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        } else {
            (num, den)
        };
        let inv = den.field().inv(&den.lc()).expect("nonzero");
        Ok(RationalMap { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn polynomial(p: KPoly) -> Self {
        let one = Poly::one(p.field().clone());
        Self::new(p, one).expect("nonzero denominator")
    }

    pub fn from_i64s(k: &NumberField, num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(Poly::from_i64s(k.clone(), num), Poly::from_i64s(k.clone(), den))
    }

    pub fn identity(k: &NumberField) -> Self {
        Self::polynomial(Poly::x(k.clone()))
    }

    pub fn field(&self) -> &NumberField {
        self.num.field()
    }

    pub fn num(&self) -> &KPoly {
        &self.num
    }

    pub fn den(&self) -> &KPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == 0
    }

    /// True when every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.num.coeffs().iter().chain(self.den.coeffs()).all(|c| c.as_rational().is_some())
    }

    /// `(num, den)` as rational polynomials, when the coefficients allow it.
    pub fn rational_parts(&self) -> Option<(Poly<Rationals>, Poly<Rationals>)> {
        let n = crate::poly::trager::to_rational_poly(&self.num)?;
        let d = crate::poly::trager::to_rational_poly(&self.den)?;
        Some((n, d))
    }

    /// The same map over a larger field that contains this one.
    pub fn with_field(&self, k: &NumberField) -> Result<Self> {
        if k == self.field() {
            return Ok(self.clone());
        }
        let (n, d) = self
            .rational_parts()
            .ok_or_else(|| Error::InvalidInput("only maps with rational coefficients can change field".into()))?;
        let lift = |p: &Poly<Rationals>| p.map_coeffs(k.clone(), |c| k.from_rational(c));
        Self::new(lift(&n), lift(&d))
    }

    pub fn value_at_infinity(&self) -> SpherePoint {
        let k = self.field();
        match self.num.deg().cmp(&self.den.deg()) {
            std::cmp::Ordering::Greater => SpherePoint::Infinity,
            std::cmp::Ordering::Equal => SpherePoint::Finite(k.div(&self.num.lc(), &self.den.lc()).expect("nonzero")),
            std::cmp::Ordering::Less => SpherePoint::Finite(k.zero()),
        }
    }

    pub fn eval(&self, z: &SpherePoint) -> SpherePoint {
        let k = self.field();
        match z {
            SpherePoint::Infinity => self.value_at_infinity(),
            SpherePoint::Finite(x) => {
                let d = self.den.eval(x);
                if k.is_zero(&d) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(k.div(&self.num.eval(x), &d).expect("nonzero"))
                }
            }
        }
    }

    /// `self ∘ g`, of degree `deg self * deg g`.
    pub fn compose(&self, g: &RationalMap) -> Result<RationalMap> {
        if self.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        let n = self.degree();
        let (num, den) = homogeneous_substitute(&self.num, &self.den, n, &g.num, &g.den);
        RationalMap::new(num, den)
    }

    /// The polynomial whose roots are the finite preimages of `c`:
    /// `num - c den`, or `den` when `c` is infinity.
    pub fn fiber_poly(&self, c: &SpherePoint) -> KPoly {
        match c {
            SpherePoint::Infinity => self.den.clone(),
            SpherePoint::Finite(v) => self.num.sub(&self.den.scale(v)),
        }
    }

    /// Multiplicity of infinity in the fiber over `c`.
    pub fn infinity_multiplicity(&self, c: &SpherePoint) -> usize {
        self.degree() - self.fiber_poly(c).deg()
    }

    /// The Wronskian `num' den - num den'`, whose roots are the finite
    /// critical points.
    pub fn wronskian(&self) -> KPoly {
        self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()))
    }

    /// Check `self(z) = other(z)` as maps.
    pub fn same_map(&self, other: &RationalMap) -> bool {
        self == other
    }

    pub fn render(&self, var: &str) -> String {
        let n = self.num.render(var);
        if self.den.deg() == 0 {
            return n;
        }
        let d = self.den.render(var);
        let wrap = |s: String, p: &KPoly| if p.coeffs().iter().filter(|c| !self.field().is_zero(c)).count() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }

    /// Evaluate `num/den` at an element, `None` at poles.
    pub fn eval_finite(&self, x: &ExactScalar) -> Option<ExactScalar> {
        let d = self.den.eval(x);
        self.field().div(&self.num.eval(x), &d)
    }
}

/// `sum_i N_i g1^i g2^(n-i)` and the same for `D`.
pub(crate) fn homogeneous_substitute<K: Field>(
    n_poly: &Poly<K>,
    d_poly: &Poly<K>,
    n: usize,
    g1: &Poly<K>,
    g2: &Poly<K>,
) -> (Poly<K>, Poly<K>) {
    let k = n_poly.field().clone();
    let pow1: Vec<Poly<K>> = std::iter::successors(Some(Poly::one(k.clone())), |p| Some(p.mul(g1))).take(n + 1).collect();
    let pow2: Vec<Poly<K>> = std::iter::successors(Some(Poly::one(k.clone())), |p| Some(p.mul(g2))).take(n + 1).collect();
    let sub = |p: &Poly<K>| {
        let mut acc = Poly::zero(k.clone());
        for (i, c) in p.coeffs().iter().enumerate() {
            if !k.is_zero(c) {
                acc = acc.add(&pow1[i].mul(&pow2[n - i]).scale(c));
            }
        }
        acc
    };
    (sub(n_poly), sub(d_poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        let m = RationalMap::from_i64s(&q(), &[-1, 0, 1], &[2, 2]).unwrap();
        // (z^2 - 1) / (2z + 2) = (z - 1)/2
        assert_eq!(m, RationalMap::from_i64s(&q(), &[-1, 1], &[2]).unwrap());
        assert_eq!(m.degree(), 1);
    }

    #[test]
    fn composition_examples() {
        let k = q();
        let sq = RationalMap::from_i64s(&k, &[0, 0, 1], &[1]).unwrap();
        let shift = RationalMap::from_i64s(&k, &[1, 1], &[1]).unwrap();
        assert_eq!(sq.compose(&shift).unwrap(), RationalMap::from_i64s(&k, &[1, 2, 1], &[1]).unwrap());
        let cube = RationalMap::from_i64s(&k, &[0, 0, 0, 1], &[1]).unwrap();
        assert_eq!(cube.compose(&RationalMap::identity(&k)).unwrap(), cube);
        let f = RationalMap::from_i64s(&k, &[1, 0, 1], &[0, 1]).unwrap();
        let h = f.compose(&sq).unwrap();
        assert_eq!(h, RationalMap::from_i64s(&k, &[1, 0, 0, 0, 1], &[0, 0, 1]).unwrap());
        // spot-check by evaluation at rational points
        for x in 1..6 {
            let z = SpherePoint::Finite(k.from_i64(x));
            assert_eq!(h.eval(&z), f.eval(&sq.eval(&z)));
        }
    }

    #[test]
    fn values_at_infinity() {
        let k = q();
        let m = RationalMap::from_i64s(&k, &[1, 3], &[5, 2]).unwrap();
        assert_eq!(m.value_at_infinity(), SpherePoint::Finite(k.from_rational(&rat(3, 2))));
        let p = RationalMap::from_i64s(&k, &[0, 0, 1], &[1]).unwrap();
        assert_eq!(p.eval(&SpherePoint::Infinity), SpherePoint::Infinity);
        let r = RationalMap::from_i64s(&k, &[1], &[0, 1]).unwrap();
        assert_eq!(r.eval(&SpherePoint::Finite(k.zero())), SpherePoint::Infinity);
        assert_eq!(r.eval(&SpherePoint::Infinity), SpherePoint::Finite(k.zero()));
    }

    #[test]
    fn render_forms() {
        let k = q();
        assert_eq!(RationalMap::from_i64s(&k, &[1, 0, 1], &[0, 1]).unwrap().render("z"), "(z^2 + 1)/z");
        assert_eq!(RationalMap::from_i64s(&k, &[1, 2, 1], &[1]).unwrap().render("z"), "z^2 + 2*z + 1");
    }
}
