//! Simple number fields `Q[t]/(m(t))` with a chosen complex embedding.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ball::{ComplexBall, Dyadic};
use super::field::{Factorization, Field, Rationals};
use super::roots;
use super::{rat, rational_to_string};
use crate::error::{Error, Result};
use crate::poly::{factor, Poly};

/// Default cap on working precision, in bits.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Gaussian,
    Extension,
}

impl FieldKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::Rationals => "rationals",
            FieldKind::Gaussian => "gaussian-rationals",
            FieldKind::Extension => "simple-extension",
        }
    }
}

/// Declared coefficient field.
///
/// `min_poly` is stored low-to-high and is monic; for the rationals it is `t`
/// and for the Gaussian rationals `t^2 + 1`. The embedding is a rational disc
/// that isolates the chosen root.
pub struct FieldSpec {
    kind: FieldKind,
    min_poly: Vec<BigRational>,
    emb_re: BigRational,
    emb_im: BigRational,
    emb_rad: BigRational,
    generator_cache: Mutex<HashMap<u32, ComplexBall>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("kind", &self.kind)
            .field("min_poly", &self.min_poly.iter().map(rational_to_string).collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, o: &Self) -> bool {
        self.kind == o.kind
            && self.min_poly == o.min_poly
            && self.emb_re == o.emb_re
            && self.emb_im == o.emb_im
            && self.emb_rad == o.emb_rad
    }
}

impl FieldSpec {
    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// `(re, im, rad)` of the isolating disc.
    pub fn embedding(&self) -> (&BigRational, &BigRational, &BigRational) {
        (&self.emb_re, &self.emb_im, &self.emb_rad)
    }
}

/// Element of a [`NumberField`]: coordinates in the power basis `1, t, t^2, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar {
    pub coords: Vec<BigRational>,
}

impl ExactScalar {
    /// The rational value when every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }
}

/// A number field handle; cheap to clone.
#[derive(Clone)]
pub struct NumberField(Arc<FieldSpec>);

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || *self.0 == *o.0
    }
}

impl Eq for NumberField {}

impl std::hash::Hash for NumberField {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.0.kind.hash(h);
        self.0.min_poly.hash(h);
    }
}

fn spec(kind: FieldKind, min_poly: Vec<BigRational>, re: BigRational, im: BigRational, rad: BigRational) -> NumberField {
    NumberField(Arc::new(FieldSpec {
        kind,
        min_poly,
        emb_re: re,
        emb_im: im,
        emb_rad: rad,
        generator_cache: Mutex::new(HashMap::new()),
    }))
}

impl NumberField {
    pub fn rationals() -> Self {
        spec(FieldKind::Rationals, vec![rat(0, 1), rat(1, 1)], rat(0, 1), rat(0, 1), rat(0, 1))
    }

    pub fn gaussian() -> Self {
        spec(FieldKind::Gaussian, vec![rat(1, 1), rat(0, 1), rat(1, 1)], rat(0, 1), rat(1, 1), rat(0, 1))
    }

    /// `Q[t]/(m)` with the root of `m` closest to `approx`.
    ///
    /// `m` must be monic, irreducible over the rationals and of degree at least 2.
    pub fn extension(min_poly: &[BigRational], approx: Complex64) -> Result<Self> {
        let m = Self::check_min_poly(min_poly)?;
        let discs = isolate_exact(&m, 64)?;
        let best = discs
            .iter()
            .min_by(|a, b| {
                let da = (a.mid_c64() - approx).norm();
                let db = (b.mid_c64() - approx).norm();
                da.total_cmp(&db)
            })
            .expect("nonconstant polynomial has roots");
        let (re, im, rad) = disc_to_rational(best, &discs);
        let f = spec(FieldKind::Extension, m.coeffs().to_vec(), re, im, rad);
        Ok(f)
    }

    /// `Q[t]/(m)` with the root inside the given disc, which must contain
    /// exactly one root of `m`.
    pub fn with_embedding(min_poly: &[BigRational], re: BigRational, im: BigRational, rad: BigRational) -> Result<Self> {
        let gaussian = Self::gaussian();
        if min_poly == gaussian.0.min_poly.as_slice() {
            // i is on the positive imaginary axis; -i is the only other root
            let d2 = &re * &re + (&im - rat(1, 1)) * (&im - rat(1, 1));
            let e2 = &re * &re + (&im + rat(1, 1)) * (&im + rat(1, 1));
            if (rad.is_zero() && d2.is_zero()) || (d2 < &rad * &rad && e2 > &rad * &rad) {
                return Ok(gaussian);
            }
        }
        let m = Self::check_min_poly(min_poly)?;
        if rad <= BigRational::zero() {
            return Err(Error::InvalidField("embedding radius must be positive".into()));
        }
        let mut prec = 64;
        loop {
            let discs = isolate_exact(&m, prec)?;
            let given = ComplexBall {
                re: Dyadic::floor_rational(&re, -(prec as i64) - 8),
                im: Dyadic::floor_rational(&im, -(prec as i64) - 8),
                rad: Dyadic::floor_rational(&rad, -(prec as i64) - 8),
                prec,
            };
            let inside = discs.iter().filter(|d| given.contains(d)).count();
            let touching = discs.iter().filter(|d| given.overlaps(d)).count();
            if inside == 1 && touching == 1 {
                return Ok(spec(FieldKind::Extension, m.coeffs().to_vec(), re, im, rad));
            }
            if inside == 0 && touching == 0 {
                return Err(Error::InvalidField("embedding disc contains no root".into()));
            }
            if inside >= 2 {
                return Err(Error::InvalidField("embedding disc contains several roots".into()));
            }
            prec *= 2;
            if prec > DEFAULT_PRECISION_CAP {
                return Err(Error::InvalidField("embedding disc boundary cannot be resolved".into()));
            }
        }
    }

    /// `Q(zeta_n)` with `zeta_n = exp(2 pi i / n)`; collapses to the
    /// rationals for `n <= 2` and to the Gaussian rationals for `n = 4`.
    pub fn cyclotomic(n: u32) -> Self {
        match n {
            0..=2 => Self::rationals(),
            4 => Self::gaussian(),
            _ => {
                let phi = cyclotomic_poly(n);
                let angle = 2.0 * std::f64::consts::PI / n as f64;
                Self::extension(phi.coeffs(), Complex64::from_polar(1.0, angle)).expect("cyclotomic polynomials are irreducible")
            }
        }
    }

    fn check_min_poly(min_poly: &[BigRational]) -> Result<Poly<Rationals>> {
        let m = Poly::new(Rationals, min_poly.to_vec());
        if m.deg() < 2 {
            return Err(Error::InvalidField("minimal polynomial must have degree at least 2".into()));
        }
        if !m.lc().is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        if !factor::is_irreducible(&m) {
            return Err(Error::InvalidField(format!("{} is reducible over the rationals", m.render("t"))));
        }
        Ok(m)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_rationals(&self) -> bool {
        self.0.kind == FieldKind::Rationals
    }

    pub fn min_poly(&self) -> Poly<Rationals> {
        Poly::new(Rationals, self.0.min_poly.clone())
    }

    /// The generator `t` (or `i`).
    pub fn generator(&self) -> ExactScalar {
        if self.degree() == 1 {
            return self.from_rational(&(-&self.0.min_poly[0]));
        }
        let mut coords = vec![rat(0, 1); self.degree()];
        coords[1] = rat(1, 1);
        ExactScalar { coords }
    }

    /// The element with the given power-basis coordinates (padded or reduced).
    pub fn from_coords(&self, coords: &[BigRational]) -> ExactScalar {
        self.reduce(Poly::new(Rationals, coords.to_vec()))
    }

    pub fn element_poly(&self, a: &ExactScalar) -> Poly<Rationals> {
        Poly::new(Rationals, a.coords.clone())
    }

    fn reduce(&self, p: Poly<Rationals>) -> ExactScalar {
        let n = self.degree();
        let r = if p.deg() >= n { p.rem(&self.min_poly()) } else { p };
        ExactScalar { coords: (0..n).map(|i| r.coeff(i)).collect() }
    }

    pub fn as_rational<'a>(&self, a: &'a ExactScalar) -> Option<&'a BigRational> {
        a.as_rational()
    }

    /// Norm down to the rationals: `Res_t(m, a(t))`.
    pub fn norm(&self, a: &ExactScalar) -> BigRational {
        if self.degree() == 1 {
            return a.coords[0].clone();
        }
        crate::poly::rational::resultant(&self.min_poly(), &self.element_poly(a))
    }

    /// The generator embedded at working precision `prec`.
    pub fn generator_ball(&self, prec: u32) -> ComplexBall {
        match self.kind() {
            FieldKind::Rationals => ComplexBall::from_rational(&self.generator().coords[0], prec),
            FieldKind::Gaussian => ComplexBall::exact(Dyadic::zero(), Dyadic::from_int(1), prec),
            FieldKind::Extension => {
                if let Some(b) = self.0.generator_cache.lock().unwrap().get(&prec) {
                    return b.clone();
                }
                let b = self.refine_generator(prec);
                self.0.generator_cache.lock().unwrap().insert(prec, b.clone());
                b
            }
        }
    }

    fn refine_generator(&self, prec: u32) -> ComplexBall {
        let m = self.min_poly();
        let (re, im, rad) = self.0.embedding();
        let mut p = prec.max(64);
        loop {
            let discs = isolate_exact(&m, p).expect("minimal polynomial is squarefree");
            let given = ComplexBall {
                re: Dyadic::floor_rational(re, -(p as i64) - 8),
                im: Dyadic::floor_rational(im, -(p as i64) - 8),
                rad: Dyadic::floor_rational(rad, -(p as i64) - 8),
                prec: p,
            };
            let inside: Vec<&ComplexBall> = discs.iter().filter(|d| given.contains(d)).collect();
            if inside.len() == 1 && discs.iter().filter(|d| given.overlaps(d)).count() == 1 {
                return inside[0].with_prec(prec);
            }
            p *= 2;
            assert!(p <= 1 << 20, "embedding disc does not isolate a root");
        }
    }

    /// Ball containing the complex value of `a`, with radius at most
    /// `2^(-prec + 2) * max(1, |a|)`.
    pub fn embed(&self, a: &ExactScalar, prec: u32) -> ComplexBall {
        match self.kind() {
            FieldKind::Rationals => ComplexBall::from_rational(&a.coords[0], prec),
            FieldKind::Gaussian => {
                let re = ComplexBall::from_rational(&a.coords[0], prec);
                let im = ComplexBall::from_rational(&a.coords[1], prec);
                ComplexBall { re: re.re, im: im.re, rad: re.rad.add(&im.rad).round_up(), prec }
            }
            FieldKind::Extension => {
                let mut w = prec + 16;
                loop {
                    let t = self.generator_ball(w);
                    let mut acc = ComplexBall::zero(w);
                    for c in a.coords.iter().rev() {
                        acc = acc.mul(&t).add(&ComplexBall::from_rational(c, w));
                    }
                    let scale = acc.abs_upper().max(Dyadic::from_int(1));
                    if acc.rad <= scale.mul(&Dyadic::pow2(-(prec as i64) + 2)) {
                        return acc.with_prec(prec);
                    }
                    w *= 2;
                }
            }
        }
    }

    pub fn embed_f64(&self, a: &ExactScalar) -> Complex64 {
        self.embed(a, 64).mid_c64()
    }

    fn check(&self, a: &ExactScalar) {
        debug_assert_eq!(a.coords.len(), self.degree(), "element from a different field");
    }

    /// Parse-time check used by the JSON layer.
    pub fn validate(&self, a: &ExactScalar) -> Result<()> {
        if a.coords.len() != self.degree() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

impl Field for NumberField {
    type Elem = ExactScalar;

    fn zero(&self) -> ExactScalar {
        ExactScalar { coords: vec![BigRational::zero(); self.degree()] }
    }

    fn one(&self) -> ExactScalar {
        self.from_rational(&BigRational::one())
    }

    fn from_rational(&self, r: &BigRational) -> ExactScalar {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = r.clone();
        ExactScalar { coords }
    }

    fn is_zero(&self, a: &ExactScalar) -> bool {
        a.coords.iter().all(|c| c.is_zero())
    }

    fn add(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        self.check(a);
        self.check(b);
        ExactScalar { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    fn sub(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        self.check(a);
        self.check(b);
        ExactScalar { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    fn mul(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        self.check(a);
        self.check(b);
        let n = self.degree();
        if n == 1 {
            return ExactScalar { coords: vec![&a.coords[0] * &b.coords[0]] };
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        // reduce by the monic minimal polynomial from the top
        let m = &self.0.min_poly;
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().enumerate().take(n) {
                if !mj.is_zero() {
                    prod[k - n + j] -= &c * mj;
                }
            }
        }
        prod.truncate(n);
        ExactScalar { coords: prod }
    }

    fn neg(&self, a: &ExactScalar) -> ExactScalar {
        ExactScalar { coords: a.coords.iter().map(|x| -x).collect() }
    }

    fn inv(&self, a: &ExactScalar) -> Option<ExactScalar> {
        self.check(a);
        if self.is_zero(a) {
            return None;
        }
        match self.kind() {
            FieldKind::Rationals => Some(ExactScalar { coords: vec![a.coords[0].recip()] }),
            FieldKind::Gaussian => {
                let (x, y) = (&a.coords[0], &a.coords[1]);
                let n = x * x + y * y;
                Some(ExactScalar { coords: vec![x / &n, -(y / &n)] })
            }
            FieldKind::Extension => {
                let (g, s, _) = Poly::ext_gcd(&self.element_poly(a), &self.min_poly());
                debug_assert_eq!(g.deg(), 0);
                Some(self.reduce(s))
            }
        }
    }

    fn poly_gcd(&self, a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        if let (Some(qa), Some(qb)) = (to_q(a), to_q(b)) {
            let g = crate::poly::rational::gcd(&qa, &qb);
            return g.map_coeffs(self.clone(), |c| self.from_rational(c));
        }
        a.euclid_gcd(b)
    }

    fn poly_resultant(&self, a: &Poly<Self>, b: &Poly<Self>) -> ExactScalar {
        if let (Some(qa), Some(qb)) = (to_q(a), to_q(b)) {
            return self.from_rational(&crate::poly::rational::resultant(&qa, &qb));
        }
        a.euclid_resultant(b)
    }

    fn render(&self, a: &ExactScalar) -> String {
        match self.kind() {
            FieldKind::Rationals => rational_to_string(&a.coords[0]),
            FieldKind::Gaussian => Poly::new(Rationals, a.coords.clone()).render("i"),
            FieldKind::Extension => Poly::new(Rationals, a.coords.clone()).render("t"),
        }
    }
}

fn to_q(p: &Poly<NumberField>) -> Option<Poly<Rationals>> {
    let cs: Option<Vec<BigRational>> = p.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
    cs.map(|cs| Poly::new(Rationals, cs))
}

impl Factorization for NumberField {
    fn factor_squarefree(&self, p: &Poly<Self>) -> Vec<Poly<Self>> {
        crate::poly::trager::factor_squarefree_over(p)
    }
}

/// Certified isolating discs for the roots of a squarefree rational polynomial.
pub(crate) fn isolate_exact(m: &Poly<Rationals>, target: u32) -> Result<Vec<ComplexBall>> {
    let cs = m.coeffs().to_vec();
    roots::isolate(
        |prec| cs.iter().map(|c| ComplexBall::from_rational(c, prec)).collect(),
        target,
        DEFAULT_PRECISION_CAP.max(target * 2),
    )
}

/// A rational disc around `d`, shrunk so it meets no other disc.
fn disc_to_rational(d: &ComplexBall, all: &[ComplexBall]) -> (BigRational, BigRational, BigRational) {
    let re = d.re.to_rational();
    let im = d.im.to_rational();
    // half the distance to the nearest other root disc, at least the certified radius
    let mut rad = None::<Dyadic>;
    for o in all {
        if o == d {
            continue;
        }
        let gap = o.mid_dist2(d).sqrt_lower().sub(&o.rad).mul_pow2(-1);
        rad = Some(match rad {
            None => gap,
            Some(r) => r.min(gap),
        });
    }
    let rad = rad.unwrap_or_else(|| Dyadic::from_int(1)).max(d.rad.mul_pow2(1)).round_up();
    let rad = round_rational(&rad.to_rational());
    (round_rational(&re), round_rational(&im), rad)
}

/// A short rational near `r` for readable JSON; within `2^-40 |r|` or so.
fn round_rational(r: &BigRational) -> BigRational {
    if r.denom().bits() <= 64 {
        return r.clone();
    }
    let scale = BigInt::one() << 60u32;
    let n = (r * BigRational::from(scale.clone())).round().to_integer();
    BigRational::new(n, scale)
}

/// The n-th cyclotomic polynomial over the rationals.
pub fn cyclotomic_poly(n: u32) -> Poly<Rationals> {
    let mut p = Poly::from_i64s(Rationals, &[-1, 1]);
    let xn_minus_1 = |k: u32| {
        let mut cs = vec![rat(0, 1); k as usize + 1];
        cs[0] = rat(-1, 1);
        cs[k as usize] = rat(1, 1);
        Poly::new(Rationals, cs)
    };
    if n == 1 {
        return p;
    }
    p = xn_minus_1(n);
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic_poly(d)).expect("cyclotomic divisibility");
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    #[test]
    fn gaussian_unit_squares_to_minus_one() {
        let k = NumberField::gaussian();
        let i = k.generator();
        assert_eq!(k.mul(&i, &i), k.from_i64(-1));
        let z = k.from_coords(&[q(3, 1), q(4, 1)]);
        let zi = k.inv(&z).unwrap();
        assert_eq!(k.mul(&z, &zi), k.one());
        let b = k.embed(&i, 64);
        assert!(b.rad.is_zero());
        assert_eq!(b.im.to_f64(), 1.0);
    }

    #[test]
    fn sqrt2_extension() {
        let k = NumberField::extension(&[q(-2, 1), q(0, 1), q(1, 1)], Complex64::new(1.4, 0.0)).unwrap();
        let t = k.generator();
        assert_eq!(k.mul(&t, &t), k.from_i64(2));
        let b = k.embed(&t, 100);
        assert!((b.re.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(b.rad <= Dyadic::pow2(-98));
        let inv = k.inv(&k.add(&t, &k.one())).unwrap();
        // 1/(1+sqrt2) = sqrt2 - 1
        assert_eq!(inv, k.sub(&t, &k.one()));
        assert_eq!(k.norm(&k.add(&t, &k.one())), q(-1, 1));
    }

    #[test]
    fn negative_root_is_selectable() {
        let k = NumberField::extension(&[q(-2, 1), q(0, 1), q(1, 1)], Complex64::new(-1.4, 0.0)).unwrap();
        assert!(k.embed_f64(&k.generator()).re < -1.4);
    }

    #[test]
    fn reducible_min_poly_rejected() {
        let err = NumberField::extension(&[q(-1, 1), q(0, 1), q(1, 1)], Complex64::new(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::InvalidField(_)));
        let err = NumberField::extension(&[q(1, 1), q(2, 1)], Complex64::new(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::InvalidField(_)));
    }

    #[test]
    fn cyclotomic_fields() {
        assert_eq!(cyclotomic_poly(5), Poly::from_i64s(Rationals, &[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(6), Poly::from_i64s(Rationals, &[1, -1, 1]));
        let k = NumberField::cyclotomic(5);
        let z = k.generator();
        assert_eq!(k.pow(&z, 5), k.one());
        let e = k.embed_f64(&z);
        assert!((e - Complex64::from_polar(1.0, 0.4 * std::f64::consts::PI)).norm() < 1e-12);
    }

    #[test]
    fn explicit_embedding_disc() {
        let m = [q(-2, 1), q(0, 1), q(1, 1)];
        assert!(NumberField::with_embedding(&m, q(3, 2), q(0, 1), q(1, 4)).is_ok());
        assert!(NumberField::with_embedding(&m, q(0, 1), q(0, 1), q(3, 1)).is_err());
        assert!(NumberField::with_embedding(&m, q(5, 1), q(0, 1), q(1, 1)).is_err());
    }
}
