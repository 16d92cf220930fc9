//! Deck transformations of rational maps.
//!
//! A deck transformation `σ` with `σ(z0) = w` is pinned down by its 2-jet
//! at a regular point `z0`: differentiating `P(σ(z)) = P(z)` twice gives
//! `σ'(z0)` and `σ''(z0)`, and a Möbius map is determined by its value and
//! first two derivatives at one point. Every candidate is then checked
//! exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::TransformGroup;
use crate::error::{Error, Result};
use crate::maps::{compose_pair, critical_structure, AlgebraicPointSet, Moebius, RationalMap, SpherePoint};
use crate::poly::trager::{factor_over, KPoly};
use crate::scalar::{ExactScalar, Field, NumberField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisWitness {
    /// The full deck group, of order `deg P`.
    Deck(TransformGroup),
    /// Uniform fibers, but the deck transformations are not defined over
    /// the declared field; `hint` is a minimal polynomial to adjoin.
    Deferred { hint: KPoly },
    /// A fiber whose local degrees are not all equal.
    NonUniform { value: AlgebraicPointSet, local_degrees: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCertificate {
    pub is_galois: bool,
    pub witness: GaloisWitness,
}

/// Galois test by uniform ramification; the deck group is computed when
/// the field allows and its order is checked against the degree.
pub fn is_galois(p: &RationalMap) -> Result<GaloisCertificate> {
    let portrait = critical_structure(p)?;
    for e in &portrait.entries {
        if e.local_degrees.iter().any(|&d| d != e.local_degrees[0]) {
            return Ok(GaloisCertificate {
                is_galois: false,
                witness: GaloisWitness::NonUniform { value: e.value.clone(), local_degrees: e.local_degrees.clone() },
            });
        }
    }
    let witness = match deck_elements(p)? {
        Ok(g) => GaloisWitness::Deck(g),
        Err(hint) => GaloisWitness::Deferred { hint },
    };
    Ok(GaloisCertificate { is_galois: true, witness })
}

/// All Möbius `σ` over the field of `P` with `P ∘ σ = P`.
///
/// Requires `P` Galois; fails with `FieldTooSmall` when the fiber over a
/// regular rational value does not split over the field.
pub fn deck_group(p: &RationalMap) -> Result<TransformGroup> {
    let portrait = critical_structure(p)?;
    if let Some(e) = portrait.entries.iter().find(|e| e.local_degrees.iter().any(|&d| d != e.local_degrees[0])) {
        return Err(Error::NotGalois(format!(
            "local degrees {:?} over {}",
            e.local_degrees,
            e.value.render(p.field())
        )));
    }
    deck_elements(p)?.map_err(|hint| Error::FieldTooSmall { hint: hint.render("x") })
}

fn deck_elements(p: &RationalMap) -> Result<std::result::Result<TransformGroup, KPoly>> {
    let k = p.field().clone();
    let d = p.degree();
    let (z0, fiber) = regular_base(p)?;
    let (roots, hint) = split_fiber(&fiber);
    if roots.len() < d {
        return Ok(Err(hint.expect("a nonlinear factor remains")));
    }
    let jet = |x: &ExactScalar| two_jet(p, x);
    let (p1_z0, p2_z0) = jet(&z0);
    let mut elements = Vec::with_capacity(d);
    for w in roots {
        let (p1_w, p2_w) = jet(&w);
        let alpha = k.div(&p1_z0, &p1_w).expect("regular fiber");
        let beta = k.div(&k.sub(&p2_z0, &k.mul(&p2_w, &k.mul(&alpha, &alpha))), &p1_w).expect("regular fiber");
        let gamma = k.div(&beta, &k.mul(&k.from_i64(2), &alpha)).expect("alpha nonzero");
        // σ(z) = w + α u / (1 - γ u) with u = z - z0
        let a = k.sub(&alpha, &k.mul(&w, &gamma));
        let b = k.sub(&k.add(&w, &k.mul(&k.mul(&w, &gamma), &z0)), &k.mul(&alpha, &z0));
        let c = k.neg(&gamma);
        let dd = k.add(&k.one(), &k.mul(&gamma, &z0));
        elements.push(Moebius::new(&k, a, b, c, dd)?);
    }
    elements.sort();
    elements.dedup();
    if elements.len() != d {
        return Err(Error::Consistency("deck candidates are not distinct".into()));
    }
    // generators verified exactly and closing up to the candidate set make
    // every candidate a product of deck transformations
    let gens = TransformGroup::minimal_generators(&k, &elements);
    if let Some(bad) = gens.iter().find(|g| !verify_deck(p, g)) {
        return Err(Error::Consistency(format!("2-jet candidate {} is not a deck transformation", bad.render("z"))));
    }
    TransformGroup::from_elements(&k, gens, elements)
        .map(Ok)
        .map_err(|_| Error::Consistency("deck candidates do not form a group".into()))
}

/// `P ∘ σ = P`, decided exactly.
///
/// `H(x) = N(u, v) D(x) - D(u, v) N(x)` with `u = a x + b`, `v = c x + d`
/// is the cleared identity; it has degree at most `2 deg P`, so it is
/// zero once it vanishes at `2 deg P + 1` integers. Coefficients are
/// scaled to integral coordinates first, which keeps the evaluation free
/// of fractions for fields with an integral minimal polynomial.
pub fn verify_deck(p: &RationalMap, sigma: &Moebius) -> bool {
    if sigma.field() != p.field() {
        return false;
    }
    let k = p.field();
    let scale_poly = |f: &KPoly, l: &BigInt| f.scale(&k.from_rational(&BigRational::from_integer(l.clone())));
    let pl = common_denominator(p.num().coeffs().iter().chain(p.den().coeffs()));
    let (num, den) = (scale_poly(p.num(), &pl), scale_poly(p.den(), &pl));
    let sl = k.from_rational(&BigRational::from_integer(common_denominator(sigma.coefficients())));
    let [a, b, c, d] = sigma.coefficients().map(|x| k.mul(x, &sl));
    let n = p.degree();
    let points = (0..=(2 * n as i64)).map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 });
    if let Some(ring) = IntRing::new(k) {
        let int = |x: &ExactScalar| ring.from_scalar(x);
        let (a, b, c, d) = (int(&a), int(&b), int(&c), int(&d));
        let (num, den): (Vec<_>, Vec<_>) = (num.coeffs().iter().map(int).collect(), den.coeffs().iter().map(int).collect());
        if [&a, &b, &c, &d].iter().all(|x| x.is_some()) && num.iter().chain(&den).all(Option::is_some) {
            let (a, b, c, d) = (a.unwrap(), b.unwrap(), c.unwrap(), d.unwrap());
            let num: Vec<_> = num.into_iter().flatten().collect();
            let den: Vec<_> = den.into_iter().flatten().collect();
            return points.into_iter().all(|x| {
                let x = BigInt::from(x);
                let u = ring.add(&ring.scale(&a, &x), &b);
                let v = ring.add(&ring.scale(&c, &x), &d);
                let one = ring.one();
                let xs = ring.scale(&one, &x);
                let lhs = ring.mul(&ring.homogeneous(&num, n, &u, &v), &ring.homogeneous(&den, n, &xs, &one));
                let rhs = ring.mul(&ring.homogeneous(&den, n, &u, &v), &ring.homogeneous(&num, n, &xs, &one));
                lhs == rhs
            });
        }
    }
    for x in points {
        let x = k.from_i64(x);
        let u = k.add(&k.mul(&a, &x), &b);
        let v = k.add(&k.mul(&c, &x), &d);
        let lhs = k.mul(&homogeneous_eval(&num, n, &u, &v), &den.eval(&x));
        let rhs = k.mul(&homogeneous_eval(&den, n, &u, &v), &num.eval(&x));
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// `Z[t]/(m)` for a monic integral minimal polynomial `m`.
struct IntRing {
    m: Vec<BigInt>,
}

impl IntRing {
    fn new(k: &NumberField) -> Option<Self> {
        let m = k.min_poly();
        let m: Option<Vec<BigInt>> =
            m.coeffs().iter().map(|c| c.is_integer().then(|| c.to_integer())).collect();
        Some(IntRing { m: m? })
    }

    fn n(&self) -> usize {
        self.m.len() - 1
    }

    fn from_scalar(&self, x: &ExactScalar) -> Option<Vec<BigInt>> {
        x.coords.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.n()]
    }

    fn one(&self) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = BigInt::one();
        v
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn scale(&self, a: &[BigInt], s: &BigInt) -> Vec<BigInt> {
        a.iter().map(|x| x * s).collect()
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.n();
        if n == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for top in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut prod[top]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                if !self.m[j].is_zero() {
                    prod[top - n + j] -= &c * &self.m[j];
                }
            }
        }
        prod.truncate(n);
        prod
    }

    fn homogeneous(&self, f: &[Vec<BigInt>], n: usize, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let mut vpow = vec![self.one()];
        for _ in 0..n {
            let next = self.mul(vpow.last().unwrap(), v);
            vpow.push(next);
        }
        let mut acc = self.zero();
        for i in (0..=n).rev() {
            let fi = f.get(i).cloned().unwrap_or_else(|| self.zero());
            acc = self.add(&self.mul(&acc, u), &self.mul(&fi, &vpow[n - i]));
        }
        acc
    }
}

/// `sum f_i u^i v^(n - i)`.
fn homogeneous_eval(f: &KPoly, n: usize, u: &ExactScalar, v: &ExactScalar) -> ExactScalar {
    let k = f.field();
    let mut vpow = vec![k.one()];
    for _ in 0..n {
        let next = k.mul(vpow.last().unwrap(), v);
        vpow.push(next);
    }
    let mut acc = k.zero();
    for i in (0..=n).rev() {
        acc = k.add(&k.mul(&acc, u), &k.mul(&f.coeff(i), &vpow[n - i]));
    }
    acc
}

fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a ExactScalar>) -> BigInt {
    xs.into_iter().flat_map(|x| x.coords.iter()).fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

/// `num_P(σ) den_P - den_P(σ) num_P` with `σ` substituted homogeneously.
pub fn cleared_identity(p: &RationalMap, sigma: &Moebius) -> KPoly {
    let s = sigma.to_map();
    let (ns, ds) = compose_pair(p.num(), p.den(), s.num(), s.den());
    ns.mul(p.den()).sub(&ds.mul(p.num()))
}

/// A rational `z0` whose fiber `P^-1(P(z0))` is finite and unramified,
/// with the fiber polynomial.
fn regular_base(p: &RationalMap) -> Result<(ExactScalar, KPoly)> {
    let k = p.field();
    for i in 0..200i64 {
        let z0 = k.from_i64(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 });
        let SpherePoint::Finite(c) = p.eval(&SpherePoint::Finite(z0.clone())) else { continue };
        let f = p.fiber_poly(&SpherePoint::Finite(c));
        if f.deg() == p.degree() && f.is_squarefree() {
            return Ok((z0, f));
        }
    }
    Err(Error::Consistency("no regular integer base point among the first candidates".into()))
}

/// Roots of the fiber in the field, and the first nonlinear factor when
/// the fiber does not split.
fn split_fiber(f: &KPoly) -> (Vec<ExactScalar>, Option<KPoly>) {
    let k = f.field();
    let mut roots = Vec::new();
    let mut hint = None;
    for (g, _) in factor_over(f).1 {
        if g.deg() == 1 {
            roots.push(k.neg(&g.coeff(0)));
        } else if hint.is_none() {
            hint = Some(g);
        }
    }
    (roots, hint)
}

/// `(P'(x), P''(x))` at a point that is not a pole.
fn two_jet(p: &RationalMap, x: &ExactScalar) -> (ExactScalar, ExactScalar) {
    let k = p.field();
    let (n, n1, n2) = value_and_derivatives(p.num(), x);
    let (d, d1, d2) = value_and_derivatives(p.den(), x);
    // P' = (N'D - ND') / D^2, P'' = ((N''D - ND'') D - 2 D' (N'D - ND')) / D^3
    let w = k.sub(&k.mul(&n1, &d), &k.mul(&n, &d1));
    let first = k.div(&w, &k.mul(&d, &d)).expect("not a pole");
    let top = k.sub(
        &k.mul(&k.sub(&k.mul(&n2, &d), &k.mul(&n, &d2)), &d),
        &k.mul(&k.mul(&k.from_i64(2), &d1), &w),
    );
    let second = k.div(&top, &k.pow(&d, 3)).expect("not a pole");
    (first, second)
}

/// `(f(x), f'(x), f''(x))` by Horner.
fn value_and_derivatives(f: &KPoly, x: &ExactScalar) -> (ExactScalar, ExactScalar, ExactScalar) {
    let k = f.field();
    let (mut v, mut d1, mut d2) = (k.zero(), k.zero(), k.zero());
    for c in f.coeffs().iter().rev() {
        d2 = k.add(&k.mul(&d2, x), &k.mul(&k.from_i64(2), &d1));
        d1 = k.add(&k.mul(&d1, x), &v);
        v = k.add(&k.mul(&v, x), c);
    }
    (v, d1, d2)
}
