use super::deck::verify_deck;
use super::family::{standard_family, FamilyKind};
use super::group::TransformGroup;
use crate::error::{Error, Result};
use crate::maps::{Moebius, RationalMap, SpherePoint};
use crate::poly::trager::KPoly;
use crate::poly::Poly;
use crate::scalar::{Field, NumberField};

/// A rational map whose deck group is exactly `G`, of degree `|G|`.
///
/// Cyclic and dihedral groups are conjugated to standard position using
/// fixed points in the field; groups equal to a shipped platonic group get
/// the shipped map; anything else falls back to the orbit sum
/// `sum_g 1/(g(z) - a)` for a point `a` with trivial stabilizer.
pub fn quotient_map(g: &TransformGroup) -> Result<RationalMap> {
    let k = g.field().clone();
    let elements = g
        .elements()
        .ok_or_else(|| Error::UnsupportedGroup("the group must be finite and enumerated".into()))?;
    let n = elements.len();
    if n == 1 {
        return Ok(RationalMap::identity(&k));
    }
    let candidates = [cyclic_quotient(&k, elements), dihedral_quotient(&k, elements), platonic_quotient(g)];
    for a in candidates.into_iter().flatten() {
        if accepts(&a, g) {
            return Ok(a);
        }
    }
    let a = orbit_sum(&k, elements)?;
    if accepts(&a, g) {
        Ok(a)
    } else {
        Err(Error::Consistency("orbit sum is not invariant under the group".into()))
    }
}

/// `deg A = |G|` and every generator is a deck transformation; the deck
/// group has order at most `deg A`, so it equals `G`.
fn accepts(a: &RationalMap, g: &TransformGroup) -> bool {
    let gens: Vec<Moebius> = if g.generators().is_empty() {
        g.elements().unwrap_or_default().to_vec()
    } else {
        g.generators().to_vec()
    };
    Some(a.degree()) == g.order() && gens.iter().all(|s| verify_deck(a, s))
}

/// `T` with `T(f1) = 0`, `T(f2) = ∞`.
fn to_zero_infinity(k: &NumberField, f1: &SpherePoint, f2: &SpherePoint) -> Option<Moebius> {
    match (f1, f2) {
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
            Moebius::new(k, k.one(), k.neg(a), k.one(), k.neg(b)).ok()
        }
        (SpherePoint::Finite(a), SpherePoint::Infinity) => Moebius::new(k, k.one(), k.neg(a), k.zero(), k.one()).ok(),
        (SpherePoint::Infinity, SpherePoint::Finite(b)) => Moebius::new(k, k.zero(), k.one(), k.one(), k.neg(b)).ok(),
        _ => None,
    }
}

fn power_after(k: &NumberField, t: &Moebius, n: usize) -> Option<RationalMap> {
    RationalMap::polynomial(Poly::monomial(k.clone(), k.one(), n)).compose(&t.to_map()).ok()
}

fn cyclic_quotient(k: &NumberField, elements: &[Moebius]) -> Option<RationalMap> {
    let n = elements.len();
    let r = elements.iter().find(|g| g.order(n) == Some(n))?;
    let fp = r.fixed_points();
    if fp.len() != 2 {
        return None;
    }
    power_after(k, &to_zero_infinity(k, &fp[0], &fp[1])?, n)
}

/// `w^n + λ^n / w^n` after moving the rotation axis to `0, ∞`, where the
/// flips become `w -> λ / w`.
fn dihedral_quotient(k: &NumberField, elements: &[Moebius]) -> Option<RationalMap> {
    let total = elements.len();
    if !total.is_multiple_of(2) || total < 4 {
        return None;
    }
    let n = total / 2;
    for r in elements.iter().filter(|g| g.order(n) == Some(n)) {
        let fp = r.fixed_points();
        if fp.len() != 2 {
            continue;
        }
        let t = to_zero_infinity(k, &fp[0], &fp[1])?;
        let rotations: Vec<Moebius> = std::iter::successors(Some(r.clone()), |x| Some(x.compose(r))).take(n).collect();
        let Some(s) = elements.iter().find(|g| !rotations.contains(g)) else { continue };
        let conj = t.compose(s).compose(&t.inverse());
        let [a, b, c, d] = conj.coefficients();
        if !k.is_zero(a) || !k.is_zero(d) {
            continue;
        }
        let lambda = k.div(b, c)?;
        let num: KPoly = Poly::monomial(k.clone(), k.one(), 2 * n).add(&Poly::constant(k.clone(), k.pow(&lambda, n as u64)));
        let den = Poly::monomial(k.clone(), k.one(), n);
        let a_map = RationalMap::new(num, den).ok()?;
        return a_map.compose(&t.to_map()).ok();
    }
    None
}

fn platonic_quotient(g: &TransformGroup) -> Option<RationalMap> {
    let kind = match g.order()? {
        12 => FamilyKind::Tetrahedral,
        24 => FamilyKind::Octahedral,
        60 => FamilyKind::Icosahedral,
        _ => return None,
    };
    let fam = standard_family(kind).ok()?;
    (fam.field == *g.field() && fam.group.elements() == g.elements()).then_some(fam.map)
}

/// `sum_g 1/(g(z) - a)`: simple poles at the `|G|` distinct points
/// `g^-1(a)`, hence degree `|G|`, and invariant by construction.
fn orbit_sum(k: &NumberField, elements: &[Moebius]) -> Result<RationalMap> {
    let inf_orbit: Vec<SpherePoint> = elements.iter().map(|g| g.apply(&SpherePoint::Infinity)).collect();
    for i in 0..1000i64 {
        let a = k.from_i64(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 });
        let pa = SpherePoint::Finite(a.clone());
        if inf_orbit.contains(&pa) || elements.iter().any(|g| !g.is_identity() && g.apply(&pa) == pa) {
            continue;
        }
        let terms: Vec<(KPoly, KPoly)> = elements
            .iter()
            .map(|g| {
                let [ga, gb, gc, gd] = g.coefficients();
                // (c z + d) / ((a - t c) z + (b - t d))
                let num = Poly::new(k.clone(), vec![gd.clone(), gc.clone()]);
                let den = Poly::new(k.clone(), vec![k.sub(gb, &k.mul(&a, gd)), k.sub(ga, &k.mul(&a, gc))]);
                (num, den)
            })
            .collect();
        let (num, den) = sum_fractions(&terms);
        return RationalMap::new(num, den);
    }
    Err(Error::UnsupportedGroup("no integer point with trivial stabilizer".into()))
}

fn sum_fractions(terms: &[(KPoly, KPoly)]) -> (KPoly, KPoly) {
    if terms.len() == 1 {
        return terms[0].clone();
    }
    let (l, r) = terms.split_at(terms.len() / 2);
    let (n1, d1) = sum_fractions(l);
    let (n2, d2) = sum_fractions(r);
    (n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2))
}
