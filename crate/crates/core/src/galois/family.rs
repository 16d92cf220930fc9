//! The Galois coverings of the sphere by the sphere: quotients by cyclic,
//! dihedral and the three platonic rotation groups.

use std::fmt;

use super::deck::verify_deck;
use super::group::{GroupClosure, TransformGroup, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::maps::{Moebius, RationalMap};
use crate::poly::Poly;
use crate::scalar::{ExactScalar, Field, NumberField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Power(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Power(n) => write!(f, "power {n}"),
            FamilyKind::Dihedral(n) => write!(f, "dihedral {n}"),
            FamilyKind::Tetrahedral => write!(f, "tetrahedral"),
            FamilyKind::Octahedral => write!(f, "octahedral"),
            FamilyKind::Icosahedral => write!(f, "icosahedral"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StandardFamily {
    pub kind: FamilyKind,
    pub map: RationalMap,
    pub group: TransformGroup,
    pub field: NumberField,
}

/// The classical quotient map with its deck group over the smallest
/// field containing the group.
///
/// The group is enumerated from its generators, its order is checked
/// against the degree and every generator is verified as a deck
/// transformation; together these force the group to be the whole deck
/// group.
pub fn standard_family(kind: FamilyKind) -> Result<StandardFamily> {
    let (field, map, gens) = match kind {
        FamilyKind::Power(n) | FamilyKind::Dihedral(n) if n < 2 => {
            return Err(Error::InvalidInput(format!("{kind} needs n >= 2")));
        }
        FamilyKind::Power(n) => {
            let k = NumberField::cyclotomic(n);
            let zeta = root_of_unity(&k, n);
            let map = RationalMap::polynomial(Poly::monomial(k.clone(), k.one(), n as usize));
            let rot = Moebius::new(&k, zeta, k.zero(), k.zero(), k.one())?;
            (k, map, vec![rot])
        }
        FamilyKind::Dihedral(n) => {
            let k = NumberField::cyclotomic(n);
            let zeta = root_of_unity(&k, n);
            let n = n as usize;
            let num = Poly::monomial(k.clone(), k.one(), 2 * n).add(&Poly::one(k.clone()));
            let den = Poly::monomial(k.clone(), k.from_i64(2), n);
            let map = RationalMap::new(num, den)?;
            let rot = Moebius::new(&k, zeta, k.zero(), k.zero(), k.one())?;
            let flip = Moebius::from_i64s(&k, 0, 1, 1, 0)?;
            (k, map, vec![rot, flip])
        }
        FamilyKind::Tetrahedral => {
            let k = NumberField::gaussian();
            // edge form over the square of the vertex form of the octahedron
            let num = Poly::from_i64s(k.clone(), &sparse(&[(12, 1), (8, -33), (4, -33), (0, 1)]));
            let den = Poly::from_i64s(k.clone(), &sparse(&[(10, 1), (6, -2), (2, 1)]));
            let map = RationalMap::new(num, den)?;
            (k.clone(), map, tetrahedral_generators(&k)?)
        }
        FamilyKind::Octahedral => {
            let k = NumberField::gaussian();
            let face = Poly::from_i64s(k.clone(), &sparse(&[(8, 1), (4, 14), (0, 1)]));
            let vertex = Poly::from_i64s(k.clone(), &sparse(&[(5, 1), (1, -1)]));
            let map = RationalMap::new(face.pow(3), vertex.pow(4).scale(&k.from_i64(108)))?;
            let mut gens = tetrahedral_generators(&k)?;
            gens.insert(0, Moebius::new(&k, k.generator(), k.zero(), k.zero(), k.one())?);
            (k, map, gens)
        }
        FamilyKind::Icosahedral => {
            let k = NumberField::cyclotomic(5);
            let h = Poly::from_i64s(k.clone(), &sparse(&[(20, -1), (15, 228), (10, -494), (5, -228), (0, -1)]));
            let f = Poly::from_i64s(k.clone(), &sparse(&[(11, 1), (6, 11), (1, -1)]));
            let map = RationalMap::new(h.pow(3), f.pow(5).scale(&k.from_i64(1728)).neg())?;
            let e = k.generator();
            let pow = |j: u64| k.pow(&e, j);
            let s1 = k.sub(&pow(1), &pow(4));
            let s2 = k.sub(&pow(2), &pow(3));
            let rot = Moebius::new(&k, e.clone(), k.zero(), k.zero(), k.one())?;
            let flip = Moebius::from_i64s(&k, 0, -1, 1, 0)?;
            let t = Moebius::new(&k, k.neg(&s1), s2.clone(), s2, s1)?;
            (k, map, vec![rot, flip, t])
        }
    };
    let group = match TransformGroup::generated(&field, gens, DEFAULT_GROUP_CAP)? {
        GroupClosure::Finite(g) => g,
        _ => return Err(Error::Consistency(format!("{kind} generators do not close up"))),
    };
    if group.order() != Some(map.degree()) {
        return Err(Error::Consistency(format!(
            "{kind}: group order {:?} differs from degree {}",
            group.order(),
            map.degree()
        )));
    }
    for g in group.generators() {
        if !verify_deck(&map, g) {
            return Err(Error::Consistency(format!("{kind}: {} is not a deck transformation", g.render("z"))));
        }
    }
    Ok(StandardFamily { kind, map, group, field })
}

fn root_of_unity(k: &NumberField, n: u32) -> ExactScalar {
    if n == 2 {
        k.from_i64(-1)
    } else {
        k.generator()
    }
}

/// `-z`, `1/z` and the order-3 rotation `(z + i)/(z - i)` permuting the
/// coordinate axes of the octahedron with vertices `0, ∞, ±1, ±i`.
fn tetrahedral_generators(k: &NumberField) -> Result<Vec<Moebius>> {
    let i = k.generator();
    Ok(vec![
        Moebius::from_i64s(k, -1, 0, 0, 1)?,
        Moebius::from_i64s(k, 0, 1, 1, 0)?,
        Moebius::new(k, k.one(), i.clone(), k.one(), k.neg(&i))?,
    ])
}

fn sparse(terms: &[(usize, i64)]) -> Vec<i64> {
    let n = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut v = vec![0; n + 1];
    for &(e, c) in terms {
        v[e] += c;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::deck::cleared_identity;

    #[test]
    fn small_families() {
        let f = standard_family(FamilyKind::Power(2)).unwrap();
        assert!(f.field.is_rationals());
        assert_eq!(f.group.order(), Some(2));
        let f = standard_family(FamilyKind::Dihedral(3)).unwrap();
        assert_eq!(f.group.order(), Some(6));
        assert_eq!(f.field.min_poly(), Poly::from_i64s(crate::scalar::Rationals, &[1, 1, 1]));
        let f = standard_family(FamilyKind::Dihedral(2)).unwrap();
        assert_eq!(f.group.order(), Some(4));
        assert!(standard_family(FamilyKind::Power(1)).is_err());
    }

    #[test]
    fn tetrahedral_all_elements() {
        let f = standard_family(FamilyKind::Tetrahedral).unwrap();
        assert_eq!(f.map.degree(), 12);
        let els = f.group.elements().unwrap();
        assert_eq!(els.len(), 12);
        for s in els {
            assert!(cleared_identity(&f.map, s).is_zero(), "{}", s.render("z"));
        }
    }

    #[test]
    fn platonic_orders() {
        assert_eq!(standard_family(FamilyKind::Octahedral).unwrap().group.order(), Some(24));
        assert_eq!(standard_family(FamilyKind::Icosahedral).unwrap().group.order(), Some(60));
    }
}
