//! Critical values and the local degrees over them.
//!
//! Critical values are grouped into classes of conjugates: each class is
//! either a single exact point or the minimal polynomial of its members
//! over the coefficient field of the map (the rationals when every
//! coefficient is rational). Local degrees over a class are computed once,
//! by a squarefree decomposition over the field generated by one member.

use std::cmp::Ordering;

use num_integer::Integer;

use super::{RationalMap, SpherePoint};
use crate::error::{Error, Result};
use crate::poly::linalg::nullspace;
use crate::poly::trager::{canonical_cmp, KPoly};
use crate::poly::Poly;
use crate::scalar::{Factorization, Field, NumberField, QuotientField, Rationals};

/// A set of conjugate points: a literal point or the roots of an
/// irreducible polynomial of degree at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraicPointSet {
    Point(SpherePoint),
    Class(KPoly),
}

impl AlgebraicPointSet {
    /// Number of points in the set.
    pub fn size(&self) -> usize {
        match self {
            AlgebraicPointSet::Point(_) => 1,
            AlgebraicPointSet::Class(p) => p.deg(),
        }
    }

    pub fn render(&self, k: &NumberField) -> String {
        match self {
            AlgebraicPointSet::Point(p) => p.render(k),
            AlgebraicPointSet::Class(m) => format!("roots of {}", m.render("c")),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            AlgebraicPointSet::Point(SpherePoint::Finite(_)) => 0,
            AlgebraicPointSet::Class(_) => 1,
            AlgebraicPointSet::Point(SpherePoint::Infinity) => 2,
        }
    }

    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.rank().cmp(&o.rank()).then_with(|| match (self, o) {
            (AlgebraicPointSet::Point(a), AlgebraicPointSet::Point(b)) => a.cmp(b),
            (AlgebraicPointSet::Class(a), AlgebraicPointSet::Class(b)) => canonical_cmp(a, b),
            _ => Ordering::Equal,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortraitEntry {
    pub value: AlgebraicPointSet,
    /// Local degrees over one member of the class, sorted descending.
    pub local_degrees: Vec<usize>,
}

impl PortraitEntry {
    /// The lcm of the local degrees.
    pub fn nu(&self) -> usize {
        self.local_degrees.iter().fold(1, |a, &b| a.lcm(&b))
    }

    /// Contribution `sum (e - 1)` of one member of the class.
    pub fn ramification(&self) -> usize {
        self.local_degrees.iter().map(|e| e - 1).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationPortrait {
    pub degree: usize,
    pub entries: Vec<PortraitEntry>,
}

impl RamificationPortrait {
    /// `sum over branch points of sum (e - 1)`; equals `2 deg - 2`.
    pub fn total_ramification(&self) -> usize {
        self.entries.iter().map(|e| e.value.size() * e.ramification()).sum()
    }

    pub fn branch_point_count(&self) -> usize {
        self.entries.iter().map(|e| e.value.size()).sum()
    }
}

enum Value<K: Field> {
    Finite(K::Elem),
    Infinity,
    Class(Poly<K>),
}

impl<K: Field> PartialEq for Value<K> {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Value::Finite(a), Value::Finite(b)) => a == b,
            (Value::Infinity, Value::Infinity) => true,
            (Value::Class(a), Value::Class(b)) => a == b,
            _ => false,
        }
    }
}

/// The ramification portrait of a map of degree at least 2.
pub fn critical_structure(p: &RationalMap) -> Result<RamificationPortrait> {
    if p.degree() < 2 {
        return Err(Error::Precondition("critical structure needs degree at least 2".into()));
    }
    let k = p.field().clone();
    let mut entries: Vec<PortraitEntry> = if let Some((n, d)) = p.rational_parts() {
        portrait_generic::<Rationals>(&n, &d)?
            .into_iter()
            .map(|(v, degs)| {
                let value = match v {
                    Value::Finite(c) => AlgebraicPointSet::Point(SpherePoint::Finite(k.from_rational(&c))),
                    Value::Infinity => AlgebraicPointSet::Point(SpherePoint::Infinity),
                    Value::Class(m) => AlgebraicPointSet::Class(m.map_coeffs(k.clone(), |c| k.from_rational(c))),
                };
                PortraitEntry { value, local_degrees: degs }
            })
            .collect()
    } else {
        portrait_generic::<NumberField>(p.num(), p.den())?
            .into_iter()
            .map(|(v, degs)| {
                let value = match v {
                    Value::Finite(c) => AlgebraicPointSet::Point(SpherePoint::Finite(c)),
                    Value::Infinity => AlgebraicPointSet::Point(SpherePoint::Infinity),
                    Value::Class(m) => AlgebraicPointSet::Class(m),
                };
                PortraitEntry { value, local_degrees: degs }
            })
            .collect()
    };
    entries.sort_by(|a, b| a.value.canonical_cmp(&b.value));
    let portrait = RamificationPortrait { degree: p.degree(), entries };
    let expected = 2 * p.degree() - 2;
    if portrait.total_ramification() != expected {
        return Err(Error::Consistency(format!(
            "ramification total {} differs from 2d - 2 = {expected}",
            portrait.total_ramification()
        )));
    }
    Ok(portrait)
}

fn portrait_generic<K: Factorization>(num: &Poly<K>, den: &Poly<K>) -> Result<Vec<(Value<K>, Vec<usize>)>> {
    let k = num.field().clone();
    let d = num.deg().max(den.deg());
    let mut values: Vec<Value<K>> = Vec::new();
    let push = |v: Value<K>, values: &mut Vec<Value<K>>| {
        if !values.contains(&v) {
            values.push(v);
        }
    };

    // finite critical points
    let w = num.derivative().mul(den).sub(&num.mul(&den.derivative()));
    for (part, _) in w.squarefree_decomposition() {
        for factor in k.factor_squarefree(&part) {
            if factor.divides(den) {
                continue;
            }
            let m = critical_value_minpoly(num, den, &factor)?;
            if m.deg() == 1 {
                push(Value::Finite(k.neg(&m.coeff(0))), &mut values);
            } else {
                push(Value::Class(m), &mut values);
            }
        }
    }
    // the source point at infinity
    match num.deg().cmp(&den.deg()) {
        Ordering::Greater => {
            if num.deg() - den.deg() >= 2 {
                push(Value::Infinity, &mut values);
            }
        }
        _ => {
            let c0 = if num.deg() == den.deg() { k.div(&num.lc(), &den.lc()).expect("nonzero") } else { k.zero() };
            let f = num.sub(&den.scale(&c0));
            if d - f.deg() >= 2 {
                push(Value::Finite(c0), &mut values);
            }
        }
    }
    // poles of higher order
    if den.deg() > 0 && !den.is_squarefree() {
        push(Value::Infinity, &mut values);
    }

    let mut out = Vec::new();
    for v in values {
        let degs = match &v {
            Value::Finite(c) => local_degrees(&num.sub(&den.scale(c)), d),
            Value::Infinity => local_degrees(den, d),
            Value::Class(m) => {
                let l = QuotientField::new(m.clone());
                let lift = |p: &Poly<K>| p.map_coeffs(l.clone(), |c| l.lift(c));
                let gamma = l.generator();
                let f = lift(num).sub(&lift(den).scale(&gamma));
                local_degrees(&f, d)
            }
        };
        if degs.iter().any(|&e| e > 1) {
            out.push((v, degs));
        }
    }
    Ok(out)
}

/// Local degrees of the fiber cut out by `f` in a map of degree `d`;
/// missing degree is the multiplicity of infinity.
fn local_degrees<L: Field>(f: &Poly<L>, d: usize) -> Vec<usize> {
    let mut degs = Vec::new();
    for (a, i) in f.squarefree_decomposition() {
        degs.extend(std::iter::repeat_n(i, a.deg()));
    }
    if d > f.deg() {
        degs.push(d - f.deg());
    }
    degs.sort_unstable_by(|a, b| b.cmp(a));
    degs
}

/// Minimal polynomial over `K` of `num(a)/den(a)` for a root `a` of the
/// irreducible `w`, by finding the first linear dependence among powers.
fn critical_value_minpoly<K: Field>(num: &Poly<K>, den: &Poly<K>, w: &Poly<K>) -> Result<Poly<K>> {
    let k = num.field().clone();
    let l = QuotientField::new(w.clone());
    let gamma = l
        .div(&l.reduce(num), &l.reduce(den))
        .ok_or_else(|| Error::Consistency("critical point is a pole".into()))?;
    let n = l.degree();
    let mut powers = vec![l.one()];
    for deg in 1..=n {
        let next = l.mul(powers.last().unwrap(), &gamma);
        powers.push(next);
        let rows: Vec<Vec<K::Elem>> = (0..n).map(|i| powers.iter().map(|v| v[i].clone()).collect()).collect();
        let ns = nullspace(&k, rows, deg + 1);
        if let Some(v) = ns.into_iter().find(|v| !k.is_zero(&v[deg])) {
            return Ok(Poly::new(k.clone(), v).monic());
        }
    }
    Err(Error::Consistency("no minimal polynomial within the field degree".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn degrees(p: &RamificationPortrait) -> Vec<(String, Vec<usize>)> {
        let k = q();
        p.entries.iter().map(|e| (e.value.render(&k), e.local_degrees.clone())).collect()
    }

    #[test]
    fn square_map() {
        let p = RationalMap::from_i64s(&q(), &[0, 0, 1], &[1]).unwrap();
        let s = critical_structure(&p).unwrap();
        assert_eq!(degrees(&s), vec![("0".into(), vec![2]), ("inf".into(), vec![2])]);
    }

    #[test]
    fn chebyshev_cubic() {
        let p = RationalMap::from_i64s(&q(), &[0, -3, 0, 1], &[1]).unwrap();
        let s = critical_structure(&p).unwrap();
        assert_eq!(
            degrees(&s),
            vec![("-2".into(), vec![2, 1]), ("2".into(), vec![2, 1]), ("inf".into(), vec![3])]
        );
    }

    #[test]
    fn quartic_critical_values_split_over_q() {
        // c^3 + 27 = (c + 3)(c^2 - 3c + 9)
        let p = RationalMap::from_i64s(&q(), &[0, -4, 0, 0, 1], &[1]).unwrap();
        let s = critical_structure(&p).unwrap();
        assert_eq!(s.entries.len(), 3, "{s:?}");
        assert_eq!(s.entries[0].value, AlgebraicPointSet::Point(SpherePoint::from_i64(&q(), -3)));
        match &s.entries[1].value {
            AlgebraicPointSet::Class(m) => assert_eq!(m, &Poly::from_i64s(q(), &[9, -3, 1])),
            other => panic!("expected a class, got {other:?}"),
        }
        assert_eq!(s.entries[0].local_degrees, vec![2, 1, 1]);
        assert_eq!(s.entries[1].local_degrees, vec![2, 1, 1]);
        assert_eq!(s.entries[2].local_degrees, vec![4]);
        assert_eq!(s.branch_point_count(), 4);
    }

    #[test]
    fn value_at_infinity_can_be_critical() {
        // (z^2 + 1)/z^2 = 1 + 1/z^2: ramified at infinity over 1 and at 0 over infinity
        let p = RationalMap::from_i64s(&q(), &[1, 0, 1], &[0, 0, 1]).unwrap();
        let s = critical_structure(&p).unwrap();
        assert_eq!(degrees(&s), vec![("1".into(), vec![2]), ("inf".into(), vec![2])]);
    }

    #[test]
    fn dihedral_five() {
        // (z^10 + 1) / (2 z^5)
        let mut num = vec![0i64; 11];
        num[0] = 1;
        num[10] = 1;
        let mut den = vec![0i64; 6];
        den[5] = 2;
        let p = RationalMap::from_i64s(&q(), &num, &den).unwrap();
        let s = critical_structure(&p).unwrap();
        assert_eq!(
            degrees(&s),
            vec![("-1".into(), vec![2; 5]), ("1".into(), vec![2; 5]), ("inf".into(), vec![5, 5])]
        );
    }
}
