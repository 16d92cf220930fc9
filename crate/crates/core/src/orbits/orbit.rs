use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::maps::{Moebius, SpherePoint};
use crate::scalar::NumberField;

/// Default cap on the number of orbit points.
pub const DEFAULT_POINT_CAP: usize = 1_000_000;

/// A truncated orbit: every point reachable from the base by a word of
/// length at most `depth` in the generators and their inverses, with its
/// minimal word length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSet {
    field: NumberField,
    base: SpherePoint,
    generators: Vec<Moebius>,
    depth: usize,
    /// Points by word length, each level in canonical order.
    levels: Vec<Vec<SpherePoint>>,
    lengths: BTreeMap<SpherePoint, usize>,
}

/// Breadth-first orbit of `base` to word length `depth`.
pub fn orbit(field: &NumberField, base: SpherePoint, generators: Vec<Moebius>, depth: usize, cap: usize) -> Result<OrbitSet> {
    if let SpherePoint::Finite(a) = &base {
        field.validate(a)?;
    }
    if generators.iter().any(|g| g.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let steps = step_set(&generators);
    let mut lengths = BTreeMap::from([(base.clone(), 0usize)]);
    let mut levels = vec![vec![base.clone()]];
    for w in 1..=depth {
        let mut next: Vec<SpherePoint> = Vec::new();
        for x in &levels[w - 1] {
            for s in &steps {
                let y = s.apply(x);
                if !lengths.contains_key(&y) {
                    lengths.insert(y.clone(), w);
                    next.push(y);
                    if lengths.len() > cap {
                        return Err(Error::CapExceeded(format!("orbit exceeds {cap} points at word length {w}")));
                    }
                }
            }
        }
        next.sort();
        let done = next.is_empty();
        levels.push(next);
        if done {
            // finite orbit: further levels stay empty
            levels.resize(depth + 1, Vec::new());
            break;
        }
    }
    Ok(OrbitSet { field: field.clone(), base, generators, depth, levels, lengths })
}

/// Generators and their inverses, identities dropped, first occurrence kept.
pub(crate) fn step_set(generators: &[Moebius]) -> Vec<Moebius> {
    let mut steps: Vec<Moebius> = Vec::new();
    for g in generators {
        for h in [g.clone(), g.inverse()] {
            if !h.is_identity() && !steps.contains(&h) {
                steps.push(h);
            }
        }
    }
    steps
}

impl OrbitSet {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn base(&self) -> &SpherePoint {
        &self.base
    }

    pub fn generators(&self) -> &[Moebius] {
        &self.generators
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        self.lengths.contains_key(p)
    }

    pub fn word_length(&self, p: &SpherePoint) -> Option<usize> {
        self.lengths.get(p).copied()
    }

    /// Points in order of word length, canonical within a length.
    pub fn points(&self) -> impl Iterator<Item = (&SpherePoint, usize)> {
        self.levels.iter().enumerate().flat_map(|(w, level)| level.iter().map(move |p| (p, w)))
    }

    /// Points of word length at most `w`, in canonical order.
    pub fn within(&self, w: usize) -> Vec<SpherePoint> {
        let mut pts: Vec<SpherePoint> = self.levels.iter().take(w + 1).flatten().cloned().collect();
        pts.sort();
        pts
    }

    /// Number of points at each word length.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Field};

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> Moebius {
        Moebius::from_i64s(&q(), a, b, c, d).unwrap()
    }

    fn ints(s: &OrbitSet) -> Vec<i64> {
        let k = q();
        s.within(s.depth())
            .iter()
            .map(|p| {
                let r = k.as_rational(p.as_finite().unwrap()).unwrap();
                assert!(r.is_integer());
                i64::try_from(r.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn integer_orbit_is_an_interval() {
        let s = orbit(&q(), SpherePoint::from_i64(&q(), 0), vec![m(-1, 0, 0, 1), m(-1, -2, 0, 1), m(1, 1, 0, 1)], 8, 1000)
            .unwrap();
        // -9 = -(7) - 2 is a word of length 8
        assert_eq!(ints(&s), (-9..=8).collect::<Vec<_>>());
        assert_eq!(s.word_length(&SpherePoint::from_i64(&q(), -2)), Some(1));
        assert_eq!(s.word_length(&SpherePoint::from_i64(&q(), 8)), Some(8));
    }

    #[test]
    fn finite_orbit() {
        let s = orbit(&q(), SpherePoint::from_i64(&q(), 1), vec![m(-1, 0, 0, 1)], 5, 1000).unwrap();
        assert_eq!(ints(&s), vec![-1, 1]);
        assert_eq!(s.level_sizes(), vec![1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn depth_three_from_two() {
        let k = q();
        let s = orbit(&k, SpherePoint::from_i64(&k, 2), vec![m(0, 1, 1, 0), m(-1, 0, 0, 1), m(1, 1, 0, 1)], 3, 1000).unwrap();
        for (n, d) in [(2, 1), (1, 2), (-2, 1), (3, 1), (1, 3), (-1, 2), (3, 2), (4, 1)] {
            assert!(s.contains(&SpherePoint::Finite(k.from_rational(&rat(n, d)))), "{n}/{d}");
        }
        assert!(s.contains(&SpherePoint::Infinity));
    }

    #[test]
    fn cap_is_enforced() {
        let r = orbit(&q(), SpherePoint::from_i64(&q(), 0), vec![m(1, 1, 0, 1)], 50, 10);
        assert!(matches!(r, Err(Error::CapExceeded(_))));
    }
}
