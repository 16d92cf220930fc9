use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::construct::{available_deck_word_lengths, common_field, growth_bound, ValueSet};
use super::orbit::OrbitSet;
use crate::error::{Error, Result};
use crate::maps::{RationalMap, SpherePoint};
use crate::poly::trager::factor_over;
use crate::scalar::{Field, NumberField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    /// Every fiber through a window point lies in `S`.
    FiberCompleteness,
    /// Membership in `P_i^-1(K_i)` agrees across all maps.
    PreimageEquality,
    /// The value sets agree on the image of the window.
    SingleK,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::FiberCompleteness => "fiber-completeness",
            CheckKind::PreimageEquality => "equality-of-preimages",
            CheckKind::SingleK => "single-K-equality",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub window_depth: usize,
    /// Largest word length of a deck transformation in the orbit group.
    pub margin: usize,
    pub checks: Vec<Check>,
    /// `P_i^-1(K_i)` restricted to the window, per map.
    pub window_preimages: Vec<Vec<SpherePoint>>,
    /// `K_i` restricted to `P_i(window)`, per map.
    pub window_values: Vec<Vec<SpherePoint>>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Counterexamples kept per check.
const MAX_COUNTEREXAMPLES: usize = 20;

/// `P_1^-1(K_1) = ... = P_k^-1(K_k)` on the window of word length
/// `window_depth`, which must leave room for the deck margin inside `S`.
pub fn verify_shared_preimage(
    maps: &[RationalMap],
    sets: &[ValueSet],
    s: &OrbitSet,
    window_depth: usize,
) -> Result<VerificationReport> {
    verify(maps, sets, s, window_depth, false)
}

/// As [`verify_shared_preimage`], adding the check that one value set
/// serves every map on the image of the window.
pub fn verify_single_k(maps: &[RationalMap], sets: &[ValueSet], s: &OrbitSet, window_depth: usize) -> Result<VerificationReport> {
    verify(maps, sets, s, window_depth, true)
}

fn verify(maps: &[RationalMap], sets: &[ValueSet], s: &OrbitSet, window_depth: usize, single_k: bool) -> Result<VerificationReport> {
    let k = common_field(maps)?;
    if s.field() != &k {
        return Err(Error::FieldMismatch);
    }
    if sets.len() != maps.len() || sets.iter().enumerate().any(|(i, v)| v.map_index != i) {
        return Err(Error::InvalidInput("one value set per map, in map order".into()));
    }
    let margin = growth_bound(&available_deck_word_lengths(maps, s.generators(), s.depth())?);
    if window_depth + margin > s.depth() {
        return Err(Error::Precondition(format!(
            "window {window_depth} plus deck margin {margin} exceeds the orbit depth {}",
            s.depth()
        )));
    }
    let window = s.within(window_depth);
    let name = |p: &SpherePoint| p.render(&k);

    // (a) fibers through the window stay in S
    let mut fibers: BTreeMap<(usize, SpherePoint), Fiber> = BTreeMap::new();
    let mut completeness = Vec::new();
    for x in &window {
        for (i, p) in maps.iter().enumerate() {
            let c = p.eval(x);
            let fib = fibers.entry((i, c.clone())).or_insert_with(|| exact_fiber(p, &c));
            for y in &fib.points {
                if !s.contains(y) {
                    completeness.push(format!("P_{0}^-1(P_{0}({1})) contains {2} outside S", i + 1, name(x), name(y)));
                }
            }
            if let Some(f) = &fib.outside_field {
                completeness.push(format!("P_{0}^-1(P_{0}({1})) has points outside the field: roots of {f}", i + 1, name(x)));
            }
        }
    }
    completeness.sort();
    completeness.dedup();

    // (b) membership agrees on the window, the fibers through it, and the
    // fibers over values that do not come from S
    let mut candidates: BTreeSet<SpherePoint> = window.iter().cloned().collect();
    candidates.extend(fibers.values().flat_map(|f| f.points.iter().cloned()));
    for (i, (p, set)) in maps.iter().zip(sets).enumerate() {
        let from_s: BTreeSet<SpherePoint> = s.points().map(|(x, _)| p.eval(x)).collect();
        for v in set.values.iter().filter(|v| !from_s.contains(v)) {
            let fib = fibers.entry((i, v.clone())).or_insert_with(|| exact_fiber(p, v));
            candidates.extend(fib.points.iter().cloned());
        }
    }
    let mut equality = Vec::new();
    for x in &candidates {
        let member: Vec<bool> = maps.iter().zip(sets).map(|(p, set)| set.contains(&p.eval(x))).collect();
        if member.iter().any(|&m| m != member[0]) {
            let inside = member.iter().position(|&m| m).expect("some map contains it");
            let outside = member.iter().position(|&m| !m).expect("some map misses it");
            equality.push(format!(
                "{0} ∉ P_{1}^-1(K_{1}) but {0} ∈ P_{2}^-1(K_{2})",
                name(x),
                outside + 1,
                inside + 1
            ));
        }
    }

    let window_preimages: Vec<Vec<SpherePoint>> = maps
        .iter()
        .zip(sets)
        .map(|(p, set)| window.iter().filter(|x| set.contains(&p.eval(x))).cloned().collect())
        .collect();
    let window_values: Vec<Vec<SpherePoint>> = maps
        .iter()
        .zip(sets)
        .map(|(p, set)| {
            let image: BTreeSet<SpherePoint> = window.iter().map(|x| p.eval(x)).filter(|v| set.contains(v)).collect();
            image.into_iter().collect()
        })
        .collect();

    let mut checks = vec![check(CheckKind::FiberCompleteness, completeness), check(CheckKind::PreimageEquality, equality)];
    if single_k {
        let mut diffs = Vec::new();
        for (i, vals) in window_values.iter().enumerate().skip(1) {
            for v in vals.iter().filter(|v| window_values[0].binary_search(v).is_err()) {
                diffs.push(format!("{} ∈ K_{} but ∉ K_1 on the window image", name(v), i + 1));
            }
            for v in window_values[0].iter().filter(|v| vals.binary_search(v).is_err()) {
                diffs.push(format!("{} ∈ K_1 but ∉ K_{} on the window image", name(v), i + 1));
            }
        }
        checks.push(check(CheckKind::SingleK, diffs));
    }
    Ok(VerificationReport { window_depth, margin, checks, window_preimages, window_values })
}

fn check(kind: CheckKind, mut counterexamples: Vec<String>) -> Check {
    let passed = counterexamples.is_empty();
    counterexamples.truncate(MAX_COUNTEREXAMPLES);
    Check { kind, passed, counterexamples }
}

struct Fiber {
    points: Vec<SpherePoint>,
    /// First factor without roots in the field, rendered.
    outside_field: Option<String>,
}

/// Distinct points of `P^-1(c)` in the field of `P`.
fn exact_fiber(p: &RationalMap, c: &SpherePoint) -> Fiber {
    let k: &NumberField = p.field();
    let mut points = Vec::new();
    let mut outside_field = None;
    for (g, _) in factor_over(&p.fiber_poly(c)).1 {
        if g.deg() == 1 {
            points.push(SpherePoint::Finite(k.neg(&g.coeff(0))));
        } else if outside_field.is_none() {
            outside_field = Some(g.render("z"));
        }
    }
    if p.infinity_multiplicity(c) > 0 {
        points.push(SpherePoint::Infinity);
    }
    points.sort();
    Fiber { points, outside_field }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::Moebius;
    use crate::orbits::{construct_sets, default_mu, orbit, shared_generators};
    use crate::scalar::NumberField;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn map(num: &[i64], den: &[i64]) -> RationalMap {
        RationalMap::from_i64s(&q(), num, den).unwrap()
    }

    fn int(n: i64) -> SpherePoint {
        SpherePoint::from_i64(&q(), n)
    }

    #[test]
    fn intro_example_passes() {
        let maps = [map(&[0, 0, 1], &[1]), map(&[1, 2, 1], &[1])];
        let gens = shared_generators(&maps, &default_mu(&q())).unwrap();
        let s = orbit(&q(), int(0), gens, 12, 10_000).unwrap();
        let sets = construct_sets(&maps, &s).unwrap();
        let r = verify_single_k(&maps, &sets, &s, 8).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.margin, 1);
        let window: Vec<SpherePoint> = (-9..=8).map(int).collect();
        assert_eq!(r.window_preimages, vec![window.clone(), window]);
        assert_eq!(r.window_values[0], (0..=9).map(|n| int(n * n)).collect::<Vec<_>>());
        assert!(matches!(verify_shared_preimage(&maps, &sets, &s, 12), Err(Error::Precondition(_))));
    }

    #[test]
    fn deliberate_mismatch_fails() {
        let maps = [map(&[0, 0, 1], &[1]), map(&[0, 0, 1], &[1])];
        let s = orbit(&q(), int(1), Vec::<Moebius>::new(), 0, 10).unwrap();
        let sets = [ValueSet::new(0, [int(1)]), ValueSet::new(1, [int(4)])];
        let r = verify_shared_preimage(&maps, &sets, &s, 0).unwrap();
        assert!(!r.passed());
        let eq = &r.checks[1];
        assert_eq!(eq.kind, CheckKind::PreimageEquality);
        assert!(eq.counterexamples.iter().any(|c| c.starts_with("2 ∉ P_1^-1(K_1)")), "{:?}", eq.counterexamples);
        assert!(!r.checks[0].passed);
    }

    #[test]
    fn irrational_fibers_are_counterexamples() {
        let maps = [map(&[0, 0, 1], &[1])];
        let s = orbit(&q(), int(2), vec![Moebius::from_i64s(&q(), -1, 0, 0, 1).unwrap()], 2, 10).unwrap();
        let sets = [ValueSet::new(0, [int(4), int(2)])];
        let r = verify_shared_preimage(&maps, &sets, &s, 1).unwrap();
        assert!(r.checks[0].passed);
        // the value 2 has no preimage in the field; it is ignored by membership
        assert!(r.checks[1].passed);
        let cubes = [map(&[0, 0, 0, 1], &[1])];
        let sets = [ValueSet::new(0, s.points().map(|(x, _)| cubes[0].eval(x)))];
        let r = verify_shared_preimage(&cubes, &sets, &s, 1).unwrap();
        assert!(r.checks[0].counterexamples.iter().any(|c| c.contains("outside the field")), "{r:?}");
    }
}
