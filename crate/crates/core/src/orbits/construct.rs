use std::collections::BTreeSet;

use num_integer::Integer;

use super::orbit::{step_set, OrbitSet};
use crate::error::{Error, Result};
use crate::galois::{deck_group, TransformGroup};
use crate::maps::{Moebius, RationalMap, SpherePoint};
use crate::scalar::{rat, Field, NumberField};

/// Cap on group elements enumerated while locating deck transformations.
pub const WORD_SEARCH_CAP: usize = 200_000;

/// `P_i(S)` for one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSet {
    pub map_index: usize,
    /// Canonical order.
    pub values: Vec<SpherePoint>,
}

impl ValueSet {
    pub fn new(map_index: usize, values: impl IntoIterator<Item = SpherePoint>) -> Self {
        let set: BTreeSet<SpherePoint> = values.into_iter().collect();
        ValueSet { map_index, values: set.into_iter().collect() }
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        self.values.binary_search(p).is_ok()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A deck transformation of one of the maps and its word length in the
/// orbit generators, if it was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckWord {
    pub map_index: usize,
    pub element: Moebius,
    pub word_length: Option<usize>,
}

/// `z + 1`.
pub fn default_mu(k: &NumberField) -> Moebius {
    Moebius::from_i64s(k, 1, 1, 0, 1).expect("z + 1 is invertible")
}

/// Generators of the deck groups of all maps followed by `mu`, without
/// repeats. `mu` must be defined over the maps' field.
pub fn shared_generators(maps: &[RationalMap], mu: &Moebius) -> Result<Vec<Moebius>> {
    let k = common_field(maps)?;
    if mu.field() != &k {
        return Err(Error::FieldMismatch);
    }
    let mut gens: Vec<Moebius> = Vec::new();
    for p in maps {
        for g in deck_group(p)?.generators() {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
    }
    if !gens.contains(mu) {
        gens.push(mu.clone());
    }
    Ok(gens)
}

pub(crate) fn common_field(maps: &[RationalMap]) -> Result<NumberField> {
    let first = maps.first().ok_or_else(|| Error::InvalidInput("no maps given".into()))?;
    if maps.iter().any(|p| p.field() != first.field()) {
        return Err(Error::FieldMismatch);
    }
    Ok(first.field().clone())
}

/// Word lengths of every deck transformation of every map in the group
/// generated by `generators`, searching balls up to `radius`.
pub fn deck_word_lengths(maps: &[RationalMap], generators: &[Moebius], radius: usize) -> Result<Vec<DeckWord>> {
    let k = common_field(maps)?;
    let mut groups = Vec::new();
    for (i, p) in maps.iter().enumerate() {
        groups.push((i, deck_group(p)?));
    }
    Ok(word_lengths(&k, &groups, generators, radius))
}

/// As [`deck_word_lengths`], skipping maps whose deck group is not
/// available over their field.
pub(crate) fn available_deck_word_lengths(maps: &[RationalMap], generators: &[Moebius], radius: usize) -> Result<Vec<DeckWord>> {
    let k = common_field(maps)?;
    let groups: Vec<(usize, TransformGroup)> =
        maps.iter().enumerate().filter_map(|(i, p)| deck_group(p).ok().map(|g| (i, g))).collect();
    Ok(word_lengths(&k, &groups, generators, radius))
}

fn word_lengths(k: &NumberField, groups: &[(usize, TransformGroup)], generators: &[Moebius], radius: usize) -> Vec<DeckWord> {
    let mut out = Vec::new();
    for (i, g) in groups {
        for e in g.elements().expect("deck groups are enumerated") {
            out.push(DeckWord { map_index: *i, element: e.clone(), word_length: None });
        }
    }
    let steps = step_set(generators);
    let mut seen: BTreeSet<Moebius> = BTreeSet::from([Moebius::identity(k)]);
    let mut frontier = vec![Moebius::identity(k)];
    let settle = |level: &[Moebius], w: usize, out: &mut Vec<DeckWord>| {
        for d in out.iter_mut().filter(|d| d.word_length.is_none()) {
            if level.contains(&d.element) {
                d.word_length = Some(w);
            }
        }
    };
    settle(&frontier, 0, &mut out);
    for w in 1..=radius {
        if out.iter().all(|d| d.word_length.is_some()) || frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for x in &frontier {
            for s in &steps {
                let y = s.compose(x);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        settle(&next, w, &mut out);
        if seen.len() > WORD_SEARCH_CAP {
            break;
        }
        frontier = next;
    }
    out
}

/// Largest word length of a deck transformation that lies in the group,
/// the margin windowed verification needs.
pub fn growth_bound(words: &[DeckWord]) -> usize {
    words.iter().filter_map(|d| d.word_length).max().unwrap_or(0)
}

/// `K_i = P_i(S)` after checking that every deck transformation of every
/// map is a word of length at most `S.depth` in the orbit generators.
pub fn construct_sets(maps: &[RationalMap], s: &OrbitSet) -> Result<Vec<ValueSet>> {
    let k = common_field(maps)?;
    if s.field() != &k {
        return Err(Error::FieldMismatch);
    }
    for d in deck_word_lengths(maps, s.generators(), s.depth().max(1))? {
        if d.word_length.is_none() {
            return Err(Error::DeckContainment(format!(
                "{} is a deck transformation of map {} but no word of length at most {} in the orbit generators",
                d.element.render("z"),
                d.map_index + 1,
                s.depth().max(1)
            )));
        }
    }
    Ok(maps
        .iter()
        .enumerate()
        .map(|(i, p)| ValueSet::new(i, s.points().map(|(x, _)| p.eval(x))))
        .collect())
}

/// Whether `z` is a critical point of some map.
pub fn is_critical_point(maps: &[RationalMap], z: &SpherePoint) -> Result<bool> {
    for p in maps {
        let c = p.eval(z);
        let local = p
            .fiber_poly(&c)
            .squarefree_decomposition()
            .into_iter()
            .any(|(g, e)| e > 1 && z.as_finite().is_some_and(|a| p.field().is_zero(&g.eval(a))));
        let at_infinity = z.is_infinity() && p.infinity_multiplicity(&c) > 1;
        if local || at_infinity {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The first rational in `0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, -3/2,
/// 1/3, -1/3, 2/3, ...` that is not a critical point of any map: height
/// `max(|n|, d)` first, then denominator, then positive before negative.
pub fn admissible_base(maps: &[RationalMap]) -> Result<SpherePoint> {
    let k = common_field(maps)?;
    let zero = SpherePoint::Finite(k.zero());
    if !is_critical_point(maps, &zero)? {
        return Ok(zero);
    }
    // finitely many critical points, so this terminates
    for h in 1i64.. {
        for d in 1..=h {
            let numerators: Vec<i64> = if d == h && h > 1 { (1..h).collect() } else { vec![h] };
            for n in numerators {
                if n.gcd(&d) != 1 {
                    continue;
                }
                for sign in [1, -1] {
                    let z = SpherePoint::Finite(k.from_rational(&rat(sign * n, d)));
                    if !is_critical_point(maps, &z)? {
                        return Ok(z);
                    }
                }
            }
        }
    }
    unreachable!("the enumeration is infinite")
}
