use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::maps::Moebius;
use crate::scalar::NumberField;

/// Default cap on enumerated group orders.
pub const DEFAULT_GROUP_CAP: usize = 10080;

/// A group of Möbius transformations given by generators, with the full
/// element list when it is finite and has been enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformGroup {
    field: NumberField,
    generators: Vec<Moebius>,
    elements: Option<Vec<Moebius>>,
}

/// Outcome of enumerating the group generated by some transformations.
#[derive(Clone, Debug)]
pub enum GroupClosure {
    Finite(TransformGroup),
    Infinite(GrowthCertificate),
    /// The cap was reached without a certificate either way.
    Undetermined { ball_sizes: Vec<usize> },
}

/// Word-ball sizes that grew strictly for at least eight consecutive radii,
/// together with an element that has no finite order.
#[derive(Clone, Debug)]
pub struct GrowthCertificate {
    pub ball_sizes: Vec<usize>,
    pub infinite_order_element: Moebius,
}

impl TransformGroup {
    /// A finite group from its complete element list.
    pub fn from_elements(field: &NumberField, generators: Vec<Moebius>, elements: Vec<Moebius>) -> Result<Self> {
        let set: BTreeSet<Moebius> = elements.iter().cloned().collect();
        if !set.contains(&Moebius::identity(field)) {
            return Err(Error::InvalidInput("group element list lacks the identity".into()));
        }
        for g in &set {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !set.contains(&g.inverse()) {
                return Err(Error::InvalidInput(format!("element list is not closed under inverses: {}", g.render("z"))));
            }
            for h in &set {
                if !set.contains(&g.compose(h)) {
                    return Err(Error::InvalidInput("element list is not closed under composition".into()));
                }
            }
        }
        Ok(TransformGroup { field: field.clone(), generators, elements: Some(set.into_iter().collect()) })
    }

    /// Generators only; the elements are not enumerated.
    pub fn from_generators(field: &NumberField, generators: Vec<Moebius>) -> Self {
        TransformGroup { field: field.clone(), generators, elements: None }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn generators(&self) -> &[Moebius] {
        &self.generators
    }

    /// Elements in canonical order, when enumerated.
    pub fn elements(&self) -> Option<&[Moebius]> {
        self.elements.as_deref()
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    pub fn contains(&self, g: &Moebius) -> Option<bool> {
        self.elements.as_ref().map(|e| e.binary_search(g).is_ok())
    }

    /// Enumerates `<generators>` breadth first.
    pub fn generated(field: &NumberField, generators: Vec<Moebius>, cap: usize) -> Result<GroupClosure> {
        for g in &generators {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let mut steps: Vec<Moebius> = Vec::new();
        for g in &generators {
            for h in [g.clone(), g.inverse()] {
                if !h.is_identity() && !steps.contains(&h) {
                    steps.push(h);
                }
            }
        }
        let id = Moebius::identity(field);
        let mut seen: BTreeSet<Moebius> = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        let mut ball_sizes = vec![1];
        let mut witness: Option<Moebius> = None;
        loop {
            let mut next = Vec::new();
            for x in &frontier {
                for s in &steps {
                    let y = s.compose(x);
                    if !seen.contains(&y) {
                        seen.insert(y.clone());
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                let elements: Vec<Moebius> = seen.into_iter().collect();
                return Ok(GroupClosure::Finite(TransformGroup {
                    field: field.clone(),
                    generators,
                    elements: Some(elements),
                }));
            }
            next.sort();
            if witness.is_none() {
                witness = next.iter().find(|g| g.has_infinite_order()).cloned();
            }
            ball_sizes.push(seen.len());
            if let Some(w) = &witness {
                if strictly_growing_tail(&ball_sizes, 8) {
                    return Ok(GroupClosure::Infinite(GrowthCertificate {
                        ball_sizes,
                        infinite_order_element: w.clone(),
                    }));
                }
            }
            if seen.len() > cap {
                return Ok(GroupClosure::Undetermined { ball_sizes });
            }
            frontier = next;
        }
    }

    /// A small generating set, chosen greedily in canonical order.
    pub fn minimal_generators(field: &NumberField, elements: &[Moebius]) -> Vec<Moebius> {
        let mut gens: Vec<Moebius> = Vec::new();
        let mut span: BTreeSet<Moebius> = BTreeSet::from([Moebius::identity(field)]);
        for g in elements {
            if span.contains(g) {
                continue;
            }
            gens.push(g.clone());
            span = close_finite(&span, &gens, elements.len());
            if span.len() == elements.len() {
                break;
            }
        }
        gens
    }
}

/// Closure of `start` under `gens`, abandoned once it exceeds `limit`.
fn close_finite(start: &BTreeSet<Moebius>, gens: &[Moebius], limit: usize) -> BTreeSet<Moebius> {
    let mut seen = start.clone();
    let mut frontier: Vec<Moebius> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = g.compose(x);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
                if seen.len() > limit {
                    return seen;
                }
            }
        }
        frontier = next;
    }
    seen
}

fn strictly_growing_tail(sizes: &[usize], radii: usize) -> bool {
    sizes.len() > radii && sizes[sizes.len() - radii - 1..].windows(2).all(|w| w[0] < w[1])
}
