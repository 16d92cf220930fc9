use super::{RationalMap, SpherePoint};
use crate::error::{Error, Result};
use crate::poly::trager::{factor_over, KPoly};
use crate::scalar::{roots, ComplexBall, Field, NumberField, DEFAULT_PRECISION_CAP};

/// A preimage: exact when it lies in the coefficient field, otherwise a
/// certified disc containing exactly one root.
#[derive(Clone, Debug, PartialEq)]
pub enum FiberPoint {
    Exact(SpherePoint),
    Ball(ComplexBall),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberEntry {
    pub point: FiberPoint,
    pub multiplicity: usize,
}

/// `P^-1(c)` with multiplicities summing to `deg P`.
///
/// Balls have radius at most `2^-prec * max(1, |mid|)` and are pairwise
/// disjoint; exact points come first in canonical order.
pub fn fiber(p: &RationalMap, c: &SpherePoint, prec: u32) -> Result<Vec<FiberEntry>> {
    fiber_with_cap(p, c, prec, DEFAULT_PRECISION_CAP)
}

pub fn fiber_with_cap(p: &RationalMap, c: &SpherePoint, prec: u32, cap: u32) -> Result<Vec<FiberEntry>> {
    let k = p.field().clone();
    if let SpherePoint::Finite(v) = c {
        k.validate(v)?;
    }
    let f = p.fiber_poly(c);
    let mut exact = Vec::new();
    // nonlinear factors grouped by multiplicity
    let mut layers: Vec<(KPoly, usize)> = Vec::new();
    for (g, e) in factor_over(&f).1 {
        if g.deg() == 1 {
            let root = k.neg(&g.coeff(0));
            exact.push(FiberEntry { point: FiberPoint::Exact(SpherePoint::Finite(root)), multiplicity: e });
        } else if let Some(layer) = layers.iter_mut().find(|(_, m)| *m == e) {
            layer.0 = layer.0.mul(&g);
        } else {
            layers.push((g, e));
        }
    }
    let inf = p.infinity_multiplicity(c);
    if inf > 0 {
        exact.push(FiberEntry { point: FiberPoint::Exact(SpherePoint::Infinity), multiplicity: inf });
    }
    exact.sort_by(|a, b| match (&a.point, &b.point) {
        (FiberPoint::Exact(x), FiberPoint::Exact(y)) => x.cmp(y),
        _ => std::cmp::Ordering::Equal,
    });

    let mut target = prec;
    loop {
        let mut balls: Vec<(ComplexBall, usize)> = Vec::new();
        for (g, e) in &layers {
            for b in isolate_over(&k, g, target, cap)? {
                balls.push((b, *e));
            }
        }
        let exact_balls: Vec<ComplexBall> = exact
            .iter()
            .filter_map(|e| match &e.point {
                FiberPoint::Exact(SpherePoint::Finite(a)) => Some(k.embed(a, target)),
                _ => None,
            })
            .collect();
        let disjoint = balls.iter().enumerate().all(|(i, (b, _))| {
            balls[i + 1..].iter().all(|(o, _)| !b.overlaps(o)) && exact_balls.iter().all(|o| !b.overlaps(o))
        });
        if disjoint {
            balls.sort_by(|a, b| (&a.0.re, &a.0.im).cmp(&(&b.0.re, &b.0.im)));
            let mut out = exact;
            out.extend(balls.into_iter().map(|(b, e)| FiberEntry { point: FiberPoint::Ball(b), multiplicity: e }));
            return Ok(out);
        }
        target *= 2;
        if target > cap {
            return Err(Error::PrecisionCap { cap, context: "separating fiber points".into() });
        }
    }
}

/// Certified discs for the roots of a squarefree polynomial over `k`.
pub(crate) fn isolate_over(k: &NumberField, g: &KPoly, target: u32, cap: u32) -> Result<Vec<ComplexBall>> {
    let cs = g.coeffs().to_vec();
    roots::isolate(|w| cs.iter().map(|c| k.embed(c, w)).collect(), target, cap)
}
