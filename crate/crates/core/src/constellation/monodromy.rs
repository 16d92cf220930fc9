//! Monodromy of a rational map by tracking its fiber along loops.
//!
//! Conventions: the base point `b` is a regular value offset from the
//! centroid of the finite critical values. The loop around a finite
//! critical value `c` runs straight from `b` towards `c`, once
//! counterclockwise around a small circle, and back. Loops are ordered by
//! the argument of `c - b` in `(-π, π]`, then by modulus. The product of
//! the loops in that order is a counterclockwise circle around every
//! finite critical value, so the permutation at `∞` is the inverse of the
//! product of the others and comes last. Sheets are the preimages of `b`,
//! numbered in order of real then imaginary part in the tracking chart.

use num_complex::Complex64;

use super::covering::{genus, Constellation};
use super::perm::{product, Permutation};
use crate::error::{Error, Result};
use crate::maps::{critical_structure, AlgebraicPointSet, Moebius, RationalMap, SpherePoint};
use crate::maps::isolate_over;
use crate::scalar::{roots, ComplexBall, Field, NumberField, DEFAULT_PRECISION_CAP};

const CIRCLE_VERTICES: usize = 24;
const MIN_STEP: f64 = 1.0 / (1u64 << 36) as f64;

/// Output of a joint extraction.
#[derive(Clone, Debug)]
pub struct MonodromyRun {
    /// One aligned constellation per input map.
    pub constellations: Vec<Constellation>,
    pub base_point: Complex64,
    /// Highest ball precision any tracking step needed.
    pub max_precision: u32,
    pub steps: usize,
}

/// A finite branch value with its label and expected cycle type.
#[derive(Clone, Debug)]
struct BranchValue {
    label: String,
    at: Complex64,
}

/// The monodromy of `P` as a validated constellation.
pub fn extract_monodromy(p: &RationalMap, precision: u32) -> Result<Constellation> {
    Ok(extract_monodromy_joint(std::slice::from_ref(p), precision)?.constellations.remove(0))
}

/// Monodromy of several maps over the same field along one system of
/// loops, so the results are aligned and their fiber product is defined.
///
/// Each result is checked: the product is the identity, the action is
/// transitive, the genus is 0, and the cycle type over every critical
/// value equals the local degrees from the exact critical structure.
pub fn extract_monodromy_joint(maps: &[RationalMap], precision: u32) -> Result<MonodromyRun> {
    extract_monodromy_capped(maps, precision, DEFAULT_PRECISION_CAP)
}

/// As [`extract_monodromy_joint`] with an explicit precision cap in bits.
pub fn extract_monodromy_capped(maps: &[RationalMap], precision: u32, cap: u32) -> Result<MonodromyRun> {
    let Some(first) = maps.first() else {
        return Err(Error::InvalidInput("no maps given".into()));
    };
    if precision.max(53) > cap {
        return Err(Error::PrecisionCap { cap, context: format!("requested {precision} bits") });
    }
    let k = first.field().clone();
    if maps.iter().any(|p| p.field() != &k) {
        return Err(Error::FieldMismatch);
    }
    if let Some(p) = maps.iter().find(|p| p.degree() < 2) {
        return Err(Error::InvalidInput(format!("monodromy needs degree at least 2, got {}", p.render("z"))));
    }
    // expected cycle types per label, per map
    let mut expected: Vec<Vec<(String, Vec<usize>)>> = Vec::new();
    let mut finite: Vec<BranchValue> = Vec::new();
    let mut infinite = false;
    for p in maps {
        let mut mine = Vec::new();
        for e in critical_structure(p)?.entries {
            for (label, at) in branch_values(&k, &e.value, cap)? {
                match at {
                    Some(at) => {
                        if !finite.iter().any(|b| b.label == label) {
                            finite.push(BranchValue { label: label.clone(), at });
                        }
                    }
                    None => infinite = true,
                }
                mine.push((label, e.local_degrees.clone()));
            }
        }
        expected.push(mine);
    }
    let base = choose_base(&finite);
    finite.sort_by(|x, y| {
        let (dx, dy) = (x.at - base, y.at - base);
        dx.arg().total_cmp(&dy.arg()).then(dx.norm().total_cmp(&dy.norm()))
    });
    let loops = plan_loops(base, &finite);
    let mut labels: Vec<String> = finite.iter().map(|b| b.label.clone()).collect();
    if infinite {
        labels.push(SpherePoint::Infinity.render(&k));
    }

    let mut run = MonodromyRun { constellations: Vec::new(), base_point: base, max_precision: 0, steps: 0 };
    for (p, want) in maps.iter().zip(&expected) {
        let d = p.degree();
        let mut prec = precision.max(53);
        let perms = loop {
            let tracker = Tracker::new(p, &loops, base, prec)?;
            match tracker.loop_permutations(&finite, want, &loops, &mut run.steps)? {
                Some(perms) => break perms,
                None => {
                    prec *= 2;
                    if prec > cap {
                        return Err(Error::PrecisionCap {
                            cap,
                            context: format!("tracking the fiber of {}", p.render("z")),
                        });
                    }
                }
            }
        };
        run.max_precision = run.max_precision.max(prec);
        let mut perms = perms;
        let prod = product(d, &perms);
        if infinite {
            perms.push(prod.inverse());
        } else if !prod.is_identity() {
            return Err(Error::Consistency(format!("loop product {prod} is not the identity")));
        }
        let c = Constellation::new(d, labels.clone(), perms)?;
        validate(&c, want)?;
        run.constellations.push(c);
    }
    Ok(run)
}

fn validate(c: &Constellation, want: &[(String, Vec<usize>)]) -> Result<()> {
    let got = c.cycle_types();
    let want_map: std::collections::BTreeMap<String, Vec<usize>> = want.iter().cloned().collect();
    if got != want_map {
        return Err(Error::Consistency(format!("cycle types {got:?} differ from local degrees {want_map:?}")));
    }
    let g = genus(c)?;
    if g != 0 {
        return Err(Error::Consistency(format!("extracted covering has genus {g}, expected 0")));
    }
    Ok(())
}

/// Labels and approximate positions of the members of a critical value
/// class; `None` for infinity.
fn branch_values(k: &NumberField, v: &AlgebraicPointSet, cap: u32) -> Result<Vec<(String, Option<Complex64>)>> {
    Ok(match v {
        AlgebraicPointSet::Point(SpherePoint::Infinity) => vec![(v.render(k), None)],
        AlgebraicPointSet::Point(SpherePoint::Finite(a)) => vec![(v.render(k), Some(k.embed_f64(a)))],
        AlgebraicPointSet::Class(m) => {
            let mut pts: Vec<Complex64> =
                isolate_over(k, m, 60, cap)?.iter().map(ComplexBall::mid_c64).collect();
            pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            let poly = m.render("c");
            pts.into_iter().enumerate().map(|(j, z)| (format!("root {} of {poly}", j + 1), Some(z))).collect()
        }
    })
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// How well `b` separates the straight rays to the branch values.
fn base_score(b: Complex64, pts: &[BranchValue]) -> f64 {
    let mut score = f64::INFINITY;
    for (i, c) in pts.iter().enumerate() {
        score = score.min((c.at - b).norm());
        for (j, o) in pts.iter().enumerate() {
            if i != j {
                score = score.min(segment_distance(o.at, b, c.at));
            }
        }
    }
    score
}

fn choose_base(pts: &[BranchValue]) -> Complex64 {
    if pts.is_empty() {
        return Complex64::new(0.5, 0.25);
    }
    let n = pts.len() as f64;
    let centroid = pts.iter().map(|b| b.at).sum::<Complex64>() / n;
    let spread = pts.iter().map(|b| (b.at - centroid).norm()).fold(1.0f64, f64::max);
    let mut best = (f64::NEG_INFINITY, centroid);
    for k in 0..96 {
        let rho = [0.31, 0.57, 0.83, 1.19][k % 4];
        let theta = 0.37 + 2.399_963 * k as f64;
        let b = centroid + Complex64::from_polar(spread * rho, theta);
        let s = base_score(b, pts);
        if s > best.0 * 1.000_001 {
            best = (s, b);
        }
    }
    best.1
}

/// Vertices of each loop: the straight path out to the circle, then the
/// circle itself starting and ending at the same vertex.
struct LoopPlan {
    out: Vec<Complex64>,
    circle: Vec<Complex64>,
    radius: f64,
    center: Complex64,
}

fn plan_loops(b: Complex64, pts: &[BranchValue]) -> Vec<LoopPlan> {
    pts.iter()
        .enumerate()
        .map(|(j, c)| {
            let mut room = (c.at - b).norm();
            for (i, o) in pts.iter().enumerate() {
                if i != j {
                    room = room.min((o.at - c.at).norm());
                    room = room.min(segment_distance(c.at, b, o.at) * 2.0);
                }
            }
            let radius = 0.3 * room;
            let start = c.at + (b - c.at) / (b - c.at).norm() * radius;
            let mut circle: Vec<Complex64> = (0..CIRCLE_VERTICES)
                .map(|v| {
                    let turn = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * v as f64 / CIRCLE_VERTICES as f64);
                    c.at + (start - c.at) * turn
                })
                .collect();
            circle[0] = start;
            circle.push(start);
            LoopPlan { out: vec![b, start], circle, radius, center: c.at }
        })
        .collect()
}

/// Fiber tracking in the chart `z = s + 1/w`, chosen so that the value
/// at `w = ∞` stays off every path and the fiber polynomial keeps its
/// degree.
struct Tracker {
    num: Vec<ComplexBall>,
    den: Vec<ComplexBall>,
    num_f: Vec<Complex64>,
    den_f: Vec<Complex64>,
    prec: u32,
    base: Complex64,
}

impl Tracker {
    fn new(p: &RationalMap, loops: &[LoopPlan], base: Complex64, prec: u32) -> Result<Self> {
        let k = p.field();
        for i in 0..200i64 {
            let s = if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 };
            let SpherePoint::Finite(v) = p.eval(&SpherePoint::from_i64(k, s)) else { continue };
            let v = k.embed_f64(&v);
            let clear = loops.iter().all(|l| {
                segment_distance(v, l.out[0], l.out[1]) > l.radius / 2.0
                    && ((v - l.center).norm() - l.radius).abs() > l.radius / 2.0
            }) && (v - base).norm() > 1e-3;
            if !clear {
                continue;
            }
            let chart = Moebius::new(k, k.from_i64(s), k.one(), k.one(), k.zero())?;
            let q = p.compose(&chart.to_map())?;
            let d = p.degree();
            let pad = |f: &crate::poly::trager::KPoly| -> Vec<ComplexBall> {
                (0..=d).map(|i| k.embed(&f.coeff(i), prec + 8)).collect()
            };
            let (num, den) = (pad(q.num()), pad(q.den()));
            let num_f = num.iter().map(ComplexBall::mid_c64).collect();
            let den_f = den.iter().map(ComplexBall::mid_c64).collect();
            return Ok(Tracker { num, den, num_f, den_f, prec, base });
        }
        Err(Error::Consistency("no integer chart keeps the paths away from the value at the chart's infinity".into()))
    }

    fn coeffs(&self, c: Complex64) -> Vec<ComplexBall> {
        let cb = ComplexBall::from_c64(c, self.prec);
        self.num.iter().zip(&self.den).map(|(n, d)| n.sub(&cb.mul(d))).collect()
    }

    fn coeffs_f64(&self, c: Complex64) -> Vec<Complex64> {
        self.num_f.iter().zip(&self.den_f).map(|(n, d)| n - c * d).collect()
    }

    /// Certified discs near `approx`, polished first in doubles and, if
    /// that does not certify, at the working precision.
    fn certified(&self, c: Complex64, approx: &[Complex64]) -> Option<Vec<ComplexBall>> {
        let cf = self.coeffs_f64(c);
        let polished: Vec<Complex64> = approx.iter().map(|&z| newton(&cf, z, 6)).collect();
        let cs = self.coeffs(c);
        let balls: Vec<ComplexBall> = polished.iter().map(|&z| ComplexBall::from_c64(z, self.prec)).collect();
        if let Some(discs) = roots::certify(&cs, &balls) {
            return Some(discs);
        }
        if self.prec <= 64 {
            return None;
        }
        let mut z: Vec<ComplexBall> = polished.iter().map(|&z| ComplexBall::from_c64(z, self.prec)).collect();
        roots::aberth_polish(&cs, &mut z, self.prec, 6);
        roots::certify(&cs, &z)
    }

    /// Follows the roots along the polygon; `None` when a step falls
    /// below the floor.
    fn track(&self, path: &[Complex64], start: &[Complex64], steps: &mut usize) -> Option<Vec<Complex64>> {
        let mut z = start.to_vec();
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mut t = 0.0f64;
            let mut h = 0.25f64;
            while t < 1.0 {
                let t1 = (t + h).min(1.0);
                let (c0, c1) = (a + (b - a) * t, a + (b - a) * t1);
                let predicted = self.predict(&z, c0, c1);
                match self.certified(c1, &predicted) {
                    Some(discs) if accepts(&z, &discs) => {
                        z = discs.iter().map(ComplexBall::mid_c64).collect();
                        t = t1;
                        h *= 2.0;
                        *steps += 1;
                    }
                    _ => {
                        h /= 2.0;
                        if h < MIN_STEP {
                            return None;
                        }
                    }
                }
            }
        }
        Some(z)
    }

    /// Euler step for `dz/dc = D(z) / (N'(z) - c D'(z))`.
    fn predict(&self, z: &[Complex64], c0: Complex64, c1: Complex64) -> Vec<Complex64> {
        let f = self.coeffs_f64(c0);
        z.iter()
            .map(|&x| {
                let den = horner(&self.den_f, x);
                let df = horner_derivative(&f, x);
                let dz = den / df * (c1 - c0);
                if dz.is_finite() {
                    x + dz
                } else {
                    x
                }
            })
            .collect()
    }

    fn loop_permutations(
        &self,
        finite: &[BranchValue],
        want: &[(String, Vec<usize>)],
        loops: &[LoopPlan],
        steps: &mut usize,
    ) -> Result<Option<Vec<Permutation>>> {
        let d = self.num.len() - 1;
        let start_guess = roots::aberth_f64(&self.coeffs_f64(self.base));
        let Some(discs) = self.certified(self.base, &start_guess) else {
            return Ok(None);
        };
        let mut sheets: Vec<Complex64> = discs.iter().map(ComplexBall::mid_c64).collect();
        sheets.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let mut perms = Vec::with_capacity(loops.len());
        for (bv, plan) in finite.iter().zip(loops) {
            if !want.iter().any(|(l, _)| l == &bv.label) {
                perms.push(Permutation::identity(d));
                continue;
            }
            let Some(at_start) = self.track(&plan.out, &sheets, steps) else { return Ok(None) };
            let Some(after) = self.track(&plan.circle, &at_start, steps) else { return Ok(None) };
            let images: Option<Vec<usize>> = after.iter().map(|z| nearest_unique(&at_start, *z)).collect();
            let Some(images) = images else { return Ok(None) };
            match Permutation::from_images(images) {
                Ok(p) => perms.push(p),
                Err(_) => return Ok(None),
            }
        }
        Ok(Some(perms))
    }
}

/// Each new disc lies within a quarter of the separation of the old point
/// it continues, so the matching is forced.
fn accepts(old: &[Complex64], discs: &[ComplexBall]) -> bool {
    old.iter().enumerate().all(|(i, &o)| {
        let sep = old
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| (x - o).norm())
            .fold(f64::INFINITY, f64::min);
        let disc = &discs[i];
        (disc.mid_c64() - o).norm() + disc.rad.to_f64() < sep / 4.0
    })
}

fn nearest_unique(points: &[Complex64], z: Complex64) -> Option<usize> {
    let mut dists: Vec<(f64, usize)> = points.iter().enumerate().map(|(i, &p)| ((p - z).norm(), i)).collect();
    dists.sort_by(|a, b| a.0.total_cmp(&b.0));
    match dists.as_slice() {
        [only] => Some(only.1),
        [a, b, ..] if a.0 * 1e6 < b.0 => Some(a.1),
        _ => None,
    }
}

fn horner(cs: &[Complex64], x: Complex64) -> Complex64 {
    cs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

fn horner_derivative(cs: &[Complex64], x: Complex64) -> Complex64 {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &c in cs.iter().rev() {
        dv = dv * x + v;
        v = v * x + c;
    }
    dv
}

fn newton(cs: &[Complex64], mut z: Complex64, iterations: usize) -> Complex64 {
    for _ in 0..iterations {
        let step = horner(cs, z) / horner_derivative(cs, z);
        if !step.is_finite() {
            break;
        }
        z -= step;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(num: &[i64], den: &[i64]) -> RationalMap {
        RationalMap::from_i64s(&NumberField::rationals(), num, den).unwrap()
    }

    #[test]
    fn cube() {
        let c = extract_monodromy(&map(&[0, 0, 0, 1], &[1]), 64).unwrap();
        assert_eq!(c.branch_points(), ["0", "inf"]);
        assert_eq!(c.perms()[0].cycle_type(), vec![3]);
        assert_eq!(c.perms()[1], c.perms()[0].inverse());
    }

    #[test]
    fn chebyshev() {
        let c = extract_monodromy(&map(&[0, -3, 0, 1], &[1]), 64).unwrap();
        let types: Vec<Vec<usize>> = c.perms().iter().map(Permutation::cycle_type).collect();
        assert_eq!(types, vec![vec![2, 1], vec![2, 1], vec![3]]);
    }

    #[test]
    fn dihedral_five() {
        // (z^10 + 1) / (2 z^5)
        let mut num = vec![0; 11];
        num[0] = 1;
        num[10] = 1;
        let c = extract_monodromy(&map(&num, &[0, 0, 0, 0, 0, 2]), 64).unwrap();
        let types: Vec<Vec<usize>> = c.perms().iter().map(Permutation::cycle_type).collect();
        assert_eq!(types, vec![vec![2; 5], vec![2; 5], vec![5, 5]]);
    }

    #[test]
    fn irrational_critical_values() {
        let c = extract_monodromy(&map(&[0, -4, 0, 0, 1], &[1]), 64).unwrap();
        assert_eq!(c.branch_points().len(), 4);
        assert_eq!(c.perms().last().unwrap().cycle_type(), vec![4]);
    }

    #[test]
    fn joint_runs_are_aligned() {
        let run = extract_monodromy_joint(&[map(&[0, 0, 1], &[1]), map(&[1, 2, 1], &[1])], 64).unwrap();
        assert_eq!(run.constellations[0].branch_points(), ["0", "inf"]);
        assert_eq!(run.constellations[1].branch_points(), ["0", "inf"]);
        assert!(run.max_precision <= DEFAULT_PRECISION_CAP);
    }
}
