//! Compositional structure: left factors, common right factors and the
//! component count of the curve `P(x) = Q(y)`.

use super::rational_map::homogeneous_substitute;
use super::RationalMap;
use crate::error::{Error, Result};
use crate::poly::linalg::nullspace;
use crate::poly::Poly;
use crate::scalar::{Factorization, Field, NumberField, Rationals};

/// `F` with `A = F ∘ P`, or `None` when `P` is not a right factor of `A`.
///
/// The coefficients of `F` solve the linear system `N(P) a2 = D(P) a1`
/// where `A = a1/a2`; a solution is accepted only after the composition
/// is checked exactly.
pub fn left_factor(a: &RationalMap, p: &RationalMap) -> Result<Option<RationalMap>> {
    if a.field() != p.field() {
        return Err(Error::FieldMismatch);
    }
    let (da, dp) = (a.degree(), p.degree());
    if dp == 0 || da % dp != 0 {
        return Err(Error::DegreeNotDivisible { numerator: da, divisor: dp });
    }
    let k = a.field().clone();
    let e = da / dp;
    let (p1, p2) = (p.num(), p.den());
    let pow1: Vec<_> = std::iter::successors(Some(Poly::one(k.clone())), |x| Some(x.mul(p1))).take(e + 1).collect();
    let pow2: Vec<_> = std::iter::successors(Some(Poly::one(k.clone())), |x| Some(x.mul(p2))).take(e + 1).collect();
    // column i: coefficient n_i, column e+1+i: coefficient d_i
    let mut columns = Vec::with_capacity(2 * e + 2);
    for i in 0..=e {
        columns.push(pow1[i].mul(&pow2[e - i]).mul(a.den()));
    }
    for i in 0..=e {
        columns.push(pow1[i].mul(&pow2[e - i]).mul(a.num()).neg());
    }
    let nrows = columns.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let rows: Vec<Vec<_>> = (0..nrows).map(|r| columns.iter().map(|c| c.coeff(r)).collect()).collect();
    for v in nullspace(&k, rows, 2 * e + 2) {
        let num = Poly::new(k.clone(), v[..=e].to_vec());
        let den = Poly::new(k.clone(), v[e + 1..].to_vec());
        if den.is_zero() || num.is_zero() && den.is_zero() {
            continue;
        }
        let f = RationalMap::new(num, den)?;
        if f.degree() == e && f.compose(p)? == *a {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Degree of the largest common compositional right factor of `P` and `Q`.
///
/// The image curve of `z -> (P(z), Q(z))` has `y`-degree `deg P / m` and
/// `x`-degree `deg Q / m`, where `m` is the answer; both are read off
/// specializations of `Res_z(p1 - x p2, q1 - y q2)`.
pub fn common_right_factor_degree(p: &RationalMap, q: &RationalMap) -> Result<usize> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    if p.degree() == 0 || q.degree() == 0 {
        return Err(Error::Precondition("maps must have degree at least 1".into()));
    }
    let (deg_y, deg_x) = match (p.rational_parts(), q.rational_parts()) {
        (Some((p1, p2)), Some((q1, q2))) => {
            (image_degree::<Rationals>(&p1, &p2, &q1, &q2), image_degree::<Rationals>(&q1, &q2, &p1, &p2))
        }
        _ => (
            image_degree::<NumberField>(p.num(), p.den(), q.num(), q.den()),
            image_degree::<NumberField>(q.num(), q.den(), p.num(), p.den()),
        ),
    };
    let (m_p, m_q) = (p.degree() / deg_y, q.degree() / deg_x);
    if !p.degree().is_multiple_of(deg_y) || !q.degree().is_multiple_of(deg_x) || m_p != m_q {
        return Err(Error::Consistency(format!(
            "image curve degrees {deg_y}, {deg_x} are incompatible with map degrees {}, {}",
            p.degree(),
            q.degree()
        )));
    }
    Ok(m_p)
}

/// Degree of `z -> (p(z), q(z))` image curve in the `q` coordinate, as
/// the largest squarefree degree of `Res_z(p1 - x0 p2, q1 - y q2)` over
/// a few rational `x0`.
fn image_degree<K: Field>(p1: &Poly<K>, p2: &Poly<K>, q1: &Poly<K>, q2: &Poly<K>) -> usize {
    let k = p1.field().clone();
    let dp = p1.deg().max(p2.deg());
    let dq = q1.deg().max(q2.deg());
    let specialize = |a: &Poly<K>, b: &Poly<K>, d: usize, t: i64| {
        let f = a.sub(&b.scale(&k.from_i64(t)));
        (f.deg() == d).then_some(f)
    };
    let mut best = 0;
    let mut tried = 0;
    for x0 in (0..).map(|i: i64| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }).take(40) {
        let Some(f) = specialize(p1, p2, dp, x0) else { continue };
        let mut points = Vec::new();
        for y in (0..).map(|i: i64| i * 7 - 3) {
            if points.len() > dp {
                break;
            }
            if let Some(g) = specialize(q1, q2, dq, y) {
                points.push((k.from_i64(y), f.resultant(&g)));
            }
        }
        let r = Poly::interpolate(k.clone(), &points);
        best = best.max(r.squarefree_part().deg());
        tried += 1;
        if tried == 4 {
            break;
        }
    }
    best
}

/// Number of irreducible components, over the coefficient field, of the
/// curve `P(x) = Q(y)`.
///
/// Components are counted through specializations `y = y0`: each factor of
/// `num_P(x) q2(y) - q1(y) den_P(x)` over the field stays a product of at
/// least one factor after specialization, so the minimum over several
/// `y0` is an upper bound that is attained for all but finitely many.
pub fn fiber_product_factor_count(p: &RationalMap, q: &RationalMap) -> Result<usize> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(match (p.rational_parts(), q.rational_parts()) {
        (Some((p1, p2)), Some((q1, q2))) => specialized_count::<Rationals>(&p1, &p2, &q1, &q2),
        _ => specialized_count::<NumberField>(p.num(), p.den(), q.num(), q.den()),
    })
}

fn specialized_count<K: Factorization>(p1: &Poly<K>, p2: &Poly<K>, q1: &Poly<K>, q2: &Poly<K>) -> usize {
    let k = p1.field().clone();
    let dp = p1.deg().max(p2.deg());
    let mut best = usize::MAX;
    let mut tried = 0;
    for y0 in (1..60i64).map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }) {
        let y = k.from_i64(y0);
        let (a, b) = (q1.eval(&y), q2.eval(&y));
        if k.is_zero(&b) {
            continue;
        }
        let f = p1.scale(&b).sub(&p2.scale(&a));
        if f.deg() != dp || !f.is_squarefree() {
            continue;
        }
        best = best.min(k.factor_squarefree(&f).len());
        tried += 1;
        if tried == 6 {
            break;
        }
    }
    best
}

/// `F ∘ P` written through the homogeneous substitution; exposed for the
/// galois layer, which composes polynomial pairs without reducing.
pub(crate) fn compose_pair<K: Field>(
    f_num: &Poly<K>,
    f_den: &Poly<K>,
    p_num: &Poly<K>,
    p_den: &Poly<K>,
) -> (Poly<K>, Poly<K>) {
    let n = f_num.deg().max(f_den.deg());
    homogeneous_substitute(f_num, f_den, n, p_num, p_den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn map(num: &[i64], den: &[i64]) -> RationalMap {
        RationalMap::from_i64s(&q(), num, den).unwrap()
    }

    #[test]
    fn left_factor_examples() {
        let z6 = map(&[0, 0, 0, 0, 0, 0, 1], &[1]);
        let z2 = map(&[0, 0, 1], &[1]);
        assert_eq!(left_factor(&z6, &z2).unwrap(), Some(map(&[0, 0, 0, 1], &[1])));
        let a = map(&[0, 0, -2, 0, 1], &[1]);
        assert_eq!(left_factor(&a, &z2).unwrap(), Some(map(&[0, -2, 1], &[1])));
        let z3 = map(&[0, 0, 0, 1], &[1]);
        assert!(matches!(left_factor(&z3, &z2), Err(Error::DegreeNotDivisible { numerator: 3, divisor: 2 })));
        // z^4 + z is not a function of z^2
        let b = map(&[0, 1, 0, 0, 1], &[1]);
        assert_eq!(left_factor(&b, &z2).unwrap(), None);
    }

    #[test]
    fn left_factor_rational() {
        // A = ((z^2 + 1)/z)^2 / ... built as F∘P with P = (z^2+1)/z, F = (w^2 - 2)/(w + 3)
        let p = map(&[1, 0, 1], &[0, 1]);
        let f = map(&[-2, 0, 1], &[3, 1]);
        let a = f.compose(&p).unwrap();
        assert_eq!(left_factor(&a, &p).unwrap(), Some(f));
    }

    #[test]
    fn common_right_factors() {
        let z2 = map(&[0, 0, 1], &[1]);
        let q2 = map(&[1, 2, 1], &[1]);
        assert_eq!(common_right_factor_degree(&z2, &q2).unwrap(), 1);
        let z4 = map(&[0, 0, 0, 0, 1], &[1]);
        let z6 = map(&[0, 0, 0, 0, 0, 0, 1], &[1]);
        assert_eq!(common_right_factor_degree(&z4, &z6).unwrap(), 2);
        assert_eq!(common_right_factor_degree(&z2, &z2).unwrap(), 2);
        let joukowski = map(&[1, 0, 1], &[0, 1]);
        assert_eq!(common_right_factor_degree(&joukowski, &z2).unwrap(), 1);
    }

    #[test]
    fn fiber_product_components() {
        let z2 = map(&[0, 0, 1], &[1]);
        let q2 = map(&[1, 2, 1], &[1]);
        let z3 = map(&[0, 0, 0, 1], &[1]);
        assert_eq!(fiber_product_factor_count(&z2, &q2).unwrap(), 2);
        assert_eq!(fiber_product_factor_count(&z2, &z3).unwrap(), 1);
        assert_eq!(fiber_product_factor_count(&z2, &z2).unwrap(), 2);
    }
}
