//! Factorization over a simple number field by Trager's norm method.

use num_rational::BigRational;

use super::factor;
use super::Poly;
use crate::scalar::{rat, ExactScalar, Field, NumberField, Rationals};

pub type KPoly = Poly<NumberField>;

/// `f = c * prod f_i^{e_i}` with monic irreducible `f_i` over the field of `f`.
pub fn factor_over(f: &KPoly) -> (ExactScalar, Vec<(KPoly, usize)>) {
    let k = f.field().clone();
    if f.is_zero() {
        return (k.zero(), Vec::new());
    }
    let lc = f.lc();
    let mut out = Vec::new();
    if k.degree() == 1 {
        let q = to_rational_poly(f).expect("rational coefficients");
        for (g, e) in factor::factor(&q).1 {
            out.push((from_rational_poly(&k, &g), e));
        }
        return (lc, out);
    }
    for (sq, e) in f.squarefree_decomposition() {
        for g in factor_squarefree_over(&sq) {
            out.push((g, e));
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    (lc, out)
}

/// Monic irreducible factors of a squarefree polynomial over its field.
pub fn factor_squarefree_over(g: &KPoly) -> Vec<KPoly> {
    let k = g.field().clone();
    let g = g.monic();
    if g.deg() <= 1 {
        return if g.deg() == 1 { vec![g] } else { Vec::new() };
    }
    if k.degree() == 1 {
        let q = to_rational_poly(&g).expect("rational coefficients");
        return factor::factor_squarefree(&q).iter().map(|h| from_rational_poly(&k, h)).collect();
    }
    if let Some(q) = to_rational_poly(&g) {
        let over_q = factor::factor_squarefree(&q);
        if over_q.len() > 1 {
            let mut parts: Vec<KPoly> =
                over_q.iter().flat_map(|h| factor_squarefree_over(&from_rational_poly(&k, h))).collect();
            parts.sort_by(canonical_cmp);
            return parts;
        }
    }
    let theta = k.generator();
    for s in shifts() {
        // h(x) = g(x - s*theta)
        let shift = k.mul(&k.from_i64(-s), &theta);
        let h = g.taylor_shift(&shift);
        let n = norm_poly(&h);
        if !n.is_squarefree() {
            continue;
        }
        let back = k.neg(&shift);
        let mut parts: Vec<KPoly> = factor::factor_squarefree(&n)
            .iter()
            .map(|nj| h.gcd(&from_rational_poly(&k, nj)).taylor_shift(&back).monic())
            .filter(|p| p.deg() > 0)
            .collect();
        parts.sort_by(canonical_cmp);
        return parts;
    }
    unreachable!("some shift makes the norm squarefree")
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).flat_map(|i: i64| if i == 0 { vec![0] } else { vec![i, -i] })
}

/// Norm of `h` down to the rationals, interpolated from element norms.
pub fn norm_poly(h: &KPoly) -> Poly<Rationals> {
    let k = h.field();
    let d = h.deg() * k.degree();
    let pts: Vec<(BigRational, BigRational)> = (0..=d as i64)
        .map(|x| {
            let xv = rat(x, 1);
            let v = h.eval(&k.from_rational(&xv));
            (xv, k.norm(&v))
        })
        .collect();
    Poly::interpolate(Rationals, &pts)
}

/// Distinct roots in the field with multiplicities, sorted canonically.
pub fn roots_in_field(f: &KPoly) -> Vec<(ExactScalar, usize)> {
    let k = f.field().clone();
    let mut roots: Vec<(ExactScalar, usize)> = factor_over(f)
        .1
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, e)| (k.neg(&g.coeff(0)), e))
        .collect();
    roots.sort();
    roots
}

pub fn is_irreducible_over(f: &KPoly) -> bool {
    f.deg() >= 1 && f.is_squarefree() && factor_squarefree_over(f).len() == 1
}

pub fn to_rational_poly(f: &KPoly) -> Option<Poly<Rationals>> {
    let cs: Option<Vec<BigRational>> = f.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
    cs.map(|cs| Poly::new(Rationals, cs))
}

pub fn from_rational_poly(k: &NumberField, p: &Poly<Rationals>) -> KPoly {
    p.map_coeffs(k.clone(), |c| k.from_rational(c))
}

pub fn canonical_cmp(a: &KPoly, b: &KPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..=a.deg()).rev() {
            let c = a.coeff(i).cmp(&b.coeff(i));
            if c.is_ne() {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn kpoly(k: &NumberField, cs: &[i64]) -> KPoly {
        Poly::from_i64s(k.clone(), cs)
    }

    #[test]
    fn x2_plus_1_splits_over_gaussian() {
        let k = NumberField::gaussian();
        let (_, fs) = factor_over(&kpoly(&k, &[1, 0, 1]));
        assert_eq!(fs.len(), 2);
        let i = k.generator();
        let roots: Vec<ExactScalar> = roots_in_field(&kpoly(&k, &[1, 0, 1])).into_iter().map(|r| r.0).collect();
        assert!(roots.contains(&i) && roots.contains(&k.neg(&i)));
    }

    #[test]
    fn x4_minus_2_over_sqrt2() {
        // x^4 - 2 = (x^2 - t)(x^2 + t) over Q(sqrt 2); both quadratics irreducible
        let k = NumberField::extension(&[rat(-2, 1), rat(0, 1), rat(1, 1)], Complex64::new(1.4, 0.0)).unwrap();
        let f = kpoly(&k, &[-2, 0, 0, 0, 1]);
        let (_, fs) = factor_over(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, e)| g.deg() == 2 && *e == 1));
        let prod = fs.iter().fold(kpoly(&k, &[1]), |a, (g, _)| a.mul(g));
        assert_eq!(prod, f);
    }

    #[test]
    fn cube_roots_of_unity() {
        let k = NumberField::cyclotomic(3);
        let f = kpoly(&k, &[-1, 0, 0, 1]);
        let roots = roots_in_field(&f);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots {
            assert_eq!(e, 1);
            assert_eq!(k.pow(&r, 3), k.one());
        }
    }

    #[test]
    fn multiplicities_survive() {
        let k = NumberField::gaussian();
        let i = k.generator();
        let lin = Poly::new(k.clone(), vec![k.neg(&i), k.one()]);
        let f = lin.pow(3).mul(&kpoly(&k, &[-3, 0, 1]));
        let (_, fs) = factor_over(&f);
        assert_eq!(fs.iter().map(|(g, e)| (g.deg(), *e)).collect::<Vec<_>>(), vec![(1, 3), (2, 1)]);
    }
}
