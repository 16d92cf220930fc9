use num_complex::Complex64;
use proptest::prelude::*;

use preimage_core::constellation::{
    extract_monodromy, fiber_product, genus, monodromy_group, normalization_genus, normalization_genus_tuple_oracle, product, Constellation,
    Permutation,
};
use preimage_core::corpus::corpus;
use preimage_core::galois::{deck_group, is_galois, DEFAULT_GROUP_CAP};
use preimage_core::maps::{common_right_factor_degree, critical_structure, left_factor, Moebius, RationalMap, SpherePoint};
use preimage_core::orbifold::classify;
use preimage_core::orbits::{default_mu, orbit, shared_generators};
use preimage_core::scalar::{rat, ComplexBall, Dyadic, ExactScalar, Field, NumberField};

fn q() -> NumberField {
    NumberField::rationals()
}

fn sqrt2() -> NumberField {
    NumberField::extension(&[rat(-2, 1), rat(0, 1), rat(1, 1)], Complex64::new(1.4, 0.0)).unwrap()
}

#[derive(Clone, Debug)]
enum Expr {
    Const(i64, i64),
    Gen,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Inv(Box<Expr>),
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(-20i64..20, 1i64..20).prop_map(|(n, d)| Expr::Const(n, d)), Just(Expr::Gen)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            inner.prop_map(|a| Expr::Inv(Box::new(a))),
        ]
    })
}

/// Exact value and a ball built by interval operations at `prec`; `None`
/// when a division by zero (exact or uncertified) occurs.
fn evaluate(k: &NumberField, e: &Expr, prec: u32) -> Option<(ExactScalar, ComplexBall)> {
    Some(match e {
        Expr::Const(n, d) => {
            let a = k.from_rational(&rat(*n, *d));
            let b = k.embed(&a, prec);
            (a, b)
        }
        Expr::Gen => (k.generator(), k.embed(&k.generator(), prec)),
        Expr::Add(x, y) => {
            let ((a, ba), (b, bb)) = (evaluate(k, x, prec)?, evaluate(k, y, prec)?);
            (k.add(&a, &b), ba.add(&bb))
        }
        Expr::Sub(x, y) => {
            let ((a, ba), (b, bb)) = (evaluate(k, x, prec)?, evaluate(k, y, prec)?);
            (k.sub(&a, &b), ba.sub(&bb))
        }
        Expr::Mul(x, y) => {
            let ((a, ba), (b, bb)) = (evaluate(k, x, prec)?, evaluate(k, y, prec)?);
            (k.mul(&a, &b), ba.mul(&bb))
        }
        Expr::Inv(x) => {
            let (a, ba) = evaluate(k, x, prec)?;
            (k.inv(&a)?, ba.inv()?)
        }
    })
}

fn poly_map(num: &[i64], den: &[i64]) -> Option<RationalMap> {
    RationalMap::from_i64s(&q(), num, den).ok()
}

fn polynomial(min_deg: usize, max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (min_deg..=max_deg)
        .prop_flat_map(|d| (prop::collection::vec(-3i64..=3, d), prop_oneof![Just(1i64), Just(-1), Just(2)]))
        .prop_map(|(mut cs, lead)| {
            cs.push(lead);
            cs
        })
}

fn moebius() -> impl Strategy<Value = Moebius> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("invertible", |(a, b, c, d)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d)| Moebius::from_i64s(&q(), a, b, c, d).unwrap())
}

fn permutation(d: usize) -> impl Strategy<Value = Permutation> {
    Just((0..d).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Random permutations closed up by the inverse of their product; only
/// transitive tuples are kept.
fn constellation() -> impl Strategy<Value = Constellation> {
    (2usize..=4, 1usize..=3)
        .prop_flat_map(|(d, k)| (Just(d), prop::collection::vec(permutation(d), k)))
        .prop_filter_map("transitive", |(d, mut perms)| {
            perms.push(product(d, &perms).inverse());
            let labels = (1..=perms.len()).map(|i| format!("b{i}")).collect();
            Constellation::new(d, labels, perms).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn balls_contain_exact_values(e in expr(), prec in 53u32..200) {
        let k = sqrt2();
        if let Some((a, _)) = evaluate(&k, &e, prec) {
            let direct = k.embed(&a, prec);
            if let Some((_, interval)) = evaluate(&k, &e, 2 * prec) {
                prop_assert!(direct.overlaps(&interval));
            }
            let again = k.embed(&a, 2 * prec);
            prop_assert!(direct.overlaps(&again));
            let scale = direct.mid_c64().norm().max(1.0);
            let bound = Dyadic::from_f64(4.0 * scale * 2f64.powi(-(prec as i32)));
            prop_assert!(direct.rad <= bound, "radius {} at {} bits", direct.rad.to_f64(), prec);
        }
    }

    #[test]
    fn equal_values_embed_consistently(n in -50i64..50, d in 1i64..50, prec in 53u32..300) {
        let k = sqrt2();
        let a = k.from_rational(&rat(n, d));
        let t = k.generator();
        // (a + t) - t = a
        let b = k.sub(&k.add(&a, &t), &t);
        prop_assert_eq!(&a, &b);
        prop_assert!(k.embed(&a, prec).overlaps(&k.embed(&b, prec + 17)));
    }

    #[test]
    fn composition_degrees_multiply(f in polynomial(1, 3), g in polynomial(1, 3), h in polynomial(0, 2)) {
        let (Some(f), Some(g)) = (poly_map(&f, &h), poly_map(&g, &[1])) else { return Ok(()) };
        prop_assume!(f.degree() >= 1);
        prop_assert_eq!(f.compose(&g).unwrap().degree(), f.degree() * g.degree());
    }

    #[test]
    fn left_factor_round_trip(f in polynomial(1, 3), p in polynomial(2, 3), den in polynomial(0, 1)) {
        let (Some(f), Some(p)) = (poly_map(&f, &[1]), poly_map(&p, &den)) else { return Ok(()) };
        prop_assume!(p.degree() >= 2);
        let a = f.compose(&p).unwrap();
        prop_assert_eq!(left_factor(&a, &p).unwrap(), Some(f));
    }

    #[test]
    fn moebius_conjugates_keep_the_signature(i in 0usize..13, m1 in moebius(), m2 in moebius()) {
        let p = corpus()[i].map.clone();
        prop_assume!(p.degree() <= 6);
        let conj = m1.to_map().compose(&p).unwrap().compose(&m2.to_map()).unwrap();
        prop_assert_eq!(classify(&conj).unwrap().signature, classify(&p).unwrap().signature);
    }

    #[test]
    fn orbits_grow_monotonically(base in -6i64..6, depth in 0usize..6) {
        let k = q();
        let maps = [poly_map(&[0, 0, 1], &[1]).unwrap(), poly_map(&[1, 2, 1], &[1]).unwrap()];
        let gens = shared_generators(&maps, &default_mu(&k)).unwrap();
        let small = orbit(&k, SpherePoint::from_i64(&k, base), gens.clone(), depth, 1 << 20).unwrap();
        let large = orbit(&k, SpherePoint::from_i64(&k, base), gens, depth + 1, 1 << 20).unwrap();
        for (x, w) in small.points() {
            prop_assert_eq!(large.word_length(x), Some(w));
        }
    }

    #[test]
    fn orbits_are_deck_invariant(n in -6i64..6, d in 1i64..4, depth in 1usize..5) {
        let k = q();
        let maps = [poly_map(&[0, 0, 1], &[1]).unwrap(), poly_map(&[1, 0, 1], &[0, 1]).unwrap()];
        let gens = shared_generators(&maps, &default_mu(&k)).unwrap();
        let s = orbit(&k, SpherePoint::Finite(k.from_rational(&rat(n, d))), gens, depth, 1 << 20).unwrap();
        for p in &maps {
            for sigma in deck_group(p).unwrap().elements().unwrap() {
                for (x, w) in s.points() {
                    if w < depth {
                        prop_assert!(s.contains(&sigma.apply(x)));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn riemann_hurwitz_count(num in polynomial(2, 4), den in polynomial(0, 2)) {
        let Some(p) = poly_map(&num, &den) else { return Ok(()) };
        prop_assume!(p.degree() >= 2);
        let portrait = critical_structure(&p).unwrap();
        let total: usize = portrait.entries.iter().map(|e| e.value.size() * e.ramification()).sum();
        prop_assert_eq!(total, 2 * p.degree() - 2);
        for e in &portrait.entries {
            prop_assert_eq!(e.local_degrees.iter().sum::<usize>(), p.degree());
            prop_assert!(e.local_degrees.iter().any(|&l| l > 1));
        }
    }

    #[test]
    fn common_right_factor_symmetry(a in polynomial(1, 2), b in polynomial(1, 2), w in polynomial(1, 2)) {
        let (Some(a), Some(b), Some(w)) = (poly_map(&a, &[1]), poly_map(&b, &[1]), poly_map(&w, &[1])) else { return Ok(()) };
        let p = a.compose(&w).unwrap();
        let r = b.compose(&w).unwrap();
        prop_assert_eq!(common_right_factor_degree(&p, &p).unwrap(), p.degree());
        let forward = common_right_factor_degree(&p, &r).unwrap();
        prop_assert_eq!(forward, common_right_factor_degree(&r, &p).unwrap());
        prop_assert_eq!(forward % w.degree(), 0);
    }

    #[test]
    fn constellation_invariants(c in constellation()) {
        let g = genus(&c);
        prop_assert!(g.is_ok());
        let n = normalization_genus(&c, DEFAULT_GROUP_CAP).unwrap();
        prop_assert_eq!(normalization_genus_tuple_oracle(&c).unwrap(), n.genus);
        let comps = fiber_product(&[c.clone(), c.clone()]).unwrap();
        let d = c.degree();
        prop_assert_eq!(comps.iter().map(|x| x.orbit.len()).sum::<usize>(), d * d);
        for i in 0..2 {
            prop_assert_eq!(comps.iter().map(|x| x.degrees_to_factors[i] * d).sum::<usize>(), d * d);
        }
        for comp in &comps {
            prop_assert!(genus(&comp.induced).is_ok());
            prop_assert!(comp.projection_is_equivariant(0, &c) && comp.projection_is_equivariant(1, &c));
        }
        prop_assert_eq!(monodromy_group(&c, DEFAULT_GROUP_CAP).order, n.group_order);
    }
}

#[test]
fn galois_iff_regular_monodromy() {
    for m in corpus() {
        let c = extract_monodromy(&m.map, 64).unwrap();
        let order = monodromy_group(&c, DEFAULT_GROUP_CAP).order;
        let cert = is_galois(&m.map).unwrap();
        assert_eq!(cert.is_galois, order == m.map.degree(), "{}", m.name);
    }
}

#[test]
fn galois_maps_have_spherical_signatures() {
    for m in corpus() {
        if is_galois(&m.map).unwrap().is_galois {
            let v = classify(&m.map).unwrap();
            assert!(v.list_member.is_some_and(|t| t.is_spherical()), "{}", m.name);
            assert_eq!(v.chi * num_rational::BigRational::from_integer(m.map.degree().into()), rat(2, 1), "{}", m.name);
        }
    }
}
