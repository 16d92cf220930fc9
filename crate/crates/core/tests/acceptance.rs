use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Signed;
use preimage_core::constellation::{
    align, extract_monodromy, extract_monodromy_joint, fiber_product, genus, normalization_genus, normalization_genus_tuple_oracle, product,
};
use preimage_core::corpus::{corpus, corpus_check, dihedral, power};
use preimage_core::galois::{cleared_identity, deck_group, standard_family, FamilyKind, DEFAULT_GROUP_CAP};
use preimage_core::maps::{critical_structure, fiber_product_factor_count, Moebius, RationalMap, SpherePoint};
use preimage_core::orbifold::{classify, GenusBound};
use preimage_core::orbits::{
    admissible_base, construct_sets, default_mu, finite_group_reduction, orbit, shared_generators, verify_shared_preimage, Reduction,
    DEFAULT_POINT_CAP,
};
use preimage_core::scalar::{rat, NumberField, DEFAULT_PRECISION_CAP};

type Outcome = Result<(), String>;

fn q() -> NumberField {
    NumberField::rationals()
}

fn map(num: &[i64], den: &[i64]) -> RationalMap {
    RationalMap::from_i64s(&q(), num, den).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn ints(ns: impl IntoIterator<Item = i64>) -> Vec<SpherePoint> {
    ns.into_iter().map(|n| SpherePoint::from_i64(&q(), n)).collect()
}

fn intro_example() -> Outcome {
    let start = Instant::now();
    let maps = [map(&[0, 0, 1], &[1]), map(&[1, 2, 1], &[1])];
    let gens = shared_generators(&maps, &default_mu(&q())).map_err(|e| e.to_string())?;
    let s = orbit(&q(), SpherePoint::from_i64(&q(), 0), gens, 12, DEFAULT_POINT_CAP).map_err(|e| e.to_string())?;
    let sets = construct_sets(&maps, &s).map_err(|e| e.to_string())?;
    let r = verify_shared_preimage(&maps, &sets, &s, 8).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1))?;
    ensure(r.passed(), || format!("verification failed: {:?}", r.checks))?;
    let window = ints(-8..=8);
    for (i, pre) in r.window_preimages.iter().enumerate() {
        ensure(*pre == window, || {
            let k = q();
            let shown: Vec<String> = pre.iter().map(|p| p.render(&k)).collect();
            format!("window preimage {} is [{}], expected the integers in [-8, 8]", i + 1, shown.join(", "))
        })?;
    }
    let squares = ints((0..=8).map(|n| n * n));
    ensure(r.window_values.iter().all(|v| *v == squares), || {
        let k = q();
        let shown: Vec<String> = r.window_values[0].iter().map(|p| p.render(&k)).collect();
        format!("K on the window image is {{{}}}, expected {{0, 1, 4, ..., 64}}", shown.join(", "))
    })
}

fn four_way_equivalence() -> Outcome {
    let start = Instant::now();
    let maps = corpus();
    ensure(maps.len() >= 12, || "corpus too small".into())?;
    for m in &maps {
        let v = classify(&m.map).map_err(|e| e.to_string())?;
        let c = extract_monodromy(&m.map, 64).map_err(|e| e.to_string())?;
        let n = normalization_genus(&c, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
        let chi_ok = !v.chi.is_negative();
        let listed = v.list_member.is_some();
        let low_genus = n.genus <= 1;
        ensure(chi_ok == listed && listed == low_genus, || {
            format!("{}: chi >= 0 is {chi_ok}, listed is {listed}, genus <= 1 is {low_genus}", m.name)
        })?;
    }
    within(start, Duration::from_secs(10))
}

fn classifier_values() -> Outcome {
    for n in 2..=6usize {
        let v = classify(&power(n)).map_err(|e| e.to_string())?;
        ensure(v.chi == rat(2, n as i64) && v.signature.values() == [n, n], || format!("z^{n}: {} {}", v.signature, v.chi))?;
    }
    let cases: [(&[i64], &[usize], BigRational, Option<GenusBound>); 3] = [
        (&[0, -3, 0, 1], &[2, 2, 3], rat(1, 3), None),
        (&[0, -4, 0, 0, 1], &[2, 2, 2, 4], rat(-1, 4), Some(GenusBound::AtLeastTwo)),
        (&[0, 0, 0, 1, 1], &[2, 3, 4], rat(1, 12), None),
    ];
    for (coeffs, sig, chi, bound) in cases {
        let p = map(coeffs, &[1]);
        let v = classify(&p).map_err(|e| e.to_string())?;
        ensure(v.signature.values() == sig && v.chi == chi, || format!("{}: {} {}", p.render("z"), v.signature, v.chi))?;
        if let Some(b) = bound {
            ensure(v.genus_bound == b, || format!("{}: verdict {}", p.render("z"), v.genus_bound))?;
        }
    }
    Ok(())
}

fn normalization_cross_check() -> Outcome {
    let start = Instant::now();
    let p = map(&[0, -4, 0, 0, 1], &[1]);
    let c = extract_monodromy(&p, 64).map_err(|e| e.to_string())?;
    let n = normalization_genus(&c, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
    ensure(n.group_order == 24 && n.genus == 4, || format!("|G| = {}, genus {}", n.group_order, n.genus))?;
    let chi = classify(&p).map_err(|e| e.to_string())?.chi;
    let formula = BigRational::from_integer(1.into()) - BigRational::from_integer(24.into()) * chi / BigRational::from_integer(2.into());
    ensure(formula == BigRational::from_integer(4.into()), || format!("1 - |G| chi / 2 = {formula}"))?;
    let oracle = normalization_genus_tuple_oracle(&c).map_err(|e| e.to_string())?;
    ensure(oracle == 4, || format!("tuple oracle gives {oracle}"))?;
    within(start, Duration::from_secs(5))
}

fn fiber_products() -> Outcome {
    let p = map(&[0, 0, 1], &[1]);
    let q2 = map(&[1, 2, 1], &[1]);
    let run = extract_monodromy_joint(&[p.clone(), q2.clone()], 64).map_err(|e| e.to_string())?;
    let comps = fiber_product(&align(&run.constellations).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(comps.len() == 2, || format!("{} components", comps.len()))?;
    for c in &comps {
        ensure(c.genus == 0 && c.degrees_to_factors == [1, 1], || format!("component genus {} degrees {:?}", c.genus, c.degrees_to_factors))?;
    }
    let curve = fiber_product_factor_count(&p, &q2).map_err(|e| e.to_string())?;
    ensure(curve == comps.len(), || format!("image curve has {curve} factors, {} components", comps.len()))?;
    let run = extract_monodromy_joint(&[p, power(3)], 64).map_err(|e| e.to_string())?;
    let comps = fiber_product(&run.constellations).map_err(|e| e.to_string())?;
    ensure(comps.len() == 1 && comps[0].genus == 0 && comps[0].induced.degree() == 6, || {
        format!("z^2 x z^3: {:?}", comps.iter().map(|c| (c.induced.degree(), c.genus)).collect::<Vec<_>>())
    })
}

fn deck_groups() -> Outcome {
    let g = deck_group(&map(&[1, 2, 1], &[1])).map_err(|e| e.to_string())?;
    let mut rendered: Vec<String> = g.elements().unwrap_or_default().iter().map(|m| m.render("z")).collect();
    rendered.sort();
    ensure(rendered == ["-z - 2", "z"], || format!("deck((z+1)^2) = {rendered:?}"))?;
    let fam = standard_family(FamilyKind::Dihedral(5)).map_err(|e| e.to_string())?;
    let d10 = deck_group(&fam.map).map_err(|e| e.to_string())?;
    let elements = d10.elements().unwrap_or_default();
    ensure(elements.len() == 10, || format!("dihedral deck order {}", elements.len()))?;
    for s in elements {
        ensure(cleared_identity(&fam.map, s).is_zero(), || format!("{} fails the cleared identity", s.render("z")))?;
    }
    let mut kinds: Vec<FamilyKind> = (2..=6).map(FamilyKind::Power).collect();
    kinds.extend((2..=5).map(FamilyKind::Dihedral));
    kinds.extend([FamilyKind::Tetrahedral, FamilyKind::Octahedral, FamilyKind::Icosahedral]);
    for kind in kinds {
        let fam = standard_family(kind).map_err(|e| e.to_string())?;
        let deck = deck_group(&fam.map).map_err(|e| e.to_string())?;
        ensure(deck.order() == Some(fam.map.degree()), || format!("{kind}: |deck| = {:?}, degree {}", deck.order(), fam.map.degree()))?;
        ensure(deck.elements() == fam.group.elements(), || format!("{kind}: deck group differs from the shipped group"))?;
        if kind == FamilyKind::Tetrahedral {
            ensure(deck.order() == Some(12), || "tetrahedral order".into())?;
        }
    }
    Ok(())
}

fn monodromy_extraction() -> Outcome {
    for m in corpus() {
        let run = extract_monodromy_joint(std::slice::from_ref(&m.map), 64).map_err(|e| format!("{}: {e}", m.name))?;
        let c = &run.constellations[0];
        let mut want: Vec<Vec<usize>> = Vec::new();
        for e in critical_structure(&m.map).map_err(|e| e.to_string())?.entries {
            want.extend(std::iter::repeat_n(e.local_degrees.clone(), e.value.size()));
        }
        let mut got: Vec<Vec<usize>> = c.perms().iter().map(|p| p.cycle_type()).collect();
        want.sort();
        got.sort();
        ensure(got == want, || format!("{}: cycle types {got:?}, local degrees {want:?}", m.name))?;
        ensure(product(c.degree(), c.perms()).is_identity(), || format!("{}: product is not the identity", m.name))?;
        ensure(genus(c).map_err(|e| e.to_string())? == 0, || format!("{}: positive genus", m.name))?;
        ensure(run.max_precision <= DEFAULT_PRECISION_CAP, || format!("{}: precision {}", m.name, run.max_precision))?;
    }
    Ok(())
}

fn two_value_sets() -> Outcome {
    let maps = [map(&[0, 0, 1], &[1]), map(&[1, 0, 1], &[0, 1])];
    let gens = shared_generators(&maps, &default_mu(&q())).map_err(|e| e.to_string())?;
    let base = admissible_base(&maps).map_err(|e| e.to_string())?;
    let s = orbit(&q(), base, gens, 10, DEFAULT_POINT_CAP).map_err(|e| e.to_string())?;
    let sets = construct_sets(&maps, &s).map_err(|e| e.to_string())?;
    ensure(sets[0].values != sets[1].values, || "K_1 = K_2".into())?;
    let r = verify_shared_preimage(&maps, &sets, &s, 6).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("verification failed: {:?}", r.checks))
}

fn finite_reduction() -> Outcome {
    let maps = [map(&[0, 0, 1], &[1]), dihedral(1)];
    let Reduction::Finite { group, quotient, factors } = finite_group_reduction(&maps, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())? else {
        return Err("z^2, (z + 1/z)/2 reported infinite".into());
    };
    ensure(group.order() == Some(4), || format!("order {:?}", group.order()))?;
    for (f, p) in factors.iter().zip(&maps) {
        let composed = f.compose(p).map_err(|e| e.to_string())?;
        ensure(composed == quotient, || format!("{} o {} != {}", f.render("z"), p.render("z"), quotient.render("z")))?;
    }
    let maps = [map(&[0, 0, 1], &[1]), map(&[1, 2, 1], &[1])];
    match finite_group_reduction(&maps, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())? {
        Reduction::Infinite(cert) => {
            let t = &cert.infinite_order_element;
            ensure(t.has_infinite_order() && *t != Moebius::identity(&q()), || "certificate element has finite order".into())
        }
        Reduction::Finite { .. } => Err("z^2, (z+1)^2 reported finite".into()),
    }
}

fn property_suites() -> Outcome {
    let checks = corpus_check().map_err(|e| e.to_string())?;
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    ensure(checks.iter().any(|c| c.name == "determinism"), || "no determinism check".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("intro example: shared preimage Z with K the squares", intro_example),
        ("four-way equivalence over the corpus", four_way_equivalence),
        ("exact classifier values", classifier_values),
        ("normalization genus cross-check for z^4 - 4z", normalization_cross_check),
        ("fiber products", fiber_products),
        ("deck groups", deck_groups),
        ("monodromy extraction over the corpus", monodromy_extraction),
        ("two value sets with equal preimages", two_value_sets),
        ("finite-group reduction", finite_reduction),
        ("property suites", property_suites),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {:2} PASS  {name}", i + 1),
            Err(why) => {
                println!("criterion {:2} FAIL  {name}: {why}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
