//! Named test maps over the rationals and the invariant suite run on them.

use std::fmt::Write;

use num_traits::Signed;

use crate::constellation::{
    extract_monodromy, extract_monodromy_joint, fiber_product, genus, normalization_genus, normalization_genus_tuple_oracle, Constellation,
};
use crate::error::Result;
use crate::galois::{deck_group, DEFAULT_GROUP_CAP};
use crate::json::{constellation_to_json, fiber_component_to_json, orbit_to_json};
use crate::maps::{critical_structure, Moebius, RationalMap, SpherePoint};
use crate::orbifold::classify;
use crate::orbits::{admissible_base, default_mu, orbit, shared_generators, OrbitSet, DEFAULT_POINT_CAP};
use crate::scalar::NumberField;

#[derive(Clone, Debug)]
pub struct CorpusMap {
    pub name: String,
    pub map: RationalMap,
}

/// `z^n`.
pub fn power(n: usize) -> RationalMap {
    let mut num = vec![0; n + 1];
    num[n] = 1;
    RationalMap::from_i64s(&NumberField::rationals(), &num, &[1]).expect("valid map")
}

/// `(z^n + z^-n) / 2 = (z^2n + 1) / (2 z^n)`.
pub fn dihedral(n: usize) -> RationalMap {
    let mut num = vec![0; 2 * n + 1];
    num[0] = 1;
    num[2 * n] = 1;
    let mut den = vec![0; n + 1];
    den[n] = 2;
    RationalMap::from_i64s(&NumberField::rationals(), &num, &den).expect("valid map")
}

fn poly(coeffs: &[i64]) -> RationalMap {
    RationalMap::from_i64s(&NumberField::rationals(), coeffs, &[1]).expect("valid map")
}

/// Power maps of degree 2 to 6, the dihedral maps of degree 4 to 10, and
/// four non-Galois polynomials.
pub fn corpus() -> Vec<CorpusMap> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push(CorpusMap { name: format!("z^{n}"), map: power(n) });
    }
    for n in 2..=5 {
        out.push(CorpusMap { name: format!("(z^{n} + z^-{n})/2"), map: dihedral(n) });
    }
    for (name, coeffs) in [
        ("z^3 - 3z", &[0, -3, 0, 1][..]),
        ("z^4 - 2z^2", &[0, 0, -2, 0, 1][..]),
        ("z^4 + z^3", &[0, 0, 0, 1, 1][..]),
        ("z^4 - 4z", &[0, -4, 0, 0, 1][..]),
    ] {
        out.push(CorpusMap { name: name.to_string(), map: poly(coeffs) });
    }
    out
}

/// Outcome of one invariant over the whole corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Initial tracking precision used by the suite, in bits.
pub const SUITE_PRECISION: u32 = 64;

/// Riemann–Hurwitz parity on every extracted and induced constellation,
/// cycle types against the critical structure, the orbit-size partition
/// and projection equivariance of fiber products, the equivalence of the
/// three normalization criteria, orbit monotonicity, deck invariance of
/// orbits, and byte-identical output of two runs.
pub fn corpus_check() -> Result<Vec<SuiteCheck>> {
    let (mut checks, first) = suite_pass()?;
    let (_, second) = suite_pass()?;
    let same = first == second;
    checks.push(SuiteCheck {
        name: "determinism",
        passed: same,
        detail: if same { format!("two runs agree on {} bytes", first.len()) } else { "two runs differ".into() },
    });
    Ok(checks)
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self) -> SuiteCheck {
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{} cases", self.cases)
        } else {
            format!("{} of {} cases failed: {}", self.failures.len(), self.cases, self.failures.join("; "))
        };
        SuiteCheck { name: self.name, passed, detail }
    }
}

fn parity_ok(c: &Constellation) -> bool {
    let r: usize = c.perms().iter().map(|p| c.degree() - p.cycle_count()).sum();
    r.is_multiple_of(2) && genus(c).is_ok()
}

/// Runs every check once, returning the checks and a transcript of all
/// computed objects.
fn suite_pass() -> Result<(Vec<SuiteCheck>, String)> {
    let mut transcript = String::new();
    let mut parity = Tally::new("riemann-hurwitz parity");
    let mut cycles = Tally::new("cycle types match critical structure");
    let mut lemma = Tally::new("normalization criteria agree");
    let mut oracle = Tally::new("normalization tuple oracle");
    let maps = corpus();
    for m in &maps {
        let c = extract_monodromy(&m.map, SUITE_PRECISION)?;
        writeln!(transcript, "{} {}", m.name, constellation_to_json(&c)).expect("string write");
        parity.record(parity_ok(&c) && genus(&c)? == 0, || format!("{} has odd ramification or positive genus", m.name));
        let mut want: Vec<Vec<usize>> = Vec::new();
        for e in critical_structure(&m.map)?.entries {
            want.extend(std::iter::repeat_n(e.local_degrees.clone(), e.value.size()));
        }
        let mut got: Vec<Vec<usize>> = c.perms().iter().map(|p| p.cycle_type()).collect();
        want.sort();
        got.sort();
        cycles.record(want == got, || format!("{}: {got:?} vs {want:?}", m.name));
        let verdict = classify(&m.map)?;
        let n = normalization_genus(&c, DEFAULT_GROUP_CAP)?;
        let agree = !verdict.chi.is_negative() == verdict.in_list && verdict.in_list == (n.genus <= 1);
        lemma.record(agree, || format!("{}: chi = {}, genus {}", m.name, verdict.chi, n.genus));
        if c.degree() <= 5 && n.group_order <= 120 {
            let g = normalization_genus_tuple_oracle(&c)?;
            oracle.record(g == n.genus, || format!("{}: {g} vs {}", m.name, n.genus));
        }
    }

    let mut partition = Tally::new("fiber-product orbit partition");
    let mut equivariance = Tally::new("fiber-product projections are equivariant");
    let small: Vec<&CorpusMap> = maps.iter().filter(|m| m.map.degree() <= 4).collect();
    let intro = CorpusMap { name: "(z + 1)^2".into(), map: poly(&[1, 2, 1]) };
    let mut pairs: Vec<(&CorpusMap, &CorpusMap)> = vec![(&maps[0], &intro)];
    for (i, a) in small.iter().enumerate() {
        for b in &small[i..] {
            pairs.push((a, b));
        }
    }
    for (a, b) in pairs {
        let run = extract_monodromy_joint(&[a.map.clone(), b.map.clone()], SUITE_PRECISION)?;
        let comps = fiber_product(&run.constellations)?;
        let degrees = [a.map.degree(), b.map.degree()];
        let total = degrees[0] * degrees[1];
        let mut seen = vec![false; total];
        let mut disjoint = true;
        for comp in &comps {
            writeln!(transcript, "{} x {} {}", a.name, b.name, fiber_component_to_json(comp)).expect("string write");
            parity.record(parity_ok(&comp.induced), || format!("component of {} x {}", a.name, b.name));
            for t in &comp.orbit {
                let code = t[0] * degrees[1] + t[1];
                disjoint &= !seen[code];
                seen[code] = true;
            }
            for (i, f) in run.constellations.iter().enumerate() {
                equivariance.record(comp.projection_is_equivariant(i, f), || format!("{} x {} factor {}", a.name, b.name, i + 1));
            }
        }
        let sums_ok = (0..2).all(|i| comps.iter().map(|c| c.degrees_to_factors[i] * degrees[i]).sum::<usize>() == total);
        partition.record(disjoint && seen.iter().all(|&s| s) && sums_ok, || format!("{} x {}", a.name, b.name));
    }

    let mut monotone = Tally::new("orbit monotonicity");
    let mut invariance = Tally::new("deck invariance of orbits");
    for (maps, depth) in orbit_runs() {
        let k = maps[0].field().clone();
        let gens = shared_generators(&maps, &default_mu(&k))?;
        let base = if maps.len() == 2 && maps[1] == poly(&[1, 2, 1]) { SpherePoint::from_i64(&k, 0) } else { admissible_base(&maps)? };
        let mut previous: Option<OrbitSet> = None;
        for d in 0..=depth {
            let s = orbit(&k, base.clone(), gens.clone(), d, DEFAULT_POINT_CAP)?;
            if let Some(p) = &previous {
                let ok = p.points().all(|(x, w)| s.word_length(x) == Some(w));
                monotone.record(ok, || format!("depth {} to {d} from {}", d - 1, base.render(&k)));
            }
            previous = Some(s);
        }
        let s = previous.expect("depth range is nonempty");
        writeln!(transcript, "{}", orbit_to_json(&s)).expect("string write");
        for p in &maps {
            let deck: Vec<Moebius> = deck_group(p)?.elements().expect("deck groups are enumerated").to_vec();
            for sigma in &deck {
                let ok = s.points().filter(|(_, w)| *w < depth).all(|(x, _)| s.contains(&sigma.apply(x)));
                invariance.record(ok, || format!("{} moves a point of the orbit outside it", sigma.render("z")));
            }
        }
    }

    let checks = vec![
        parity.finish(),
        cycles.finish(),
        lemma.finish(),
        oracle.finish(),
        partition.finish(),
        equivariance.finish(),
        monotone.finish(),
        invariance.finish(),
    ];
    for c in &checks {
        writeln!(transcript, "{} {} {}", c.name, c.passed, c.detail).expect("string write");
    }
    Ok((checks, transcript))
}

/// Map tuples whose shared orbits the suite explores, with their depth.
fn orbit_runs() -> Vec<(Vec<RationalMap>, usize)> {
    vec![
        (vec![power(2), poly(&[1, 2, 1])], 8),
        (vec![power(2), RationalMap::from_i64s(&NumberField::rationals(), &[1, 0, 1], &[0, 1]).expect("valid map")], 5),
        (vec![power(2), dihedral(2)], 4),
    ]
}
