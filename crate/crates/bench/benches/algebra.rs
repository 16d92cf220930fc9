use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use preimage_bench::{intro_maps, intro_orbit, rational_map};
use preimage_core::constellation::{extract_monodromy, normalization_genus};
use preimage_core::galois::{deck_group, standard_family, FamilyKind, DEFAULT_GROUP_CAP};
use preimage_core::maps::{common_right_factor_degree, critical_structure};
use preimage_core::orbits::{construct_sets, verify_shared_preimage};

fn critical(c: &mut Criterion) {
    let quartic = rational_map(&[0, -4, 0, 0, 1], &[1]);
    c.bench_function("critical_structure z^4 - 4z", |b| b.iter(|| critical_structure(black_box(&quartic)).unwrap()));
    let p = rational_map(&[0, 0, 0, 0, 1], &[1]);
    let q = rational_map(&[0, 0, 0, 0, 0, 0, 1], &[1]);
    c.bench_function("common_right_factor_degree z^4, z^6", |b| b.iter(|| common_right_factor_degree(black_box(&p), black_box(&q)).unwrap()));
}

fn galois(c: &mut Criterion) {
    let d5 = standard_family(FamilyKind::Dihedral(5)).unwrap().map;
    c.bench_function("deck_group dihedral 5", |b| b.iter(|| deck_group(black_box(&d5)).unwrap()));
    let tet = standard_family(FamilyKind::Tetrahedral).unwrap().map;
    c.bench_function("deck_group tetrahedral", |b| b.iter(|| deck_group(black_box(&tet)).unwrap()));
}

fn monodromy(c: &mut Criterion) {
    let quartic = rational_map(&[0, -4, 0, 0, 1], &[1]);
    c.bench_function("extract_monodromy z^4 - 4z", |b| b.iter(|| extract_monodromy(black_box(&quartic), 64).unwrap()));
    let cons = extract_monodromy(&quartic, 64).unwrap();
    c.bench_function("normalization_genus S4", |b| b.iter(|| normalization_genus(black_box(&cons), DEFAULT_GROUP_CAP).unwrap()));
}

fn orbits(c: &mut Criterion) {
    let maps = intro_maps();
    c.bench_function("orbit intro depth 12", |b| b.iter(|| intro_orbit(black_box(12))));
    let s = intro_orbit(12);
    let sets = construct_sets(&maps, &s).unwrap();
    c.bench_function("verify intro window 8", |b| b.iter(|| verify_shared_preimage(&maps, &sets, black_box(&s), 8).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = critical, galois, monodromy, orbits
}
criterion_main!(benches);
