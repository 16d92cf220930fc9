//! Fixtures shared by the benchmarks.

use preimage_core::maps::RationalMap;
use preimage_core::orbits::{default_mu, orbit, shared_generators, OrbitSet};
use preimage_core::scalar::NumberField;

pub fn rational_map(num: &[i64], den: &[i64]) -> RationalMap {
    RationalMap::from_i64s(&NumberField::rationals(), num, den).expect("valid map")
}

/// `z^2` and `(z + 1)^2`.
pub fn intro_maps() -> Vec<RationalMap> {
    vec![rational_map(&[0, 0, 1], &[1]), rational_map(&[1, 2, 1], &[1])]
}

/// The shared orbit of 0 for [`intro_maps`].
pub fn intro_orbit(depth: usize) -> OrbitSet {
    let k = NumberField::rationals();
    let maps = intro_maps();
    let gens = shared_generators(&maps, &default_mu(&k)).expect("deck groups over Q");
    orbit(&k, preimage_core::maps::SpherePoint::from_i64(&k, 0), gens, depth, 1 << 20).expect("small orbit")
}
