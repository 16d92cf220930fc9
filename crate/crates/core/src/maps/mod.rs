//! Rational maps of the sphere and their compositional and critical data.

mod critical;
mod factors;
mod fiber;
mod moebius;
mod rational_map;
mod sphere;

pub use critical::{critical_structure, AlgebraicPointSet, PortraitEntry, RamificationPortrait};
pub use factors::{common_right_factor_degree, fiber_product_factor_count, left_factor};
pub(crate) use factors::compose_pair;
pub(crate) use fiber::isolate_over;
pub use fiber::{fiber, fiber_with_cap, FiberEntry, FiberPoint};
pub use moebius::Moebius;
pub use rational_map::RationalMap;
pub use sphere::SpherePoint;
