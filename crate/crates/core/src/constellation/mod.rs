//! Branched coverings as permutation tuples: genus, fiber products,
//! monodromy groups, normalizations, and monodromy of rational maps.

mod covering;
mod monodromy;
mod perm;

pub use covering::{
    align, fiber_product, genus, monodromy_group, normalization_genus, normalization_genus_tuple_oracle,
    total_ramification, Constellation, FiberComponent, MonodromyGroup, NormalizationGenus,
};
pub use monodromy::{extract_monodromy, extract_monodromy_capped, extract_monodromy_joint, MonodromyRun};
pub use perm::{product, Permutation};
