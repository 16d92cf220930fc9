//! Galois coverings, deck groups, standard families and quotient maps.

mod deck;
mod family;
mod group;
mod quotient;

pub use deck::{cleared_identity, deck_group, is_galois, verify_deck, GaloisCertificate, GaloisWitness};
pub use family::{standard_family, FamilyKind, StandardFamily};
pub use group::{GroupClosure, GrowthCertificate, TransformGroup, DEFAULT_GROUP_CAP};
pub use quotient::quotient_map;
