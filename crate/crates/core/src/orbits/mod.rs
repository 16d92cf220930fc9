//! Truncated Möbius orbits, the value sets they induce, windowed checks of
//! shared preimages, and the reduction to a finite quotient.

mod construct;
mod orbit;
mod reduce;
mod verify;

pub use construct::{
    admissible_base, construct_sets, deck_word_lengths, default_mu, growth_bound, is_critical_point, shared_generators,
    DeckWord, ValueSet, WORD_SEARCH_CAP,
};
pub use orbit::{orbit, OrbitSet, DEFAULT_POINT_CAP};
pub use reduce::{finite_group_reduction, Reduction};
pub use verify::{verify_shared_preimage, verify_single_k, Check, CheckKind, VerificationReport};
