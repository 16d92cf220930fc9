use std::fmt;

use crate::scalar::{ExactScalar, Field, NumberField};

/// A point of the Riemann sphere with exact coordinates.
///
/// The derived order puts finite points first (ordered by coordinates) and
/// infinity last; this is the canonical order used for deterministic output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpherePoint {
    Finite(ExactScalar),
    Infinity,
}

impl fmt::Debug for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(a) => {
                let parts: Vec<String> = a.coords.iter().map(crate::scalar::rational_to_string).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

impl SpherePoint {
    pub fn finite(a: ExactScalar) -> Self {
        SpherePoint::Finite(a)
    }

    pub fn from_i64(k: &NumberField, n: i64) -> Self {
        SpherePoint::Finite(k.from_i64(n))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<&ExactScalar> {
        match self {
            SpherePoint::Finite(a) => Some(a),
            SpherePoint::Infinity => None,
        }
    }

    pub fn render(&self, k: &NumberField) -> String {
        match self {
            SpherePoint::Finite(a) => k.render(a),
            SpherePoint::Infinity => "inf".to_string(),
        }
    }
}
