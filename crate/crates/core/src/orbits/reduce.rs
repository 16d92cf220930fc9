use super::construct::common_field;
use crate::error::{Error, Result};
use crate::galois::{deck_group, quotient_map, GroupClosure, GrowthCertificate, TransformGroup};
use crate::maps::{left_factor, Moebius, RationalMap};

/// Outcome of trying to put every map under one finite quotient.
#[derive(Clone, Debug)]
pub enum Reduction {
    /// `G = <Γ_1, ..., Γ_k>` is finite, `A` is its quotient map and
    /// `A = F_i ∘ P_i` for every map.
    Finite { group: TransformGroup, quotient: RationalMap, factors: Vec<RationalMap> },
    /// `G` is infinite, so no such `A` exists.
    Infinite(GrowthCertificate),
}

/// The group generated by all deck groups, its quotient map `A` and the
/// left factors `F_i` with `A = F_i ∘ P_i`, each verified exactly.
///
/// Fails with `Undetermined` when the closure passes `cap` without a
/// growth certificate.
pub fn finite_group_reduction(maps: &[RationalMap], cap: usize) -> Result<Reduction> {
    let k = common_field(maps)?;
    let mut gens: Vec<Moebius> = Vec::new();
    for p in maps {
        for g in deck_group(p)?.generators() {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
    }
    let group = match TransformGroup::generated(&k, gens, cap)? {
        GroupClosure::Finite(g) => g,
        GroupClosure::Infinite(cert) => return Ok(Reduction::Infinite(cert)),
        GroupClosure::Undetermined { ball_sizes } => {
            return Err(Error::Undetermined(format!(
                "the generated group passed {cap} elements without a growth certificate (ball sizes {ball_sizes:?})"
            )))
        }
    };
    let quotient = quotient_map(&group)?;
    let mut factors = Vec::with_capacity(maps.len());
    for (i, p) in maps.iter().enumerate() {
        let f = left_factor(&quotient, p)?.ok_or_else(|| {
            Error::Consistency(format!("map {} is not a right factor of the quotient map", i + 1))
        })?;
        if f.compose(p)? != quotient {
            return Err(Error::Consistency(format!("F_{0} ∘ P_{0} differs from the quotient map", i + 1)));
        }
        factors.push(f);
    }
    Ok(Reduction::Finite { group, quotient, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::DEFAULT_GROUP_CAP;
    use crate::scalar::NumberField;

    #[test]
    fn translations_make_the_group_infinite() {
        let k = NumberField::rationals();
        let maps = [RationalMap::from_i64s(&k, &[0, 0, 1], &[1]).unwrap(), RationalMap::from_i64s(&k, &[1, 2, 1], &[1]).unwrap()];
        let Reduction::Infinite(cert) = finite_group_reduction(&maps, DEFAULT_GROUP_CAP).unwrap() else {
            panic!("infinite")
        };
        assert!(cert.infinite_order_element.has_infinite_order());
    }

    #[test]
    fn klein_four_quotient() {
        let k = NumberField::rationals();
        let maps = [RationalMap::from_i64s(&k, &[0, 0, 1], &[1]).unwrap(), RationalMap::from_i64s(&k, &[1, 0, 1], &[0, 2]).unwrap()];
        let Reduction::Finite { group, quotient, factors } = finite_group_reduction(&maps, DEFAULT_GROUP_CAP).unwrap() else {
            panic!("finite")
        };
        assert_eq!(group.order(), Some(4));
        assert_eq!(quotient.degree(), 4);
        for (f, p) in factors.iter().zip(&maps) {
            assert_eq!(f.degree(), 2);
            assert_eq!(f.compose(p).unwrap(), quotient);
        }
    }

    #[test]
    fn identical_power_maps() {
        let k = NumberField::gaussian();
        let p = RationalMap::from_i64s(&k, &[0, 0, 0, 0, 1], &[1]).unwrap();
        let Reduction::Finite { group, quotient, factors } = finite_group_reduction(&[p.clone(), p], DEFAULT_GROUP_CAP).unwrap() else {
            panic!("finite")
        };
        assert_eq!(group.order(), Some(4));
        assert_eq!(quotient.degree(), 4);
        assert!(factors.iter().all(|f| f.degree() == 1));
    }
}
