//! Ramification orbifolds, their Euler characteristics and the sphere lists.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::maps::{critical_structure, AlgebraicPointSet, RamificationPortrait, RationalMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedClass {
    pub class: AlgebraicPointSet,
    pub nu: usize,
}

/// Points with `nu >= 2`; every other point has `nu = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbifold {
    pub marked: Vec<MarkedClass>,
}

/// Multiset of orbifold values, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(mut values: Vec<usize>) -> Result<Self> {
        if values.iter().any(|&v| v < 2) {
            return Err(Error::InvalidInput("signature values must be at least 2".into()));
        }
        values.sort_unstable();
        Ok(Signature(values))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `2 + sum (1/nu - 1)`.
    pub fn euler_characteristic(&self) -> BigRational {
        let mut chi = BigRational::from_integer(BigInt::from(2));
        for &v in &self.0 {
            chi += BigRational::new(BigInt::one(), BigInt::from(v)) - BigRational::one();
        }
        chi
    }

    /// The matching entry of the lists of orbifolds on the sphere with
    /// nonnegative Euler characteristic.
    pub fn list_member(&self) -> Option<ListTag> {
        use ListTag::*;
        match self.0.as_slice() {
            [2, 2, 2, 2] => Some(Euclidean2222),
            [3, 3, 3] => Some(Euclidean333),
            [2, 4, 4] => Some(Euclidean244),
            [2, 3, 6] => Some(Euclidean236),
            [a, b] if a == b => Some(Cyclic(*a)),
            [2, 2, l] => Some(Dihedral(*l)),
            [2, 3, 3] => Some(Tetrahedral),
            [2, 3, 4] => Some(Octahedral),
            [2, 3, 5] => Some(Icosahedral),
            _ => None,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ListTag {
    Euclidean2222,
    Euclidean333,
    Euclidean244,
    Euclidean236,
    Cyclic(usize),
    Dihedral(usize),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl ListTag {
    /// Whether the entry has positive Euler characteristic.
    pub fn is_spherical(self) -> bool {
        !matches!(self, ListTag::Euclidean2222 | ListTag::Euclidean333 | ListTag::Euclidean244 | ListTag::Euclidean236)
    }
}

impl fmt::Display for ListTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ListTag::Euclidean2222 => write!(f, "{{2,2,2,2}}"),
            ListTag::Euclidean333 => write!(f, "{{3,3,3}}"),
            ListTag::Euclidean244 => write!(f, "{{2,4,4}}"),
            ListTag::Euclidean236 => write!(f, "{{2,3,6}}"),
            ListTag::Cyclic(l) => write!(f, "{{l,l}} with l={l}"),
            ListTag::Dihedral(l) => write!(f, "{{2,2,l}} with l={l}"),
            ListTag::Tetrahedral => write!(f, "{{2,3,3}}"),
            ListTag::Octahedral => write!(f, "{{2,3,4}}"),
            ListTag::Icosahedral => write!(f, "{{2,3,5}}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusBound {
    AtMostOne,
    AtLeastTwo,
}

impl fmt::Display for GenusBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusBound::AtMostOne => write!(f, "normalization genus ≤ 1"),
            GenusBound::AtLeastTwo => write!(f, "normalization genus ≥ 2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub chi: BigRational,
    pub signature: Signature,
    pub in_list: bool,
    pub list_member: Option<ListTag>,
    pub genus_bound: GenusBound,
}

impl Orbifold {
    pub fn from_portrait(p: &RamificationPortrait) -> Self {
        let marked = p
            .entries
            .iter()
            .map(|e| MarkedClass { class: e.value.clone(), nu: e.nu() })
            .filter(|m| m.nu > 1)
            .collect();
        Orbifold { marked }
    }

    /// One value per marked point; a class of size `k` contributes `k` copies.
    pub fn signature(&self) -> Signature {
        let mut v = Vec::new();
        for m in &self.marked {
            v.extend(std::iter::repeat_n(m.nu, m.class.size()));
        }
        Signature::new(v).expect("marked values are at least 2")
    }
}

pub fn ramification_orbifold(p: &RationalMap) -> Result<Orbifold> {
    Ok(Orbifold::from_portrait(&critical_structure(p)?))
}

pub fn euler_characteristic(o: &Orbifold) -> BigRational {
    o.signature().euler_characteristic()
}

/// Signature, Euler characteristic and list membership, with the check
/// that `chi >= 0` and list membership agree.
pub fn classify(p: &RationalMap) -> Result<ClassVerdict> {
    let o = ramification_orbifold(p)?;
    verdict_for(o.signature())
}

pub fn verdict_for(signature: Signature) -> Result<ClassVerdict> {
    let chi = signature.euler_characteristic();
    let list_member = signature.list_member();
    let in_list = list_member.is_some();
    let nonnegative = !chi.is_negative();
    if in_list != nonnegative {
        return Err(Error::Consistency(format!("signature {signature} has chi = {chi} but list membership {in_list}")));
    }
    if let Some(tag) = list_member {
        if tag.is_spherical() != chi.is_positive() || (!tag.is_spherical() && !chi.is_zero()) {
            return Err(Error::Consistency(format!("list entry {tag} disagrees with chi = {chi}")));
        }
    }
    let genus_bound = if in_list { GenusBound::AtMostOne } else { GenusBound::AtLeastTwo };
    Ok(ClassVerdict { chi, signature, in_list, list_member, genus_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, NumberField};

    fn map(num: &[i64], den: &[i64]) -> RationalMap {
        RationalMap::from_i64s(&NumberField::rationals(), num, den).unwrap()
    }

    fn sig(v: &[usize]) -> Signature {
        Signature::new(v.to_vec()).unwrap()
    }

    #[test]
    fn euler_characteristic_values() {
        assert_eq!(sig(&[2, 2, 2, 2]).euler_characteristic(), rat(0, 1));
        assert_eq!(sig(&[7, 7]).euler_characteristic(), rat(2, 7));
        assert_eq!(sig(&[2, 2, 2, 4]).euler_characteristic(), rat(-1, 4));
        assert_eq!(sig(&[2, 3, 7]).euler_characteristic(), rat(-1, 42));
    }

    #[test]
    fn list_matching() {
        assert_eq!(sig(&[9, 9]).list_member(), Some(ListTag::Cyclic(9)));
        assert_eq!(sig(&[2, 2, 9]).list_member(), Some(ListTag::Dihedral(9)));
        assert_eq!(sig(&[2, 2, 2]).list_member(), Some(ListTag::Dihedral(2)));
        assert_eq!(sig(&[2, 3, 5]).list_member(), Some(ListTag::Icosahedral));
        assert_eq!(sig(&[2, 3, 7]).list_member(), None);
        assert_eq!(sig(&[2, 2, 2, 2, 2]).list_member(), None);
    }

    #[test]
    fn power_map_orbifold() {
        let o = ramification_orbifold(&map(&[0, 0, 0, 0, 0, 1], &[1])).unwrap();
        assert_eq!(o.marked.iter().map(|m| m.nu).collect::<Vec<_>>(), vec![5, 5]);
        let v = classify(&map(&[0, 0, 0, 0, 0, 1], &[1])).unwrap();
        assert_eq!(v.chi, rat(2, 5));
        assert_eq!(v.genus_bound, GenusBound::AtMostOne);
    }

    #[test]
    fn quartic_is_hyperbolic() {
        let v = classify(&map(&[0, -4, 0, 0, 1], &[1])).unwrap();
        assert_eq!(v.signature, sig(&[2, 2, 2, 4]));
        assert_eq!(v.chi, rat(-1, 4));
        assert!(!v.in_list);
        assert_eq!(v.genus_bound, GenusBound::AtLeastTwo);
    }

    #[test]
    fn dihedral_and_chebyshev() {
        let mut num = vec![0i64; 11];
        num[0] = 1;
        num[10] = 1;
        let mut den = vec![0i64; 6];
        den[5] = 2;
        let v = classify(&map(&num, &den)).unwrap();
        assert_eq!(v.signature, sig(&[2, 2, 5]));
        assert_eq!(v.chi, rat(1, 5));
        let v = classify(&map(&[0, -3, 0, 1], &[1])).unwrap();
        assert_eq!(v.signature, sig(&[2, 2, 3]));
        assert_eq!(v.chi, rat(1, 3));
        let v = classify(&map(&[0, 0, 0, 1, 1], &[1])).unwrap();
        assert_eq!(v.signature, sig(&[2, 3, 4]));
        assert_eq!(v.chi, rat(1, 12));
    }
}
