use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A permutation of `{0, ..., d-1}` stored as its image array.
///
/// Products read left to right: `(a * b)(i) = b(a(i))`, so `a` acts first.
/// Input and output use the labels `1..=d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation { images: (0..d).collect() }
    }

    /// From zero-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return Err(Error::InvalidInput(format!("{images:?} is not a bijection of 0..{d}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From one-based images, the serialized form.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidInput("permutation labels start at 1".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// Parses cycle notation such as `(1 2)(3)` or `(1,2,4)`; `()` is the
    /// identity. Points not mentioned are fixed.
    pub fn parse_cycles(s: &str, d: usize) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("malformed cycle notation {s:?}"));
        let mut images: Vec<usize> = (0..d).collect();
        let mut seen = vec![false; d];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = open.find(')').ok_or_else(bad)?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let cycle: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            for &x in &cycle {
                if x == 0 || x > d {
                    return Err(Error::InvalidInput(format!("point {x} outside 1..={d} in {s:?}")));
                }
                if seen[x - 1] {
                    return Err(Error::InvalidInput(format!("point {x} repeated in {s:?}")));
                }
                seen[x - 1] = true;
            }
            for (j, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(j + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Cycles including fixed points, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths, largest first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |l, c| l.lcm(&c.len()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            let body: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// `p1 * p2 * ... * pk`, left to right.
pub fn product<'a>(d: usize, perms: impl IntoIterator<Item = &'a Permutation>) -> Permutation {
    perms.into_iter().fold(Permutation::identity(d), |acc, p| acc.then(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles("(1 2)(3)", 3).unwrap();
        assert_eq!(p.one_based(), vec![2, 1, 3]);
        assert_eq!(p.to_string(), "(1 2)");
        let q = Permutation::parse_cycles("(1,3,4)", 4).unwrap();
        assert_eq!(q.to_string(), "(1 3 4)");
        assert_eq!(q.cycle_type(), vec![3, 1]);
        assert_eq!(Permutation::parse_cycles("()", 2).unwrap(), Permutation::identity(2));
        assert!(Permutation::parse_cycles("(1 1)", 2).is_err());
        assert!(Permutation::parse_cycles("(1 5)", 4).is_err());
        assert!(Permutation::parse_cycles("1 2", 2).is_err());
    }

    #[test]
    fn products_read_left_to_right() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // 1 -> 2 under a, then 2 -> 3 under b
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
        assert_eq!(a.then(&b).order(), 3);
        assert!(a.then(&b).then(&a.then(&b).inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[2, 1]).is_ok());
    }
}
