use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::One;

use super::perm::{product, Permutation};
use crate::error::{Error, Result};

/// A branched covering of the sphere as a tuple of permutations, one per
/// branch point, whose left-to-right product is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constellation {
    degree: usize,
    branch_points: Vec<String>,
    perms: Vec<Permutation>,
}

/// A connected component of a fiber product, given by an orbit of the
/// componentwise action on tuples of sheets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComponent {
    /// Sheet tuples, zero-based, in increasing mixed-radix order.
    pub orbit: Vec<Vec<usize>>,
    pub induced: Constellation,
    /// Degree of the projection onto each factor's source.
    pub degrees_to_factors: Vec<usize>,
    pub genus: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonodromyGroup {
    pub order: usize,
    pub capped: bool,
}

/// Genus of the Galois closure together with the data behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationGenus {
    pub group_order: usize,
    pub genus: usize,
    /// Orbifold Euler characteristic with `ν_i = ord σ_i`.
    pub chi: BigRational,
}

impl Constellation {
    /// Checks degrees, distinct labels, the product relation and
    /// transitivity.
    pub fn new(degree: usize, branch_points: Vec<String>, perms: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("a covering has degree at least 1".into()));
        }
        if branch_points.len() != perms.len() {
            return Err(Error::InvalidInput(format!(
                "{} branch points but {} permutations",
                branch_points.len(),
                perms.len()
            )));
        }
        if let Some(p) = perms.iter().find(|p| p.degree() != degree) {
            return Err(Error::InvalidInput(format!("permutation {p} does not act on {degree} points")));
        }
        let distinct: HashSet<&String> = branch_points.iter().collect();
        if distinct.len() != branch_points.len() {
            return Err(Error::InvalidInput("branch point labels repeat".into()));
        }
        if !product(degree, &perms).is_identity() {
            return Err(Error::InvalidInput("the permutations do not multiply to the identity".into()));
        }
        let c = Constellation { degree, branch_points, perms };
        if orbits(degree, &c.perms).len() != 1 {
            return Err(Error::InvalidInput("the permutations do not act transitively".into()));
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn branch_points(&self) -> &[String] {
        &self.branch_points
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    /// Cycle types keyed by branch label, dropping unramified points.
    pub fn cycle_types(&self) -> BTreeMap<String, Vec<usize>> {
        self.branch_points
            .iter()
            .zip(&self.perms)
            .filter(|(_, p)| !p.is_identity())
            .map(|(b, p)| (b.clone(), p.cycle_type()))
            .collect()
    }
}

/// Riemann-Hurwitz: `2 - 2g = 2d - sum (d - cycles(σ_i))`.
pub fn genus(c: &Constellation) -> Result<usize> {
    let d = c.degree;
    let total: usize = c.perms.iter().map(|p| d - p.cycle_count()).sum();
    if !total.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("ramification total {total} is odd")));
    }
    (total / 2 + 1)
        .checked_sub(d)
        .ok_or_else(|| Error::InvalidInput(format!("ramification total {total} is below 2d - 2 = {}", 2 * d - 2)))
}

/// Puts all constellations over one branch list, padding with identities.
///
/// Labels keep the relative order they have in every input; labels that
/// no input orders are taken in sorted order. Inputs that order two
/// shared labels differently are rejected, since reordering loops would
/// change the product relation.
pub fn align(cs: &[Constellation]) -> Result<Vec<Constellation>> {
    let mut labels: Vec<String> = cs.iter().flat_map(|c| c.branch_points.iter().cloned()).collect();
    labels.sort();
    labels.dedup();
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let n = labels.len();
    let mut after: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    let mut edges = HashSet::new();
    for c in cs {
        for w in c.branch_points.windows(2) {
            let (a, b) = (index[w[0].as_str()], index[w[1].as_str()]);
            if edges.insert((a, b)) {
                after[a].push(b);
                indegree[b] += 1;
            }
        }
    }
    // Kahn's algorithm, smallest label first
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        order.push(i);
        for &j in &after[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if order.len() != n {
        return Err(Error::InvalidInput("the constellations order their shared branch points differently".into()));
    }
    let merged: Vec<String> = order.iter().map(|&i| labels[i].clone()).collect();
    Ok(cs
        .iter()
        .map(|c| {
            let perms = merged
                .iter()
                .map(|l| match c.branch_points.iter().position(|b| b == l) {
                    Some(j) => c.perms[j].clone(),
                    None => Permutation::identity(c.degree),
                })
                .collect();
            Constellation { degree: c.degree, branch_points: merged.clone(), perms }
        })
        .collect())
}

/// Components of the fiber product of aligned coverings.
pub fn fiber_product(cs: &[Constellation]) -> Result<Vec<FiberComponent>> {
    let Some(first) = cs.first() else {
        return Err(Error::InvalidInput("the fiber product needs at least one covering".into()));
    };
    if cs.iter().any(|c| c.branch_points != first.branch_points) {
        return Err(Error::Precondition("fiber products need aligned constellations".into()));
    }
    let degrees: Vec<usize> = cs.iter().map(|c| c.degree).collect();
    let total: usize = degrees.iter().product();
    let encode = |t: &[usize]| t.iter().zip(&degrees).fold(0, |acc, (x, d)| acc * d + x);
    let decode = |mut n: usize| {
        let mut t = vec![0; degrees.len()];
        for (slot, d) in t.iter_mut().zip(&degrees).rev() {
            *slot = n % d;
            n /= d;
        }
        t
    };
    // componentwise action as permutations of the product index set
    let big: Vec<Permutation> = (0..first.perms.len())
        .map(|b| {
            let images = (0..total)
                .map(|n| {
                    let t: Vec<usize> = decode(n).iter().zip(cs).map(|(&x, c)| c.perms[b].apply(x)).collect();
                    encode(&t)
                })
                .collect();
            Permutation::from_images(images).expect("componentwise action is bijective")
        })
        .collect();
    let mut out = Vec::new();
    for orbit in orbits(total, &big) {
        let local: HashMap<usize, usize> = orbit.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let perms: Vec<Permutation> = big
            .iter()
            .map(|p| Permutation::from_images(orbit.iter().map(|&n| local[&p.apply(n)]).collect()).expect("restriction"))
            .collect();
        let induced = Constellation::new(orbit.len(), first.branch_points.clone(), perms)?;
        let g = genus(&induced)?;
        let tuples: Vec<Vec<usize>> = orbit.iter().map(|&n| decode(n)).collect();
        let mut degrees_to_factors = Vec::with_capacity(cs.len());
        for (i, &d) in degrees.iter().enumerate() {
            let mut counts = vec![0usize; d];
            for t in &tuples {
                counts[t[i]] += 1;
            }
            if counts.iter().any(|&c| c != counts[0]) {
                return Err(Error::Consistency(format!("projection of a component onto factor {i} is not uniform")));
            }
            degrees_to_factors.push(counts[0]);
        }
        out.push(FiberComponent { orbit: tuples, induced, degrees_to_factors, genus: g });
    }
    Ok(out)
}

impl FiberComponent {
    /// The projection to factor `i`, as sheet indices of that factor
    /// indexed by the sheets of the component.
    pub fn projection(&self, i: usize) -> Vec<usize> {
        self.orbit.iter().map(|t| t[i]).collect()
    }

    /// Whether the projection to factor `i` intertwines the monodromy of
    /// the component with that of `factor`.
    pub fn projection_is_equivariant(&self, i: usize, factor: &Constellation) -> bool {
        let pr = self.projection(i);
        self.induced.branch_points == factor.branch_points
            && self
                .induced
                .perms
                .iter()
                .zip(&factor.perms)
                .all(|(p, q)| (0..pr.len()).all(|s| pr[p.apply(s)] == q.apply(pr[s])))
    }
}

/// Order of the group generated by the permutations, enumerated up to `cap`.
pub fn monodromy_group(c: &Constellation, cap: usize) -> MonodromyGroup {
    match enumerate_group(c.degree, &c.perms, cap) {
        Some(elements) => MonodromyGroup { order: elements.len(), capped: false },
        None => MonodromyGroup { order: cap, capped: true },
    }
}

/// Genus of the normalization from the right-regular action of the
/// monodromy group `G`: `σ` acts on `G` by right multiplication with
/// `|G| / ord σ` cycles. Cross-checked against `1 - |G| χ / 2`.
pub fn normalization_genus(c: &Constellation, cap: usize) -> Result<NormalizationGenus> {
    let elements = enumerate_group(c.degree, &c.perms, cap)
        .ok_or_else(|| Error::CapExceeded(format!("monodromy group larger than {cap}")))?;
    let n = elements.len();
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut ramification = 0usize;
    for s in &c.perms {
        let right = Permutation::from_images(elements.iter().map(|g| index[&g.then(s)]).collect())
            .expect("right multiplication is bijective");
        ramification += n - right.cycle_count();
    }
    if !ramification.is_multiple_of(2) || ramification / 2 + 1 < n {
        return Err(Error::Consistency(format!("regular action ramification {ramification} is inconsistent")));
    }
    let g = ramification / 2 + 1 - n;
    let mut chi = BigRational::from_integer(2.into());
    for s in &c.perms {
        let nu = s.order();
        chi += BigRational::new(1.into(), nu.into()) - BigRational::one();
    }
    // g = 1 - |G| χ / 2
    let from_chi = BigRational::one() - BigRational::from_integer(n.into()) * &chi / BigRational::from_integer(2.into());
    if from_chi != BigRational::from_integer(g.into()) {
        return Err(Error::Consistency(format!("regular action gives genus {g}, the orbifold gives {from_chi}")));
    }
    Ok(NormalizationGenus { group_order: n, genus: g, chi })
}

/// The normalization as a component of the variety of injective `d`-tuples:
/// the orbit of `(1, ..., d)` under the diagonal action, and its genus.
pub fn normalization_genus_tuple_oracle(c: &Constellation) -> Result<usize> {
    let d = c.degree;
    if d > 5 {
        return Err(Error::CapExceeded(format!("tuple oracle handles degree at most 5, got {d}")));
    }
    let start: Vec<usize> = (0..d).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut tuples = vec![start];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for p in &c.perms {
            let image: Vec<usize> = tuples[i].iter().map(|&x| p.apply(x)).collect();
            if !index.contains_key(&image) {
                if tuples.len() == 120 {
                    return Err(Error::CapExceeded("tuple orbit larger than 120".into()));
                }
                index.insert(image.clone(), tuples.len());
                queue.push_back(tuples.len());
                tuples.push(image);
            }
        }
    }
    let perms: Vec<Permutation> = c
        .perms
        .iter()
        .map(|p| {
            let images = tuples.iter().map(|t| index[&t.iter().map(|&x| p.apply(x)).collect::<Vec<_>>()]).collect();
            Permutation::from_images(images).expect("diagonal action is bijective")
        })
        .collect();
    genus(&Constellation::new(tuples.len(), c.branch_points.clone(), perms)?)
}

/// Orbits of `<gens>` on `0..d`, each sorted, in order of least element.
pub(crate) fn orbits(d: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; d];
    let mut out = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// All elements of `<gens>` in breadth-first order, or `None` past `cap`.
pub(crate) fn enumerate_group(d: usize, gens: &[Permutation], cap: usize) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(d);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut k = 0;
    while k < elements.len() {
        for g in gens {
            let y = elements[k].then(g);
            if !seen.contains(&y) {
                if elements.len() >= cap {
                    return None;
                }
                seen.insert(y.clone());
                elements.push(y);
            }
        }
        k += 1;
    }
    Some(elements)
}

/// Sum of `(d - cycles)` over the tuple, the total ramification.
pub fn total_ramification(c: &Constellation) -> usize {
    c.perms.iter().map(|p| c.degree - p.cycle_count()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cons(d: usize, cycles: &[(&str, &str)]) -> Constellation {
        Constellation::new(
            d,
            cycles.iter().map(|c| c.0.to_string()).collect(),
            cycles.iter().map(|c| Permutation::parse_cycles(c.1, d).unwrap()).collect(),
        )
        .unwrap()
    }

    fn square() -> Constellation {
        cons(2, &[("0", "(1 2)"), ("inf", "(1 2)")])
    }

    fn cube() -> Constellation {
        cons(3, &[("0", "(1 2 3)"), ("inf", "(1 3 2)")])
    }

    /// The given finite permutations closed up by their inverse product at `inf`.
    fn closed(d: usize, finite: &[(&str, &str)]) -> Constellation {
        let mut labels: Vec<String> = finite.iter().map(|c| c.0.to_string()).collect();
        let mut perms: Vec<Permutation> = finite.iter().map(|c| Permutation::parse_cycles(c.1, d).unwrap()).collect();
        perms.push(product(d, &perms).inverse());
        labels.push("inf".into());
        Constellation::new(d, labels, perms).unwrap()
    }

    fn chebyshev() -> Constellation {
        closed(3, &[("-2", "(1 2)"), ("2", "(2 3)")])
    }

    fn quartic() -> Constellation {
        closed(4, &[("a", "(1 2)"), ("b", "(2 3)"), ("c", "(3 4)")])
    }

    #[test]
    fn validation() {
        assert!(Constellation::new(2, vec!["0".into()], vec![Permutation::parse_cycles("(1 2)", 2).unwrap()]).is_err());
        let id = Permutation::identity(2);
        assert!(Constellation::new(2, vec!["0".into(), "1".into()], vec![id.clone(), id]).is_err());
        let t = Permutation::parse_cycles("(1 2)", 2).unwrap();
        assert!(Constellation::new(2, vec!["0".into(), "0".into()], vec![t.clone(), t]).is_err());
    }

    #[test]
    fn genera() {
        assert_eq!(genus(&square()).unwrap(), 0);
        assert_eq!(genus(&chebyshev()).unwrap(), 0);
        assert_eq!(genus(&quartic()).unwrap(), 0);
        // a double cover branched at four points is a torus
        let t = cons(2, &[("a", "(1 2)"), ("b", "(1 2)"), ("c", "(1 2)"), ("d", "(1 2)")]);
        assert_eq!(genus(&t).unwrap(), 1);
    }

    #[test]
    fn alignment_pads_with_identities() {
        let a = square();
        let b = cons(2, &[("1", "(1 2)"), ("inf", "(1 2)")]);
        let aligned = align(&[a.clone(), b]).unwrap();
        assert_eq!(aligned[0].branch_points(), ["0", "1", "inf"]);
        assert!(aligned[0].perms()[1].is_identity());
        assert!(aligned[1].perms()[0].is_identity());
        assert_eq!(align(std::slice::from_ref(&a)).unwrap(), vec![a]);
        let crossed = cons(2, &[("inf", "(1 2)"), ("0", "(1 2)")]);
        assert!(align(&[square(), crossed]).is_err());
    }

    #[test]
    fn fiber_products() {
        let comps = fiber_product(&[square(), square()]).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].orbit, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(comps[1].orbit, vec![vec![0, 1], vec![1, 0]]);
        for c in &comps {
            assert_eq!((c.induced.degree(), c.genus, c.degrees_to_factors.clone()), (2, 0, vec![1, 1]));
            assert!(c.projection_is_equivariant(0, &square()));
        }
        let aligned = align(&[square(), cube()]).unwrap();
        let comps = fiber_product(&aligned).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!((comps[0].induced.degree(), comps[0].genus), (6, 0));
        assert_eq!(comps[0].degrees_to_factors, vec![3, 2]);
        assert!(fiber_product(&[square(), cons(2, &[("1", "(1 2)"), ("inf", "(1 2)")])]).is_err());
    }

    #[test]
    fn monodromy_orders() {
        assert_eq!(monodromy_group(&square(), 10080), MonodromyGroup { order: 2, capped: false });
        assert_eq!(monodromy_group(&chebyshev(), 10080).order, 6);
        assert_eq!(monodromy_group(&quartic(), 10080).order, 24);
        assert!(monodromy_group(&quartic(), 10).capped);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalization_genus(&square(), 10080).unwrap().genus, 0);
        let n = normalization_genus(&chebyshev(), 10080).unwrap();
        assert_eq!((n.group_order, n.genus), (6, 0));
        let n = normalization_genus(&quartic(), 10080).unwrap();
        assert_eq!((n.group_order, n.genus), (24, 4));
        assert_eq!(n.chi, BigRational::new((-1).into(), 4.into()));
        assert!(normalization_genus(&quartic(), 10).is_err());
        for c in [square(), cube(), chebyshev(), quartic()] {
            assert_eq!(normalization_genus_tuple_oracle(&c).unwrap(), normalization_genus(&c, 10080).unwrap().genus);
        }
    }
}
