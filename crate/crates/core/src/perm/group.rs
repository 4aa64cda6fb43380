use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigUint;

use super::chain::StabChain;
use super::Permutation;
use crate::error::{Error, Result};
use crate::subset::{choose, elements, full_mask, KSubset, MaskCombinations};

/// Largest orbit of subsets we are willing to hold in memory.
pub const ORBIT_LIMIT: usize = 10_000_000;

/// Largest subset orbit used to build a setwise stabilizer (each orbit
/// element keeps a coset representative).
pub const STABILIZER_ORBIT_LIMIT: usize = 1_000_000;

/// A finitely generated permutation group. The stabilizer chain is built on
/// first use and cached.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    name: Option<String>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 || degree > crate::subset::MAX_N {
            return Err(Error::usage(format!("group degree {degree} out of range 1..=64")));
        }
        if generators.is_empty() {
            return Err(Error::usage("a group needs at least one generator"));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::usage(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup {
            degree,
            generators,
            name: None,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        PermGroup::new(degree, vec![Permutation::identity(degree)])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            let mut chain = StabChain::new(self.degree);
            for g in &self.generators {
                chain.add(g);
            }
            chain
        })
    }

    /// Exact group order.
    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Orbit of a point, sorted.
    pub fn point_orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = 1u64 << x;
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            for g in &self.generators {
                let z = g.apply(y);
                if seen >> z & 1 == 0 {
                    seen |= 1 << z;
                    queue.push(z);
                }
            }
        }
        elements(seen).collect()
    }

    /// Orbits on points, each sorted, ordered by least element.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let mut covered = 0u64;
        let mut out = Vec::new();
        for x in 0..self.degree {
            if covered >> x & 1 == 0 {
                let orbit = self.point_orbit(x);
                for &y in &orbit {
                    covered |= 1 << y;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.point_orbit(0).len() == self.degree
    }

    /// True iff the group is transitive and a point stabilizer is transitive
    /// on the remaining points.
    pub fn is_two_transitive(&self) -> bool {
        self.degree >= 2
            && self.is_transitive()
            && self.chain().basic_orbit(1).len() == self.degree - 1
    }

    /// Generators for the stabilizer of the point 0.
    pub fn stabilizer_of_first_point(&self) -> Result<PermGroup> {
        let gens = self.chain().strong_generators(1);
        if gens.is_empty() {
            PermGroup::trivial(self.degree)
        } else {
            PermGroup::new(self.degree, gens)
        }
    }

    fn check_subset(&self, alpha: KSubset) -> Result<()> {
        if alpha.ground().size() != self.degree {
            return Err(Error::usage(format!(
                "subset of a {}-set used with a group of degree {}",
                alpha.ground().size(),
                self.degree
            )));
        }
        Ok(())
    }

    /// Breadth-first closure of a subset mask, in discovery order.
    pub(crate) fn mask_orbit(&self, seed: u64, limit: usize) -> Result<Vec<u64>> {
        let mut seen: HashSet<u64> = HashSet::from([seed]);
        let mut order = vec![seed];
        let mut head = 0;
        while head < order.len() {
            let m = order[head];
            head += 1;
            for g in &self.generators {
                let img = g.apply_mask(m);
                if seen.insert(img) {
                    if order.len() >= limit {
                        return Err(Error::Capacity {
                            what: "orbit",
                            needed: order.len() as u128 + 1,
                            limit: limit as u128,
                        });
                    }
                    order.push(img);
                }
            }
        }
        Ok(order)
    }

    /// Orbit of a subset, sorted by mask.
    pub fn subset_orbit(&self, alpha: KSubset) -> Result<Vec<KSubset>> {
        self.check_subset(alpha)?;
        let mut masks = self.mask_orbit(alpha.mask(), ORBIT_LIMIT)?;
        masks.sort_unstable();
        Ok(masks
            .into_iter()
            .map(|m| KSubset::from_raw(m, self.degree))
            .collect())
    }

    /// Checks that every generator maps `objects` into itself; returns the
    /// first escaping `(generator index, object, image)`.
    pub(crate) fn find_escape(&self, objects: &HashSet<u64>) -> Option<(usize, u64, u64)> {
        let mut sorted: Vec<u64> = objects.iter().copied().collect();
        sorted.sort_unstable();
        for (gi, g) in self.generators.iter().enumerate() {
            for &m in &sorted {
                let img = g.apply_mask(m);
                if !objects.contains(&img) {
                    return Some((gi, m, img));
                }
            }
        }
        None
    }

    /// True iff the group acts transitively on a nonempty, G-closed set of
    /// subsets. Unclosed input is a domain error naming an escaping element.
    pub fn is_transitive_on(&self, objects: &[KSubset]) -> Result<bool> {
        let first = *objects
            .first()
            .ok_or_else(|| Error::domain("transitivity on an empty set"))?;
        for &o in objects {
            self.check_subset(o)?;
        }
        let set: HashSet<u64> = objects.iter().map(|o| o.mask()).collect();
        if let Some((gi, m, img)) = self.find_escape(&set) {
            return Err(Error::domain(format!(
                "set is not closed: generator {gi} maps {} to {} outside it",
                KSubset::from_raw(m, self.degree),
                KSubset::from_raw(img, self.degree)
            )));
        }
        let orbit = self.mask_orbit(first.mask(), ORBIT_LIMIT)?;
        Ok(orbit.len() == set.len())
    }

    /// Orbits of the group on the `size`-subsets of `domain`, where `domain`
    /// must be a union of orbits of the group. Orbits are sorted internally
    /// and ordered by least element.
    pub fn orbits_on_subsets_of(&self, domain: u64, size: usize) -> Result<Vec<Vec<KSubset>>> {
        let avail = domain.count_ones() as usize;
        let total = choose(avail, size);
        if total > ORBIT_LIMIT as u128 {
            return Err(Error::Capacity {
                what: "subset orbit enumeration",
                needed: total,
                limit: ORBIT_LIMIT as u128,
            });
        }
        if domain & !full_mask(self.degree) != 0 {
            return Err(Error::usage("domain has points outside the group's degree"));
        }
        if let Some(g) = self.generators.iter().find(|g| g.apply_mask(domain) != domain) {
            return Err(Error::domain(format!(
                "domain is not invariant under generator {g:?}"
            )));
        }
        let mut unseen: HashSet<u64> = MaskCombinations::new(domain, size).collect();
        let mut out = Vec::new();
        for seed in MaskCombinations::new(domain, size) {
            if !unseen.contains(&seed) {
                continue;
            }
            let mut orbit = self.mask_orbit(seed, ORBIT_LIMIT)?;
            for m in &orbit {
                unseen.remove(m);
            }
            orbit.sort_unstable();
            out.push(
                orbit
                    .into_iter()
                    .map(|m| KSubset::from_raw(m, self.degree))
                    .collect(),
            );
        }
        Ok(out)
    }

    pub fn orbits_on_ksubsets(&self, k: usize) -> Result<Vec<Vec<KSubset>>> {
        if k > self.degree {
            return Err(Error::usage(format!("{k}-subsets of a {}-set", self.degree)));
        }
        self.orbits_on_subsets_of(full_mask(self.degree), k)
    }

    pub fn is_k_homogeneous(&self, k: usize) -> Result<bool> {
        Ok(self.orbits_on_ksubsets(k)?.len() == 1)
    }

    /// Stabilizer of `alpha` as a set, generated by Schreier generators on
    /// the orbit of `alpha`. Stops as soon as the orbit–stabilizer count is
    /// reached.
    pub fn setwise_stabilizer(&self, alpha: KSubset) -> Result<PermGroup> {
        self.check_subset(alpha)?;
        let id = Permutation::identity(self.degree);
        let mut reps: HashMap<u64, Permutation> = HashMap::from([(alpha.mask(), id.clone())]);
        let mut order = vec![alpha.mask()];
        let mut head = 0;
        while head < order.len() {
            let m = order[head];
            head += 1;
            let rep = reps[&m].clone();
            for g in &self.generators {
                let img = g.apply_mask(m);
                if let std::collections::hash_map::Entry::Vacant(e) = reps.entry(img) {
                    if order.len() >= STABILIZER_ORBIT_LIMIT {
                        return Err(Error::Capacity {
                            what: "stabilizer orbit",
                            needed: order.len() as u128 + 1,
                            limit: STABILIZER_ORBIT_LIMIT as u128,
                        });
                    }
                    e.insert(rep.then(g));
                    order.push(img);
                }
            }
        }

        let target = self.order() / BigUint::from(order.len());
        let mut chain = StabChain::new(self.degree);
        let mut gens = Vec::new();
        'outer: for &m in &order {
            if chain.order() == target {
                break;
            }
            let rep = &reps[&m];
            for g in &self.generators {
                let img = g.apply_mask(m);
                let schreier = rep.then(g).then(&reps[&img].inverse());
                debug_assert_eq!(schreier.apply_mask(alpha.mask()), alpha.mask());
                if chain.add(&schreier) {
                    gens.push(schreier);
                    if chain.order() == target {
                        break 'outer;
                    }
                }
            }
        }
        debug_assert_eq!(chain.order(), target);
        if gens.is_empty() {
            gens.push(id);
        }
        let stab = PermGroup::new(self.degree, gens)?;
        let _ = stab.chain.set(chain);
        Ok(stab)
    }

    /// Every generator maps the set of masks into itself.
    pub fn preserves(&self, masks: &HashSet<u64>) -> bool {
        self.find_escape(masks).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::GroundSet;

    fn cyclic(n: usize) -> PermGroup {
        let c: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![Permutation::from_cycles(n, &[&c]).unwrap()]).unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let c: Vec<usize> = (0..n).collect();
        PermGroup::new(
            n,
            vec![
                Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(n, &[&c]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn cyclic_orbits_and_order() {
        let g = cyclic(7);
        assert_eq!(g.point_orbit(3), (0..7).collect::<Vec<_>>());
        assert_eq!(g.order(), BigUint::from(7u32));
        assert!(g.is_transitive());
        assert!(!g.is_two_transitive());
    }

    #[test]
    fn trivial_group_orbit_is_seed() {
        let g = PermGroup::trivial(6).unwrap();
        let a = GroundSet::new(6).unwrap().subset(&[1, 4]).unwrap();
        assert_eq!(g.subset_orbit(a).unwrap(), vec![a]);
        assert_eq!(g.order(), BigUint::from(1u32));
    }

    #[test]
    fn symmetric_group_is_homogeneous() {
        let g = symmetric(7);
        for k in 0..=7 {
            assert!(g.is_k_homogeneous(k).unwrap());
        }
        let all: Vec<_> = (0..7).collect();
        assert!(g.is_two_transitive());
        assert_eq!(g.point_orbit(0), all);
    }

    #[test]
    fn intransitive_product() {
        // S_{0,1,2} x S_{3,..,6}
        let gens = vec![
            Permutation::from_cycles(7, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(7, &[&[0, 1, 2]]).unwrap(),
            Permutation::from_cycles(7, &[&[3, 4]]).unwrap(),
            Permutation::from_cycles(7, &[&[3, 4, 5, 6]]).unwrap(),
        ];
        let g = PermGroup::new(7, gens).unwrap();
        assert_eq!(g.point_orbits(), vec![vec![0, 1, 2], vec![3, 4, 5, 6]]);
        assert!(!g.is_transitive());
        assert!(g.orbits_on_ksubsets(1).unwrap().len() >= 2);
        assert_eq!(g.order(), BigUint::from(144u32));
        let points: Vec<KSubset> = GroundSet::new(7)
            .unwrap()
            .ksubsets(1)
            .unwrap()
            .collect();
        assert!(!g.is_transitive_on(&points).unwrap());
    }

    #[test]
    fn transitivity_on_unclosed_set_is_domain_error() {
        let g = cyclic(5);
        let a = GroundSet::new(5).unwrap().subset(&[0]).unwrap();
        assert!(matches!(g.is_transitive_on(&[a]), Err(Error::Domain(_))));
    }

    #[test]
    fn setwise_stabilizer_orbit_stabilizer() {
        let g = symmetric(8);
        let a = GroundSet::new(8).unwrap().subset(&[0, 1, 2]).unwrap();
        let stab = g.setwise_stabilizer(a).unwrap();
        // S_3 x S_5
        assert_eq!(stab.order(), BigUint::from(720u32));
        for h in stab.generators() {
            assert_eq!(h.apply_to_subset(a).unwrap(), a);
        }
        let orbit = g.subset_orbit(a).unwrap().len();
        assert_eq!(stab.order() * BigUint::from(orbit), g.order());
    }

    #[test]
    fn point_stabilizer_of_symmetric_group() {
        let g = symmetric(6);
        let s = g.stabilizer_of_first_point().unwrap();
        assert_eq!(s.order(), BigUint::from(120u32));
        assert_eq!(s.point_orbit(0), vec![0]);
    }

    #[test]
    fn mismatched_degrees_rejected() {
        let bad = PermGroup::new(5, vec![Permutation::identity(4)]);
        assert!(bad.is_err());
        assert!(PermGroup::new(5, vec![]).is_err());
    }
}
