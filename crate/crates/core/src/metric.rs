//! The Kneser graph K(n,k): adjacency, exact distances and spheres.
//!
//! Distances use the closed form
//! `d = min(2 * ceil((k - s) / g), 2 * ceil(s / g) + 1)` with `s = |α ∩ β|`
//! and `g = n - 2k`. The formula is not assumed: [`KneserSpace::bfs_from`]
//! is an independent breadth-first search used to certify it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{choose, GroundSet, KSubset, MaskCombinations, Ranker};

/// Largest vertex count a breadth-first search may materialize.
pub const BFS_VERTEX_LIMIT: u128 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KneserSpace {
    ground: GroundSet,
    k: usize,
}

impl KneserSpace {
    /// K(n,k) with `2 <= k <= (n-1)/2`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if k < 2 || 2 * k + 1 > n {
            return Err(Error::usage(format!(
                "K({n},{k}) requires 2 <= k <= (n-1)/2"
            )));
        }
        Ok(KneserSpace { ground, k })
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// `n - 2k`, at least 1.
    pub fn gap(&self) -> usize {
        self.n() - 2 * self.k
    }

    pub fn is_odd_graph(&self) -> bool {
        self.gap() == 1
    }

    pub fn valency(&self) -> u128 {
        choose(self.n() - self.k, self.k)
    }

    pub fn vertex_count(&self) -> u128 {
        choose(self.n(), self.k)
    }

    pub fn vertices(&self) -> impl Iterator<Item = KSubset> {
        self.ground.ksubsets(self.k).expect("k <= n by construction")
    }

    pub fn vertex(&self, elements: &[usize]) -> Result<KSubset> {
        let v = self.ground.subset(elements)?;
        self.check_vertex(v)?;
        Ok(v)
    }

    pub fn vertex_from_mask(&self, mask: u64) -> Result<KSubset> {
        let v = self.ground.subset_from_mask(mask)?;
        self.check_vertex(v)?;
        Ok(v)
    }

    pub fn check_vertex(&self, v: KSubset) -> Result<()> {
        if v.ground() != self.ground || v.len() != self.k {
            return Err(Error::usage(format!(
                "{v} is not a vertex of K({},{})",
                self.n(),
                self.k
            )));
        }
        Ok(())
    }

    pub fn adjacent(&self, a: KSubset, b: KSubset) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Ok(a.mask() & b.mask() == 0)
    }

    /// Distance between two vertices meeting in `s` points.
    #[inline]
    pub fn distance_for_intersection(&self, s: usize) -> usize {
        let g = self.gap();
        let k = self.k;
        debug_assert!(s <= k);
        (2 * (k - s).div_ceil(g)).min(2 * s.div_ceil(g) + 1)
    }

    /// Distance between raw masks; no validation.
    #[inline]
    pub fn mask_distance(&self, a: u64, b: u64) -> usize {
        self.distance_for_intersection((a & b).count_ones() as usize)
    }

    pub fn distance(&self, a: KSubset, b: KSubset) -> Result<usize> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Ok(self.mask_distance(a.mask(), b.mask()))
    }

    pub fn diameter(&self) -> usize {
        (0..=self.k)
            .map(|s| self.distance_for_intersection(s))
            .max()
            .unwrap_or(0)
    }

    /// Γ_i(α), enumerated by intersection size, in increasing mask order.
    pub fn sphere(&self, alpha: KSubset, i: usize) -> Result<Vec<KSubset>> {
        self.check_vertex(alpha)?;
        let n = self.n();
        let inside = alpha.mask();
        let outside = alpha.complement().mask();
        let mut out = Vec::new();
        for s in 0..=self.k {
            if self.distance_for_intersection(s) != i {
                continue;
            }
            for a in MaskCombinations::new(inside, s) {
                for b in MaskCombinations::new(outside, self.k - s) {
                    out.push(KSubset::from_raw(a | b, n));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Breadth-first distances from `source` to every vertex, indexed by the
    /// colex rank of the target (see [`Ranker`]).
    ///
    /// Switches between expanding the frontier and scanning unvisited
    /// vertices for a frontier neighbour, whichever touches fewer edges.
    pub fn bfs_from(&self, source: KSubset) -> Result<Vec<u8>> {
        self.check_vertex(source)?;
        let total = self.vertex_count();
        if total > BFS_VERTEX_LIMIT {
            return Err(Error::Capacity {
                what: "breadth-first search",
                needed: total,
                limit: BFS_VERTEX_LIMIT,
            });
        }
        let n = self.n();
        let k = self.k;
        let full = self.ground.mask();
        let ranker = Ranker::new(n, k);
        let mut dist = vec![u8::MAX; total as usize];
        dist[ranker.rank(source.mask()) as usize] = 0;

        let mut frontier = vec![source.mask()];
        let mut unvisited: Option<Vec<u64>> = None;
        let mut remaining = total as usize - 1;
        let mut level: u8 = 0;

        while !frontier.is_empty() && remaining > 0 {
            level += 1;
            let mut next = Vec::new();
            if frontier.len() * 14 < remaining {
                for &f in &frontier {
                    for nb in MaskCombinations::new(!f & full, k) {
                        let r = ranker.rank(nb) as usize;
                        if dist[r] == u8::MAX {
                            dist[r] = level;
                            next.push(nb);
                        }
                    }
                }
            } else {
                let pool = unvisited.take().unwrap_or_else(|| {
                    self.vertices()
                        .map(|v| v.mask())
                        .filter(|&m| dist[ranker.rank(m) as usize] == u8::MAX)
                        .collect()
                });
                let mut still = Vec::with_capacity(pool.len());
                for u in pool {
                    let r = ranker.rank(u) as usize;
                    if dist[r] != u8::MAX {
                        continue;
                    }
                    let hit = MaskCombinations::new(!u & full, k)
                        .any(|nb| dist[ranker.rank(nb) as usize] == level - 1);
                    if hit {
                        next.push(u);
                    } else {
                        still.push(u);
                    }
                }
                for &u in &next {
                    dist[ranker.rank(u) as usize] = level;
                }
                unvisited = Some(still);
            }
            remaining -= next.len();
            frontier = next;
        }
        Ok(dist)
    }

    pub fn bfs_distance(&self, a: KSubset, b: KSubset) -> Result<usize> {
        self.check_vertex(b)?;
        let dist = self.bfs_from(a)?;
        let ranker = Ranker::new(self.n(), self.k);
        match dist[ranker.rank(b.mask()) as usize] {
            u8::MAX => Err(Error::domain("target unreachable")),
            d => Ok(d as usize),
        }
    }
}

/// Every K(n,k) with `2 <= k <= (n-1)/2`, `n <= 64` and at most
/// `max_vertices` vertices, ordered by (n, k).
pub fn spaces_up_to(max_vertices: u128) -> Vec<KneserSpace> {
    let mut out = Vec::new();
    for n in 5..=crate::subset::MAX_N {
        for k in 2..=(n - 1) / 2 {
            if choose(n, k) <= max_vertices {
                out.push(KneserSpace::new(n, k).expect("parameters in range"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> KneserSpace {
        KneserSpace::new(5, 2).unwrap()
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        assert!(KneserSpace::new(4, 2).is_err());
        assert!(KneserSpace::new(5, 1).is_err());
        assert!(KneserSpace::new(6, 3).is_err());
        assert!(KneserSpace::new(65, 2).is_err());
        assert!(KneserSpace::new(7, 3).unwrap().is_odd_graph());
        assert!(!KneserSpace::new(8, 3).unwrap().is_odd_graph());
    }

    #[test]
    fn adjacency_examples() {
        let p = petersen();
        let a = p.vertex(&[0, 1]).unwrap();
        assert!(p.adjacent(a, p.vertex(&[2, 3]).unwrap()).unwrap());
        assert!(!p.adjacent(a, p.vertex(&[1, 2]).unwrap()).unwrap());

        let sp = KneserSpace::new(13, 6).unwrap();
        let a = sp.vertex(&[0, 1, 2, 3, 4, 5]).unwrap();
        let c = a.complement().mask();
        for x in crate::subset::elements(c) {
            let b = sp.vertex_from_mask(c & !(1 << x)).unwrap();
            assert!(sp.adjacent(a, b).unwrap());
        }
    }

    #[test]
    fn distance_examples() {
        let p = petersen();
        let a = p.vertex(&[0, 1]).unwrap();
        let b = p.vertex(&[1, 2]).unwrap();
        assert_eq!(p.distance(a, b).unwrap(), 2);
        assert_eq!(p.bfs_distance(a, b).unwrap(), 2);
        assert_eq!(p.distance(a, a).unwrap(), 0);
        let c = p.vertex(&[3, 4]).unwrap();
        assert_eq!(p.bfs_distance(a, c).unwrap(), 1);

        let o12 = KneserSpace::new(23, 11).unwrap();
        assert_eq!(o12.distance_for_intersection(3), 7);

        let k73 = KneserSpace::new(7, 3).unwrap();
        let a = k73.vertex(&[0, 1, 2]).unwrap();
        let b = k73.vertex(&[0, 1, 3]).unwrap();
        assert_eq!(k73.bfs_distance(a, b).unwrap(), 2);
        assert_eq!(k73.distance(a, b).unwrap(), 2);
    }

    #[test]
    fn odd_graph_specialization() {
        for k in 2..=12 {
            let sp = KneserSpace::new(2 * k + 1, k).unwrap();
            for s in 0..=k {
                assert_eq!(
                    sp.distance_for_intersection(s),
                    (2 * (k - s)).min(2 * s + 1)
                );
            }
        }
    }

    #[test]
    fn sphere_examples() {
        let sp = KneserSpace::new(13, 6).unwrap();
        let a = sp.vertex(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(sp.sphere(a, 0).unwrap(), vec![a]);
        assert_eq!(sp.sphere(a, 1).unwrap().len(), 7);

        let o12 = KneserSpace::new(23, 11).unwrap();
        let a = o12.vertices().next().unwrap();
        assert_eq!(o12.sphere(a, 2).unwrap().len(), 132);
    }

    #[test]
    fn spheres_partition_vertices() {
        for sp in spaces_up_to(3_000) {
            let a = sp.vertices().nth(1).unwrap();
            let total: usize = (0..=sp.diameter())
                .map(|i| sp.sphere(a, i).unwrap().len())
                .sum();
            assert_eq!(total as u128, sp.vertex_count(), "K({},{})", sp.n(), sp.k());
        }
    }

    #[test]
    fn bfs_agrees_with_formula_from_every_source_on_petersen() {
        let p = petersen();
        let ranker = Ranker::new(5, 2);
        for a in p.vertices() {
            let dist = p.bfs_from(a).unwrap();
            for b in p.vertices() {
                assert_eq!(
                    dist[ranker.rank(b.mask()) as usize] as usize,
                    p.distance(a, b).unwrap()
                );
            }
        }
    }

    #[test]
    fn bfs_capacity_limit() {
        let big = KneserSpace::new(31, 15).unwrap();
        let a = big.vertices().next().unwrap();
        assert!(matches!(big.bfs_from(a), Err(Error::Capacity { .. })));
    }
}
