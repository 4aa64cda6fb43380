use serde::{Deserialize, Serialize};

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// A partition of `{0, .., n-1}` into `a` blocks of equal size `b`, with
/// `a, b >= 2`. Blocks are sorted internally and ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let a = blocks.len();
        let b = blocks.first().map_or(0, Vec::len);
        if a < 2 || b < 2 || blocks.iter().any(|blk| blk.len() != b) {
            return Err(Error::usage(format!(
                "block system needs at least 2 blocks of one common size >= 2, got {blocks:?}"
            )));
        }
        let n = a * b;
        let mut seen = vec![false; n];
        for &x in blocks.iter().flatten() {
            if x >= n || seen[x] {
                return Err(Error::usage(format!("blocks {blocks:?} do not partition 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(BlockSystem { blocks })
    }

    /// Consecutive chunks `{0..b-1}, {b..2b-1}, ..`.
    pub fn consecutive(a: usize, b: usize) -> Result<Self> {
        BlockSystem::new((0..a).map(|i| (i * b..(i + 1) * b).collect()).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn degree(&self) -> usize {
        self.block_count() * self.block_size()
    }

    pub fn block_masks(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0u64, |m, &x| m | 1 << x))
            .collect()
    }

    /// Every block maps onto a block under `g`.
    pub fn is_invariant_under(&self, g: &Permutation) -> bool {
        let masks = self.block_masks();
        masks.iter().all(|&m| masks.contains(&g.apply_mask(m)))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

impl PermGroup {
    /// Finest invariant partition in which `0` and `beta` share a block.
    fn block_of_pair(&self, beta: usize) -> Vec<usize> {
        let n = self.degree();
        let mut uf = UnionFind((0..n).collect());
        uf.union(0, beta);
        // An equivalence generated by pairs (x, root(x)) is invariant iff
        // each generator keeps every such pair inside one class.
        loop {
            let mut changed = false;
            for g in self.generators() {
                for x in 0..n {
                    let r = uf.find(x);
                    if r != x && uf.union(g.apply(x), g.apply(r)) {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let r0 = uf.find(0);
        (0..n).filter(|&x| uf.find(x) == r0).collect()
    }

    /// All minimal nontrivial block systems of a transitive group.
    pub fn minimal_block_systems(&self) -> Result<Vec<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::domain("block systems require a transitive group"));
        }
        let n = self.degree();
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for beta in 1..n {
            let block = self.block_of_pair(beta);
            if block.len() < n && !candidates.contains(&block) {
                candidates.push(block);
            }
        }
        let minimal: Vec<&Vec<usize>> = candidates
            .iter()
            .filter(|c| {
                !candidates
                    .iter()
                    .any(|d| d.len() < c.len() && d.iter().all(|x| c.contains(x)))
            })
            .collect();
        let mut out = Vec::new();
        for block in minimal {
            out.push(self.system_from_block(block)?);
        }
        out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
        Ok(out)
    }

    // Images of a block under the group form the system.
    fn system_from_block(&self, block: &[usize]) -> Result<BlockSystem> {
        let seed = block.iter().fold(0u64, |m, &x| m | 1 << x);
        let images = self.mask_orbit(seed, self.degree())?;
        let blocks = images
            .into_iter()
            .map(|m| crate::subset::elements(m).collect())
            .collect();
        BlockSystem::new(blocks)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.minimal_block_systems()?.is_empty())
    }
}
