use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::Code;
use crate::error::{Error, Result};
use crate::perm::ORBIT_LIMIT;
use crate::subset::{KSubset, MaskCombinations};

/// Vertex count up to which the distance partition is computed by sweeping
/// every vertex; above it only ball expansion is used.
pub const GLOBAL_SWEEP_LIMIT: u128 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellMethod {
    /// Minimum distance to the code for every vertex of the graph.
    GlobalSweep,
    /// Union of balls of radius `s` around codewords, filtered exactly.
    BallExpansion,
}

/// Cells `C_0, .., C_m` of the distance partition, each sorted by mask.
/// Complete (`rho` is known) only after a global sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    cells: Vec<Vec<u64>>,
    n: usize,
    method: CellMethod,
}

impl DistancePartition {
    pub fn method(&self) -> CellMethod {
        self.method
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cell(&self, i: usize) -> Vec<KSubset> {
        self.cells
            .get(i)
            .map(|c| c.iter().map(|&m| KSubset::from_raw(m, self.n)).collect())
            .unwrap_or_default()
    }

    pub(crate) fn cell_masks(&self, i: usize) -> &[u64] {
        self.cells.get(i).map_or(&[], Vec::as_slice)
    }

    /// Covering radius, known only for a global sweep.
    pub fn rho(&self) -> Option<usize> {
        match self.method {
            CellMethod::GlobalSweep => self.cells.iter().rposition(|c| !c.is_empty()),
            CellMethod::BallExpansion => None,
        }
    }
}

fn bucket(n: usize, method: CellMethod, tagged: Vec<(usize, u64)>, levels: usize) -> DistancePartition {
    let mut cells = vec![Vec::new(); levels];
    for (d, m) in tagged {
        cells[d].push(m);
    }
    for c in &mut cells {
        c.sort_unstable();
    }
    while cells.len() > 1 && cells.last().is_some_and(Vec::is_empty) {
        cells.pop();
    }
    DistancePartition { cells, n, method }
}

impl Code {
    /// `C_0, .., C_s` by ball expansion. Trailing empty cells are kept so
    /// the result always has `s + 1` cells.
    pub fn neighbour_sets(&self, s: usize) -> Result<DistancePartition> {
        let space = self.space;
        let n = space.n();
        let k = space.k();
        let per_word: u128 = (0..=k)
            .filter(|&t| space.distance_for_intersection(t) <= s)
            .map(|t| crate::subset::choose(k, t) * crate::subset::choose(n - k, k - t))
            .sum();
        let estimate = per_word * self.len() as u128;
        if estimate > ORBIT_LIMIT as u128 {
            return Err(Error::Capacity {
                what: "ball expansion",
                needed: estimate,
                limit: ORBIT_LIMIT as u128,
            });
        }
        let intersections: Vec<usize> = (0..=k)
            .filter(|&t| space.distance_for_intersection(t) <= s)
            .collect();
        let outside_all = space.ground().mask();
        let mut candidates: HashSet<u64> = HashSet::new();
        for &w in &self.words {
            for &t in &intersections {
                for a in MaskCombinations::new(w, t) {
                    for b in MaskCombinations::new(!w & outside_all, k - t) {
                        candidates.insert(a | b);
                    }
                }
            }
        }
        let table = self.distance_table();
        let candidates: Vec<u64> = candidates.into_iter().collect();
        let tagged: Vec<(usize, u64)> = candidates
            .par_iter()
            .map(|&m| (self.mask_distance_to(m, &table), m))
            .collect();
        debug_assert!(tagged.iter().all(|&(d, _)| d <= s));
        let mut part = bucket(n, CellMethod::BallExpansion, tagged, s + 1);
        part.cells.resize(s + 1, Vec::new());
        Ok(part)
    }

    /// The full distance partition by sweeping every vertex.
    pub fn distance_partition(&self) -> Result<DistancePartition> {
        let total = self.space.vertex_count();
        if total > GLOBAL_SWEEP_LIMIT {
            return Err(Error::Capacity {
                what: "global distance sweep",
                needed: total,
                limit: GLOBAL_SWEEP_LIMIT,
            });
        }
        let table = self.distance_table();
        let vertices: Vec<u64> = self.space.vertices().map(|v| v.mask()).collect();
        let tagged: Vec<(usize, u64)> = vertices
            .par_iter()
            .map(|&m| (self.mask_distance_to(m, &table), m))
            .collect();
        let levels = self.space.diameter() + 1;
        Ok(bucket(self.space.n(), CellMethod::GlobalSweep, tagged, levels))
    }

    pub fn covering_radius(&self) -> Result<usize> {
        Ok(self
            .distance_partition()?
            .rho()
            .expect("global sweep knows rho"))
    }

    /// `C_0, .., C_s`, by global sweep when the graph is small enough and by
    /// ball expansion otherwise.
    pub fn cells_up_to(&self, s: usize) -> Result<DistancePartition> {
        if self.space.vertex_count() <= GLOBAL_SWEEP_LIMIT {
            let mut part = self.distance_partition()?;
            part.cells.resize(part.cells.len().max(s + 1), Vec::new());
            Ok(part)
        } else {
            self.neighbour_sets(s)
        }
    }
}
