//! Codes in K(n,k) and what we compute about them.

mod certify;
mod partition;
mod structure;
mod types;

pub use certify::{
    certify_s_neighbour_transitive, check_invariance_lemma, InvarianceReport, LevelReport,
    NtCertificate, PartCheck,
};
pub use partition::{CellMethod, DistancePartition, GLOBAL_SWEEP_LIMIT};
pub use structure::{
    classify_against_theorems, odd_johnson_check, pair_coverage_check,
    stabilizer_homogeneity_check, theorem_obstruction_witness, u0_u1, verify_u0_u1_orbits,
    Classification, HomogeneityReport, ImprimitiveCase, IntransitiveCase, JohnsonReport,
    ObstructionWitness, PairCoverage, PrimitiveInfo, U0U1Report,
};
pub use types::{type_multiset, type_pair, TypeMultiset, TypePair};

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::KneserSpace;
use crate::perm::PermGroup;
use crate::subset::KSubset;

/// A nonempty set of vertices of a Kneser graph, kept sorted by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    space: KneserSpace,
    words: Vec<u64>,
}

impl Code {
    /// Builds a code; duplicates and non-vertices are rejected.
    pub fn new(space: KneserSpace, codewords: impl IntoIterator<Item = KSubset>) -> Result<Self> {
        let mut words = Vec::new();
        for w in codewords {
            space.check_vertex(w)?;
            words.push(w.mask());
        }
        Code::from_masks(space, words)
    }

    pub(crate) fn from_masks(space: KneserSpace, mut words: Vec<u64>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::usage("a code needs at least one codeword"));
        }
        words.sort_unstable();
        if let Some(w) = words.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::usage(format!(
                "codeword {} listed twice",
                KSubset::from_raw(w[0], space.n())
            )));
        }
        debug_assert!(words.iter().all(|w| w.count_ones() as usize == space.k()));
        Ok(Code { space, words })
    }

    pub fn space(&self) -> &KneserSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// Never true; codes are nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.words.len() == 1
    }

    pub fn masks(&self) -> &[u64] {
        &self.words
    }

    pub fn codewords(&self) -> impl Iterator<Item = KSubset> + '_ {
        let n = self.space.n();
        self.words.iter().map(move |&m| KSubset::from_raw(m, n))
    }

    pub fn first(&self) -> KSubset {
        KSubset::from_raw(self.words[0], self.space.n())
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.words.binary_search(&mask).is_ok()
    }

    pub fn contains(&self, w: KSubset) -> bool {
        w.ground() == self.space.ground() && self.contains_mask(w.mask())
    }

    pub(crate) fn mask_set(&self) -> HashSet<u64> {
        self.words.iter().copied().collect()
    }

    /// Counts of `|α ∩ β|` over unordered pairs of distinct codewords.
    pub fn intersection_distribution(&self) -> BTreeMap<usize, u64> {
        let k = self.space.k();
        let words = &self.words;
        let counts = (0..words.len())
            .into_par_iter()
            .fold(
                || vec![0u64; k + 1],
                |mut acc, i| {
                    let a = words[i];
                    for &b in &words[i + 1..] {
                        acc[(a & b).count_ones() as usize] += 1;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; k + 1],
                |mut x, y| {
                    for (s, c) in y.into_iter().enumerate() {
                        x[s] += c;
                    }
                    x
                },
            );
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect()
    }

    /// Minimum distance δ. Undefined for a trivial code.
    pub fn min_distance(&self) -> Result<usize> {
        if self.is_trivial() {
            return Err(Error::domain("minimum distance is undefined for a code with one codeword"));
        }
        let space = self.space;
        let words = &self.words;
        let delta = (0..words.len())
            .into_par_iter()
            .map(|i| {
                let a = words[i];
                words[i + 1..]
                    .iter()
                    .map(|&b| space.mask_distance(a, b))
                    .min()
                    .unwrap_or(usize::MAX)
            })
            .min()
            .expect("at least two codewords");
        Ok(delta)
    }

    /// Least distance from `v` to any codeword.
    pub fn distance_to(&self, v: KSubset) -> Result<usize> {
        self.space.check_vertex(v)?;
        Ok(self.mask_distance_to(v.mask(), &self.distance_table()))
    }

    pub(crate) fn distance_table(&self) -> Vec<u8> {
        (0..=self.space.k())
            .map(|s| self.space.distance_for_intersection(s) as u8)
            .collect()
    }

    #[inline]
    pub(crate) fn mask_distance_to(&self, v: u64, table: &[u8]) -> usize {
        if self.contains_mask(v) {
            return 0;
        }
        let mut best = u8::MAX;
        for &w in &self.words {
            let d = table[(v & w).count_ones() as usize];
            if d < best {
                best = d;
                if d == 1 {
                    break;
                }
            }
        }
        best as usize
    }

    /// Images of the code under each generator; the first one that leaves
    /// the code is reported.
    pub fn check_preserved_by(&self, group: &PermGroup) -> Result<()> {
        if group.degree() != self.space.n() {
            return Err(Error::usage(format!(
                "group of degree {} acting on a code over {} points",
                group.degree(),
                self.space.n()
            )));
        }
        if let Some((gi, m, img)) = group.find_escape(&self.mask_set()) {
            let n = self.space.n();
            return Err(Error::NotPreserved {
                generator: gi,
                codeword: KSubset::from_raw(m, n).elements(),
                image: KSubset::from_raw(img, n).elements(),
            });
        }
        Ok(())
    }
}
