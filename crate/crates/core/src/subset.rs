//! Ground sets and fixed-width k-subsets.
//!
//! A subset of `{0, .., n-1}` is a single `u64` mask, so `n` is capped at 64.
//! For a fixed cardinality the unsigned order of masks coincides with the
//! colexicographic order of the sorted element lists; `rank`/`unrank` use
//! the combinatorial number system for that order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_N: usize = 64;

/// `choose(n, k)` as an exact `u128`, zero when `k > n`.
///
/// Values for `n <= 128` never overflow.
pub fn choose(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Elements of a mask in increasing order.
#[inline]
pub fn elements(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0u64, |m, &e| m | (1u64 << e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::usage(format!(
                "ground set size must be in 1..={MAX_N}, got {n}"
            )));
        }
        Ok(GroundSet { n })
    }

    pub fn size(self) -> usize {
        self.n
    }

    pub fn mask(self) -> u64 {
        full_mask(self.n)
    }

    /// Build a subset from 0-indexed elements. Duplicates and out-of-range
    /// elements are rejected.
    pub fn subset(self, elements: &[usize]) -> Result<KSubset> {
        let mut mask = 0u64;
        for &e in elements {
            if e >= self.n {
                return Err(Error::usage(format!(
                    "element {e} is outside the ground set 0..{}",
                    self.n
                )));
            }
            if mask & (1 << e) != 0 {
                return Err(Error::usage(format!("element {e} repeated")));
            }
            mask |= 1 << e;
        }
        Ok(KSubset { mask, n: self.n as u8 })
    }

    pub fn subset_from_mask(self, mask: u64) -> Result<KSubset> {
        if mask & !self.mask() != 0 {
            return Err(Error::usage(format!(
                "mask {mask:#x} has bits outside 0..{}",
                self.n
            )));
        }
        Ok(KSubset { mask, n: self.n as u8 })
    }

    /// All `k`-subsets in increasing mask order.
    pub fn ksubsets(self, k: usize) -> Result<KSubsets> {
        if k > self.n {
            return Err(Error::usage(format!(
                "cannot choose {k} elements from {}",
                self.n
            )));
        }
        Ok(KSubsets {
            inner: MaskCombinations::new(self.mask(), k),
            n: self.n as u8,
        })
    }
}

/// A subset of a ground set. Its cardinality is the popcount of the mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    mask: u64,
    n: u8,
}

impl KSubset {
    #[inline]
    pub(crate) fn from_raw(mask: u64, n: usize) -> Self {
        debug_assert!(mask & !full_mask(n) == 0);
        KSubset { mask, n: n as u8 }
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn ground(self) -> GroundSet {
        GroundSet { n: self.n as usize }
    }

    #[inline]
    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.mask >> x & 1 == 1
    }

    pub fn elements(self) -> Vec<usize> {
        elements(self.mask).collect()
    }

    /// `|self ∩ other|`; both must live in the same ground set.
    pub fn intersect_size(self, other: KSubset) -> Result<usize> {
        self.same_ground(other)?;
        Ok((self.mask & other.mask).count_ones() as usize)
    }

    pub fn complement(self) -> KSubset {
        KSubset {
            mask: !self.mask & full_mask(self.n as usize),
            n: self.n,
        }
    }

    pub fn is_subset_of(self, other: KSubset) -> bool {
        self.mask & !other.mask == 0
    }

    pub(crate) fn same_ground(self, other: KSubset) -> Result<()> {
        if self.n != other.n {
            return Err(Error::usage(format!(
                "subsets live in different ground sets ({} vs {})",
                self.n, other.n
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(elements(self.mask)).finish()
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in elements(self.mask).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the `k`-subsets of a fixed mask, yielding masks in
/// increasing order.
#[derive(Debug, Clone)]
pub struct MaskCombinations {
    positions: Vec<u8>,
    index: Vec<usize>,
    done: bool,
}

impl MaskCombinations {
    pub fn new(domain: u64, k: usize) -> Self {
        let positions: Vec<u8> = elements(domain).map(|e| e as u8).collect();
        let done = k > positions.len();
        MaskCombinations {
            index: (0..k).collect(),
            positions,
            done,
        }
    }
}

impl Iterator for MaskCombinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self
            .index
            .iter()
            .fold(0u64, |m, &i| m | 1u64 << self.positions[i]);
        // Advance in colex order: bump the lowest index that has room.
        let k = self.index.len();
        let m = self.positions.len();
        let mut j = 0;
        loop {
            if j == k {
                self.done = true;
                break;
            }
            let limit = if j + 1 < k { self.index[j + 1] } else { m };
            if self.index[j] + 1 < limit {
                self.index[j] += 1;
                for (t, slot) in self.index[..j].iter_mut().enumerate() {
                    *slot = t;
                }
                break;
            }
            j += 1;
        }
        Some(mask)
    }
}

#[derive(Debug, Clone)]
pub struct KSubsets {
    inner: MaskCombinations,
    n: u8,
}

impl Iterator for KSubsets {
    type Item = KSubset;

    fn next(&mut self) -> Option<KSubset> {
        self.inner.next().map(|mask| KSubset { mask, n: self.n })
    }
}

/// Colex ranking of fixed-size masks, backed by a binomial table.
#[derive(Debug, Clone)]
pub struct Ranker {
    k: usize,
    table: Vec<Vec<u64>>,
    total: u64,
}

impl Ranker {
    pub fn new(n: usize, k: usize) -> Self {
        let table = (0..=n)
            .map(|m| (0..=k).map(|j| choose(m, j) as u64).collect())
            .collect();
        Ranker {
            k,
            table,
            total: choose(n, k) as u64,
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    #[inline]
    pub fn rank(&self, mask: u64) -> u64 {
        let mut r = 0;
        for (i, e) in elements(mask).enumerate() {
            r += self.table[e][i + 1];
        }
        r
    }

    pub fn unrank(&self, mut r: u64) -> u64 {
        let mut mask = 0u64;
        for i in (1..=self.k).rev() {
            // largest c with C(c, i) <= r
            let mut c = i - 1;
            while c + 1 < self.table.len() && self.table[c + 1][i] <= r {
                c += 1;
            }
            r -= self.table[c][i];
            mask |= 1 << c;
        }
        mask
    }
}
