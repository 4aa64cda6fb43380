//! Invariant labels of vertices relative to a split of the ground set.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::BlockSystem;
use crate::subset::KSubset;

/// `(|α ∩ U|, |α ∩ V|)` for a split `Ω = U ⊔ V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypePair {
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for TypePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

pub fn type_pair(alpha: KSubset, u: KSubset) -> Result<TypePair> {
    alpha.same_ground(u)?;
    let a = (alpha.mask() & u.mask()).count_ones() as usize;
    Ok(TypePair { a, b: alpha.len() - a })
}

/// Multiset of block intersection sizes, stored in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TypeMultiset(Vec<usize>);

impl TypeMultiset {
    pub fn new(mut values: Vec<usize>) -> Self {
        values.sort_unstable_by(|x, y| y.cmp(x));
        TypeMultiset(values)
    }

    /// From `(value, multiplicity)` pairs; zero multiplicities are dropped.
    pub fn from_powers(powers: &[(usize, usize)]) -> Self {
        TypeMultiset::new(
            powers
                .iter()
                .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
                .collect(),
        )
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.0.len()
    }

    /// Total size of the labelled set.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// `(value, multiplicity)` pairs in decreasing value order.
    pub fn powers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((last, m)) if *last == v => *m += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    /// The label of the complement: each value `x` becomes `b - x`.
    pub fn complement(&self, block_size: usize) -> TypeMultiset {
        TypeMultiset::new(self.0.iter().map(|&x| block_size - x).collect())
    }

    pub(crate) fn validate(&self, block_count: usize, block_size: usize, weight: usize) -> Result<()> {
        if self.0.len() != block_count || self.0.iter().any(|&x| x > block_size) || self.weight() != weight {
            return Err(Error::usage(format!(
                "multiset {self} is not a valid label for {block_count} blocks of size {block_size} and weight {weight}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TypeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.powers().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}^{m}")?;
        }
        write!(f, "}}")
    }
}

pub fn type_multiset(alpha: KSubset, blocks: &BlockSystem) -> Result<TypeMultiset> {
    if blocks.degree() != alpha.ground().size() {
        return Err(Error::usage(format!(
            "block system on {} points used with a subset of a {}-set",
            blocks.degree(),
            alpha.ground().size()
        )));
    }
    Ok(type_multiset_masks(alpha.mask(), &blocks.block_masks()))
}

#[inline]
pub(crate) fn type_multiset_masks(alpha: u64, blocks: &[u64]) -> TypeMultiset {
    TypeMultiset::new(
        blocks
            .iter()
            .map(|&b| (alpha & b).count_ones() as usize)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::GroundSet;

    #[test]
    fn subset_of_one_block() {
        let blocks = BlockSystem::consecutive(3, 3).unwrap();
        let g = GroundSet::new(9).unwrap();
        let alpha = g.subset(&[3, 4, 5]).unwrap();
        let t = type_multiset(alpha, &blocks).unwrap();
        assert_eq!(t.values(), &[3, 0, 0]);
        assert_eq!(t.to_string(), "{3^1,0^2}");
    }

    #[test]
    fn pair_sums_to_size() {
        let g = GroundSet::new(13).unwrap();
        let u = g.subset(&[0, 1, 2, 3, 4]).unwrap();
        let alpha = g.subset(&[0, 1, 5, 6, 7, 8]).unwrap();
        assert_eq!(type_pair(alpha, u).unwrap(), TypePair { a: 2, b: 4 });
    }

    #[test]
    fn powers_round_trip() {
        let m = TypeMultiset::from_powers(&[(1, 4), (3, 1)]);
        assert_eq!(m.values(), &[3, 1, 1, 1, 1]);
        assert_eq!(m.powers(), vec![(3, 1), (1, 4)]);
        assert_eq!(m.complement(3).values(), &[2, 2, 2, 2, 0]);
    }
}
