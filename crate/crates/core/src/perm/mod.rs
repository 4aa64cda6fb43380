//! Permutations of `{0, .., n-1}` and the groups they generate.

mod blocks;
mod chain;
mod group;

pub use blocks::BlockSystem;
pub use group::{PermGroup, ORBIT_LIMIT, STABILIZER_ORBIT_LIMIT};

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{elements, KSubset};

/// A permutation stored as its image list: point `i` maps to `images[i]`.
///
/// Products compose left to right, matching exponent notation: `p.then(q)`
/// is `x ↦ q(p(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > crate::subset::MAX_N {
            return Err(Error::usage(format!("degree {n} exceeds 64")));
        }
        let mut seen = 0u64;
        for &x in images {
            if x >= n || seen >> x & 1 == 1 {
                return Err(Error::usage(format!(
                    "image list {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen |= 1 << x;
        }
        Ok(Permutation {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Build from disjoint cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = 0u64;
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n || touched >> x & 1 == 1 {
                    return Err(Error::usage(format!("bad cycle {cycle:?} on {n} points")));
                }
                touched |= 1 << x;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    /// Build from a closure on points; the closure must be a bijection.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        let images: Vec<usize> = (0..n).map(f).collect();
        Permutation::from_images(&images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    /// Image of a raw subset mask.
    #[inline]
    pub fn apply_mask(&self, mask: u64) -> u64 {
        elements(mask).fold(0u64, |m, x| m | 1u64 << self.images[x])
    }

    pub fn apply_to_subset(&self, alpha: KSubset) -> Result<KSubset> {
        if alpha.ground().size() != self.degree() {
            return Err(Error::usage(format!(
                "permutation of degree {} applied to a subset of a {}-set",
                self.degree(),
                alpha.ground().size()
            )));
        }
        Ok(KSubset::from_raw(self.apply_mask(alpha.mask()), self.degree()))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::GroundSet;

    #[test]
    fn subset_images() {
        let g = GroundSet::new(5).unwrap();
        let a = g.subset(&[0, 3]).unwrap();
        let id = Permutation::identity(5);
        assert_eq!(id.apply_to_subset(a).unwrap(), a);

        let c = Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let img = c.apply_to_subset(a).unwrap();
        assert_eq!(img.elements(), vec![1, 3]);
        assert_eq!(c.inverse().apply_to_subset(img).unwrap(), a);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = GroundSet::new(6).unwrap().subset(&[0, 3]).unwrap();
        assert!(Permutation::identity(5).apply_to_subset(a).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.then(&q).apply(0), 2);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(format!("{:?}", p.then(&q)), "(0 2 1)");
    }

    #[test]
    fn invalid_images_rejected() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
        assert!(Permutation::from_images(&[0, 3, 1]).is_err());
    }
}
