//! Codes from small affine and projective geometries.
//!
//! Point labels:
//! - tetrahedron code: `0..5` is `U`, point `5 + v` is the vector `v` of the
//!   3-dimensional binary space;
//! - `PG(d-1,2)`: point `v - 1` is the nonzero vector `v`;
//! - `PG(2,3)`: normalised vectors (first nonzero coordinate 1) in
//!   lexicographic order.

use crate::code::Code;
use crate::error::{Error, Result};
use crate::metric::KneserSpace;
use crate::subset::{full_mask, MaskCombinations};

/// Size of the set `U` in the tetrahedron code.
pub const TETRAHEDRON_U: usize = 5;

/// The 56 four-subsets of the 8 vectors of `AG_3(2)` that are not 2-flats,
/// as masks over the vectors (bit `v` = vector `v`).
pub fn tetrahedra() -> Vec<u8> {
    MaskCombinations::new(0xff, 4)
        .filter(|&m| {
            let xor = (0..8).filter(|v| m >> v & 1 == 1).fold(0u8, |acc, v| acc ^ v as u8);
            xor != 0
        })
        .map(|m| m as u8)
        .collect()
}

/// Codewords meet `U` in 2 points and `V` in a tetrahedron.
pub fn tetrahedron_code() -> Code {
    let space = KneserSpace::new(13, 6).expect("valid space");
    let tets = tetrahedra();
    let mut words = Vec::with_capacity(560);
    for u in MaskCombinations::new(full_mask(TETRAHEDRON_U), 2) {
        for &t in &tets {
            words.push(u | (t as u64) << TETRAHEDRON_U);
        }
    }
    Code::from_masks(space, words).expect("distinct codewords")
}

/// Points of `PG(2,3)` as coordinate vectors.
pub fn pg23_points() -> Vec<[u8; 3]> {
    let mut pts = Vec::with_capacity(13);
    for x in 0..3u8 {
        for y in 0..3u8 {
            for z in 0..3u8 {
                let v = [x, y, z];
                if v.iter().find(|&&c| c != 0) == Some(&1) {
                    pts.push(v);
                }
            }
        }
    }
    pts
}

/// Lines of `PG(2,3)` as point masks, indexed by their normalised normal
/// vectors in the same order as the points.
pub fn pg23_lines() -> Vec<u64> {
    let pts = pg23_points();
    pts.iter()
        .map(|w| {
            pts.iter()
                .enumerate()
                .filter(|(_, p)| (0..3).map(|i| p[i] as u32 * w[i] as u32).sum::<u32>() % 3 == 0)
                .map(|(i, _)| 1u64 << i)
                .sum()
        })
        .collect()
}

/// Symmetric differences of pairs of distinct lines of `PG(2,3)`.
pub fn pg23_code() -> Code {
    let space = KneserSpace::new(13, 6).expect("valid space");
    let lines = pg23_lines();
    let mut words = Vec::with_capacity(78);
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            words.push(lines[i] ^ lines[j]);
        }
    }
    Code::from_masks(space, words).expect("distinct codewords")
}

/// Hyperplanes of `PG(d-1,2)` for `3 <= d <= 6`.
pub fn hyperplane_code(d: usize) -> Result<Code> {
    if !(3..=6).contains(&d) {
        return Err(Error::usage(format!("hyperplane codes need 3 <= d <= 6, got {d}")));
    }
    let n = (1usize << d) - 1;
    let space = KneserSpace::new(n, (1 << (d - 1)) - 1)?;
    let words = (1..=n as u32)
        .map(|f| {
            (1..=n as u32)
                .filter(|v| (v & f).count_ones() % 2 == 0)
                .map(|v| 1u64 << (v - 1))
                .sum()
        })
        .collect();
    Code::from_masks(space, words)
}

/// The 15 planes of `PG(3,2)` in `K(15,7)`.
pub fn pg32_planes_code() -> Code {
    hyperplane_code(4).expect("d = 4 is in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_counts() {
        assert_eq!(tetrahedra().len(), 56);
        // {0, e1, e2, e1+e2} is a flat
        assert!(!tetrahedra().contains(&0b1111));
        assert_eq!(tetrahedron_code().len(), 560);
    }

    #[test]
    fn pg23_incidence() {
        let lines = pg23_lines();
        assert_eq!(pg23_points().len(), 13);
        assert!(lines.iter().all(|l| l.count_ones() == 4));
        for i in 0..13 {
            for j in i + 1..13 {
                assert_eq!((lines[i] & lines[j]).count_ones(), 1);
            }
        }
        assert_eq!(pg23_code().len(), 78);
    }

    #[test]
    fn hyperplane_sizes() {
        for d in 3..=6 {
            let c = hyperplane_code(d).unwrap();
            assert_eq!(c.len(), (1 << d) - 1);
            assert!(c.space().is_odd_graph());
        }
        assert!(hyperplane_code(2).is_err());
        assert!(hyperplane_code(7).is_err());
    }
}
