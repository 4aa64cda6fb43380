//! The binary Golay code of length 23, built as a cyclic code from a
//! degree-11 factor of `x^23 + 1`.

use std::collections::{BTreeMap, HashSet};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::metric::KneserSpace;
use crate::subset::choose;

const LENGTH: usize = 23;

#[derive(Debug, Clone)]
pub struct GolayCode {
    /// Generator polynomial, bit `i` = coefficient of `x^i`.
    pub generator: u32,
    pub dimension: usize,
    pub min_weight: usize,
    pub weight_distribution: BTreeMap<usize, usize>,
    /// Supports of the weight-11 codewords, bit `i` = coordinate `i`.
    pub endecads: Code,
}

fn poly_mul(a: u64, b: u64) -> u64 {
    let mut out = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            out ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    out
}

fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = 63 - m.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= dm {
        a ^= m << (63 - a.leading_zeros() - dm);
    }
    a
}

/// Degree-11 divisors of `x^23 + 1`, ascending.
fn degree_11_factors() -> Vec<u32> {
    let modulus = (1u64 << LENGTH) | 1;
    (0..1u64 << 10)
        .map(|mid| (1 << 11) | (mid << 1) | 1)
        .filter(|&g| poly_rem(modulus, g) == 0)
        .map(|g| g as u32)
        .collect()
}

/// Builds the code and checks dimension 12, minimum weight 7 and the
/// sphere-packing equality of a perfect 3-error-correcting code.
pub fn golay_endecads() -> Result<GolayCode> {
    let factors = degree_11_factors();
    let &generator = factors
        .first()
        .ok_or_else(|| Error::Construction("x^23 + 1 has no degree-11 factor".into()))?;

    let words: HashSet<u64> = (0..1u64 << 12).map(|m| poly_mul(m, generator as u64)).collect();
    if words.len() != 1 << 12 || words.iter().any(|&w| w >> LENGTH != 0) {
        return Err(Error::Construction(format!(
            "generator {generator:#x} spans {} words instead of 4096",
            words.len()
        )));
    }
    let dimension = words.len().trailing_zeros() as usize;

    let mut weight_distribution = BTreeMap::new();
    for &w in &words {
        *weight_distribution.entry(w.count_ones() as usize).or_insert(0) += 1;
    }
    let min_weight = weight_distribution.keys().copied().find(|&w| w > 0).unwrap_or(0);
    if dimension != 12 || min_weight != 7 {
        return Err(Error::Construction(format!(
            "expected dimension 12 and minimum weight 7, got {dimension} and {min_weight}"
        )));
    }
    let ball: u128 = (0..=3).map(|i| choose(LENGTH, i)).sum();
    if ball << dimension != 1u128 << LENGTH {
        return Err(Error::Construction("sphere-packing bound is not tight".into()));
    }

    let space = KneserSpace::new(LENGTH, 11)?;
    let mut supports: Vec<u64> = words.into_iter().filter(|w| w.count_ones() == 11).collect();
    supports.sort_unstable();
    Ok(GolayCode {
        generator,
        dimension,
        min_weight,
        weight_distribution,
        endecads: Code::from_masks(space, supports)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_reciprocal_factors() {
        let f = degree_11_factors();
        assert_eq!(f, vec![0xae3, 0xc75]);
        let rev = |g: u32| g.reverse_bits() >> (32 - 12);
        assert_eq!(rev(f[0]), f[1]);
    }

    #[test]
    fn weight_enumerator() {
        let g = golay_endecads().unwrap();
        let expected = BTreeMap::from([(0, 1), (7, 253), (8, 506), (11, 1288), (12, 1288), (15, 506), (16, 253), (23, 1)]);
        assert_eq!(g.weight_distribution, expected);
        assert_eq!(g.endecads.len(), 1288);
    }
}
