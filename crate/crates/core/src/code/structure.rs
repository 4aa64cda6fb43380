//! Structural facts about codes and the groups acting on them: the sets
//! `U_0`/`U_1`, the odd-graph obstruction, the Johnson conversion, and
//! classification against the known intransitive/imprimitive/primitive cases.

use std::collections::HashSet;

use serde::Serialize;

use super::types::{type_multiset_masks, TypeMultiset, TypePair};
use super::Code;
use crate::error::{Error, Result};
use crate::metric::KneserSpace;
use crate::perm::{BlockSystem, PermGroup, Permutation, ORBIT_LIMIT};
use crate::subset::{elements, full_mask, KSubset, MaskCombinations};

/// Points in no codeword and points in every codeword.
pub fn u0_u1(code: &Code) -> (KSubset, KSubset) {
    let n = code.space().n();
    let mut union = 0u64;
    let mut inter = full_mask(n);
    for &w in code.masks() {
        union |= w;
        inter &= w;
    }
    (
        KSubset::from_raw(full_mask(n) & !union, n),
        KSubset::from_raw(inter, n),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct U0U1Report {
    pub u0: Vec<usize>,
    pub u1: Vec<usize>,
    /// `U_0` is a union of orbits of the supplied group.
    pub u0_invariant: bool,
    pub u1_invariant: bool,
    /// Every permutation of `U_0` (fixing the rest) preserves the code.
    pub u0_full_symmetric: bool,
    pub u1_full_symmetric: bool,
    pub pass: bool,
}

/// Generators of `Sym(S)` acting on `S` and fixing everything else.
fn symmetric_on(n: usize, set: u64) -> Vec<Permutation> {
    let pts: Vec<usize> = elements(set).collect();
    if pts.len() < 2 {
        return Vec::new();
    }
    let transposition = Permutation::from_cycles(n, &[&pts[..2]]).expect("valid cycle");
    let cycle = Permutation::from_cycles(n, &[&pts]).expect("valid cycle");
    vec![transposition, cycle]
}

/// Checks `U_0` and `U_1` against a group that preserves the code.
pub fn verify_u0_u1_orbits(code: &Code, group: &PermGroup) -> Result<U0U1Report> {
    code.check_preserved_by(group)?;
    let (u0, u1) = u0_u1(code);
    let n = code.space().n();
    let invariant = |s: KSubset| group.generators().iter().all(|g| g.apply_mask(s.mask()) == s.mask());
    let words = code.mask_set();
    let symmetric = |s: KSubset| {
        symmetric_on(n, s.mask())
            .iter()
            .all(|g| words.iter().all(|&w| words.contains(&g.apply_mask(w))))
    };
    let report = U0U1Report {
        u0: u0.elements(),
        u1: u1.elements(),
        u0_invariant: invariant(u0),
        u1_invariant: invariant(u1),
        u0_full_symmetric: symmetric(u0),
        u1_full_symmetric: symmetric(u1),
        pass: false,
    };
    Ok(U0U1Report {
        pass: report.u0_invariant && report.u1_invariant && report.u0_full_symmetric && report.u1_full_symmetric,
        ..report
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionWitness {
    pub alpha: Vec<usize>,
    pub beta1: Vec<usize>,
    pub beta2: Vec<usize>,
    /// Common neighbour of `α`, `β_1` and `β_2`.
    pub gamma: Vec<usize>,
    pub intersections: [usize; 2],
    pub distances: [usize; 2],
}

/// Two vertices at distance 2 from `alpha` meeting it in `k-1` and `k-2`
/// points, plus a vertex disjoint from all three.
///
/// Off the odd graphs this shows `Γ_2(α)` contains two types, so no group
/// fixing `α` is transitive on it. For `k = 2` the second vertex would be
/// disjoint from `α`, and in fact every vertex of `Γ_2(α)` meets `α` in one
/// point, so no witness exists.
pub fn theorem_obstruction_witness(space: &KneserSpace, alpha: KSubset) -> Result<ObstructionWitness> {
    space.check_vertex(alpha)?;
    if space.is_odd_graph() {
        return Err(Error::domain(format!(
            "K({},{}) is an odd graph; the obstruction needs n >= 2k+2",
            space.n(),
            space.k()
        )));
    }
    let k = space.k();
    let a: Vec<usize> = alpha.elements();
    let c: Vec<usize> = alpha.complement().elements();
    let sub = |m: u64| KSubset::from_raw(m, space.n());
    let bit = |x: usize| 1u64 << x;
    let beta1 = alpha.mask() & !bit(a[0]) | bit(c[0]);
    let beta2 = alpha.mask() & !bit(a[0]) & !bit(a[1]) | bit(c[0]) | bit(c[1]);
    let d1 = space.mask_distance(alpha.mask(), beta1);
    let d2 = space.mask_distance(alpha.mask(), beta2);
    if d1 != 2 || d2 != 2 {
        let kinds: Vec<usize> = (0..=k).filter(|&s| space.distance_for_intersection(s) == 2).collect();
        return Err(Error::domain(format!(
            "no obstruction in K({},{}): every vertex at distance 2 meets alpha in one of {:?} points",
            space.n(),
            k,
            kinds
        )));
    }
    let gamma: u64 = c[2..k + 2].iter().map(|&x| bit(x)).sum();
    debug_assert!(gamma & (alpha.mask() | beta1 | beta2) == 0);
    Ok(ObstructionWitness {
        alpha: a,
        beta1: sub(beta1).elements(),
        beta2: sub(beta2).elements(),
        gamma: sub(gamma).elements(),
        intersections: [k - 1, k - 2],
        distances: [d1, d2],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JohnsonReport {
    pub delta: usize,
    pub johnson_delta: usize,
    pub c2_size: usize,
    pub johnson_c1_size: usize,
    pub c2_equals_johnson_c1: bool,
    /// Transitivity of the supplied group on `C'_1`, if one was given.
    pub johnson_neighbour_transitive: Option<bool>,
    pub pass: bool,
}

/// Compares `C_2` in the odd graph with the first neighbour set `C'_1` of the
/// same code in the Johnson graph `J(2k+1,k)`.
pub fn odd_johnson_check(code: &Code, group: Option<&PermGroup>) -> Result<JohnsonReport> {
    let space = *code.space();
    if !space.is_odd_graph() {
        return Err(Error::domain(format!(
            "K({},{}) is not an odd graph",
            space.n(),
            space.k()
        )));
    }
    let delta = code.min_distance()?;
    if delta < 5 {
        return Err(Error::domain(format!(
            "odd-to-Johnson conversion needs minimum distance at least 5, got {delta}"
        )));
    }
    let k = space.k();
    let johnson_delta = k - code.intersection_distribution().keys().max().copied().unwrap_or(0);

    let words = code.mask_set();
    let outside = space.ground().mask();
    let mut johnson_c1: HashSet<u64> = HashSet::new();
    for &w in code.masks() {
        for x in elements(w) {
            for y in elements(!w & outside) {
                let v = w & !(1u64 << x) | (1u64 << y);
                if !words.contains(&v) {
                    johnson_c1.insert(v);
                }
            }
        }
    }
    let part = code.cells_up_to(2)?;
    let c2 = part.cell_masks(2);
    let equal = c2.len() == johnson_c1.len() && c2.iter().all(|m| johnson_c1.contains(m));

    let transitive = match group {
        Some(g) => {
            code.check_preserved_by(g)?;
            let seed = *johnson_c1
                .iter()
                .min()
                .ok_or_else(|| Error::domain("C'_1 is empty"))?;
            Some(g.mask_orbit(seed, ORBIT_LIMIT)?.len() == johnson_c1.len())
        }
        None => None,
    };
    Ok(JohnsonReport {
        delta,
        johnson_delta,
        c2_size: c2.len(),
        johnson_c1_size: johnson_c1.len(),
        c2_equals_johnson_c1: equal,
        johnson_neighbour_transitive: transitive,
        pass: equal && johnson_delta >= 3 && transitive != Some(false),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCoverage {
    pub pairs: usize,
    pub covered: usize,
    /// A pair meeting every codeword, if any.
    pub uncovered: Option<[usize; 2]>,
    pub pass: bool,
}

/// Whether every pair of points avoids some codeword. The group must be
/// transitive on points and preserve the code.
pub fn pair_coverage_check(code: &Code, group: &PermGroup) -> Result<PairCoverage> {
    code.check_preserved_by(group)?;
    if !group.is_transitive() {
        return Err(Error::domain("pair coverage needs a group transitive on points"));
    }
    let n = code.space().n();
    let full = full_mask(n);
    let total = n * (n - 1) / 2;
    let mut covered: HashSet<u64> = HashSet::new();
    for &w in code.masks() {
        for p in MaskCombinations::new(full & !w, 2) {
            covered.insert(p);
        }
        if covered.len() == total {
            break;
        }
    }
    let uncovered = MaskCombinations::new(full, 2).find(|p| !covered.contains(p)).map(|p| {
        let pts: Vec<usize> = elements(p).collect();
        [pts[0], pts[1]]
    });
    Ok(PairCoverage {
        pairs: total,
        covered: covered.len(),
        pass: uncovered.is_none(),
        uncovered,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub alpha: Vec<usize>,
    /// Exact order, as a decimal string.
    pub stabilizer_order: String,
    pub gamma1_size: usize,
    pub gamma1_orbit_size: usize,
    pub transitive_on_gamma1: bool,
    /// `n - 2k`, the subset size tested on the complement of `α`.
    pub homogeneity_degree: usize,
    pub complement_orbits: usize,
    pub homogeneous: bool,
    pub pass: bool,
}

/// For the first codeword `α`, checks that `G_α` is transitive on `Γ_1(α)`
/// and on the `(n-2k)`-subsets of the complement of `α`.
pub fn stabilizer_homogeneity_check(code: &Code, group: &PermGroup) -> Result<HomogeneityReport> {
    let delta = code.min_distance()?;
    if delta < 3 {
        return Err(Error::domain(format!(
            "stabilizer homogeneity needs minimum distance at least 3, got {delta}"
        )));
    }
    code.check_preserved_by(group)?;
    let space = code.space();
    let alpha = code.first();
    let stab = group.setwise_stabilizer(alpha)?;
    let gamma1 = space.sphere(alpha, 1)?;
    let orbit = stab.mask_orbit(gamma1[0].mask(), ORBIT_LIMIT)?;
    let t = space.gap();
    let orbits = stab.orbits_on_subsets_of(alpha.complement().mask(), t)?;
    let transitive = orbit.len() == gamma1.len();
    Ok(HomogeneityReport {
        alpha: alpha.elements(),
        stabilizer_order: stab.order().to_string(),
        gamma1_size: gamma1.len(),
        gamma1_orbit_size: orbit.len(),
        transitive_on_gamma1: transitive,
        homogeneity_degree: t,
        complement_orbits: orbits.len(),
        homogeneous: orbits.len() == 1,
        pass: transitive && orbits.len() == 1,
    })
}

/// A matching case of the intransitive theorem, with the orbit playing `U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntransitiveCase {
    pub case: usize,
    pub u: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImprimitiveCase {
    pub blocks: Vec<Vec<usize>>,
    pub block_size: usize,
    pub block_count: usize,
    /// Common type of all codewords, or `None` if codewords differ.
    pub code_type: Option<TypeMultiset>,
    pub cases: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveInfo {
    pub two_homogeneous: bool,
    pub two_transitive: bool,
    /// `δ >= 3` off the odd graphs, where 2-homogeneity is forced.
    pub homogeneity_required: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum Classification {
    Intransitive {
        orbit_sizes: Vec<usize>,
        two_orbits: bool,
        /// Type with respect to the first orbit, when constant on the code.
        code_type: Option<TypePair>,
        cases: Vec<IntransitiveCase>,
    },
    Imprimitive {
        /// The imprimitive theorem is stated for odd graphs only.
        odd_graph: bool,
        systems: Vec<ImprimitiveCase>,
    },
    Primitive(PrimitiveInfo),
}

impl Classification {
    /// Case numbers matched anywhere in the record, sorted and deduplicated.
    pub fn cases(&self) -> Vec<usize> {
        let mut out: Vec<usize> = match self {
            Classification::Intransitive { cases, .. } => cases.iter().map(|c| c.case).collect(),
            Classification::Imprimitive { systems, .. } => {
                systems.iter().flat_map(|s| s.cases.iter().copied()).collect()
            }
            Classification::Primitive(_) => Vec::new(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn constant<T: PartialEq>(mut values: impl Iterator<Item = T>) -> Option<T> {
    let first = values.next()?;
    values.all(|v| v == first).then_some(first)
}

fn intransitive_cases(code: &Code, delta: Option<usize>, u: u64, v: u64) -> Vec<usize> {
    let space = code.space();
    let (n, k) = (space.n(), space.k());
    let size = u.count_ones() as usize;
    let mut cases = Vec::new();
    let Some(delta) = delta else {
        return cases;
    };
    let words = code.masks();
    if delta == 1 && size == 1 && words.iter().all(|&w| w & !v == 0) {
        cases.push(1);
    }
    if delta == 1
        && n == 2 * k + 1
        && size.is_multiple_of(2)
        && words.iter().all(|&w| (w & u).count_ones() as usize == size / 2)
    {
        cases.push(2);
    }
    if delta >= 2 && size < k && words.iter().all(|&w| w & u == u) {
        cases.push(3);
    }
    cases
}

fn imprimitive_cases(delta: Option<usize>, m: &TypeMultiset, a: usize, b: usize) -> Vec<usize> {
    let mut cases = Vec::new();
    let Some(delta) = delta else {
        return cases;
    };
    let others: HashSet<usize> = m.values().iter().copied().filter(|&x| x != b).collect();
    if delta >= 2 && others.len() <= 1 {
        cases.push(1);
    }
    if delta == 1 && a % 2 == 1 && b % 2 == 1 {
        let two = TypeMultiset::from_powers(&[((b - 1) / 2, a.div_ceil(2)), (b.div_ceil(2), (a - 1) / 2)]);
        if *m == two {
            cases.push(2);
        }
        let three = TypeMultiset::from_powers(&[(0, (a - 1) / 2), ((b - 1) / 2, 1), (b, (a - 1) / 2)]);
        if *m == three {
            cases.push(3);
        }
    }
    cases
}

/// Locates the code and group among the intransitive, imprimitive and
/// primitive cases. A record without matching cases is a legal result.
pub fn classify_against_theorems(code: &Code, group: &PermGroup) -> Result<Classification> {
    code.check_preserved_by(group)?;
    let space = code.space();
    let n = space.n();
    let delta = if code.is_trivial() { None } else { Some(code.min_distance()?) };
    let orbits = group.point_orbits();
    if orbits.len() > 1 {
        let orbit_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        let two = orbits.len() == 2;
        let u = crate::subset::mask_of(&orbits[0]);
        let code_type = constant(code.masks().iter().map(|&w| {
            let a = (w & u).count_ones() as usize;
            TypePair { a, b: space.k() - a }
        }));
        let mut cases = Vec::new();
        if two {
            let v = full_mask(n) & !u;
            for (x, y) in [(u, v), (v, u)] {
                for case in intransitive_cases(code, delta, x, y) {
                    cases.push(IntransitiveCase {
                        case,
                        u: elements(x).collect(),
                    });
                }
            }
            cases.sort_by_key(|c| c.case);
        }
        return Ok(Classification::Intransitive {
            orbit_sizes,
            two_orbits: two,
            code_type,
            cases,
        });
    }

    let systems = group.minimal_block_systems()?;
    if !systems.is_empty() {
        let odd = space.is_odd_graph();
        let systems = systems
            .iter()
            .map(|bs: &BlockSystem| {
                let masks = bs.block_masks();
                let code_type = constant(code.masks().iter().map(|&w| type_multiset_masks(w, &masks)));
                let cases = match (&code_type, odd) {
                    (Some(m), true) => imprimitive_cases(delta, m, bs.block_count(), bs.block_size()),
                    _ => Vec::new(),
                };
                ImprimitiveCase {
                    blocks: bs.blocks().to_vec(),
                    block_size: bs.block_size(),
                    block_count: bs.block_count(),
                    code_type,
                    cases,
                }
            })
            .collect();
        return Ok(Classification::Imprimitive { odd_graph: odd, systems });
    }

    let two_homogeneous = group.is_k_homogeneous(2)?;
    let required = !space.is_odd_graph() && delta.is_some_and(|d| d >= 3);
    Ok(Classification::Primitive(PrimitiveInfo {
        two_homogeneous,
        two_transitive: group.is_two_transitive(),
        homogeneity_required: required,
        consistent: !required || two_homogeneous,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize, k: usize) -> KneserSpace {
        KneserSpace::new(n, k).unwrap()
    }

    #[test]
    fn u0_u1_of_trivial_code() {
        let sp = space(7, 3);
        let a = sp.vertex(&[0, 2, 4]).unwrap();
        let code = Code::new(sp, [a]).unwrap();
        let (u0, u1) = u0_u1(&code);
        assert_eq!(u1, a);
        assert_eq!(u0, a.complement());
    }

    #[test]
    fn u0_u1_of_all_vertices() {
        let sp = space(7, 3);
        let code = Code::new(sp, sp.vertices()).unwrap();
        let (u0, u1) = u0_u1(&code);
        assert!(u0.is_empty() && u1.is_empty());
    }

    #[test]
    fn obstruction_in_k12_5() {
        let sp = space(12, 5);
        let alpha = sp.vertex(&[0, 1, 2, 3, 4]).unwrap();
        let w = theorem_obstruction_witness(&sp, alpha).unwrap();
        assert_eq!(w.intersections, [4, 3]);
        assert_eq!(w.distances, [2, 2]);
        assert_eq!(w.gamma, vec![7, 8, 9, 10, 11]);
    }

    #[test]
    fn obstruction_rejects_odd_graphs_and_k2() {
        let sp = space(11, 5);
        let alpha = sp.vertex(&[0, 1, 2, 3, 4]).unwrap();
        assert!(matches!(theorem_obstruction_witness(&sp, alpha), Err(Error::Domain(_))));
        let sp = space(6, 2);
        let alpha = sp.vertex(&[0, 1]).unwrap();
        assert!(matches!(theorem_obstruction_witness(&sp, alpha), Err(Error::Domain(_))));
    }

    #[test]
    fn pair_coverage_of_all_vertices() {
        let sp = space(7, 3);
        let code = Code::new(sp, sp.vertices()).unwrap();
        let g = PermGroup::new(
            7,
            vec![
                Permutation::from_cycles(7, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]).unwrap(),
            ],
        )
        .unwrap();
        let p = pair_coverage_check(&code, &g).unwrap();
        assert!(p.pass);
        assert_eq!(p.pairs, 21);
    }
}
