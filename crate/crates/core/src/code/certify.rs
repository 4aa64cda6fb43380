use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CellMethod, Code};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, ORBIT_LIMIT};
use crate::subset::{KSubset, Ranker};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub cell_size: usize,
    pub orbit_size: usize,
    pub transitive: bool,
    pub representative: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NtCertificate {
    pub s: usize,
    pub method: CellMethod,
    pub levels: Vec<LevelReport>,
    pub pass: bool,
    /// `Some(rho)` when the partition was computed globally.
    pub rho: Option<usize>,
}

/// Checks that `group` preserves the code and is transitive on each of
/// `C_0, .., C_s`.
///
/// A level with an empty cell is a domain error, so `s >= 1` requires
/// covering radius at least `s`.
pub fn certify_s_neighbour_transitive(code: &Code, group: &PermGroup, s: usize) -> Result<NtCertificate> {
    if code.is_trivial() {
        return Err(Error::domain("neighbour-transitivity needs at least two codewords"));
    }
    code.check_preserved_by(group)?;
    let part = code.cells_up_to(s)?;
    let n = code.space().n();
    let mut levels = Vec::with_capacity(s + 1);
    for i in 0..=s {
        let cell = part.cell_masks(i);
        let Some(&rep) = cell.first() else {
            let radius = match part.rho() {
                Some(rho) => format!("covering radius {rho}"),
                None => format!("covering radius below {i}"),
            };
            return Err(Error::domain(format!(
                "C_{i} is empty ({radius}), so {s}-neighbour-transitivity is undefined"
            )));
        };
        let orbit = group.mask_orbit(rep, ORBIT_LIMIT)?;
        // G preserves C and the metric, so an orbit never leaves its cell.
        assert!(
            orbit.iter().all(|m| cell.binary_search(m).is_ok()),
            "orbit escaped C_{i}"
        );
        levels.push(LevelReport {
            level: i,
            cell_size: cell.len(),
            orbit_size: orbit.len(),
            transitive: orbit.len() == cell.len(),
            representative: KSubset::from_raw(rep, n).elements(),
        });
    }
    let pass = levels.iter().all(|l| l.transitive);
    Ok(NtCertificate {
        s,
        method: part.method(),
        pass,
        levels,
        rho: part.rho(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartCheck {
    pub holds: bool,
    /// Human-readable counterexample when `holds` is false.
    pub witness: Option<String>,
}

impl PartCheck {
    fn ok() -> Self {
        PartCheck { holds: true, witness: None }
    }

    fn fail(w: String) -> Self {
        PartCheck { holds: false, witness: Some(w) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    /// Samples used to spot-check that the labelling is group-invariant.
    pub invariance_samples: usize,
    /// All of `C_0` share a type (and all of `C_1`, when requested).
    pub part1: PartCheck,
    /// Every neighbour of a codeword has the type of the codeword or of the
    /// `C_1` vertices. `None` when `C_1` is empty.
    pub part2: Option<PartCheck>,
    /// With `δ >= 2`, all neighbours of a codeword share a type. `None`
    /// when `δ < 2`.
    pub part3: Option<PartCheck>,
    /// The single type of `C_0`, when part 1 holds for it.
    pub code_type: Option<String>,
    /// The single type of `C_1`, when it exists.
    pub c1_type: Option<String>,
}

const INVARIANCE_SAMPLES: usize = 64;

fn constant_type<T, F>(cell: &[u64], n: usize, iota: &F) -> (Option<T>, Option<String>)
where
    T: PartialEq + Display,
    F: Fn(KSubset) -> T,
{
    let mut iter = cell.iter().map(|&m| KSubset::from_raw(m, n));
    let Some(first) = iter.next() else {
        return (None, None);
    };
    let t0 = iota(first);
    for v in iter {
        let t = iota(v);
        if t != t0 {
            return (None, Some(format!("{first} has type {t0} but {v} has type {t}")));
        }
    }
    (Some(t0), None)
}

/// Evaluates the three conclusions of the type-invariance lemma for a
/// labelling `iota` that is constant on orbits of `group`. `levels` is 0 to
/// check part 1 on `C_0` only, 1 to also check it on `C_1`.
pub fn check_invariance_lemma<T, F>(
    code: &Code,
    iota: F,
    group: &PermGroup,
    levels: usize,
) -> Result<InvarianceReport>
where
    T: PartialEq + Clone + Display,
    F: Fn(KSubset) -> T,
{
    if levels > 1 {
        return Err(Error::usage("the lemma concerns C_0 and C_1 only"));
    }
    let space = *code.space();
    let n = space.n();
    if group.degree() != n {
        return Err(Error::usage("group degree differs from the code's ground set"));
    }

    // spot-check invariance on codewords and random vertices
    let total = space.vertex_count();
    let ranker = Ranker::new(n, space.k());
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6e_6573);
    let mut samples: Vec<u64> = code.masks().iter().take(INVARIANCE_SAMPLES / 2).copied().collect();
    while samples.len() < INVARIANCE_SAMPLES {
        samples.push(ranker.unrank(rng.gen_range(0..total as u64)));
    }
    for &m in &samples {
        let v = KSubset::from_raw(m, n);
        for g in group.generators() {
            let img = KSubset::from_raw(g.apply_mask(m), n);
            if iota(v) != iota(img) {
                return Err(Error::domain(format!(
                    "labelling is not invariant: {v} has type {} but its image {img} under {g:?} has type {}",
                    iota(v),
                    iota(img)
                )));
            }
        }
    }

    let cells = code.neighbour_sets(1)?;
    let (code_type, w0) = constant_type(cells.cell_masks(0), n, &iota);
    let (c1_type, w1) = constant_type(cells.cell_masks(1), n, &iota);
    let part1 = match (w0, levels, w1) {
        (Some(w), _, _) => PartCheck::fail(format!("C_0: {w}")),
        (None, 1, Some(w)) => PartCheck::fail(format!("C_1: {w}")),
        _ => PartCheck::ok(),
    };

    let c1: Vec<KSubset> = cells.cell(1);
    let part2 = if c1.is_empty() {
        None
    } else {
        let c1_types: Vec<T> = {
            let mut ts: Vec<T> = Vec::new();
            for &b in &c1 {
                let t = iota(b);
                if !ts.contains(&t) {
                    ts.push(t);
                }
            }
            ts
        };
        let mut result = PartCheck::ok();
        'words: for alpha in code.codewords() {
            let ta = iota(alpha);
            for gamma in space.sphere(alpha, 1)? {
                let tg = iota(gamma);
                if tg == ta {
                    continue;
                }
                if let Some(tb) = c1_types.iter().find(|tb| **tb != tg) {
                    result = PartCheck::fail(format!(
                        "neighbour {gamma} of codeword {alpha} has type {tg}, neither {ta} nor the C_1 type {tb}"
                    ));
                    break 'words;
                }
            }
        }
        Some(result)
    };

    let delta = if code.is_trivial() { None } else { Some(code.min_distance()?) };
    let part3 = match delta {
        Some(d) if d >= 2 => {
            let mut result = PartCheck::ok();
            'outer: for alpha in code.codewords() {
                let sphere = space.sphere(alpha, 1)?;
                let t0 = iota(sphere[0]);
                for &gamma in &sphere[1..] {
                    let t = iota(gamma);
                    if t != t0 {
                        result = PartCheck::fail(format!(
                            "neighbours {} and {gamma} of codeword {alpha} have types {t0} and {t}",
                            sphere[0]
                        ));
                        break 'outer;
                    }
                }
            }
            Some(result)
        }
        _ => None,
    };

    Ok(InvarianceReport {
        invariance_samples: samples.len(),
        part1,
        part2,
        part3,
        code_type: code_type.map(|t| t.to_string()),
        c1_type: c1_type.map(|t| t.to_string()),
    })
}
