//! Constructors for the standard code families and the groups that act on
//! them.

mod fixtures;
mod geometry;
mod golay;

pub use fixtures::{fixture_group, fixture_names, load_group_file, GroupFile, DATA_DIR_ENV};
pub use geometry::{
    hyperplane_code, pg23_code, pg23_lines, pg23_points, pg32_planes_code, tetrahedra,
    tetrahedron_code, TETRAHEDRON_U,
};
pub use golay::{golay_endecads, GolayCode};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{Code, TypeMultiset};
use crate::error::{Error, Result};
use crate::metric::KneserSpace;
use crate::perm::BlockSystem;
use crate::subset::{choose, full_mask, MaskCombinations};

/// `C_int(u,v;a,b)`: vertices of `K(u+v, a+b)` meeting `U = {0..u-1}` in
/// `a` points and `V = {u..u+v-1}` in `b` points.
pub fn c_int(u: usize, v: usize, a: usize, b: usize) -> Result<Code> {
    if a > u || b > v {
        return Err(Error::usage(format!(
            "C_int needs a <= u and b <= v, got u={u} v={v} a={a} b={b}"
        )));
    }
    let space = KneserSpace::new(u + v, a + b)?;
    let umask = full_mask(u);
    let vmask = full_mask(u + v) & !umask;
    let mut words = Vec::with_capacity((choose(u, a) * choose(v, b)) as usize);
    for x in MaskCombinations::new(umask, a) {
        for y in MaskCombinations::new(vmask, b) {
            words.push(x | y);
        }
    }
    Code::from_masks(space, words)
}

/// Number of vertices of a given type: distinct assignments of the values
/// of `m` to blocks, times the ways to pick each intersection.
pub fn c_imp_size(block_size: usize, m: &TypeMultiset) -> u128 {
    let a = m.block_count();
    let mut count: u128 = 1;
    let mut left = a;
    for (v, mult) in m.powers() {
        count *= choose(left, mult) * choose(block_size, v).pow(mult as u32);
        left -= mult;
    }
    count
}

/// `C_imp(a,b;M)`: vertices of `K(ab, k)` with `ab = 2k+1` whose
/// intersections with the blocks `{ib, .., ib+b-1}` form the multiset `M`.
pub fn c_imp(a: usize, b: usize, m: &TypeMultiset) -> Result<Code> {
    if a < 2 || b < 2 || (a * b).is_multiple_of(2) {
        return Err(Error::usage(format!(
            "C_imp needs a, b >= 2 with ab odd, got a={a} b={b}"
        )));
    }
    let k = (a * b - 1) / 2;
    m.validate(a, b, k)?;
    let space = KneserSpace::new(a * b, k)?;
    let blocks = BlockSystem::consecutive(a, b)?.block_masks();

    // distinct orderings of the values over the blocks
    let mut values = m.values().to_vec();
    values.sort_unstable();
    let mut assignments = Vec::new();
    loop {
        assignments.push(values.clone());
        if !next_permutation(&mut values) {
            break;
        }
    }

    let mut words = Vec::with_capacity(c_imp_size(b, m) as usize);
    for asg in &assignments {
        let mut partial = vec![0u64];
        for (blk, &size) in blocks.iter().zip(asg) {
            let picks: Vec<u64> = MaskCombinations::new(*blk, size).collect();
            partial = partial
                .iter()
                .flat_map(|&p| picks.iter().map(move |&q| p | q))
                .collect();
        }
        words.extend(partial);
    }
    Code::from_masks(space, words)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A named family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    CInt { u: usize, v: usize, a: usize, b: usize },
    CImp { a: usize, b: usize, m: Vec<usize> },
    Tetrahedron,
    Pg23,
    Hyperplanes { d: usize },
    Pg32Planes,
    Endecads,
}

impl FamilySpec {
    pub fn build(&self) -> Result<Code> {
        match self {
            FamilySpec::CInt { u, v, a, b } => c_int(*u, *v, *a, *b),
            FamilySpec::CImp { a, b, m } => c_imp(*a, *b, &TypeMultiset::new(m.clone())),
            FamilySpec::Tetrahedron => Ok(tetrahedron_code()),
            FamilySpec::Pg23 => Ok(pg23_code()),
            FamilySpec::Hyperplanes { d } => hyperplane_code(*d),
            FamilySpec::Pg32Planes => Ok(pg32_planes_code()),
            FamilySpec::Endecads => Ok(golay_endecads()?.endecads),
        }
    }

    /// Catalog name of the group fixture that naturally acts on the code.
    pub fn natural_group(&self) -> String {
        match self {
            FamilySpec::CInt { u, v, .. } => format!("sym-product:{u},{v}"),
            FamilySpec::CImp { a, b, .. } => format!("wreath:{a},{b}"),
            FamilySpec::Tetrahedron => "s5xagl3-2".into(),
            FamilySpec::Pg23 => "pgl3-3".into(),
            FamilySpec::Hyperplanes { d } => format!("pgl2:{d}"),
            FamilySpec::Pg32Planes => "pgl2:4".into(),
            FamilySpec::Endecads => "m23".into(),
        }
    }

    /// Parameters as a flat map, for reports.
    pub fn params(&self) -> BTreeMap<&'static str, String> {
        let mut p = BTreeMap::new();
        match self {
            FamilySpec::CInt { u, v, a, b } => {
                p.insert("u", u.to_string());
                p.insert("v", v.to_string());
                p.insert("a", a.to_string());
                p.insert("b", b.to_string());
            }
            FamilySpec::CImp { a, b, m } => {
                p.insert("a", a.to_string());
                p.insert("b", b.to_string());
                p.insert("m", TypeMultiset::new(m.clone()).to_string());
            }
            FamilySpec::Hyperplanes { d } => {
                p.insert("d", d.to_string());
            }
            _ => {}
        }
        p
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::CInt { u, v, a, b } => write!(f, "c-int({u},{v};{a},{b})"),
            FamilySpec::CImp { a, b, m } => write!(f, "c-imp({a},{b};{})", TypeMultiset::new(m.clone())),
            FamilySpec::Tetrahedron => write!(f, "tetrahedron"),
            FamilySpec::Pg23 => write!(f, "pg23"),
            FamilySpec::Hyperplanes { d } => write!(f, "hyperplanes({d})"),
            FamilySpec::Pg32Planes => write!(f, "pg32-planes"),
            FamilySpec::Endecads => write!(f, "endecads"),
        }
    }
}
