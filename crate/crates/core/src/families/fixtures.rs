//! Named permutation groups. All but M23 are built from generators; M23 is
//! read from the fixture directory. Every fixture's order is checked.

use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::geometry::{pg23_points, TETRAHEDRON_U};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Overrides the directory holding bundled group files.
pub const DATA_DIR_ENV: &str = "KNESER_DATA_DIR";

/// Group file: `{degree, generators, name, expected_order}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<u128>,
}

impl GroupFile {
    pub fn from_group(g: &PermGroup) -> Self {
        GroupFile {
            degree: g.degree(),
            generators: g.generators().iter().map(Permutation::images).collect(),
            name: g.name().unwrap_or_default().to_string(),
            expected_order: u128::try_from(g.order()).ok(),
        }
    }

    /// Builds the group; fails if `expected_order` is present and differs
    /// from the computed order.
    pub fn into_group(self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|imgs| Permutation::from_images(imgs))
            .collect::<Result<Vec<_>>>()?;
        for (i, g) in gens.iter().enumerate() {
            if g.degree() != self.degree {
                return Err(Error::usage(format!(
                    "generator {i} has degree {} but the file says {}",
                    g.degree(),
                    self.degree
                )));
            }
        }
        let mut group = PermGroup::new(self.degree, gens)?;
        if !self.name.is_empty() {
            group = group.with_name(self.name.clone());
        }
        if let Some(expected) = self.expected_order {
            check_order(&group, &BigUint::from(expected))?;
        }
        Ok(group)
    }
}

fn check_order(group: &PermGroup, expected: &BigUint) -> Result<()> {
    let order = group.order();
    if &order != expected {
        return Err(Error::Construction(format!(
            "group {} has order {order}, expected {expected}",
            group.name().unwrap_or("(unnamed)")
        )));
    }
    Ok(())
}

pub fn load_group_file(path: &Path) -> Result<PermGroup> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file: GroupFile = serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    file.into_group()
}

fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("groups"),
    }
}

/// Catalog patterns accepted by [`fixture_group`].
pub fn fixture_names() -> &'static [&'static str] {
    &[
        "sym:N",
        "cyclic:N",
        "sym-product:U,V",
        "wreath:A,B",
        "s5xagl3-2",
        "pgl3-3",
        "pgl2:D",
        "m23",
    ]
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn gl2_order(d: usize) -> BigUint {
    (0..d).map(|i| BigUint::from((1u64 << d) - (1u64 << i))).product()
}

fn parse_params(name: &str, args: &str, count: usize) -> Result<Vec<usize>> {
    let vals: Vec<usize> = args
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::usage(format!("bad parameters {args:?} for fixture {name}")))?;
    if vals.len() != count {
        return Err(Error::usage(format!(
            "fixture {name} takes {count} parameter(s), got {}",
            vals.len()
        )));
    }
    Ok(vals)
}

/// Transposition of the first two points and the full cycle on `pts`.
fn sym_gens(n: usize, pts: &[usize]) -> Vec<Permutation> {
    match pts.len() {
        0 | 1 => Vec::new(),
        2 => vec![Permutation::from_cycles(n, &[pts]).expect("valid")],
        _ => vec![
            Permutation::from_cycles(n, &[&pts[..2]]).expect("valid"),
            Permutation::from_cycles(n, &[pts]).expect("valid"),
        ],
    }
}

/// Generators of `GL_d(2)` as maps on `d`-bit vectors: a coordinate swap, a
/// coordinate cycle and the transvection adding coordinate 1 to coordinate 0.
fn gl2_maps(d: usize) -> Vec<Box<dyn Fn(u32) -> u32>> {
    let swap = move |v: u32| {
        let (b0, b1) = (v & 1, v >> 1 & 1);
        v & !3 | b0 << 1 | b1
    };
    let cycle = move |v: u32| ((v << 1) | (v >> (d - 1))) & ((1 << d) - 1);
    let transvection = |v: u32| v ^ (v >> 1 & 1);
    vec![Box::new(swap), Box::new(cycle), Box::new(transvection)]
}

fn pgl2(d: usize) -> Result<PermGroup> {
    if !(2..=6).contains(&d) {
        return Err(Error::usage(format!("pgl2:D needs 2 <= D <= 6, got {d}")));
    }
    let n = (1usize << d) - 1;
    let gens = gl2_maps(d)
        .iter()
        .map(|f| Permutation::from_fn(n, |i| f(i as u32 + 1) as usize - 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(PermGroup::new(n, gens)?.with_name(format!("PGL_{d}(2)")))
}

fn s5_x_agl3_2() -> Result<PermGroup> {
    let n = TETRAHEDRON_U + 8;
    let u: Vec<usize> = (0..TETRAHEDRON_U).collect();
    let mut gens = sym_gens(n, &u);
    let on_v = |f: &dyn Fn(u32) -> u32| {
        Permutation::from_fn(n, |i| {
            if i < TETRAHEDRON_U {
                i
            } else {
                f((i - TETRAHEDRON_U) as u32) as usize + TETRAHEDRON_U
            }
        })
    };
    gens.push(on_v(&|v| v ^ 1)?);
    for f in gl2_maps(3) {
        gens.push(on_v(&*f)?);
    }
    Ok(PermGroup::new(n, gens)?.with_name("S5 x AGL_3(2)"))
}

fn pgl3_3() -> Result<PermGroup> {
    let pts = pg23_points();
    let index = |mut v: [u8; 3]| {
        let lead = *v.iter().find(|&&c| c != 0).expect("nonzero");
        if lead == 2 {
            for c in &mut v {
                *c = (*c * 2) % 3;
            }
        }
        pts.iter().position(|p| *p == v).expect("normalised point")
    };
    let maps: [fn([u8; 3]) -> [u8; 3]; 4] = [
        |[x, y, z]| [y, x, z],
        |[x, y, z]| [z, x, y],
        |[x, y, z]| [(x + y) % 3, y, z],
        |[x, y, z]| [(2 * x) % 3, y, z],
    ];
    let gens = maps
        .iter()
        .map(|f| Permutation::from_fn(13, |i| index(f(pts[i]))))
        .collect::<Result<Vec<_>>>()?;
    Ok(PermGroup::new(13, gens)?.with_name("PGL_3(3)"))
}

fn wreath(a: usize, b: usize) -> Result<PermGroup> {
    if a < 2 || b < 2 || a * b > crate::subset::MAX_N {
        return Err(Error::usage(format!("wreath:A,B needs A, B >= 2 and AB <= 64, got {a},{b}")));
    }
    let n = a * b;
    let first: Vec<usize> = (0..b).collect();
    let mut gens = sym_gens(n, &first);
    let swap = Permutation::from_fn(n, |i| match i / b {
        0 => i + b,
        1 => i - b,
        _ => i,
    })?;
    gens.push(swap);
    if a > 2 {
        gens.push(Permutation::from_fn(n, |i| (i + b) % n)?);
    }
    Ok(PermGroup::new(n, gens)?.with_name(format!("S{b} wr S{a}")))
}

/// Builds a catalog group and checks its order.
pub fn fixture_group(name: &str) -> Result<PermGroup> {
    let (base, args) = name.split_once(':').unwrap_or((name, ""));
    let (group, expected) = match base {
        "sym" | "cyclic" => {
            let n = parse_params(name, args, 1)?[0];
            if !(1..=crate::subset::MAX_N).contains(&n) {
                return Err(Error::usage(format!("degree must be in 1..=64, got {n}")));
            }
            let pts: Vec<usize> = (0..n).collect();
            if base == "sym" {
                let gens = sym_gens(n, &pts);
                let g = if gens.is_empty() { PermGroup::trivial(n)? } else { PermGroup::new(n, gens)? };
                (g.with_name(format!("S{n}")), factorial(n))
            } else {
                let c = Permutation::from_fn(n, |i| (i + 1) % n)?;
                (PermGroup::new(n, vec![c])?.with_name(format!("C{n}")), BigUint::from(n))
            }
        }
        "sym-product" => {
            let p = parse_params(name, args, 2)?;
            let (u, v) = (p[0], p[1]);
            let n = u + v;
            if u == 0 || v == 0 || n > crate::subset::MAX_N {
                return Err(Error::usage(format!("sym-product:U,V needs U, V >= 1 and U+V <= 64, got {u},{v}")));
            }
            let us: Vec<usize> = (0..u).collect();
            let vs: Vec<usize> = (u..n).collect();
            let mut gens = sym_gens(n, &us);
            gens.extend(sym_gens(n, &vs));
            let g = if gens.is_empty() { PermGroup::trivial(n)? } else { PermGroup::new(n, gens)? };
            (g.with_name(format!("S{u} x S{v}")), factorial(u) * factorial(v))
        }
        "wreath" => {
            let p = parse_params(name, args, 2)?;
            let (a, b) = (p[0], p[1]);
            let g = wreath(a, b)?;
            (g, factorial(b).pow(a as u32) * factorial(a))
        }
        "s5xagl3-2" if args.is_empty() => (s5_x_agl3_2()?, BigUint::from(161_280u32)),
        "pgl3-3" if args.is_empty() => (pgl3_3()?, BigUint::from(5616u32)),
        "pgl2" => {
            let d = parse_params(name, args, 1)?[0];
            (pgl2(d)?, gl2_order(d))
        }
        "m23" if args.is_empty() => {
            let path = data_dir().join("m23.json");
            let g = load_group_file(&path)?;
            if g.degree() != 23 {
                return Err(Error::Construction(format!("{} is not of degree 23", path.display())));
            }
            (g, BigUint::from(10_200_960u32))
        }
        _ => {
            return Err(Error::usage(format!(
                "unknown fixture {name:?}; known: {}",
                fixture_names().join(", ")
            )))
        }
    };
    check_order(&group, &expected)?;
    Ok(group)
}
