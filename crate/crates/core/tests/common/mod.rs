//! Property checks shared by the `acceptance` and `properties` targets.
//! Each returns a one-line summary on success and a counterexample on
//! failure.

#![allow(dead_code)]

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kneser_codes::code::{type_multiset, type_pair, verify_u0_u1_orbits, TypeMultiset};
use kneser_codes::families::{
    c_imp, c_int, fixture_group, golay_endecads, hyperplane_code, pg23_code, tetrahedron_code,
};
use kneser_codes::metric::spaces_up_to;
use kneser_codes::{BlockSystem, Code, GroundSet, KSubset, KneserSpace, PermGroup};

pub type Check = std::result::Result<String, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Every catalog fixture, with a code it preserves where one is at hand.
pub fn fixture_cases() -> Vec<(&'static str, Option<Code>)> {
    let m = |v: Vec<usize>| TypeMultiset::new(v);
    vec![
        ("sym:7", None),
        ("cyclic:9", None),
        ("sym-product:1,12", c_int(1, 12, 0, 6).ok()),
        ("sym-product:4,9", c_int(4, 9, 2, 4).ok()),
        ("sym-product:2,9", c_int(2, 9, 2, 3).ok()),
        ("sym-product:5,8", c_int(5, 8, 3, 3).ok()),
        ("wreath:3,3", c_imp(3, 3, &m(vec![1, 1, 2])).ok()),
        ("wreath:5,3", c_imp(5, 3, &m(vec![3, 1, 1, 1, 1])).ok()),
        ("wreath:3,5", c_imp(3, 5, &m(vec![5, 1, 1])).ok()),
        ("s5xagl3-2", Some(tetrahedron_code())),
        ("pgl3-3", Some(pg23_code())),
        ("pgl2:2", None),
        ("pgl2:3", hyperplane_code(3).ok()),
        ("pgl2:4", hyperplane_code(4).ok()),
        ("pgl2:5", hyperplane_code(5).ok()),
        ("pgl2:6", hyperplane_code(6).ok()),
        ("m23", golay_endecads().ok().map(|g| g.endecads)),
    ]
}

fn stabilizer_identity(group: &PermGroup, alpha: KSubset) -> std::result::Result<(), String> {
    let orbit = group.subset_orbit(alpha).map_err(err)?;
    let stab = group.setwise_stabilizer(alpha).map_err(err)?;
    for g in stab.generators() {
        if g.apply_mask(alpha.mask()) != alpha.mask() {
            return Err(format!("stabilizer generator {g:?} moves {alpha}"));
        }
        if !group.contains(g) {
            return Err(format!("stabilizer generator {g:?} is not in the group"));
        }
    }
    if stab.order() * BigUint::from(orbit.len()) != group.order() {
        return Err(format!(
            "|orbit({alpha})| * |stab| = {} * {} != {}",
            orbit.len(),
            stab.order(),
            group.order()
        ));
    }
    Ok(())
}

/// `|x^G| * |G_x| = |G|` for a point, a pair and a codeword, on every fixture.
pub fn orbit_stabilizer_on_fixtures() -> Check {
    let mut checked = 0;
    for (name, code) in fixture_cases() {
        let group = fixture_group(name).map_err(|e| format!("{name}: {e}"))?;
        let n = group.degree();
        let point_stab = group.stabilizer_of_first_point().map_err(err)?;
        if point_stab.order() * BigUint::from(group.point_orbit(0).len()) != group.order() {
            return Err(format!("{name}: point orbit-stabilizer identity fails"));
        }
        let ground = GroundSet::new(n).map_err(err)?;
        let mut seeds = vec![ground.subset(&[0]).map_err(err)?, ground.subset(&[0, 1]).map_err(err)?];
        match code {
            Some(c) => seeds.push(c.first()),
            None if ["sym:7", "cyclic:9"].contains(&name) => seeds.push(ground.subset(&[0, 1, 2]).map_err(err)?),
            None => {}
        }
        for alpha in seeds {
            stabilizer_identity(&group, alpha).map_err(|e| format!("{name}: {e}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subsets over {} fixtures", fixture_cases().len()))
}

/// All partitions of `0..9` into three blocks of size 3.
fn triple_partitions() -> Vec<BlockSystem> {
    fn rec(rest: Vec<usize>, acc: &mut Vec<Vec<usize>>, out: &mut Vec<BlockSystem>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(BlockSystem::new(acc.clone()).expect("valid partition"));
            return;
        };
        for i in 0..tail.len() {
            for j in i + 1..tail.len() {
                acc.push(vec![first, tail[i], tail[j]]);
                let left: Vec<usize> = tail
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != i && t != j)
                    .map(|(_, &x)| x)
                    .collect();
                rec(left, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec((0..9).collect(), &mut Vec::new(), &mut out);
    out
}

/// Type labels on K(9,4): every vertex against every split `U ⊔ V` and
/// every system of three blocks of size 3.
pub fn type_identities_k94() -> Check {
    let space = KneserSpace::new(9, 4).map_err(err)?;
    let ground = space.ground();
    let splits: Vec<KSubset> = (0..=9)
        .flat_map(|u| ground.ksubsets(u).expect("u <= 9"))
        .collect();
    let systems = triple_partitions();
    if systems.len() != 280 {
        return Err(format!("expected 280 block systems, found {}", systems.len()));
    }
    let mut pairs = 0u64;
    let mut multisets = 0u64;
    for alpha in space.vertices() {
        let comp = alpha.complement();
        for &u in &splits {
            let t = type_pair(alpha, u).map_err(err)?;
            let tv = type_pair(alpha, u.complement()).map_err(err)?;
            let tc = type_pair(comp, u).map_err(err)?;
            let ok = t.a + t.b == 4
                && t.a == alpha.intersect_size(u).map_err(err)?
                && (tv.a, tv.b) == (t.b, t.a)
                && (tc.a, tc.b) == (u.len() - t.a, 9 - u.len() - t.b);
            if !ok {
                return Err(format!("type pair identities fail for {alpha} and U = {u}"));
            }
            pairs += 1;
        }
        for sys in &systems {
            let m = type_multiset(alpha, sys).map_err(err)?;
            let mc = type_multiset(comp, sys).map_err(err)?;
            if m.weight() != 4 || m.block_count() != 3 || mc != m.complement(3) {
                return Err(format!("type multiset identities fail for {alpha} and {:?}", sys.blocks()));
            }
            multisets += 1;
        }
    }
    Ok(format!("{pairs} type pairs, {multisets} type multisets"))
}

/// A single vertex and a seeded random three-word code in each space.
fn sample_codes(space: KneserSpace, rng: &mut ChaCha8Rng) -> Vec<Code> {
    let all: Vec<KSubset> = space.vertices().collect();
    let mut codes = vec![Code::new(space, [all[0]]).expect("one codeword")];
    if all.len() >= 3 {
        let words: Vec<KSubset> = all.choose_multiple(rng, 3).copied().collect();
        codes.push(Code::new(space, words).expect("distinct codewords"));
    }
    codes
}

/// Ball expansion out to the diameter reproduces the global sweep.
pub fn ball_matches_global(code: &Code) -> std::result::Result<(), String> {
    let diam = code.space().diameter();
    let ball = code.neighbour_sets(diam).map_err(err)?;
    let global = code.distance_partition().map_err(err)?;
    for i in 0..=diam {
        if ball.cell(i) != global.cell(i) {
            return Err(format!(
                "K({},{}) code of size {}: C_{i} differs ({} by ball, {} globally)",
                code.space().n(),
                code.space().k(),
                code.len(),
                ball.cell(i).len(),
                global.cell(i).len()
            ));
        }
    }
    Ok(())
}

pub fn ball_vs_global_all_spaces(max_vertices: u128) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6261_6c6c);
    let spaces = spaces_up_to(max_vertices);
    let mut codes = 0;
    for space in &spaces {
        for code in sample_codes(*space, &mut rng) {
            ball_matches_global(&code)?;
            codes += 1;
        }
    }
    Ok(format!("{codes} codes over {} spaces", spaces.len()))
}

/// Parameters `(u, v, a, b)` of the constructed intransitive codes.
pub const C_INT_CASES: &[(usize, usize, usize, usize)] =
    &[(1, 4, 0, 2), (2, 3, 1, 1), (1, 4, 1, 1), (1, 12, 0, 6), (4, 9, 2, 4), (2, 9, 2, 3), (5, 8, 3, 3)];

pub fn u0_u1_on_intransitive_codes() -> Check {
    for &(u, v, a, b) in C_INT_CASES {
        let code = c_int(u, v, a, b).map_err(err)?;
        let group = fixture_group(&format!("sym-product:{u},{v}")).map_err(err)?;
        let report = verify_u0_u1_orbits(&code, &group).map_err(err)?;
        if !report.pass {
            return Err(format!("c_int({u},{v},{a},{b}): {report:?}"));
        }
    }
    Ok(format!("{} codes", C_INT_CASES.len()))
}
