mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use kneser_codes::code::{type_multiset, type_pair};
use kneser_codes::subset::{choose, Ranker};
use kneser_codes::{BlockSystem, Code, GroundSet, KSubset, KneserSpace, PermGroup, Permutation};

#[test]
fn orbit_stabilizer_on_fixtures() {
    common::orbit_stabilizer_on_fixtures().unwrap();
}

#[test]
fn type_identities_k94() {
    common::type_identities_k94().unwrap();
}

#[test]
fn ball_vs_global_all_spaces() {
    common::ball_vs_global_all_spaces(100_000).unwrap();
}

#[test]
fn u0_u1_on_intransitive_codes() {
    common::u0_u1_on_intransitive_codes().unwrap();
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Degree and one to three generators.
fn small_group() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (2usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=3)))
}

fn space() -> impl Strategy<Value = (usize, usize)> {
    (5usize..=24).prop_flat_map(|n| (Just(n), 2..=(n - 1) / 2))
}

/// A space with at most `limit` vertices.
fn small_space(limit: u128) -> impl Strategy<Value = (usize, usize)> {
    space().prop_filter("too many vertices", move |&(n, k)| choose(n, k) <= limit)
}

fn subset_of(n: usize, k: usize) -> impl Strategy<Value = KSubset> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |v| GroundSet::new(n).unwrap().subset(&v[..k]).unwrap())
}

fn closure(n: usize, gens: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schreier_sims_matches_closure((n, gens) in small_group()) {
        let perms: Vec<Permutation> = gens.iter().map(|g| Permutation::from_images(g).unwrap()).collect();
        let group = PermGroup::new(n, perms.clone()).unwrap();
        prop_assert_eq!(group.order(), closure(n, &gens).len().into());
        for a in &perms {
            for b in &perms {
                prop_assert!(group.contains(&a.then(b)));
                prop_assert!(group.contains(&a.inverse()));
            }
        }
    }

    #[test]
    fn membership_matches_closure((n, gens) in small_group(), x in perm(7)) {
        let group = PermGroup::new(n, gens.iter().map(|g| Permutation::from_images(g).unwrap()).collect()).unwrap();
        // restrict x to a permutation of 0..n by keeping its order on 0..n
        let imgs: Vec<usize> = x.into_iter().filter(|&i| i < n).collect();
        let p = Permutation::from_images(&imgs).unwrap();
        prop_assert_eq!(group.contains(&p), closure(n, &gens).contains(&imgs));
    }

    #[test]
    fn permutation_laws(a in perm(12), b in perm(12), (alpha, beta) in (subset_of(12, 5), subset_of(12, 5))) {
        let p = Permutation::from_images(&a).unwrap();
        let q = Permutation::from_images(&b).unwrap();
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert!(p.inverse().then(&p).is_identity());
        let pa = p.apply_to_subset(alpha).unwrap();
        prop_assert_eq!(p.inverse().apply_to_subset(pa).unwrap(), alpha);
        prop_assert_eq!(p.then(&q).apply_to_subset(alpha).unwrap(), q.apply_to_subset(pa).unwrap());
        prop_assert_eq!(pa.len(), alpha.len());
        prop_assert_eq!(
            pa.intersect_size(p.apply_to_subset(beta).unwrap()).unwrap(),
            alpha.intersect_size(beta).unwrap()
        );
    }

    #[test]
    fn rank_round_trip((n, k) in space(), r in any::<u64>()) {
        let ranker = Ranker::new(n, k);
        let r = r % ranker.total();
        let mask = ranker.unrank(r);
        prop_assert_eq!(mask.count_ones() as usize, k);
        prop_assert_eq!(ranker.rank(mask), r);
    }

    #[test]
    fn subset_invariants((n, k) in space(), seed in any::<u64>()) {
        let ranker = Ranker::new(n, k);
        let ground = GroundSet::new(n).unwrap();
        let a = ground.subset_from_mask(ranker.unrank(seed % ranker.total())).unwrap();
        let b = ground.subset_from_mask(ranker.unrank(seed.rotate_left(17) % ranker.total())).unwrap();
        prop_assert_eq!(a.complement().complement(), a);
        prop_assert_eq!(a.complement().len(), n - k);
        prop_assert_eq!(a.intersect_size(a.complement()).unwrap(), 0);
        prop_assert_eq!(a.intersect_size(b).unwrap(), b.intersect_size(a).unwrap());
        prop_assert_eq!(a.elements().len(), k);
        prop_assert!(a.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn distance_axioms((n, k) in space(), seeds in prop::array::uniform3(any::<u64>())) {
        let sp = KneserSpace::new(n, k).unwrap();
        let ranker = Ranker::new(n, k);
        let v: Vec<KSubset> = seeds
            .iter()
            .map(|s| sp.vertex_from_mask(ranker.unrank(s % ranker.total())).unwrap())
            .collect();
        let d = |x: KSubset, y: KSubset| sp.distance(x, y).unwrap();
        prop_assert_eq!(d(v[0], v[1]), d(v[1], v[0]));
        prop_assert_eq!(d(v[0], v[1]) == 0, v[0] == v[1]);
        prop_assert_eq!(d(v[0], v[1]) == 1, v[0].intersect_size(v[1]).unwrap() == 0);
        prop_assert!(d(v[0], v[2]) <= d(v[0], v[1]) + d(v[1], v[2]));
        prop_assert!(d(v[0], v[1]) <= sp.diameter());
    }

    #[test]
    fn distance_matches_bfs((n, k) in small_space(5_000), seeds in prop::array::uniform2(any::<u64>())) {
        let sp = KneserSpace::new(n, k).unwrap();
        let ranker = Ranker::new(n, k);
        let a = sp.vertex_from_mask(ranker.unrank(seeds[0] % ranker.total())).unwrap();
        let b = sp.vertex_from_mask(ranker.unrank(seeds[1] % ranker.total())).unwrap();
        prop_assert_eq!(sp.distance(a, b).unwrap(), sp.bfs_distance(a, b).unwrap());
    }

    #[test]
    fn type_conservation(a in 2usize..=6, b in 2usize..=6, seed in any::<u64>(), split in any::<u64>()) {
        let n = a * b;
        let k = (n - 1) / 2;
        let ranker = Ranker::new(n, k);
        let ground = GroundSet::new(n).unwrap();
        let alpha = ground.subset_from_mask(ranker.unrank(seed % ranker.total())).unwrap();
        let blocks = BlockSystem::consecutive(a, b).unwrap();
        let m = type_multiset(alpha, &blocks).unwrap();
        prop_assert_eq!(m.weight(), k);
        prop_assert_eq!(m.block_count(), a);
        prop_assert_eq!(type_multiset(alpha.complement(), &blocks).unwrap(), m.complement(b));
        let u = ground.subset_from_mask(split & ground.mask()).unwrap();
        let t = type_pair(alpha, u).unwrap();
        prop_assert_eq!(t.a + t.b, k);
        let tc = type_pair(alpha.complement(), u).unwrap();
        prop_assert_eq!((tc.a, tc.b), (u.len() - t.a, n - u.len() - t.b));
    }

    #[test]
    fn ball_vs_global_random((n, k) in small_space(20_000), seeds in prop::collection::vec(any::<u64>(), 1..6)) {
        let sp = KneserSpace::new(n, k).unwrap();
        let ranker = Ranker::new(n, k);
        let words: HashSet<u64> = seeds.iter().map(|s| ranker.unrank(s % ranker.total())).collect();
        let code = Code::new(sp, words.into_iter().map(|m| sp.vertex_from_mask(m).unwrap())).unwrap();
        prop_assert!(common::ball_matches_global(&code).is_ok());
    }

    #[test]
    fn min_distance_brute_force((n, k) in small_space(20_000), seeds in prop::collection::vec(any::<u64>(), 2..8)) {
        let sp = KneserSpace::new(n, k).unwrap();
        let ranker = Ranker::new(n, k);
        let words: Vec<KSubset> = seeds
            .iter()
            .map(|s| ranker.unrank(s % ranker.total()))
            .collect::<HashSet<_>>()
            .into_iter()
            .map(|m| sp.vertex_from_mask(m).unwrap())
            .collect();
        prop_assume!(words.len() >= 2);
        let code = Code::new(sp, words.clone()).unwrap();
        let mut best = usize::MAX;
        for (i, &x) in words.iter().enumerate() {
            for &y in &words[i + 1..] {
                best = best.min(sp.bfs_distance(x, y).unwrap());
            }
        }
        prop_assert_eq!(code.min_distance().unwrap(), best);
    }

    #[test]
    fn orbits_partition_subsets((n, gens) in small_group(), k in 1usize..=3) {
        prop_assume!(k <= n);
        let group = PermGroup::new(n, gens.iter().map(|g| Permutation::from_images(g).unwrap()).collect()).unwrap();
        let orbits = group.orbits_on_ksubsets(k).unwrap();
        let total: usize = orbits.iter().map(Vec::len).sum();
        prop_assert_eq!(total as u128, choose(n, k));
        let mut seen = HashSet::new();
        for o in &orbits {
            for s in o {
                prop_assert!(seen.insert(s.mask()));
            }
        }
    }
}
