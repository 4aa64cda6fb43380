//! Deterministic Schreier–Sims in Knuth's formulation, with base
//! `0, 1, .., n-1`.
//!
//! Level `i` holds the group `G_i` fixing `0..i` pointwise. `reps[i][j]` is
//! an element of `G_i` sending `i` to `j` (when `j` lies in the `G_i`-orbit
//! of `i`), and `gens[i]` are the generators added at that level. After every
//! top-level [`StabChain::add`] the structure satisfies
//! `G_i = <gens[i] ∪ gens[i+1] ∪ ..>` and the reps are full transversals.

use num_bigint::BigUint;

use super::Permutation;

#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    n: usize,
    reps: Vec<Vec<Option<Permutation>>>,
    reps_inv: Vec<Vec<Option<Permutation>>>,
    gens: Vec<Vec<Permutation>>,
}

impl StabChain {
    pub fn new(n: usize) -> Self {
        let id = Permutation::identity(n);
        let reps: Vec<Vec<Option<Permutation>>> = (0..n)
            .map(|i| {
                let mut row = vec![None; n];
                row[i] = Some(id.clone());
                row
            })
            .collect();
        StabChain {
            n,
            reps_inv: reps.clone(),
            reps,
            gens: vec![Vec::new(); n],
        }
    }

    /// Adds `g` to the group; returns false if it was already a member.
    pub fn add(&mut self, g: &Permutation) -> bool {
        debug_assert_eq!(g.degree(), self.n);
        if self.contains_from(0, g) {
            return false;
        }
        self.extend(0, g.clone());
        true
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.n && self.contains_from(0, g)
    }

    fn contains_from(&self, level: usize, g: &Permutation) -> bool {
        let mut g = g.clone();
        for i in level..self.n {
            let j = g.apply(i);
            match &self.reps_inv[i][j] {
                None => return false,
                Some(r) => g = g.then(r),
            }
        }
        true
    }

    // Knuth's procedure A: `g` fixes 0..level and is not yet in G_level.
    fn extend(&mut self, level: usize, g: Permutation) {
        if self.contains_from(level, &g) {
            return;
        }
        self.gens[level].push(g.clone());
        let existing: Vec<Permutation> = self.reps[level].iter().flatten().cloned().collect();
        for r in existing {
            self.close(level, r.then(&g));
        }
    }

    // Knuth's procedure B: record `g` as a coset rep or push the Schreier
    // generator down a level.
    fn close(&mut self, level: usize, g: Permutation) {
        let j = g.apply(level);
        match &self.reps_inv[level][j] {
            None => {
                self.reps_inv[level][j] = Some(g.inverse());
                self.reps[level][j] = Some(g.clone());
                let gens = self.gens[level].clone();
                for t in gens {
                    self.close(level, g.then(&t));
                }
            }
            Some(r_inv) => {
                let h = g.then(r_inv);
                if level + 1 < self.n {
                    self.extend(level + 1, h);
                } else {
                    debug_assert!(h.is_identity());
                }
            }
        }
    }

    pub fn order(&self) -> BigUint {
        self.reps
            .iter()
            .map(|row| row.iter().filter(|r| r.is_some()).count())
            .fold(BigUint::from(1u32), |acc, c| acc * BigUint::from(c))
    }

    /// Points in the `G_level`-orbit of `level`.
    pub fn basic_orbit(&self, level: usize) -> Vec<usize> {
        self.reps[level]
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.as_ref().map(|_| j))
            .collect()
    }

    /// A generating set for `G_level`.
    pub fn strong_generators(&self, level: usize) -> Vec<Permutation> {
        self.gens[level..].iter().flatten().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=9usize {
            let mut c = StabChain::new(n);
            c.add(&Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
            let cycle: Vec<usize> = (0..n).collect();
            c.add(&Permutation::from_cycles(n, &[&cycle]).unwrap());
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(c.order(), BigUint::from(fact));
        }
    }

    #[test]
    fn redundant_generators_are_rejected() {
        let mut c = StabChain::new(4);
        let g = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert!(c.add(&g));
        assert!(!c.add(&g.then(&g)));
        assert_eq!(c.order(), BigUint::from(4u32));
        assert!(!c.contains(&Permutation::from_cycles(4, &[&[0, 1]]).unwrap()));
    }
}
