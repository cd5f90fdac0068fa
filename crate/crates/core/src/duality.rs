//! Minimal true sets and maximal false sets of a monotone predicate, found together
//! through minimal hitting sets. Used for conflicts/repairs, supports, and hypothesis
//! families that are closed upward or downward.

use std::collections::HashSet;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Search budgets.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Predicate evaluations in one duality run.
    pub candidates: u64,
    /// Minimal hitting sets (repairs) kept at once.
    pub repairs: usize,
    /// Largest hypothesis whose proper subsets are scanned exhaustively.
    pub subset_scan: usize,
    /// Largest universe searched as a full lattice.
    pub lattice_universe: usize,
    /// Cardinality bound for searches over larger universes.
    pub deepening: usize,
    /// Subsets visited by one lattice search.
    pub lattice_candidates: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            candidates: 1_000_000,
            repairs: 100_000,
            subset_scan: 20,
            lattice_universe: 64,
            deepening: 6,
            lattice_candidates: 1 << 22,
        }
    }
}

/// Adds `set` to a family whose minimal hitting sets are `mhs`.
pub fn berge_step(mhs: Vec<Bits>, set: &Bits, cap: usize) -> Result<Vec<Bits>> {
    let (mut hit, miss): (Vec<Bits>, Vec<Bits>) = mhs.into_iter().partition(|h| h.intersects(set));
    let mut cands: Vec<Bits> = Vec::new();
    for h in &miss {
        for e in set.iter() {
            let c = h.with(e);
            if !hit.iter().any(|g| g.is_subset(&c)) {
                cands.push(c);
            }
        }
    }
    cands.sort_by_key(|c| c.len());
    cands.dedup();
    let mut kept: Vec<Bits> = Vec::new();
    for c in cands {
        if !kept.iter().any(|k| k.is_subset(&c)) {
            kept.push(c);
            if hit.len() + kept.len() > cap {
                return Err(Error::budget("repairs", cap as u64));
            }
        }
    }
    hit.extend(kept);
    Ok(hit)
}

/// Minimal hitting sets of `sets` over `0..width`, sorted canonically.
pub fn minimal_hitting_sets(width: usize, sets: &[Bits], cap: usize) -> Result<Vec<Bits>> {
    let mut mhs = vec![Bits::empty(width)];
    for s in sets {
        mhs = berge_step(mhs, s, cap)?;
    }
    mhs.sort();
    Ok(mhs)
}

#[derive(Clone, Debug, Default)]
pub struct Duality {
    /// Inclusion-minimal sets on which the predicate holds.
    pub minimal: Vec<Bits>,
    /// Inclusion-maximal sets on which it fails.
    pub maximal_false: Vec<Bits>,
}

/// Enumerates both families for a monotone predicate over `0..width`.
///
/// Each minimal hitting set of the minimal sets found so far is tested: a false
/// complement is a maximal false set; a true one is shrunk to a new minimal set.
pub fn enumerate<P>(width: usize, mut pred: P, limits: &Limits) -> Result<Duality>
where
    P: FnMut(&Bits) -> bool,
{
    let mut evals: u64 = 0;
    let mut eval = |b: &Bits, pred: &mut P| -> Result<bool> {
        evals += 1;
        if evals > limits.candidates {
            return Err(Error::budget("candidate subsets", limits.candidates));
        }
        Ok(pred(b))
    };
    let mut minimal: Vec<Bits> = Vec::new();
    let mut mhs = vec![Bits::empty(width)];
    let mut confirmed: HashSet<Bits> = HashSet::new();
    loop {
        let next = mhs.iter().filter(|h| !confirmed.contains(*h)).min().cloned();
        let Some(h) = next else { break };
        let seed = h.complement();
        if !eval(&seed, &mut pred)? {
            confirmed.insert(h);
            continue;
        }
        let mut cur = seed.clone();
        for e in seed.iter() {
            cur.remove(e);
            if !eval(&cur, &mut pred)? {
                cur.insert(e);
            }
        }
        mhs = berge_step(mhs, &cur, limits.repairs)?;
        minimal.push(cur);
    }
    minimal.sort();
    let mut maximal_false: Vec<Bits> = mhs.iter().map(|h| h.complement()).collect();
    maximal_false.sort();
    Ok(Duality { minimal, maximal_false })
}

/// Shrinks a set on which a monotone predicate holds to a minimal one.
pub fn shrink<P: FnMut(&Bits) -> bool>(set: &Bits, mut pred: P) -> Bits {
    let mut cur = set.clone();
    for e in set.iter() {
        cur.remove(e);
        if !pred(&cur) {
            cur.insert(e);
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Combinations;
    use proptest::prelude::*;

    fn brute(width: usize, pred: &dyn Fn(&Bits) -> bool) -> (Vec<Bits>, Vec<Bits>) {
        let all: Vec<Bits> = (0..=width)
            .flat_map(|k| Combinations::new(width, k).map(move |c| Bits::from_indices(width, c)))
            .collect();
        let trues: Vec<&Bits> = all.iter().filter(|b| pred(b)).collect();
        let falses: Vec<&Bits> = all.iter().filter(|b| !pred(b)).collect();
        let mut min: Vec<Bits> = trues
            .iter()
            .filter(|b| !trues.iter().any(|o| o != *b && o.is_subset(b)))
            .map(|b| (*b).clone())
            .collect();
        let mut max: Vec<Bits> = falses
            .iter()
            .filter(|b| !falses.iter().any(|o| o != *b && b.is_subset(o)))
            .map(|b| (*b).clone())
            .collect();
        min.sort();
        max.sort();
        (min, max)
    }

    proptest! {
        #[test]
        fn matches_brute_force(width in 1usize..7, gens in prop::collection::vec(prop::collection::vec(0usize..7, 1..4), 0..5)) {
            let gens: Vec<Bits> = gens
                .into_iter()
                .map(|g| Bits::from_indices(width, g.into_iter().filter(|&i| i < width)))
                .filter(|g| !g.is_empty())
                .collect();
            let pred = |b: &Bits| gens.iter().any(|g| g.is_subset(b));
            let d = enumerate(width, pred, &Limits::default()).unwrap();
            let (min, max) = brute(width, &pred);
            prop_assert_eq!(d.minimal, min);
            prop_assert_eq!(d.maximal_false, max);
        }
    }

    #[test]
    fn always_true_predicate() {
        let d = enumerate(3, |_| true, &Limits::default()).unwrap();
        assert_eq!(d.minimal, vec![Bits::empty(3)]);
        assert!(d.maximal_false.is_empty());
    }

    #[test]
    fn hitting_sets_of_pairs() {
        let sets = vec![Bits::from_indices(4, [0, 1]), Bits::from_indices(4, [2, 3])];
        let mhs = minimal_hitting_sets(4, &sets, 100).unwrap();
        assert_eq!(mhs.len(), 4);
    }
}
