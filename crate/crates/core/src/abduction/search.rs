//! Exhaustive searches over subsets of a candidate list.

use crate::bits::{Bits, Combinations};
use crate::duality::Limits;
use crate::error::{Error, Result};

/// Looks for `F ⊆ w` with `feasible(F)` and `goal(F)`, where `feasible` is closed
/// under subsets and `goal` under supersets. Include-first depth-first search that
/// keeps only the undecided candidates still compatible with the current choice and
/// prunes a branch once `goal` fails even with all of those added.
/// The result is shrunk to a subset-minimal one.
pub(crate) fn feasible_goal<F, G>(width: usize, w: &[usize], limits: &Limits, feasible: F, goal: G) -> Result<Option<Bits>>
where
    F: Fn(&Bits) -> Result<bool>,
    G: Fn(&Bits) -> Result<bool>,
{
    let mut visits: u64 = 0;
    let cur = Bits::empty(width);
    let mut rest = Vec::with_capacity(w.len());
    for &e in w {
        if feasible(&cur.with(e))? {
            rest.push(e);
        }
    }
    let found = dfs(&cur, &rest, &feasible, &goal, &mut visits, limits)?;
    let Some(found) = found else { return Ok(None) };
    let mut out = found.clone();
    for e in found.iter() {
        let smaller = out.without(e);
        if goal(&smaller)? {
            out = smaller;
        }
    }
    Ok(Some(out))
}

/// `rest`: undecided candidates `e` with `feasible(cur ∪ {e})`.
fn dfs<F, G>(cur: &Bits, rest: &[usize], feasible: &F, goal: &G, visits: &mut u64, limits: &Limits) -> Result<Option<Bits>>
where
    F: Fn(&Bits) -> Result<bool>,
    G: Fn(&Bits) -> Result<bool>,
{
    *visits += 1;
    if *visits > limits.lattice_candidates {
        return Err(Error::budget("search nodes", limits.lattice_candidates));
    }
    if goal(cur)? {
        return Ok(Some(cur.clone()));
    }
    let Some((&e, tail)) = rest.split_first() else { return Ok(None) };
    let mut bound = cur.clone();
    for &i in rest {
        bound.insert(i);
    }
    if !goal(&bound)? {
        return Ok(None);
    }
    let with = cur.with(e);
    let mut kept = Vec::with_capacity(tail.len());
    for &i in tail {
        if feasible(&with.with(i))? {
            kept.push(i);
        }
    }
    if let Some(f) = dfs(&with, &kept, feasible, goal, visits, limits)? {
        return Ok(Some(f));
    }
    dfs(cur, tail, feasible, goal, visits, limits)
}

/// Visits subsets of `w` by increasing size (canonical order within a size) up to
/// `max_size`, returning the first accepted one. Universes above the lattice cap are
/// searched only up to the deepening bound; exhausting that bound without an answer
/// is a budget error because larger subsets were never looked at.
pub(crate) fn by_cardinality<V>(width: usize, w: &[usize], max_size: usize, limits: &Limits, mut accept: V) -> Result<Option<Bits>>
where
    V: FnMut(&Bits) -> Result<bool>,
{
    let capped = w.len() > limits.lattice_universe;
    let top = if capped { max_size.min(limits.deepening) } else { max_size.min(w.len()) };
    let mut visits: u64 = 0;
    for k in 0..=top {
        for combo in Combinations::new(w.len(), k) {
            visits += 1;
            if visits > limits.lattice_candidates {
                return Err(Error::budget("candidate subsets", limits.lattice_candidates));
            }
            let b = Bits::from_indices(width, combo.into_iter().map(|i| w[i]));
            if accept(&b)? {
                return Ok(Some(b));
            }
        }
    }
    if capped && top < max_size.min(w.len()) {
        return Err(Error::budget("lattice universe", limits.lattice_universe as u64));
    }
    Ok(None)
}
