//! Hypothesis existence and enumeration.

use super::search;
use super::space::Space;
use super::verify::minimality;
use super::{AbductionProblem, Constraints, Minimality, Semantics};
use crate::bits::{Bits, Combinations};
use crate::error::{Error, Result};
use crate::kb::ABox;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Existence {
    pub exists: bool,
    pub witness: Option<ABox>,
    /// Which decision procedure answered.
    pub strategy: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArWithin {
    pub exists: bool,
    pub witness: Option<ABox>,
    /// A repair of the KB that no candidate support is consistent with.
    pub blocking_repair: Option<ABox>,
}

fn answer(s: &Space, found: Option<Bits>, strategy: &'static str) -> Existence {
    Existence { exists: found.is_some(), witness: found.map(|b| s.abox(&b)), strategy }
}

pub fn exists_hypothesis(p: &AbductionProblem, c: Constraints) -> Result<Existence> {
    let u = p.universe(c)?;
    let r = p.reasoner();
    let s = Space::new(&r, p, &u);
    let obs_idx = s.index_of(&p.obs).expect("observation is indexed");
    let obs = s.single(obs_idx);
    let obs_allowed = u.contains(&p.obs);
    let mut w = s.relevant(&p.kb, &u);
    // The trivial hypothesis is tried first.
    if let Some(pos) = w.iter().position(|&i| i == obs_idx) {
        w.remove(pos);
        w.insert(0, obs_idx);
    }
    let width = s.width();
    let limits = &r.limits;
    let trivial = |ok: bool| if ok { Some(obs.clone()) } else { None };

    match p.semantics {
        Semantics::Classical => {
            if !c.restricts_universe() {
                return Ok(answer(&s, trivial(s.consistent(&obs)), "trivial-consistent"));
            }
            // A consistent set entailing the observation stays consistent with it
            // added, so the stronger test prunes more and loses nothing.
            let found = search::feasible_goal(width, &w, limits, |x| Ok(s.consistent(&x.union(&obs))), |x| Ok(s.derives(x)))?;
            Ok(answer(&s, found, "consistent-search"))
        }
        Semantics::Brave => {
            let concept = match &p.obs {
                crate::kb::Assertion::Concept(a, _) => a,
                _ => unreachable!("checked when the problem was built"),
            };
            if !c.restricts_universe() && !c.conflict_confining {
                return Ok(answer(&s, trivial(r.concept_satisfiable(concept)), "trivial-satisfiable"));
            }
            if s.is_dllite() {
                if !c.restricts_universe() {
                    let ok = r.concept_satisfiable(concept) && s.confining(&obs)?;
                    return Ok(answer(&s, trivial(ok), "trivial-confining"));
                }
                for &i in &w {
                    let b = s.single(i);
                    if s.valid(&b, c)? {
                        return Ok(answer(&s, Some(b), "singleton-scan"));
                    }
                }
                return Ok(answer(&s, None, "singleton-scan"));
            }
            if obs_allowed && s.valid(&obs, c)? {
                return Ok(answer(&s, Some(obs), "trivial-first"));
            }
            if !c.conflict_confining {
                let all = Bits::from_indices(width, w.iter().copied());
                if s.brave(&all)?.is_none() {
                    return Ok(answer(&s, None, "monotone-shrink"));
                }
                let mut cur = all.clone();
                for &e in &w {
                    let smaller = cur.without(e);
                    if s.brave(&smaller)?.is_some() {
                        cur = smaller;
                    }
                }
                return Ok(answer(&s, Some(cur), "monotone-shrink"));
            }
            let found = search::feasible_goal(width, &w, limits, |x| s.confining(x), |x| Ok(s.brave(x)?.is_some()))?;
            Ok(answer(&s, found, "confining-search"))
        }
        Semantics::Ar => {
            if !c.restricts_universe() {
                let ok = s.confining(&obs)? && s.valid(&obs, c)?;
                return Ok(answer(&s, trivial(ok), "trivial-confining"));
            }
            if s.is_dllite() {
                if c.conflict_confining {
                    for &i in &w {
                        let b = s.single(i);
                        if s.valid(&b, c)? {
                            return Ok(answer(&s, Some(b), "singleton-scan"));
                        }
                    }
                    return Ok(answer(&s, None, "singleton-scan"));
                }
                let cands = Bits::from_indices(width, w.iter().copied());
                return Ok(answer(&s, s.ar_within(&cands)?.ok(), "repair-supports"));
            }
            if c.conflict_confining {
                let found = search::feasible_goal(width, &w, limits, |x| s.confining(x), |x| s.every_repair_entails(x))?;
                return Ok(answer(&s, found, "confining-search"));
            }
            let all = Bits::from_indices(width, w.iter().copied());
            if !s.every_repair_entails(&all)? || s.brave(&all)?.is_none() {
                return Ok(answer(&s, None, "cardinality-search"));
            }
            let found = search::by_cardinality(width, &w, w.len(), limits, |x| s.valid(x, c))?;
            Ok(answer(&s, found, "cardinality-search"))
        }
    }
}

/// Decides whether some repair-wise choice of single supporting assertions from
/// `A ∪ candidates` covers every repair of the KB.
pub fn ar_exists_within(p: &AbductionProblem, candidates: &ABox) -> Result<ArWithin> {
    if !p.kb.dialect.is_dllite() {
        return Err(Error::UnsupportedCombination(format!(
            "repair-wise support search needs DL-Lite, got {}",
            p.kb.dialect
        )));
    }
    let r = p.reasoner();
    let s = Space::new(&r, p, candidates);
    let cands = s.bits(candidates);
    Ok(match s.ar_within(&cands)? {
        Ok(w) => ArWithin { exists: true, witness: Some(s.abox(&w)), blocking_repair: None },
        Err(rep) => ArWithin { exists: false, witness: None, blocking_repair: Some(s.abox(&rep)) },
    })
}

/// The first `limit` hypotheses satisfying `c` and `m`, by size and then canonically.
pub fn enumerate_hypotheses(p: &AbductionProblem, c: Constraints, m: Minimality, limit: usize) -> Result<Vec<ABox>> {
    if p.semantics == Semantics::Classical && m.on_conflicts() {
        return Err(Error::UnsupportedCombination(format!("{m} minimality under classical semantics")));
    }
    let mut out: Vec<Bits> = Vec::new();
    if limit == 0 {
        return Ok(Vec::new());
    }
    let u = p.universe(c)?;
    let r = p.reasoner();
    let s = Space::new(&r, p, &u);
    let limits = &r.limits;
    let items: Vec<usize> = u.iter().filter_map(|a| s.index_of(a)).collect();
    let capped = items.len() > limits.lattice_universe;
    let top = if capped { limits.deepening } else { items.len() };
    let mut visits: u64 = 0;
    for k in 0..=top {
        if m == Minimality::Card && !out.is_empty() {
            break;
        }
        for combo in Combinations::new(items.len(), k) {
            visits += 1;
            if visits > limits.lattice_candidates {
                return Err(Error::budget("candidate subsets", limits.lattice_candidates));
            }
            let x = Bits::from_indices(s.width(), combo.into_iter().map(|i| items[i]));
            // Supersets of a subset-minimal hypothesis are not subset-minimal; any other
            // hypothesis is, since smaller ones were all seen already.
            if m == Minimality::Subset && out.iter().any(|o| o.is_subset(&x)) {
                continue;
            }
            if !s.valid(&x, c)? {
                continue;
            }
            if m.on_conflicts() && !minimality(&s, p, &x, c, m)?.minimal {
                continue;
            }
            out.push(x);
            if out.len() == limit {
                return Ok(out.iter().map(|b| s.abox(b)).collect());
            }
        }
    }
    if capped && out.len() < limit {
        return Err(Error::budget("lattice universe", limits.lattice_universe as u64));
    }
    Ok(out.iter().map(|b| s.abox(b)).collect())
}
