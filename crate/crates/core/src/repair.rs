//! Repairs of inconsistent ABoxes and the brave / AR entailment relations over them.
//!
//! Most functions come in two layers: one over a [`Prepared`] item list with bit-set
//! selections (used by the abduction engine in tight loops) and a thin wrapper over
//! knowledge bases.

use crate::bits::Bits;
use crate::classical::{Prepared, Reasoner};
use crate::duality;
use crate::error::Result;
use crate::kb::{ABox, Assertion, KnowledgeBase};

fn globalize(idx: &[usize], width: usize, local: &Bits) -> Bits {
    Bits::from_indices(width, local.iter().map(|i| idx[i]))
}

/// Conflicts and repairs of the sub-ABox `sel`, both in canonical order.
pub fn conflicts_and_repairs_in(p: &Prepared, sel: &Bits) -> Result<(Vec<Bits>, Vec<Bits>)> {
    let limits = &p.reasoner().limits;
    let width = p.len();
    if p.reasoner().dialect().is_dllite() {
        let conflicts = conflicts_in(p, sel)?;
        let mut repairs: Vec<Bits> = duality::minimal_hitting_sets(width, &conflicts, limits.repairs)?
            .into_iter()
            .map(|h| sel.difference(&h))
            .collect();
        repairs.sort();
        return Ok((conflicts, repairs));
    }
    let idx: Vec<usize> = sel.iter().collect();
    let d = duality::enumerate(idx.len(), |b| !p.consistent(&globalize(&idx, width, b)), limits)?;
    let mut conflicts: Vec<Bits> = d.minimal.iter().map(|b| globalize(&idx, width, b)).collect();
    let mut repairs: Vec<Bits> = d.maximal_false.iter().map(|b| globalize(&idx, width, b)).collect();
    conflicts.sort();
    repairs.sort();
    Ok((conflicts, repairs))
}

/// Conflicts of the sub-ABox `sel`.
pub fn conflicts_in(p: &Prepared, sel: &Bits) -> Result<Vec<Bits>> {
    if p.reasoner().dialect().is_dllite() {
        let mut out: Vec<Bits> = p.conflicts()?.into_iter().filter(|c| c.is_subset(sel)).collect();
        out.sort();
        return Ok(out);
    }
    Ok(conflicts_and_repairs_in(p, sel)?.0)
}

pub fn repairs_in(p: &Prepared, sel: &Bits) -> Result<Vec<Bits>> {
    Ok(conflicts_and_repairs_in(p, sel)?.1)
}

/// Greedy maximal consistent extension of `seed` inside `sel`, canonical order.
pub fn extend_to_repair(p: &Prepared, sel: &Bits, seed: &Bits) -> Bits {
    let mut cur = seed.clone();
    for i in sel.iter() {
        if !cur.contains(i) {
            let next = cur.with(i);
            if p.consistent(&next) {
                cur = next;
            }
        }
    }
    cur
}

/// Consistent minimal supports of `obs` inside `sel`.
pub fn supports_in(p: &Prepared, sel: &Bits, obs: &Assertion) -> Result<Vec<Bits>> {
    let width = p.len();
    let mut out: Vec<Bits> = if p.reasoner().dialect().is_dllite() {
        sel.iter()
            .map(|i| Bits::from_indices(width, [i]))
            .filter(|b| p.derives(b, obs))
            .collect()
    } else if p.derives(&p.none(), obs) {
        vec![p.none()]
    } else {
        let idx: Vec<usize> = sel.iter().collect();
        duality::enumerate(idx.len(), |b| p.derives(&globalize(&idx, width, b), obs), &p.reasoner().limits)?
            .minimal
            .iter()
            .map(|b| globalize(&idx, width, b))
            .collect()
    };
    out.retain(|s| p.consistent(s));
    out.sort();
    Ok(out)
}

/// Brave entailment by supports: returns a repair of `sel` entailing `obs`.
pub fn brave_in(p: &Prepared, sel: &Bits, obs: &Assertion) -> Result<Option<Bits>> {
    let supports = supports_in(p, sel, obs)?;
    Ok(supports.first().map(|s| extend_to_repair(p, sel, s)))
}

/// Brave entailment by enumerating repairs.
pub fn brave_by_repairs_in(p: &Prepared, sel: &Bits, obs: &Assertion) -> Result<Option<Bits>> {
    Ok(repairs_in(p, sel)?.into_iter().find(|r| p.derives(r, obs)))
}

/// AR entailment by enumerating repairs. `None` when every repair entails `obs`,
/// otherwise the first repair (canonical order) that does not.
pub fn ar_by_repairs_in(p: &Prepared, sel: &Bits, obs: &Assertion) -> Result<Option<Bits>> {
    Ok(repairs_in(p, sel)?.into_iter().find(|r| !p.derives(r, obs)))
}

/// AR entailment. DL-Lite looks for a consistent set that blocks every support;
/// EL-bot enumerates repairs.
pub fn ar_in(p: &Prepared, sel: &Bits, obs: &Assertion) -> Result<Option<Bits>> {
    if !p.reasoner().dialect().is_dllite() {
        return ar_by_repairs_in(p, sel, obs);
    }
    let width = p.len();
    let single = |i: usize| Bits::from_indices(width, [i]);
    let supports: Vec<usize> = sel.iter().filter(|&i| p.derives(&single(i), obs)).collect();
    let live: Vec<usize> = supports.iter().copied().filter(|&i| p.consistent(&single(i))).collect();
    let support_bits = Bits::from_indices(width, supports.iter().copied());
    let blockers: Vec<usize> = sel
        .iter()
        .filter(|&g| !support_bits.contains(g) && p.consistent(&single(g)))
        .collect();
    let mut b = Blocking::new(p, &live, &blockers);
    if b.search() {
        let chosen = Bits::from_indices(width, b.chosen.iter().map(|&g| blockers[g]));
        return Ok(Some(extend_to_repair(p, sel, &chosen)));
    }
    Ok(None)
}

/// Picks pairwise compatible blockers so that every support clashes with one of them.
/// Branches on the open support with the fewest usable blockers left.
struct Blocking {
    /// Per support, the blockers clashing with it.
    options: Vec<Vec<usize>>,
    /// Per blocker, the supports it blocks.
    blocks: Vec<Vec<usize>>,
    clash: Vec<Vec<bool>>,
    /// Per blocker, how many chosen blockers clash with it.
    vetoed: Vec<u32>,
    /// Per support, how many chosen blockers block it.
    covered: Vec<u32>,
    chosen: Vec<usize>,
}

impl Blocking {
    fn new(p: &Prepared, live: &[usize], blockers: &[usize]) -> Blocking {
        let width = p.len();
        let pair = |a: usize, b: usize| p.consistent(&Bits::from_indices(width, [a, b]));
        let mut options = vec![Vec::new(); live.len()];
        let mut blocks = vec![Vec::new(); blockers.len()];
        for (s, &beta) in live.iter().enumerate() {
            for (g, &gamma) in blockers.iter().enumerate() {
                if !pair(beta, gamma) {
                    options[s].push(g);
                    blocks[g].push(s);
                }
            }
        }
        let n = blockers.len();
        let mut clash = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = !pair(blockers[i], blockers[j]);
                clash[i][j] = c;
                clash[j][i] = c;
            }
        }
        // Blockers covering more supports first; ties keep canonical order.
        for o in &mut options {
            o.sort_by_key(|&g| (std::cmp::Reverse(blocks[g].len()), g));
        }
        Blocking { options, blocks, clash, vetoed: vec![0; n], covered: vec![0; live.len()], chosen: Vec::new() }
    }

    fn usable(&self, g: usize) -> bool {
        self.vetoed[g] == 0 && !self.chosen.contains(&g)
    }

    fn set(&mut self, g: usize, on: bool) {
        let d: i64 = if on { 1 } else { -1 };
        for h in 0..self.vetoed.len() {
            if self.clash[g][h] {
                self.vetoed[h] = (self.vetoed[h] as i64 + d) as u32;
            }
        }
        for &s in &self.blocks[g] {
            self.covered[s] = (self.covered[s] as i64 + d) as u32;
        }
        if on {
            self.chosen.push(g);
        } else {
            self.chosen.pop();
        }
    }

    fn search(&mut self) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for s in 0..self.options.len() {
            if self.covered[s] > 0 {
                continue;
            }
            let n = self.options[s].iter().filter(|&&g| self.usable(g)).count();
            if best.map_or(true, |(m, _)| n < m) {
                best = Some((n, s));
            }
            if n == 0 {
                return false;
            }
        }
        let Some((_, s)) = best else { return true };
        let opts: Vec<usize> = self.options[s].iter().copied().filter(|&g| self.usable(g)).collect();
        for g in opts {
            self.set(g, true);
            if self.search() {
                return true;
            }
            self.set(g, false);
        }
        false
    }
}

/// A conflict of `base ∪ hyp` that meets `hyp`, if any. There is one exactly when
/// some repair of `base` is inconsistent with `hyp`; for `hyp` disjoint from
/// `base` these are the conflicts `base` lacks.
pub fn fresh_conflict_in(p: &Prepared, base: &Bits, hyp: &Bits) -> Result<Option<Bits>> {
    if p.reasoner().dialect().is_dllite() {
        Ok(fresh_conflict_pairs(p, base, hyp))
    } else {
        fresh_conflict_by_repairs(p, base, hyp)
    }
}

/// DL-Lite route: conflicts have at most two elements, so only singletons of
/// `hyp` and pairs touching it need checking.
pub fn fresh_conflict_pairs(p: &Prepared, base: &Bits, hyp: &Bits) -> Option<Bits> {
    let width = p.len();
    let all = base.union(hyp);
    let mut best: Option<Bits> = None;
    for h in hyp.iter() {
        let single = Bits::from_indices(width, [h]);
        let cand = if !p.consistent(&single) {
            Some(single)
        } else {
            all.iter()
                .filter(|&x| x != h)
                .map(|x| Bits::from_indices(width, [x, h]))
                .find(|pair| {
                    let x = pair.iter().find(|&i| i != h).unwrap();
                    p.consistent(&Bits::from_indices(width, [x])) && !p.consistent(pair)
                })
        };
        if let Some(c) = cand {
            if best.as_ref().map_or(true, |b| c < *b) {
                best = Some(c);
            }
        }
    }
    best
}

/// General route: some repair of `base` joined with `hyp` is inconsistent.
pub fn fresh_conflict_by_repairs(p: &Prepared, base: &Bits, hyp: &Bits) -> Result<Option<Bits>> {
    if hyp.is_empty() {
        return Ok(None);
    }
    for r in repairs_in(p, base)? {
        let joined = r.union(hyp);
        if !p.consistent(&joined) {
            return Ok(Some(duality::shrink(&joined, |b| !p.consistent(b))));
        }
    }
    Ok(None)
}

fn union_prepared<'r>(r: &'r Reasoner, a: &ABox, h: &ABox) -> (Prepared<'r>, Bits, Bits) {
    let all: ABox = a.union(h).cloned().collect();
    let p = r.prepare_abox(&all);
    let (ab, hb) = (p.bits_of(a), p.bits_of(h));
    (p, ab, hb)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraveEntailment {
    pub holds: bool,
    /// A repair entailing the observation.
    pub witness: Option<ABox>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArEntailment {
    pub holds: bool,
    /// A repair not entailing the observation.
    pub counterexample: Option<ABox>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictConfinement {
    pub holds: bool,
    pub fresh_conflict: Option<ABox>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictDelta {
    pub base: Vec<ABox>,
    pub extended: Vec<ABox>,
    pub fresh: Vec<ABox>,
}

pub fn repairs(kb: &KnowledgeBase) -> Result<Vec<ABox>> {
    let r = Reasoner::for_kb(kb);
    let p = r.prepare_abox(&kb.abox);
    Ok(repairs_in(&p, &p.all())?.iter().map(|b| p.to_abox(b)).collect())
}

pub fn entails_brave(kb: &KnowledgeBase, obs: &Assertion) -> Result<BraveEntailment> {
    let r = Reasoner::for_kb(kb);
    let p = r.prepare_abox(&kb.abox);
    let w = brave_in(&p, &p.all(), obs)?;
    Ok(BraveEntailment { holds: w.is_some(), witness: w.map(|b| p.to_abox(&b)) })
}

pub fn entails_ar(kb: &KnowledgeBase, obs: &Assertion) -> Result<ArEntailment> {
    let r = Reasoner::for_kb(kb);
    let p = r.prepare_abox(&kb.abox);
    let c = ar_in(&p, &p.all(), obs)?;
    Ok(ArEntailment { holds: c.is_none(), counterexample: c.map(|b| p.to_abox(&b)) })
}

pub fn is_conflict_confining(kb: &KnowledgeBase, hyp: &ABox) -> Result<ConflictConfinement> {
    let r = Reasoner::for_kb(kb);
    let (p, a, h) = union_prepared(&r, &kb.abox, hyp);
    let fresh = fresh_conflict_in(&p, &a, &h)?;
    Ok(ConflictConfinement { holds: fresh.is_none(), fresh_conflict: fresh.map(|b| p.to_abox(&b)) })
}

pub fn new_conflicts(kb: &KnowledgeBase, hyp: &ABox) -> Result<ConflictDelta> {
    let r = Reasoner::for_kb(kb);
    let (p, a, h) = union_prepared(&r, &kb.abox, hyp);
    let base = conflicts_in(&p, &a)?;
    let extended = conflicts_in(&p, &a.union(&h))?;
    let fresh: Vec<Bits> = extended.iter().filter(|c| !base.contains(c)).cloned().collect();
    let conv = |v: &[Bits]| v.iter().map(|b| p.to_abox(b)).collect::<Vec<_>>();
    Ok(ConflictDelta { base: conv(&base), extended: conv(&extended), fresh: conv(&fresh) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;

    fn diabetes() -> KnowledgeBase {
        parse_kb(
            "DIALECT elbot
TBOX
(High and Low) <= bot
(some glucoseLevel High) <= GlycemicCrisis
(some glucoseLevel Low) <= GlycemicCrisis
((some glucoseLevel High) and OverdosedInsulin) <= DiabeticComa
(GlycemicCrisis and Ketoacidosis) <= DiabeticComa
ABOX
glucoseLevel(patient, l)
High(l)
Low(l)
",
        )
        .unwrap()
    }

    #[test]
    fn diabetes_repairs_and_entailments() {
        let kb = diabetes();
        assert_eq!(repairs(&kb).unwrap().len(), 2);
        let high = Assertion::concept("High", "l");
        let crisis = Assertion::concept("GlycemicCrisis", "patient");
        assert!(entails_brave(&kb, &high).unwrap().holds);
        assert!(!entails_ar(&kb, &high).unwrap().holds);
        assert!(entails_ar(&kb, &crisis).unwrap().holds);
        let ce = entails_ar(&kb, &high).unwrap().counterexample.unwrap();
        assert!(ce.contains(&Assertion::concept("Low", "l")));
    }

    #[test]
    fn conflict_confinement_example() {
        let kb = parse_kb("DIALECT elbot\nTBOX\n(A and B) <= bot\n(B and C) <= bot\n(C and D) <= A\nABOX\nB(a)\nC(a)\n")
            .unwrap();
        let a: ABox = [Assertion::concept("A", "a")].into_iter().collect();
        let d: ABox = [Assertion::concept("D", "a")].into_iter().collect();
        let cc = is_conflict_confining(&kb, &a).unwrap();
        assert!(!cc.holds);
        assert_eq!(cc.fresh_conflict.unwrap().len(), 2);
        assert!(is_conflict_confining(&kb, &d).unwrap().holds);
        let delta = new_conflicts(&kb, &a).unwrap();
        assert_eq!(delta.fresh.len(), 1);
        assert_eq!(delta.base.len(), 1);
    }

    #[test]
    fn dllite_routes_agree_on_small_case() {
        let kb = parse_kb(
            "DIALECT dllite-core\nTBOX\nB1 <= not(B2)\nC1 <= not(C2)\nB1 <= A\nB3 <= A\nABOX\nC1(a)\nC2(a)\nB1(a)\nB2(a)\n",
        )
        .unwrap();
        let r = Reasoner::for_kb(&kb);
        let p = r.prepare_abox(&kb.abox);
        let obs = Assertion::concept("A", "a");
        let all = p.all();
        assert!(ar_in(&p, &all, &obs).unwrap().is_some());
        assert!(ar_by_repairs_in(&p, &all, &obs).unwrap().is_some());
        assert!(brave_in(&p, &all, &obs).unwrap().is_some());
    }
}
