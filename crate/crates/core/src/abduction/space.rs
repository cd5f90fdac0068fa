//! A fixed assertion list `A ∪ U ∪ {obs}` with hypothesis-level queries over it.

use std::cell::OnceCell;

use super::{AbductionProblem, Constraints, Semantics};
use crate::bits::Bits;
use crate::classical::{Prepared, Reasoner};
use crate::duality;
use crate::error::Result;
use crate::kb::{ABox, Assertion, KnowledgeBase};
use crate::repair;

pub(crate) struct Space<'r> {
    pub p: Prepared<'r>,
    pub base: Bits,
    pub obs: Assertion,
    pub semantics: Semantics,
    base_repairs: OnceCell<Result<Vec<Bits>>>,
    base_conflicts: OnceCell<Result<Vec<Bits>>>,
}

/// Whether `obs` follows from `A ∪ H`, with the evidence found on the way.
pub(crate) struct Outcome {
    pub holds: bool,
    /// Brave: a repair entailing the observation.
    pub witness: Option<Bits>,
    /// AR: a repair not entailing it. Classical: a conflict of `A ∪ H`.
    pub counterexample: Option<Bits>,
}

impl<'r> Space<'r> {
    pub fn new(r: &'r Reasoner, prob: &AbductionProblem, extra: &ABox) -> Space<'r> {
        Space::over(r, &prob.kb, &prob.obs, prob.semantics, extra)
    }

    pub fn over(r: &'r Reasoner, kb: &KnowledgeBase, obs: &Assertion, semantics: Semantics, extra: &ABox) -> Space<'r> {
        let mut all: ABox = kb.abox.union(extra).cloned().collect();
        all.insert(obs.clone());
        let p = r.prepare_abox(&all);
        let base = p.bits_of(&kb.abox);
        Space {
            p,
            base,
            obs: obs.clone(),
            semantics,
            base_repairs: OnceCell::new(),
            base_conflicts: OnceCell::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.p.len()
    }

    pub fn bits(&self, h: &ABox) -> Bits {
        self.p.bits_of(h)
    }

    pub fn abox(&self, b: &Bits) -> ABox {
        self.p.to_abox(b)
    }

    pub fn index_of(&self, a: &Assertion) -> Option<usize> {
        self.p.index_of(a)
    }

    pub fn single(&self, i: usize) -> Bits {
        Bits::from_indices(self.width(), [i])
    }

    pub fn is_dllite(&self) -> bool {
        self.p.reasoner().dialect().is_dllite()
    }

    /// Candidate indices: `u` minus the ABox, keeping only assertions whose predicate
    /// the TBox or the observation mentions. The others never take part in a conflict
    /// or a support, so dropping them from a hypothesis changes nothing.
    pub fn relevant(&self, kb: &KnowledgeBase, u: &ABox) -> Vec<usize> {
        let (cs, rs) = kb.tbox_names();
        u.iter()
            .filter(|a| match a {
                Assertion::Concept(c, _) => cs.contains(c) || a.predicate() == self.obs.predicate(),
                Assertion::Role(r, _, _) => rs.contains(r),
            })
            .filter_map(|a| self.index_of(a))
            .filter(|&i| !self.base.contains(i))
            .collect()
    }

    pub fn base_repairs(&self) -> Result<&[Bits]> {
        self.base_repairs
            .get_or_init(|| repair::repairs_in(&self.p, &self.base))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }

    pub fn base_conflicts(&self) -> Result<&[Bits]> {
        self.base_conflicts
            .get_or_init(|| repair::conflicts_in(&self.p, &self.base))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }

    fn sel(&self, h: &Bits) -> Bits {
        self.base.union(h)
    }

    pub fn brave(&self, h: &Bits) -> Result<Option<Bits>> {
        repair::brave_in(&self.p, &self.sel(h), &self.obs)
    }

    pub fn ar(&self, h: &Bits) -> Result<Option<Bits>> {
        repair::ar_in(&self.p, &self.sel(h), &self.obs)
    }

    pub fn consistent(&self, h: &Bits) -> bool {
        self.p.consistent(&self.sel(h))
    }

    pub fn derives(&self, h: &Bits) -> bool {
        self.p.derives(&self.sel(h), &self.obs)
    }

    pub fn outcome(&self, h: &Bits) -> Result<Outcome> {
        Ok(match self.semantics {
            Semantics::Brave => {
                let w = self.brave(h)?;
                Outcome { holds: w.is_some(), witness: w, counterexample: None }
            }
            Semantics::Ar => {
                let c = self.ar(h)?;
                Outcome { holds: c.is_none(), witness: None, counterexample: c }
            }
            Semantics::Classical => {
                let sel = self.sel(h);
                if self.p.consistent(&sel) {
                    Outcome { holds: self.p.derives(&sel, &self.obs), witness: None, counterexample: None }
                } else {
                    let conflict = duality::shrink(&sel, |b| !self.p.consistent(b));
                    Outcome { holds: false, witness: None, counterexample: Some(conflict) }
                }
            }
        })
    }

    pub fn holds(&self, h: &Bits) -> Result<bool> {
        Ok(match self.semantics {
            Semantics::Brave => self.brave(h)?.is_some(),
            Semantics::Ar => self.ar(h)?.is_none(),
            Semantics::Classical => {
                let sel = self.sel(h);
                self.p.consistent(&sel) && self.p.derives(&sel, &self.obs)
            }
        })
    }

    /// A conflict of `A ∪ H` that meets `H`: some repair of `A` clashes with `H`.
    pub fn fresh(&self, h: &Bits) -> Result<Option<Bits>> {
        if self.is_dllite() {
            return Ok(repair::fresh_conflict_pairs(&self.p, &self.base, h));
        }
        if h.is_empty() {
            return Ok(None);
        }
        for r in self.base_repairs()? {
            let joined = r.union(h);
            if !self.p.consistent(&joined) {
                return Ok(Some(duality::shrink(&joined, |b| !self.p.consistent(b))));
            }
        }
        Ok(None)
    }

    pub fn confining(&self, h: &Bits) -> Result<bool> {
        Ok(self.fresh(h)?.is_none())
    }

    /// All conflicts of `A ∪ H` that `A` does not have.
    pub fn fresh_all(&self, h: &Bits) -> Result<Vec<Bits>> {
        let base = self.base_conflicts()?;
        let ext = repair::conflicts_in(&self.p, &self.sel(h))?;
        Ok(ext.into_iter().filter(|c| !base.contains(c)).collect())
    }

    /// Every repair of `A`, joined with `H`, classically entails the observation
    /// (vacuously when inconsistent). Monotone in `H`; implied by AR entailment and
    /// equivalent to it for conflict-confining `H`.
    pub fn every_repair_entails(&self, h: &Bits) -> Result<bool> {
        for r in self.base_repairs()? {
            if !self.p.entails(&r.union(h), &self.obs) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hypothesis under the semantics plus conflict-confinement when asked for.
    /// Signature and non-triviality are the caller's business.
    pub fn valid(&self, h: &Bits, c: Constraints) -> Result<bool> {
        // The repair-wise prefilter pays off for EL-bot, where AR entailment itself
        // enumerates repairs; the DL-Lite blocking search needs no repairs at all.
        if self.semantics == Semantics::Ar && !self.is_dllite() && !self.every_repair_entails(h)? {
            return Ok(false);
        }
        if c.conflict_confining && self.semantics != Semantics::Classical && !self.confining(h)? {
            return Ok(false);
        }
        self.holds(h)
    }

    /// Repair-wise singleton supports: for every repair `R` of `A`, the first
    /// `β ∈ A ∪ cands` deriving the observation on its own with `R ∪ {β}`
    /// consistent. Returns the collected `β`s outside `A`, or a repair without one.
    pub fn ar_within(&self, cands: &Bits) -> Result<std::result::Result<Bits, Bits>> {
        let pool = self.base.union(cands);
        let supports: Vec<usize> = pool.iter().filter(|&i| self.p.derives(&self.single(i), &self.obs)).collect();
        let mut witness = Bits::empty(self.width());
        for r in self.base_repairs()? {
            match supports.iter().find(|&&b| self.p.consistent(&r.with(b))) {
                Some(&b) => {
                    if !self.base.contains(b) {
                        witness.insert(b);
                    }
                }
                None => return Ok(Err(r.clone())),
            }
        }
        Ok(Ok(witness))
    }

    /// Subset-minimal sets `X ⊆ w` such that `A ∪ X` has a consistent support of the
    /// observation (and, under classical semantics, is itself consistent), sorted by
    /// size then canonically. Every brave or classical hypothesis inside `w` contains
    /// one of them.
    pub fn minimal_hypotheses(&self, w: &[usize]) -> Result<Vec<Bits>> {
        let sel = self.base.union(&Bits::from_indices(self.width(), w.iter().copied()));
        let mut cands: Vec<Bits> = repair::supports_in(&self.p, &sel, &self.obs)?
            .into_iter()
            .map(|s| s.difference(&self.base))
            .filter(|x| self.semantics != Semantics::Classical || self.consistent(x))
            .collect();
        cands.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        cands.dedup();
        let mut out: Vec<Bits> = Vec::new();
        for c in cands {
            if !out.iter().any(|o| o.is_subset(&c)) {
                out.push(c);
            }
        }
        Ok(out)
    }
}
