//! Brute-force reference for the abduction tasks on tiny instances.
//!
//! Every assertion that could occur in a hypothesis is put in one list `L` (at most
//! 20 items). Consistency and entailment of the observation are tabulated for every
//! subset of `L`; conflicts, supports and repairs are then read off the tables by
//! plain subset enumeration, and all abduction questions are answered by scanning
//! the whole candidate lattice.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::models;
use crate::abduction::{Constraints, Minimality, Semantics};
use crate::classical::Reasoner;
use crate::kb::{ABox, Assertion, ConceptName, Individual, KnowledgeBase, RoleName, Signature};

pub const MAX_ITEMS: usize = 20;

/// Which implementation fills the consistency and entailment tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Reasoner,
    /// Ground finite models; slow, only for very small lattices.
    Models,
}

pub struct Lattice {
    pub kb: KnowledgeBase,
    pub obs: Assertion,
    pub semantics: Semantics,
    pub signature: Option<Signature>,
    pub items: Vec<Assertion>,
    pub base: u32,
    obs_bit: u32,
    /// Assertions over the names of the KB and the observation.
    pub plain: u32,
    /// Assertions admitted by the signature.
    in_sig: u32,
    consistent: Vec<bool>,
    /// Classical entailment, only meaningful on consistent masks.
    derives: Vec<bool>,
    pub conflicts: Vec<u32>,
    pub supports: Vec<u32>,
    repair_memo: RefCell<HashMap<u32, Rc<Vec<u32>>>>,
    hyp_memo: RefCell<HashMap<(u8, Semantics), Rc<Vec<u32>>>>,
}

fn bit(i: usize) -> u32 {
    1 << i
}

fn subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

fn ones(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

fn key(c: Constraints) -> u8 {
    c.signature as u8 | (c.nontrivial as u8) << 1 | (c.conflict_confining as u8) << 2
}

impl Lattice {
    /// Panics if `L` would exceed [`MAX_ITEMS`].
    pub fn new(kb: &KnowledgeBase, obs: &Assertion, semantics: Semantics, sig: Option<&Signature>) -> Lattice {
        Lattice::with_backend(kb, obs, semantics, sig, Backend::Reasoner)
    }

    pub fn with_backend(
        kb: &KnowledgeBase,
        obs: &Assertion,
        semantics: Semantics,
        sig: Option<&Signature>,
        backend: Backend,
    ) -> Lattice {
        let mut inds: BTreeSet<Individual> = kb.abox.iter().flat_map(|a| a.individuals().cloned()).collect();
        inds.extend(obs.individuals().cloned());
        let mut concepts: BTreeSet<ConceptName> = BTreeSet::new();
        let mut roles: BTreeSet<RoleName> = BTreeSet::new();
        for ax in &kb.tbox {
            ax.collect_names(&mut concepts, &mut roles);
        }
        let note = |a: &Assertion, cs: &mut BTreeSet<ConceptName>, rs: &mut BTreeSet<RoleName>| match a {
            Assertion::Concept(c, _) => {
                cs.insert(c.clone());
            }
            Assertion::Role(r, _, _) => {
                rs.insert(r.clone());
            }
        };
        for a in kb.abox.iter().chain([obs]) {
            note(a, &mut concepts, &mut roles);
        }
        let (plain_c, plain_r) = (concepts.clone(), roles.clone());
        if let Some(s) = sig {
            concepts.extend(s.concepts.iter().cloned());
            roles.extend(s.roles.iter().cloned());
        }
        let mut all = ABox::new();
        for c in &concepts {
            for i in &inds {
                all.insert(Assertion::Concept(c.clone(), i.clone()));
            }
        }
        for r in &roles {
            for a in &inds {
                for b in &inds {
                    all.insert(Assertion::Role(r.clone(), a.clone(), b.clone()));
                }
            }
        }
        let items: Vec<Assertion> = all.into_iter().collect();
        assert!(items.len() <= MAX_ITEMS, "lattice of {} items is too large", items.len());
        let n = items.len();
        let mut base = 0;
        let mut plain = 0;
        let mut in_sig = 0;
        let mut obs_bit = 0;
        for (i, a) in items.iter().enumerate() {
            if kb.abox.contains(a) {
                base |= bit(i);
            }
            if a == obs {
                obs_bit = bit(i);
            }
            let ok = match a {
                Assertion::Concept(c, _) => plain_c.contains(c),
                Assertion::Role(r, _, _) => plain_r.contains(r),
            };
            if ok {
                plain |= bit(i);
            }
            if sig.is_some_and(|s| s.admits(a)) {
                in_sig |= bit(i);
            }
        }

        let reasoner = Reasoner::for_kb(kb);
        let prepared = reasoner.prepare(items.clone());
        let to_abox = |m: u32| -> ABox { ones(m).map(|i| items[i].clone()).collect() };
        let cons_call = |m: u32| match backend {
            Backend::Reasoner => prepared.consistent(&crate::bits::Bits::from_indices(n, ones(m))),
            Backend::Models => models::model_consistent(kb.dialect, &kb.tbox, &to_abox(m)),
        };
        let size = 1usize << n;
        let mut consistent = vec![true; size];
        let mut conflicts = Vec::new();
        // Submasks are numerically smaller, so they are settled first.
        for m in 0..size as u32 {
            if ones(m).any(|i| !consistent[(m & !bit(i)) as usize]) {
                consistent[m as usize] = false;
            } else if !cons_call(m) {
                consistent[m as usize] = false;
                conflicts.push(m);
            }
        }
        let der_call = |m: u32| match backend {
            Backend::Reasoner => prepared.derives(&crate::bits::Bits::from_indices(n, ones(m)), obs),
            Backend::Models => models::model_entails(kb.dialect, &kb.tbox, &to_abox(m), obs),
        };
        let mut derives = vec![false; size];
        let mut supports = Vec::new();
        for m in 0..size as u32 {
            if !consistent[m as usize] {
                continue;
            }
            if ones(m).any(|i| derives[(m & !bit(i)) as usize]) {
                derives[m as usize] = true;
            } else if der_call(m) {
                derives[m as usize] = true;
                supports.push(m);
            }
        }
        Lattice {
            kb: kb.clone(),
            obs: obs.clone(),
            semantics,
            signature: sig.cloned(),
            items,
            base,
            obs_bit,
            plain,
            in_sig,
            consistent,
            derives,
            conflicts,
            supports,
            repair_memo: RefCell::new(HashMap::new()),
            hyp_memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn abox(&self, m: u32) -> ABox {
        ones(m).map(|i| self.items[i].clone()).collect()
    }

    /// `None` if some assertion is not in `L`.
    pub fn mask(&self, abox: &ABox) -> Option<u32> {
        let mut m = 0;
        for a in abox {
            m |= bit(self.items.iter().position(|x| x == a)?);
        }
        Some(m)
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.len()) - 1) as u32
    }

    pub fn is_consistent(&self, m: u32) -> bool {
        self.consistent[m as usize]
    }

    pub fn derives(&self, m: u32) -> bool {
        self.consistent[m as usize] && self.derives[m as usize]
    }

    /// Minimal conflicts inside `m`.
    pub fn conflicts_in(&self, m: u32) -> Vec<u32> {
        self.conflicts.iter().copied().filter(|&c| subset(c, m)).collect()
    }

    /// Maximal consistent subsets of `m`.
    pub fn repairs(&self, m: u32) -> Rc<Vec<u32>> {
        if let Some(r) = self.repair_memo.borrow().get(&m) {
            return r.clone();
        }
        let out = match self.conflicts.iter().find(|&&c| subset(c, m)) {
            None => vec![m],
            Some(&c) => {
                let mut cands: Vec<u32> = Vec::new();
                for i in ones(c) {
                    cands.extend(self.repairs(m & !bit(i)).iter().copied());
                }
                cands.sort_unstable();
                cands.dedup();
                let maximal: Vec<u32> =
                    cands.iter().copied().filter(|&r| !cands.iter().any(|&o| o != r && subset(r, o))).collect();
                maximal
            }
        };
        let out = Rc::new(out);
        self.repair_memo.borrow_mut().insert(m, out.clone());
        out
    }

    pub fn brave(&self, m: u32) -> bool {
        self.repairs(m).iter().any(|&r| self.derives(r))
    }

    pub fn ar(&self, m: u32) -> bool {
        self.repairs(m).iter().all(|&r| self.derives(r))
    }

    /// The observation follows from `A ∪ h` under the problem's semantics.
    pub fn entailed(&self, h: u32) -> bool {
        let m = self.base | h;
        match self.semantics {
            Semantics::Classical => self.derives(m),
            Semantics::Brave => self.brave(m),
            Semantics::Ar => self.ar(m),
        }
    }

    /// Conflicts of `A ∪ h` that are not conflicts of `A`.
    pub fn fresh(&self, h: u32) -> Vec<u32> {
        let m = self.base | h;
        self.conflicts.iter().copied().filter(|&c| subset(c, m) && !subset(c, self.base)).collect()
    }

    /// Every repair of `A` stays consistent once `h` is added.
    pub fn confined(&self, h: u32) -> bool {
        self.repairs(self.base).iter().all(|&r| self.is_consistent(r | h))
    }

    /// Assertions a hypothesis under `c` may use. Without a signature any name is
    /// fine; only the individuals are restricted.
    pub fn allowed(&self, c: Constraints) -> u32 {
        let mut m = if c.signature { self.in_sig } else { self.full() };
        if c.nontrivial {
            m &= !self.obs_bit;
        }
        m
    }

    pub fn is_hypothesis(&self, h: u32, c: Constraints) -> bool {
        subset(h, self.allowed(c))
            && self.entailed(h)
            && (!c.conflict_confining || self.semantics == Semantics::Classical || self.confined(h))
    }

    /// Every hypothesis under `c`, by size and then canonically.
    pub fn hypotheses(&self, c: Constraints) -> Rc<Vec<u32>> {
        let k = (key(c), self.semantics);
        if let Some(v) = self.hyp_memo.borrow().get(&k) {
            return v.clone();
        }
        let allowed = self.allowed(c);
        let mut out = Vec::new();
        let mut h = allowed;
        loop {
            if self.is_hypothesis(h, c) {
                out.push(h);
            }
            if h == 0 {
                break;
            }
            h = (h - 1) & allowed;
        }
        out.sort_by_key(|&h| (h.count_ones(), self.abox(h).into_iter().collect::<Vec<_>>()));
        let out = Rc::new(out);
        self.hyp_memo.borrow_mut().insert(k, out.clone());
        out
    }

    pub fn exists(&self, c: Constraints) -> Option<u32> {
        self.hypotheses(c).first().copied()
    }

    /// Whether `other` beats `h` under `m`.
    pub fn beats(&self, other: u32, h: u32, m: Minimality) -> bool {
        match m {
            Minimality::None => false,
            Minimality::Subset => other != h && subset(other, h),
            Minimality::Card => other.count_ones() < h.count_ones(),
            Minimality::SubsetC => {
                let (mine, theirs) = (self.fresh(h), self.fresh(other));
                theirs.len() < mine.len() && theirs.iter().all(|c| mine.contains(c))
            }
            Minimality::CardC => self.fresh(other).len() < self.fresh(h).len(),
        }
    }

    /// Some hypothesis under `c` that beats `h`.
    pub fn beaten_by(&self, h: u32, c: Constraints, m: Minimality) -> Option<u32> {
        self.hypotheses(c).iter().copied().find(|&o| self.beats(o, h, m))
    }

    pub fn verify(&self, h: u32, c: Constraints, m: Minimality) -> bool {
        self.is_hypothesis(h, c) && self.beaten_by(h, c, m).is_none()
    }

    pub fn enumerate(&self, c: Constraints, m: Minimality) -> Vec<u32> {
        self.hypotheses(c).iter().copied().filter(|&h| self.beaten_by(h, c, m).is_none()).collect()
    }

    /// Some AR hypothesis drawn from `cands`.
    pub fn ar_hypothesis_within(&self, cands: u32) -> bool {
        let mut h = cands;
        loop {
            if self.ar(self.base | h) {
                return true;
            }
            if h == 0 {
                return false;
            }
            h = (h - 1) & cands;
        }
    }

    /// Every repair of `A` is consistent with some single-assertion support of the
    /// observation taken from `A ∪ cands`.
    pub fn repairwise_supports(&self, cands: u32) -> bool {
        let pool = self.base | cands;
        self.repairs(self.base).iter().all(|&r| {
            ones(pool).any(|i| self.supports.contains(&bit(i)) && self.is_consistent(r | bit(i)))
        })
    }

    /// The problem's promise: classical needs a consistent KB, the repair semantics an
    /// inconsistent one; in both cases the observation must not follow yet.
    pub fn promise_holds(&self) -> bool {
        let kb_consistent = self.is_consistent(self.base);
        let right_kind = (self.semantics == Semantics::Classical) == kb_consistent;
        right_kind && !self.entailed(0)
    }
}
