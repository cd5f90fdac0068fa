//! Classical reasoning: consistency, instance checking, conflicts and supports.

pub mod dllite;
pub mod elbot;

use std::collections::HashMap;

use crate::bits::Bits;
use crate::duality::{self, Limits};
use crate::error::Result;
use crate::kb::{ABox, Assertion, ConceptName, Dialect, KnowledgeBase, TBox};

#[derive(Clone, Debug)]
enum Engine {
    DlLite(dllite::Closure),
    El(elbot::Saturator),
}

/// TBox-specific reasoner. Building it does the per-TBox work once.
#[derive(Clone, Debug)]
pub struct Reasoner {
    dialect: Dialect,
    engine: Engine,
    pub limits: Limits,
}

impl Reasoner {
    pub fn new(dialect: Dialect, tbox: &TBox) -> Reasoner {
        let engine = match dialect {
            Dialect::ElBot => Engine::El(elbot::Saturator::new(tbox)),
            Dialect::DlLiteCore | Dialect::DlLiteR => Engine::DlLite(dllite::Closure::new(tbox)),
        };
        Reasoner { dialect, engine, limits: Limits::default() }
    }

    pub fn for_kb(kb: &KnowledgeBase) -> Reasoner {
        Reasoner::new(kb.dialect, &kb.tbox)
    }

    pub fn dialect(&self) -> Dialect {
        self.dialect
    }

    /// Indexes `items` (in the given order) for repeated subset queries.
    pub fn prepare(&self, items: Vec<Assertion>) -> Prepared<'_> {
        Prepared::new(self, items)
    }

    pub fn prepare_abox(&self, abox: &ABox) -> Prepared<'_> {
        Prepared::new(self, abox.iter().cloned().collect())
    }

    pub fn is_consistent(&self, abox: &ABox) -> bool {
        let p = self.prepare_abox(abox);
        p.consistent(&p.all())
    }

    /// Classical entailment; holds vacuously when `abox` is inconsistent.
    pub fn entails(&self, abox: &ABox, obs: &Assertion) -> bool {
        let p = self.prepare_abox(abox);
        p.entails(&p.all(), obs)
    }

    pub fn concept_satisfiable(&self, c: &ConceptName) -> bool {
        match &self.engine {
            Engine::DlLite(d) => d.concept_satisfiable(c),
            Engine::El(e) => e.concept_satisfiable(c),
        }
    }

    /// Subset-minimal T-inconsistent subsets of `abox`, canonical order.
    pub fn min_conflicts(&self, abox: &ABox) -> Result<Vec<ABox>> {
        let p = self.prepare_abox(abox);
        Ok(p.conflicts()?.iter().map(|b| p.to_abox(b)).collect())
    }

    /// Subset-minimal T-consistent subsets of `universe` entailing `obs`.
    pub fn min_supports(&self, universe: &ABox, obs: &Assertion) -> Result<Vec<ABox>> {
        let p = self.prepare_abox(universe);
        Ok(p.supports(obs)?.iter().map(|b| p.to_abox(b)).collect())
    }
}

#[derive(Clone, Debug)]
enum Encoded {
    DlLite { contrib: Vec<dllite::Contribution>, unsat: Vec<bool>, clash: Vec<Bits> },
    El { facts: Vec<Option<elbot::Fact>> },
}

/// A fixed list of assertions indexed for subset queries through bit sets.
#[derive(Clone, Debug)]
pub struct Prepared<'r> {
    reasoner: &'r Reasoner,
    items: Vec<Assertion>,
    position: HashMap<Assertion, usize>,
    individuals: HashMap<String, usize>,
    enc: Encoded,
}

impl<'r> Prepared<'r> {
    fn new(reasoner: &'r Reasoner, items: Vec<Assertion>) -> Prepared<'r> {
        let mut individuals: HashMap<String, usize> = HashMap::new();
        let mut ind = |s: &str| {
            let n = individuals.len();
            *individuals.entry(s.to_string()).or_insert(n)
        };
        let enc = match &reasoner.engine {
            Engine::DlLite(d) => {
                let contrib: Vec<_> = items.iter().map(|a| d.contribution(a, &mut ind)).collect();
                let unsat: Vec<bool> = contrib.iter().map(|c| d.contribution_unsat(c)).collect();
                let n = items.len();
                let mut clash = vec![Bits::empty(n); n];
                // Clashes need a shared individual, so only items meeting at one are compared.
                let mut at: HashMap<usize, Vec<usize>> = HashMap::new();
                for (i, c) in contrib.iter().enumerate() {
                    let mut xs: Vec<usize> = c.basics.iter().map(|&(x, _)| x).collect();
                    xs.sort_unstable();
                    xs.dedup();
                    for x in xs {
                        at.entry(x).or_default().push(i);
                    }
                }
                for items in at.values() {
                    for (k, &i) in items.iter().enumerate() {
                        for &j in &items[k + 1..] {
                            if !clash[i].contains(j) && d.clash(&contrib[i], &contrib[j]) {
                                clash[i].insert(j);
                                clash[j].insert(i);
                            }
                        }
                    }
                }
                Encoded::DlLite { contrib, unsat, clash }
            }
            Engine::El(e) => Encoded::El { facts: items.iter().map(|a| e.encode(a, &mut ind)).collect() },
        };
        let position = items.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Prepared { reasoner, items, position, individuals, enc }
    }

    pub fn reasoner(&self) -> &'r Reasoner {
        self.reasoner
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Assertion] {
        &self.items
    }

    pub fn all(&self) -> Bits {
        Bits::full(self.items.len())
    }

    pub fn none(&self) -> Bits {
        Bits::empty(self.items.len())
    }

    pub fn index_of(&self, a: &Assertion) -> Option<usize> {
        self.position.get(a).copied()
    }

    /// Bits of the members of `abox` that are items; others are ignored.
    pub fn bits_of<'a, I: IntoIterator<Item = &'a Assertion>>(&self, abox: I) -> Bits {
        Bits::from_indices(self.items.len(), abox.into_iter().filter_map(|a| self.index_of(a)))
    }

    pub fn to_abox(&self, b: &Bits) -> ABox {
        b.iter().map(|i| self.items[i].clone()).collect()
    }

    pub fn consistent(&self, sel: &Bits) -> bool {
        match (&self.enc, &self.reasoner.engine) {
            (Encoded::DlLite { unsat, clash, .. }, _) => {
                sel.iter().all(|i| !unsat[i] && !clash[i].intersects(sel))
            }
            (Encoded::El { facts }, Engine::El(e)) => {
                if e.tbox_unsatisfiable() {
                    return false;
                }
                let fs: Vec<elbot::Fact> = sel.iter().filter_map(|i| facts[i]).collect();
                let labels = e.saturate(self.individuals.len(), &fs, true);
                !labels.iter().any(|l| l.contains(elbot::BOT))
            }
            _ => unreachable!(),
        }
    }

    /// Monotone derivation of `obs`, ignoring whether the subset is consistent.
    pub fn derives(&self, sel: &Bits, obs: &Assertion) -> bool {
        if let Some(i) = self.index_of(obs) {
            if sel.contains(i) {
                return true;
            }
        }
        let Assertion::Concept(target, x) = obs else { return false };
        let node = self.individuals.get(x.as_str()).copied();
        match (&self.enc, &self.reasoner.engine) {
            (Encoded::DlLite { contrib, .. }, Engine::DlLite(d)) => {
                let Some(node) = node else { return false };
                sel.iter().any(|i| d.implies(&contrib[i], node, target))
            }
            (Encoded::El { facts }, Engine::El(e)) => {
                if e.top_implies(target) {
                    return true;
                }
                let (Some(node), Some(t)) = (node, e.concept_id(target)) else { return false };
                let fs: Vec<elbot::Fact> = sel.iter().filter_map(|i| facts[i]).collect();
                let labels = e.saturate(self.individuals.len(), &fs, false);
                labels[node].contains(t)
            }
            _ => unreachable!(),
        }
    }

    pub fn entails(&self, sel: &Bits, obs: &Assertion) -> bool {
        !self.consistent(sel) || self.derives(sel, obs)
    }

    /// Single items that derive `obs` on their own.
    pub fn singleton_supports(&self, obs: &Assertion) -> Bits {
        let n = self.items.len();
        Bits::from_indices(n, (0..n).filter(|&i| self.derives(&Bits::from_indices(n, [i]), obs)))
    }

    pub fn conflicts(&self) -> Result<Vec<Bits>> {
        match &self.enc {
            Encoded::DlLite { unsat, clash, .. } => {
                let n = self.items.len();
                let mut out: Vec<Bits> = (0..n).filter(|&i| unsat[i]).map(|i| Bits::from_indices(n, [i])).collect();
                for i in 0..n {
                    for j in clash[i].iter().filter(|&j| j > i) {
                        if !unsat[i] && !unsat[j] {
                            out.push(Bits::from_indices(n, [i, j]));
                        }
                    }
                }
                out.sort();
                Ok(out)
            }
            Encoded::El { .. } => Ok(self.conflicts_and_repairs()?.0),
        }
    }

    /// Minimal inconsistent subsets and maximal consistent subsets.
    pub fn conflicts_and_repairs(&self) -> Result<(Vec<Bits>, Vec<Bits>)> {
        let limits = &self.reasoner.limits;
        match &self.enc {
            Encoded::DlLite { .. } => {
                let conflicts = self.conflicts()?;
                let mut repairs: Vec<Bits> = duality::minimal_hitting_sets(self.len(), &conflicts, limits.repairs)?
                    .into_iter()
                    .map(|h| h.complement())
                    .collect();
                repairs.sort();
                Ok((conflicts, repairs))
            }
            Encoded::El { .. } => {
                let d = duality::enumerate(self.len(), |b| !self.consistent(b), limits)?;
                Ok((d.minimal, d.maximal_false))
            }
        }
    }

    /// Minimal consistent subsets deriving `obs`.
    pub fn supports(&self, obs: &Assertion) -> Result<Vec<Bits>> {
        let n = self.items.len();
        let mut out: Vec<Bits> = match &self.enc {
            Encoded::DlLite { .. } => self.singleton_supports(obs).iter().map(|i| Bits::from_indices(n, [i])).collect(),
            Encoded::El { .. } => {
                if self.derives(&self.none(), obs) {
                    vec![self.none()]
                } else {
                    duality::enumerate(n, |b| self.derives(b, obs), &self.reasoner.limits)?.minimal
                }
            }
        };
        out.retain(|s| self.consistent(s));
        out.sort();
        Ok(out)
    }
}

/// Result of a classical entailment check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entailment {
    pub holds: bool,
    /// The ABox is T-inconsistent, so everything follows.
    pub vacuous: bool,
}

pub fn is_consistent(kb: &KnowledgeBase) -> bool {
    Reasoner::for_kb(kb).is_consistent(&kb.abox)
}

pub fn entails_classical(kb: &KnowledgeBase, obs: &Assertion) -> Entailment {
    let r = Reasoner::for_kb(kb);
    let p = r.prepare_abox(&kb.abox);
    let all = p.all();
    if !p.consistent(&all) {
        return Entailment { holds: true, vacuous: true };
    }
    Entailment { holds: p.derives(&all, obs), vacuous: false }
}

pub fn concept_satisfiable(kb: &KnowledgeBase, c: &ConceptName) -> bool {
    Reasoner::for_kb(kb).concept_satisfiable(c)
}

pub fn min_conflicts(kb: &KnowledgeBase) -> Result<Vec<ABox>> {
    Reasoner::for_kb(kb).min_conflicts(&kb.abox)
}

pub fn min_supports(kb: &KnowledgeBase, universe: &ABox, obs: &Assertion) -> Result<Vec<ABox>> {
    Reasoner::for_kb(kb).min_supports(universe, obs)
}
