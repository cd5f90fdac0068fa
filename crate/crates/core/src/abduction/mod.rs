//! Abduction problems, hypothesis verification, existence and enumeration.

mod exist;
mod search;
mod space;
mod verify;

use std::fmt;
use std::str::FromStr;

pub use exist::{ar_exists_within, enumerate_hypotheses, exists_hypothesis, ArWithin, Existence};
pub use verify::{check_minimality, verify_hypothesis, Counterexample, Failure, HypothesisVerdict, MinimalityVerdict};

use crate::classical::Reasoner;
use crate::error::{Error, PromiseKind, Result};
use crate::kb::{candidate_universe, restrict_signature, ABox, Assertion, KnowledgeBase, Signature};
use crate::repair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semantics {
    Classical,
    Brave,
    Ar,
}

impl Semantics {
    pub const ALL: [Semantics; 3] = [Semantics::Classical, Semantics::Brave, Semantics::Ar];

    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Classical => "classical",
            Semantics::Brave => "brave",
            Semantics::Ar => "ar",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Semantics {
    type Err = Error;
    fn from_str(s: &str) -> Result<Semantics> {
        Semantics::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown semantics `{s}`")))
    }
}

/// Optional properties a hypothesis must have.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Constraints {
    pub signature: bool,
    pub nontrivial: bool,
    pub conflict_confining: bool,
}

impl Constraints {
    pub const NONE: Constraints = Constraints { signature: false, nontrivial: false, conflict_confining: false };

    /// All eight combinations, unconstrained first.
    pub fn all() -> impl Iterator<Item = Constraints> {
        (0..8u8).map(|m| Constraints { signature: m & 1 != 0, nontrivial: m & 2 != 0, conflict_confining: m & 4 != 0 })
    }

    /// Signature or non-triviality: the constraints that shrink the candidate universe.
    pub fn restricts_universe(&self) -> bool {
        self.signature || self.nontrivial
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.signature {
            parts.push("signature");
        }
        if self.nontrivial {
            parts.push("nontrivial");
        }
        if self.conflict_confining {
            parts.push("conflict-confining");
        }
        if parts.is_empty() {
            "general".to_string()
        } else {
            parts.join("+")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Minimality {
    None,
    Subset,
    Card,
    SubsetC,
    CardC,
}

impl Minimality {
    pub const ALL: [Minimality; 5] =
        [Minimality::None, Minimality::Subset, Minimality::Card, Minimality::SubsetC, Minimality::CardC];

    pub fn as_str(self) -> &'static str {
        match self {
            Minimality::None => "none",
            Minimality::Subset => "subset",
            Minimality::Card => "card",
            Minimality::SubsetC => "subset-c",
            Minimality::CardC => "card-c",
        }
    }

    /// Compares conflict sets rather than hypotheses.
    pub fn on_conflicts(self) -> bool {
        matches!(self, Minimality::SubsetC | Minimality::CardC)
    }
}

impl fmt::Display for Minimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Minimality {
    type Err = Error;
    fn from_str(s: &str) -> Result<Minimality> {
        Minimality::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown minimality `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct AbductionProblem {
    pub kb: KnowledgeBase,
    pub obs: Assertion,
    pub semantics: Semantics,
    pub signature: Option<Signature>,
    /// Non-fatal remarks, e.g. signature individuals that were dropped.
    pub warnings: Vec<String>,
}

/// Builds a problem after checking that the promise holds.
pub fn make_problem(
    kb: KnowledgeBase,
    obs: Assertion,
    semantics: Semantics,
    signature: Option<Signature>,
) -> Result<AbductionProblem> {
    let p = AbductionProblem::unchecked(kb, obs, semantics, signature)?;
    let consistent = crate::classical::is_consistent(&p.kb);
    let entailed = match semantics {
        Semantics::Classical => {
            if !consistent {
                return Err(Error::PromiseViolation(PromiseKind::KbInconsistent));
            }
            crate::classical::entails_classical(&p.kb, &p.obs).holds
        }
        Semantics::Brave | Semantics::Ar => {
            if consistent {
                return Err(Error::PromiseViolation(PromiseKind::KbConsistent));
            }
            if semantics == Semantics::Brave {
                repair::entails_brave(&p.kb, &p.obs)?.holds
            } else {
                repair::entails_ar(&p.kb, &p.obs)?.holds
            }
        }
    };
    if entailed {
        return Err(Error::PromiseViolation(PromiseKind::ObservationEntailed));
    }
    Ok(p)
}

impl AbductionProblem {
    /// Builds a problem without checking the promise. Generated reduction instances
    /// use this because some of them deliberately break it.
    pub fn unchecked(
        kb: KnowledgeBase,
        obs: Assertion,
        semantics: Semantics,
        signature: Option<Signature>,
    ) -> Result<AbductionProblem> {
        if !matches!(obs, Assertion::Concept(..)) {
            return Err(Error::InvalidInput(format!("observation `{obs}` is not a concept assertion")));
        }
        let mut warnings = Vec::new();
        let signature = signature.map(|s| {
            let (s, dropped) = restrict_signature(&kb, &obs, &s);
            for i in dropped {
                warnings.push(format!("signature individual `{i}` does not occur in the KB or observation; dropped"));
            }
            s
        });
        Ok(AbductionProblem { kb, obs, semantics, signature, warnings })
    }

    pub fn reasoner(&self) -> Reasoner {
        Reasoner::for_kb(&self.kb)
    }

    /// Candidate assertions a hypothesis satisfying `c` may draw from.
    pub fn universe(&self, c: Constraints) -> Result<ABox> {
        let sig = if c.signature {
            Some(self.signature.as_ref().ok_or_else(|| {
                Error::InvalidInput("signature-restricted constraint needs a signature".to_string())
            })?)
        } else {
            None
        };
        let mut u = candidate_universe(&self.kb, &self.obs, sig);
        if c.nontrivial {
            u.remove(&self.obs);
        }
        Ok(u)
    }

    /// Syntactic conditions on `hyp`: individuals, signature and non-triviality.
    pub(crate) fn syntactic_failures(&self, hyp: &ABox, c: Constraints) -> Result<Vec<Failure>> {
        let mut known = self.kb.individuals();
        known.extend(self.obs.individuals().cloned());
        let mut out = Vec::new();
        for a in hyp {
            if a.individuals().any(|i| !known.contains(i)) {
                out.push(Failure::ForeignIndividual(a.clone()));
            }
        }
        if c.signature {
            let sig = self.signature.as_ref().ok_or_else(|| {
                Error::InvalidInput("signature-restricted constraint needs a signature".to_string())
            })?;
            for a in hyp {
                if !sig.admits(a) {
                    out.push(Failure::OutsideSignature(a.clone()));
                }
            }
        }
        if c.nontrivial && hyp.contains(&self.obs) {
            out.push(Failure::Trivial);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
