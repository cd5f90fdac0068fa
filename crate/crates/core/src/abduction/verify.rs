//! Hypothesis verification and minimality checks.

use super::search;
use super::space::Space;
use super::{AbductionProblem, Constraints, Minimality, Semantics};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::kb::{ABox, Assertion};

/// A failed condition together with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// The assertion uses an individual outside the KB and the observation.
    ForeignIndividual(Assertion),
    OutsideSignature(Assertion),
    /// The hypothesis contains the observation itself.
    Trivial,
    /// Classical semantics: a conflict of `A ∪ H`.
    Inconsistent(ABox),
    /// The observation does not follow; under AR, a repair of `A ∪ H` that misses it.
    NotEntailed(Option<ABox>),
    FreshConflict(ABox),
    /// A hypothesis with the same constraints that is preferred under the criterion.
    NotMinimal(ABox),
}

impl Failure {
    pub fn tag(&self) -> &'static str {
        match self {
            Failure::ForeignIndividual(_) => "foreign-individual",
            Failure::OutsideSignature(_) => "outside-signature",
            Failure::Trivial => "trivial",
            Failure::Inconsistent(_) => "inconsistent",
            Failure::NotEntailed(_) => "not-entailed",
            Failure::FreshConflict(_) => "fresh-conflict",
            Failure::NotMinimal(_) => "not-minimal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    Repair(ABox),
    Conflict(ABox),
    FreshConflict(ABox),
    Smaller(ABox),
}

impl Counterexample {
    pub fn kind(&self) -> &'static str {
        match self {
            Counterexample::Repair(_) => "repair",
            Counterexample::Conflict(_) => "conflict",
            Counterexample::FreshConflict(_) => "fresh-conflict",
            Counterexample::Smaller(_) => "smaller-hypothesis",
        }
    }

    pub fn abox(&self) -> &ABox {
        match self {
            Counterexample::Repair(a)
            | Counterexample::Conflict(a)
            | Counterexample::FreshConflict(a)
            | Counterexample::Smaller(a) => a,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisVerdict {
    pub valid: bool,
    pub reasons: Vec<Failure>,
    /// Brave: a repair of `A ∪ H` entailing the observation.
    pub witness_repair: Option<ABox>,
    pub counterexample: Option<Counterexample>,
    /// Filled when conflict-confinement or a conflict-based criterion is involved.
    pub fresh_conflicts: Vec<ABox>,
    /// Set for cardinality-of-conflicts minimality under brave semantics in EL-bot.
    pub experimental: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityVerdict {
    pub minimal: bool,
    pub counterexample: Option<ABox>,
    pub experimental: bool,
}

impl MinimalityVerdict {
    fn yes() -> MinimalityVerdict {
        MinimalityVerdict { minimal: true, counterexample: None, experimental: false }
    }

    fn beaten_by(b: ABox) -> MinimalityVerdict {
        MinimalityVerdict { minimal: false, counterexample: Some(b), experimental: false }
    }
}

fn reject_classical_conflict_criteria(p: &AbductionProblem, m: Minimality) -> Result<()> {
    if p.semantics == Semantics::Classical && m.on_conflicts() {
        return Err(Error::UnsupportedCombination(format!("{m} minimality under classical semantics")));
    }
    Ok(())
}

pub fn verify_hypothesis(p: &AbductionProblem, hyp: &ABox, c: Constraints, m: Minimality) -> Result<HypothesisVerdict> {
    reject_classical_conflict_criteria(p, m)?;
    let mut reasons = p.syntactic_failures(hyp, c)?;
    let mut extra = hyp.clone();
    if m != Minimality::None {
        extra.extend(p.universe(c)?);
    }
    let r = p.reasoner();
    let s = Space::new(&r, p, &extra);
    let h = s.bits(hyp);

    let out = s.outcome(&h)?;
    if !out.holds {
        match p.semantics {
            Semantics::Classical if out.counterexample.is_some() => {
                reasons.push(Failure::Inconsistent(s.abox(out.counterexample.as_ref().unwrap())))
            }
            _ => reasons.push(Failure::NotEntailed(out.counterexample.as_ref().map(|b| s.abox(b)))),
        }
    }
    if c.conflict_confining && p.semantics != Semantics::Classical {
        if let Some(f) = s.fresh(&h)? {
            reasons.push(Failure::FreshConflict(s.abox(&f)));
        }
    }
    let mut fresh_conflicts: Vec<ABox> = if c.conflict_confining || m.on_conflicts() {
        s.fresh_all(&h)?.iter().map(|b| s.abox(b)).collect()
    } else {
        Vec::new()
    };
    // An assertion of `H` already in `A` can clash with a repair without adding a
    // conflict; its clash is reported too.
    for f in &reasons {
        if let Failure::FreshConflict(x) = f {
            if !fresh_conflicts.contains(x) {
                fresh_conflicts.push(x.clone());
            }
        }
    }
    let mut experimental = false;
    if reasons.is_empty() && m != Minimality::None {
        let mv = minimality(&s, p, &h, c, m)?;
        experimental = mv.experimental;
        if let Some(b) = mv.counterexample {
            reasons.push(Failure::NotMinimal(b));
        }
    }
    let counterexample = reasons.iter().find_map(|f| match f {
        Failure::NotEntailed(Some(r)) => Some(Counterexample::Repair(r.clone())),
        Failure::Inconsistent(x) => Some(Counterexample::Conflict(x.clone())),
        Failure::FreshConflict(x) => Some(Counterexample::FreshConflict(x.clone())),
        Failure::NotMinimal(x) => Some(Counterexample::Smaller(x.clone())),
        _ => None,
    });
    Ok(HypothesisVerdict {
        valid: reasons.is_empty(),
        reasons,
        witness_repair: out.witness.as_ref().map(|b| s.abox(b)),
        counterexample,
        fresh_conflicts,
        experimental,
    })
}

/// Minimality of a hypothesis already known to satisfy `c`, among the hypotheses
/// that satisfy `c` as well.
pub fn check_minimality(p: &AbductionProblem, hyp: &ABox, c: Constraints, m: Minimality) -> Result<MinimalityVerdict> {
    reject_classical_conflict_criteria(p, m)?;
    let mut extra = hyp.clone();
    extra.extend(p.universe(c)?);
    let r = p.reasoner();
    let s = Space::new(&r, p, &extra);
    let h = s.bits(hyp);
    minimality(&s, p, &h, c, m)
}

pub(crate) fn minimality(s: &Space, p: &AbductionProblem, h: &Bits, c: Constraints, m: Minimality) -> Result<MinimalityVerdict> {
    if m == Minimality::None {
        return Ok(MinimalityVerdict::yes());
    }
    let empty = Bits::empty(s.width());
    if m.on_conflicts() {
        let mut v = conflict_minimality(s, p, h, c, m)?;
        v.experimental = m == Minimality::CardC && s.semantics == Semantics::Brave && !s.is_dllite();
        return Ok(v);
    }
    if !h.is_empty() && s.valid(&empty, c)? {
        return Ok(MinimalityVerdict::beaten_by(ABox::new()));
    }
    match m {
        Minimality::Subset => subset_minimality(s, h, c),
        Minimality::Card => card_minimality(s, p, h, c),
        _ => unreachable!(),
    }
}

fn first_valid_singleton(s: &Space, h: &Bits, c: Constraints) -> Result<Option<Bits>> {
    for i in h.iter() {
        let b = s.single(i);
        if s.valid(&b, c)? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

fn shrink_valid(s: &Space, x: &Bits, c: Constraints) -> Result<Bits> {
    let mut cur = x.clone();
    for e in x.iter() {
        let smaller = cur.without(e);
        if s.valid(&smaller, c)? {
            cur = smaller;
        }
    }
    Ok(cur)
}

fn subset_minimality(s: &Space, h: &Bits, c: Constraints) -> Result<MinimalityVerdict> {
    if h.len() <= 1 {
        return Ok(MinimalityVerdict::yes());
    }
    let beaten = |b: &Bits| Ok(MinimalityVerdict::beaten_by(s.abox(b)));
    // In DL-Lite every brave hypothesis, and every conflict-confining AR one, contains
    // a single assertion that is a hypothesis by itself.
    if s.is_dllite() && (s.semantics == Semantics::Brave || (s.semantics == Semantics::Ar && c.conflict_confining)) {
        return match first_valid_singleton(s, h, c)? {
            Some(b) => beaten(&b),
            None => Ok(MinimalityVerdict::yes()),
        };
    }
    if s.semantics == Semantics::Ar && !c.conflict_confining {
        if s.is_dllite() {
            // Report the smallest witness over all direct subsets, canonically first.
            let mut best: Option<Bits> = None;
            for i in h.iter() {
                if let Ok(w) = s.ar_within(&h.without(i))? {
                    if best.as_ref().map_or(true, |b| (w.len(), &w) < (b.len(), b)) {
                        best = Some(w);
                    }
                }
            }
            return match best {
                Some(b) => beaten(&b),
                None => Ok(MinimalityVerdict::yes()),
            };
        }
        // AR hypotheses need not be convex: every proper subset is a candidate.
        let limits = &s.p.reasoner().limits;
        if h.len() > limits.subset_scan {
            return Err(Error::budget("hypothesis size for a subset scan", limits.subset_scan as u64));
        }
        let elems: Vec<usize> = h.iter().collect();
        let found = search::by_cardinality(s.width(), &elems, h.len() - 1, limits, |x| s.valid(x, c))?;
        return match found {
            Some(b) => beaten(&b),
            None => Ok(MinimalityVerdict::yes()),
        };
    }
    // The remaining families are the intersection of an upward-closed condition
    // (entailment) with downward-closed ones (consistency, confinement), so a smaller
    // hypothesis exists iff one of the direct subsets is a hypothesis.
    for i in h.iter() {
        let x = h.without(i);
        if s.valid(&x, c)? {
            return beaten(&shrink_valid(s, &x, c)?);
        }
    }
    Ok(MinimalityVerdict::yes())
}

fn card_minimality(s: &Space, p: &AbductionProblem, h: &Bits, c: Constraints) -> Result<MinimalityVerdict> {
    let limits = &s.p.reasoner().limits;
    let brave_confining_el = s.semantics == Semantics::Brave && c.conflict_confining && !s.is_dllite();
    if !c.restricts_universe() && !brave_confining_el {
        // Some single assertion is a hypothesis: the observation itself, or in
        // DL-Lite an assertion of `H` when conflict-confinement is required.
        if h.len() <= 1 {
            return Ok(MinimalityVerdict::yes());
        }
        if s.is_dllite() && s.semantics == Semantics::Brave && c.conflict_confining {
            if let Some(b) = first_valid_singleton(s, h, c)? {
                return Ok(MinimalityVerdict::beaten_by(s.abox(&b)));
            }
        }
        let o = s.single(s.index_of(&p.obs).expect("observation is indexed"));
        if s.valid(&o, c)? {
            return Ok(MinimalityVerdict::beaten_by(s.abox(&o)));
        }
    }
    let w = s.relevant(&p.kb, &p.universe(c)?);
    let found = match s.semantics {
        Semantics::Brave | Semantics::Classical => {
            let mut found = None;
            for x in s.minimal_hypotheses(&w)? {
                if x.len() >= h.len() {
                    break;
                }
                if s.valid(&x, c)? {
                    found = Some(x);
                    break;
                }
            }
            found
        }
        Semantics::Ar => {
            if h.is_empty() {
                None
            } else {
                search::by_cardinality(s.width(), &w, h.len() - 1, limits, |x| s.valid(x, c))?
            }
        }
    };
    Ok(match found {
        Some(b) => MinimalityVerdict::beaten_by(s.abox(&b)),
        None => MinimalityVerdict::yes(),
    })
}

fn better(m: Minimality, mine: &[Bits], theirs: &[Bits]) -> bool {
    match m {
        Minimality::SubsetC => theirs.len() < mine.len() && theirs.iter().all(|c| mine.contains(c)),
        Minimality::CardC => theirs.len() < mine.len(),
        _ => unreachable!(),
    }
}

fn conflict_minimality(s: &Space, p: &AbductionProblem, h: &Bits, c: Constraints, m: Minimality) -> Result<MinimalityVerdict> {
    let mine = s.fresh_all(h)?;
    if c.conflict_confining || mine.is_empty() {
        return Ok(MinimalityVerdict::yes());
    }
    let obs = s.single(s.index_of(&p.obs).expect("observation is indexed"));
    let limits = &s.p.reasoner().limits;
    let w = s.relevant(&p.kb, &p.universe(c)?);
    match s.semantics {
        Semantics::Classical => unreachable!("rejected earlier"),
        Semantics::Ar => {
            if !c.restricts_universe() {
                // The observation is a conflict-confining AR hypothesis whenever any AR
                // hypothesis exists, so only confining ones are minimal.
                return Ok(MinimalityVerdict::beaten_by(s.abox(&obs)));
            }
            let found = search::by_cardinality(s.width(), &w, w.len(), limits, |x| {
                Ok(s.valid(x, c)? && better(m, &mine, &s.fresh_all(x)?))
            })?;
            Ok(match found {
                Some(b) => MinimalityVerdict::beaten_by(s.abox(&b)),
                None => MinimalityVerdict::yes(),
            })
        }
        Semantics::Brave if s.is_dllite() && !c.restricts_universe() => {
            if m == Minimality::CardC {
                let theirs = s.fresh_all(&obs)?;
                return Ok(if theirs.len() < mine.len() {
                    MinimalityVerdict::beaten_by(s.abox(&obs))
                } else {
                    MinimalityVerdict::yes()
                });
            }
            // Fresh conflicts of a single supporting assertion all contain it, so two
            // such sets are never strictly nested unless one is empty.
            let mut first = None;
            for i in h.iter() {
                let b = s.single(i);
                if !s.valid(&b, c)? {
                    continue;
                }
                first.get_or_insert(b.clone());
                if s.fresh_all(&b)? == mine {
                    return Ok(if s.fresh_all(&obs)?.is_empty() {
                        MinimalityVerdict::beaten_by(s.abox(&obs))
                    } else {
                        MinimalityVerdict::yes()
                    });
                }
            }
            Ok(match first {
                Some(b) => MinimalityVerdict::beaten_by(s.abox(&b)),
                None => MinimalityVerdict::yes(),
            })
        }
        Semantics::Brave => {
            // Conflicts only grow with the hypothesis, so comparing against the
            // subset-minimal brave hypotheses is enough.
            for x in s.minimal_hypotheses(&w)? {
                if better(m, &mine, &s.fresh_all(&x)?) {
                    return Ok(MinimalityVerdict::beaten_by(s.abox(&x)));
                }
            }
            Ok(MinimalityVerdict::yes())
        }
    }
}
