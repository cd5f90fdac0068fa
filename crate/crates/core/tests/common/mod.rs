#![allow(dead_code)]

use abduce_core::abduction::{
    ar_exists_within, enumerate_hypotheses, exists_hypothesis, make_problem, verify_hypothesis, AbductionProblem,
    Constraints, Minimality, Semantics,
};
use abduce_core::kb::ABox;
use abduce_core::oracle::fuzz::Case;
use abduce_core::oracle::lattice::Lattice;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Disagreements found, as human-readable lines.
#[derive(Default)]
pub struct Report {
    pub checks: usize,
    pub failures: Vec<String>,
    /// Disagreements on the experimental criterion, kept apart.
    pub experimental_failures: Vec<String>,
}

impl Report {
    pub fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.experimental_failures.extend(other.experimental_failures);
    }

    pub fn summary(&self, n: usize) -> String {
        self.failures.iter().take(n).cloned().collect::<Vec<_>>().join("\n")
    }
}

pub fn problem(case: &Case, l: &Lattice) -> AbductionProblem {
    let i = &case.instance;
    make_problem(i.kb.clone(), i.obs.clone(), l.semantics, Some(i.signature.clone()))
        .unwrap_or_else(|e| panic!("promise rejected ({e}) for\n{}", describe(case, l)))
}

pub fn describe(case: &Case, l: &Lattice) -> String {
    let i = &case.instance;
    format!(
        "{}obs {}\nsig {}\nsemantics {}",
        abduce_core::kb::serialize_kb(&i.kb),
        i.obs,
        i.signature,
        l.semantics
    )
}

fn show(l: &Lattice, h: u32) -> String {
    abduce_core::kb::format_abox(&l.abox(h))
}

/// Hypotheses to verify: the oracle's first few hypotheses, some random subsets of
/// the allowed assertions and some random subsets of the whole lattice.
fn sample(l: &Lattice, c: Constraints, rng: &mut ChaCha8Rng, per_kind: usize) -> Vec<u32> {
    let mut out: Vec<u32> = l.hypotheses(c).iter().copied().take(per_kind).collect();
    let allowed = l.allowed(c);
    for _ in 0..per_kind {
        out.push(rng.gen::<u32>() & rng.gen::<u32>() & allowed);
        out.push(rng.gen::<u32>() & rng.gen::<u32>() & l.full());
    }
    // Supersets of hypotheses exercise the minimality checks.
    let hs: Vec<u32> = l.hypotheses(c).iter().copied().take(per_kind).collect();
    for h in hs {
        out.push(h | (rng.gen::<u32>() & rng.gen::<u32>() & allowed));
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn constraint_sets(l: &Lattice) -> Vec<Constraints> {
    Constraints::all().filter(|c| !(c.conflict_confining && l.semantics == Semantics::Classical)).collect()
}

pub fn check_existence(case: &Case, l: &Lattice) -> Report {
    let mut rep = Report::default();
    let p = problem(case, l);
    for c in constraint_sets(l) {
        rep.checks += 1;
        let want = l.exists(c).is_some();
        match exists_hypothesis(&p, c) {
            Ok(e) => {
                if e.exists != want {
                    rep.fail(format!(
                        "exists[{}] engine={} oracle={} ({})\n{}",
                        c.label(),
                        e.exists,
                        want,
                        e.strategy,
                        describe(case, l)
                    ));
                } else if let Some(w) = &e.witness {
                    let ok = l.mask(w).is_some_and(|m| l.is_hypothesis(m, c));
                    if !ok {
                        rep.fail(format!(
                            "exists[{}] witness {} rejected by oracle\n{}",
                            c.label(),
                            abduce_core::kb::format_abox(w),
                            describe(case, l)
                        ));
                    }
                }
            }
            Err(e) => rep.fail(format!("exists[{}] error {e}\n{}", c.label(), describe(case, l))),
        }
    }
    rep
}

pub fn check_verification(case: &Case, l: &Lattice, seed: u64, per_kind: usize) -> Report {
    let mut rep = Report::default();
    let p = problem(case, l);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for c in constraint_sets(l) {
        for h in sample(l, c, &mut rng, per_kind) {
            let hyp: ABox = l.abox(h);
            for m in Minimality::ALL {
                if l.semantics == Semantics::Classical && m.on_conflicts() {
                    continue;
                }
                let experimental = m == Minimality::CardC && l.semantics == Semantics::Brave && !l.kb.dialect.is_dllite();
                let want = l.verify(h, c, m);
                let msg = match verify_hypothesis(&p, &hyp, c, m) {
                    Ok(v) if v.valid == want => None,
                    Ok(v) => Some(format!(
                        "verify[{}, {m}] {} engine={} oracle={} reasons={:?}\n{}",
                        c.label(),
                        show(l, h),
                        v.valid,
                        want,
                        v.reasons,
                        describe(case, l)
                    )),
                    Err(e) => Some(format!("verify[{}, {m}] {} error {e}\n{}", c.label(), show(l, h), describe(case, l))),
                };
                rep.checks += 1;
                if let Some(msg) = msg {
                    if experimental {
                        rep.experimental_failures.push(msg);
                    } else {
                        rep.fail(msg);
                    }
                }
            }
        }
    }
    rep
}

pub fn check_enumeration(case: &Case, l: &Lattice) -> Report {
    let mut rep = Report::default();
    let p = problem(case, l);
    for c in constraint_sets(l) {
        for m in Minimality::ALL {
            if l.semantics == Semantics::Classical && m.on_conflicts() {
                continue;
            }
            rep.checks += 1;
            // The engine enumerates over the names of the KB and the observation (or
            // of the signature); other names never help a hypothesis.
            let scope = if c.signature { l.full() } else { l.plain };
            let want: Vec<ABox> =
                l.enumerate(c, m).into_iter().filter(|&h| h & !scope == 0).map(|h| l.abox(h)).collect();
            match enumerate_hypotheses(&p, c, m, usize::MAX) {
                Ok(got) if got == want => {}
                Ok(got) => rep.fail(format!(
                    "enumerate[{}, {m}] engine={:?} oracle={:?}\n{}",
                    c.label(),
                    got.iter().map(abduce_core::kb::format_abox).collect::<Vec<_>>(),
                    want.iter().map(abduce_core::kb::format_abox).collect::<Vec<_>>(),
                    describe(case, l)
                )),
                Err(e) => rep.fail(format!("enumerate[{}, {m}] error {e}\n{}", c.label(), describe(case, l))),
            }
        }
    }
    rep
}

/// `ar_exists_within` against both brute-force readings: an AR hypothesis inside the
/// candidates, and a single consistent support per repair.
pub fn check_ar_within(case: &Case, l: &Lattice, seed: u64, rounds: usize) -> Report {
    let mut rep = Report::default();
    let p = problem(case, l);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cand_sets = vec![0, l.full() & !l.base];
    for _ in 0..rounds {
        cand_sets.push(rng.gen::<u32>() & l.full() & !l.base);
    }
    for cands in cand_sets {
        rep.checks += 1;
        let a = l.ar_hypothesis_within(cands);
        let b = l.repairwise_supports(cands);
        if a != b {
            rep.fail(format!("oracles disagree on candidates {}\n{}", show(l, cands), describe(case, l)));
        }
        match ar_exists_within(&p, &l.abox(cands)) {
            Ok(w) if w.exists == a => {
                if let Some(h) = &w.witness {
                    if !l.mask(h).is_some_and(|m| l.ar(l.base | m)) {
                        rep.fail(format!("ar-within witness {} is not an AR hypothesis\n{}", show(l, 0), describe(case, l)));
                    }
                }
            }
            Ok(w) => rep.fail(format!(
                "ar-within {} engine={} oracle={}\n{}",
                show(l, cands),
                w.exists,
                a,
                describe(case, l)
            )),
            Err(e) => rep.fail(format!("ar-within error {e}\n{}", describe(case, l))),
        }
    }
    rep
}
