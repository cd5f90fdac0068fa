//! Acceptance run: one line per criterion, non-zero exit if any fails.
//! Built with `harness = false` so the lines reach the terminal uncaptured.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use abduce_core::abduction::{
    check_minimality, exists_hypothesis, make_problem, verify_hypothesis, Constraints, Minimality, Semantics,
};
use abduce_core::classical::{concept_satisfiable, Reasoner};
use abduce_core::kb::{format_abox, ABox, Assertion, Dialect};
use abduce_core::oracle::fuzz::{corpus, Case};
use abduce_core::reduction::random::{digraph, mus_pair, three_cnf, two_block_qbf};
use abduce_core::reduction::*;
use abduce_core::repair::{entails_ar, entails_brave, is_conflict_confining};
use common::Report;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DIALECTS: [Dialect; 3] = [Dialect::DlLiteCore, Dialect::DlLiteR, Dialect::ElBot];
const CORPUS: usize = 500;

type Outcome = Result<String, Vec<String>>;

fn c(name: &str, ind: &str) -> Assertion {
    Assertion::concept(name, ind)
}

fn abox(items: &[Assertion]) -> ABox {
    items.iter().cloned().collect()
}

fn expect(errs: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        errs.push(what.into());
    }
}

fn within(errs: &mut Vec<String>, t: Duration, limit: Duration) {
    expect(errs, t < limit, format!("took {t:.2?}, limit {limit:?}"));
}

fn done(errs: Vec<String>, detail: String) -> Outcome {
    if errs.is_empty() {
        Ok(detail)
    } else {
        Err(errs)
    }
}

fn diabetes() -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    let kb = builtin_example("diabetes").unwrap().kb;
    let mut brave = BTreeSet::new();
    let mut ar = BTreeSet::new();
    for name in ["High", "Low", "GlycemicCrisis", "Ketoacidosis", "OverdosedInsulin", "DiabeticComa"] {
        for ind in ["patient", "l"] {
            let a = c(name, ind);
            if entails_brave(&kb, &a).unwrap().holds {
                brave.insert(a.to_string());
            }
            if entails_ar(&kb, &a).unwrap().holds {
                ar.insert(a.to_string());
            }
        }
    }
    let want: BTreeSet<String> = ["GlycemicCrisis(patient)", "High(l)", "Low(l)"].map(String::from).into();
    expect(&mut errs, brave == want, format!("brave consequences {brave:?}"));
    expect(&mut errs, ar == ["GlycemicCrisis(patient)".to_string()].into(), format!("AR consequences {ar:?}"));
    let obs = c("DiabeticComa", "patient");
    for (hyp, ar_valid) in [("OverdosedInsulin", false), ("Ketoacidosis", true)] {
        let h = abox(&[c(hyp, "patient")]);
        for (s, want) in [(Semantics::Brave, true), (Semantics::Ar, ar_valid)] {
            let p = make_problem(kb.clone(), obs.clone(), s, None).unwrap();
            let got = verify_hypothesis(&p, &h, Constraints::NONE, Minimality::None).unwrap().valid;
            expect(&mut errs, got == want, format!("{hyp} under {s}: {got}"));
        }
    }
    let t = start.elapsed();
    within(&mut errs, t, Duration::from_secs(1));
    done(errs, format!("{t:.2?}"))
}

fn non_convex() -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    let kb = builtin_example("ar-non-convex").unwrap().kb;
    let p = make_problem(kb, c("A", "a"), Semantics::Ar, None).unwrap();
    let b1 = abox(&[c("B1", "a")]);
    let b2 = abox(&[c("B1", "a"), c("B2", "a")]);
    let b3 = abox(&[c("B1", "a"), c("B2", "a"), c("B3", "a")]);
    for (name, h, want) in [("B1", &b1, true), ("B2", &b2, false), ("B3", &b3, true)] {
        let got = verify_hypothesis(&p, h, Constraints::NONE, Minimality::None).unwrap().valid;
        expect(&mut errs, got == want, format!("{name}: {got}"));
    }
    let m = check_minimality(&p, &b3, Constraints::NONE, Minimality::Subset).unwrap();
    expect(&mut errs, !m.minimal, "B3 accepted as subset-minimal");
    expect(&mut errs, m.counterexample.as_ref() == Some(&b1), format!("counterexample {:?}", m.counterexample.as_ref().map(format_abox)));
    let t = start.elapsed();
    within(&mut errs, t, Duration::from_secs(1));
    done(errs, format!("{t:.2?}"))
}

fn conflict_confinement() -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    let kb = builtin_example("brave-cc").unwrap().kb;
    let p = make_problem(kb.clone(), c("A", "a"), Semantics::Brave, None).unwrap();
    let cc = Constraints { conflict_confining: true, ..Constraints::NONE };
    let a = abox(&[c("A", "a")]);
    let d = abox(&[c("D", "a")]);
    expect(&mut errs, verify_hypothesis(&p, &a, Constraints::NONE, Minimality::None).unwrap().valid, "{A(a)} not a brave hypothesis");
    let v = verify_hypothesis(&p, &a, cc, Minimality::None).unwrap();
    let fresh = abox(&[c("A", "a"), c("B", "a")]);
    expect(&mut errs, !v.valid, "{A(a)} accepted as conflict-confining");
    expect(&mut errs, v.fresh_conflicts == vec![fresh.clone()], format!("fresh conflicts {:?}", v.fresh_conflicts.iter().map(format_abox).collect::<Vec<_>>()));
    expect(&mut errs, is_conflict_confining(&kb, &a).unwrap().fresh_conflict == Some(fresh), "repair-level fresh conflict");
    expect(&mut errs, verify_hypothesis(&p, &d, cc, Minimality::None).unwrap().valid, "{D(a)} rejected");
    done(errs, format!("{:.2?}", start.elapsed()))
}

fn non_triviality() -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    let kb = builtin_example("non-triv").unwrap().kb;
    let p = make_problem(kb, c("A", "a"), Semantics::Brave, None).unwrap();
    let nt = Constraints { nontrivial: true, ..Constraints::NONE };
    let e = exists_hypothesis(&p, nt).unwrap();
    expect(&mut errs, e.exists, "no non-trivial hypothesis found");
    match &e.witness {
        Some(w) => expect(&mut errs, verify_hypothesis(&p, w, nt, Minimality::None).unwrap().valid, format!("witness {} fails", format_abox(w))),
        None => errs.push("no witness".into()),
    }
    let rel = abox(&[Assertion::role("r", "a", "a")]);
    expect(&mut errs, !verify_hypothesis(&p, &rel, nt, Minimality::None).unwrap().valid, "{r(a, a)} accepted");
    done(errs, format!("{:.2?}, witness {}", start.elapsed(), e.witness.as_ref().map(format_abox).unwrap_or_default()))
}

fn obs_concept(a: &Assertion) -> &abduce_core::kb::ConceptName {
    match a {
        Assertion::Concept(c, _) => c,
        Assertion::Role(..) => unreachable!("observations are concept assertions"),
    }
}

fn trivial_laws(corpora: &[(Dialect, Vec<Case>)]) -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    let mut counts = Vec::new();
    for (d, cases) in corpora {
        let (mut nb, mut na) = (0, 0);
        for case in cases {
            let i = &case.instance;
            if let Some(l) = case.lattice(Semantics::Brave) {
                nb += 1;
                let p = common::problem(case, l);
                let got = exists_hypothesis(&p, Constraints::NONE).unwrap().exists;
                let sat = concept_satisfiable(&i.kb, obs_concept(&i.obs));
                expect(&mut errs, got == sat, format!("brave exists={got} satisfiable={sat}\n{}", common::describe(case, l)));
            }
            if let Some(l) = case.lattice(Semantics::Ar) {
                na += 1;
                let p = common::problem(case, l);
                let single = abox(std::slice::from_ref(&i.obs));
                let got = exists_hypothesis(&p, Constraints::NONE).unwrap().exists;
                let cc = is_conflict_confining(&i.kb, &single).unwrap().holds;
                let v = verify_hypothesis(&p, &single, Constraints::NONE, Minimality::None).unwrap().valid;
                expect(&mut errs, got == cc && cc == v, format!("AR exists={got} cc={cc} verifies={v}\n{}", common::describe(case, l)));
            }
        }
        expect(&mut errs, cases.len() >= CORPUS, format!("{d}: only {} instances", cases.len()));
        counts.push(format!("{d} {} ({nb} brave, {na} ar)", cases.len()));
    }
    let t = start.elapsed();
    within(&mut errs, t, Duration::from_secs(300));
    done(errs, format!("{}; {t:.2?}", counts.join(", ")))
}

fn oracle_equivalence(corpora: &[(Dialect, Vec<Case>)], classical: &[(Dialect, Vec<Case>)]) -> Outcome {
    let start = Instant::now();
    let mut total = Report::default();
    for (j, case) in corpora.iter().chain(classical).flat_map(|(_, cs)| cs).enumerate() {
        for l in &case.lattices {
            total.absorb(common::check_existence(case, l));
            total.absorb(common::check_verification(case, l, j as u64, 3));
        }
    }
    let detail = format!(
        "{} checks, {} experimental disagreements (not counted), {:.2?}",
        total.checks,
        total.experimental_failures.len(),
        start.elapsed()
    );
    done(total.failures, detail)
}

fn dllite_structure(corpora: &[(Dialect, Vec<Case>)]) -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    let mut checks = 0;
    for (d, cases) in corpora {
        if !d.is_dllite() {
            continue;
        }
        for (j, case) in cases.iter().enumerate() {
            let i = &case.instance;
            let l = &case.lattices[0];
            let universe = l.abox(l.full());
            let r = Reasoner::for_kb(&i.kb);
            for conflict in r.min_conflicts(&universe).unwrap() {
                checks += 1;
                expect(&mut errs, conflict.len() <= 2, format!("conflict {}\n{}", format_abox(&conflict), common::describe(case, l)));
            }
            for support in r.min_supports(&universe, &i.obs).unwrap() {
                checks += 1;
                expect(&mut errs, support.len() == 1, format!("support {}\n{}", format_abox(&support), common::describe(case, l)));
            }
            if let Some(l) = case.lattice(Semantics::Ar) {
                let rep = common::check_ar_within(case, l, j as u64, 4);
                checks += rep.checks;
                errs.extend(rep.failures);
            }
        }
    }
    done(errs, format!("{checks} checks, {:.2?}", start.elapsed()))
}

/// Cross-checks `n` instances and compares the primary verdict with `truth`,
/// computed straight from the source.
fn reduce<S>(
    errs: &mut Vec<String>,
    label: &str,
    n: usize,
    seed: u64,
    mut source: impl FnMut(&mut ChaCha8Rng) -> S,
    build: impl Fn(&S) -> ReductionInstance,
    truth: impl Fn(&S) -> bool,
) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut yes = 0;
    for _ in 0..n {
        let s = source(&mut rng);
        let inst = build(&s);
        let want = truth(&s);
        yes += want as usize;
        let outcomes = cross_check(&inst);
        expect(errs, outcomes[0].engine.as_ref().ok() == Some(&want), format!("{label}: engine {:?}, source oracle {want}\n{:?}", outcomes[0].engine, inst.source));
        for o in outcomes.iter().filter(|o| !o.agrees()) {
            errs.push(format!("{label}: {}\n{:?}", o.describe(), inst.source));
        }
    }
    format!("{label} {n} ({yes} yes)")
}

fn reductions() -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    let mut parts = Vec::new();
    parts.push(reduce(
        &mut errs,
        "reach",
        200,
        81,
        |r| digraph(r, 12),
        |g| gen_digraph_instance(g, DigraphMode::ReachBraveVerify).unwrap(),
        reachable,
    ));
    parts.push(reduce(
        &mut errs,
        "unsat",
        100,
        82,
        |r| three_cnf(r, 8),
        |f| gen_cnf_instance(f, CnfMode::UnsatArVerify).unwrap(),
        |f| !sat_brute(f).unwrap(),
    ));
    parts.push(reduce(
        &mut errs,
        "mus",
        50,
        83,
        |r| mus_pair(r, 6, 16),
        |(f, s)| gen_mus_instance(f, s).unwrap(),
        |(f, s)| is_mus(f, s).unwrap(),
    ));
    for (k, &mode) in QbfMode::ALL.iter().enumerate() {
        let (outer, form) = match mode {
            QbfMode::EaSigArElbot | QbfMode::EaNontrivialArElbot => (Quant::Exists, Form::Dnf),
            _ => (Quant::Forall, Form::Cnf),
        };
        let negate = mode == QbfMode::AeCcBraveElbot;
        parts.push(reduce(
            &mut errs,
            mode.as_str(),
            30,
            90 + k as u64,
            |r| two_block_qbf(r, outer, 3, 5, form),
            |q| gen_qbf_instance(q, mode).unwrap(),
            |q| qbf_brute(q).unwrap() != negate,
        ));
    }
    let t = start.elapsed();
    within(&mut errs, t, Duration::from_secs(600));
    done(errs, format!("{}; {t:.2?}", parts.join(", ")))
}

fn classical_sat() -> Outcome {
    let start = Instant::now();
    let mut errs = Vec::new();
    let mut parts = Vec::new();
    for (k, mode) in [CnfMode::SatSigElbotClassical, CnfMode::SatNontrivialElbotClassical].into_iter().enumerate() {
        parts.push(reduce(
            &mut errs,
            mode.as_str(),
            100,
            120 + k as u64,
            |r| three_cnf(r, 8),
            |f| gen_cnf_instance(f, mode).unwrap(),
            |f| sat_brute(f).unwrap(),
        ));
    }
    done(errs, format!("{}; {:.2?}", parts.join(", "), start.elapsed()))
}

fn report(n: usize, name: &str, outcome: Outcome) -> bool {
    match outcome {
        Ok(detail) => {
            println!("criterion {n} PASS  {name}: {detail}");
            true
        }
        Err(errs) => {
            println!("criterion {n} FAIL  {name}: {} violations", errs.len());
            for e in errs.iter().take(3) {
                println!("    {}", e.replace('\n', "\n    "));
            }
            false
        }
    }
}

fn main() {
    let mut ok = true;
    ok &= report(1, "diabetes fixture", diabetes());
    ok &= report(2, "non-convexity fixture", non_convex());
    ok &= report(3, "conflict-confinement fixture", conflict_confinement());
    ok &= report(4, "non-triviality fixture", non_triviality());
    let corpora: Vec<(Dialect, Vec<Case>)> =
        DIALECTS.iter().enumerate().map(|(k, &d)| (d, corpus(d, 500 + k as u64, CORPUS, false).0)).collect();
    ok &= report(5, "trivial-hypothesis laws", trivial_laws(&corpora));
    let classical: Vec<(Dialect, Vec<Case>)> =
        DIALECTS.iter().enumerate().map(|(k, &d)| (d, corpus(d, 600 + k as u64, CORPUS, true).0)).collect();
    ok &= report(6, "oracle equivalence", oracle_equivalence(&corpora, &classical));
    ok &= report(7, "DL-Lite structure", dllite_structure(&corpora));
    ok &= report(8, "reduction cross-checks", reductions());
    ok &= report(9, "classical existence vs SAT", classical_sat());
    if !ok {
        std::process::exit(1);
    }
}
