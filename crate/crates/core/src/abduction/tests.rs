use super::*;
use crate::kb::{parse_kb, parse_signature};

fn abox(items: &[Assertion]) -> ABox {
    items.iter().cloned().collect()
}

fn c(name: &str, ind: &str) -> Assertion {
    Assertion::concept(name, ind)
}

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

fn non_convex() -> KnowledgeBase {
    parse_kb("DIALECT dllite-core\nTBOX\nB1 <= not(B2)\nC1 <= not(C2)\nB1 <= A\nB3 <= A\nABOX\nC1(a)\nC2(a)\n").unwrap()
}

fn brave_cc() -> KnowledgeBase {
    parse_kb("DIALECT elbot\nTBOX\n(A and B) <= bot\n(B and C) <= bot\n(C and D) <= A\nABOX\nB(a)\nC(a)\n").unwrap()
}

fn non_triv() -> KnowledgeBase {
    parse_kb("DIALECT dllite-core\nTBOX\nB <= (some r)\n(some r) <= A\nA <= not((some inv(r)))\nC <= not(C)\nABOX\nC(a)\n")
        .unwrap()
}

#[test]
fn promise_checks() {
    let coma = c("DiabeticComa", "patient");
    assert!(make_problem(diabetes(), coma.clone(), Semantics::Brave, None).is_ok());
    let crisis = c("GlycemicCrisis", "patient");
    assert_eq!(
        make_problem(diabetes(), crisis, Semantics::Ar, None).unwrap_err(),
        Error::PromiseViolation(PromiseKind::ObservationEntailed)
    );
    let consistent = parse_kb("DIALECT elbot\nTBOX\nABOX\nA(a)\n").unwrap();
    assert_eq!(
        make_problem(consistent, c("B", "a"), Semantics::Brave, None).unwrap_err(),
        Error::PromiseViolation(PromiseKind::KbConsistent)
    );
    assert_eq!(
        make_problem(diabetes(), coma, Semantics::Classical, None).unwrap_err(),
        Error::PromiseViolation(PromiseKind::KbInconsistent)
    );
}

#[test]
fn diabetes_verification() {
    let coma = c("DiabeticComa", "patient");
    let keto = abox(&[c("Ketoacidosis", "patient")]);
    let od = abox(&[c("OverdosedInsulin", "patient")]);
    let brave = make_problem(diabetes(), coma.clone(), Semantics::Brave, None).unwrap();
    let ar = make_problem(diabetes(), coma, Semantics::Ar, None).unwrap();
    for h in [&keto, &od] {
        let v = verify_hypothesis(&brave, h, Constraints::NONE, Minimality::None).unwrap();
        assert!(v.valid);
        assert!(v.witness_repair.is_some());
    }
    assert!(verify_hypothesis(&ar, &keto, Constraints::NONE, Minimality::None).unwrap().valid);
    let v = verify_hypothesis(&ar, &od, Constraints::NONE, Minimality::None).unwrap();
    assert!(!v.valid);
    let Some(Counterexample::Repair(rep)) = v.counterexample else { panic!("expected a repair") };
    assert!(rep.contains(&c("Low", "l")));
    assert!(!rep.contains(&c("High", "l")));
}

#[test]
fn non_convex_ar() {
    let p = make_problem(non_convex(), c("A", "a"), Semantics::Ar, None).unwrap();
    let b1 = abox(&[c("B1", "a")]);
    let b2 = abox(&[c("B1", "a"), c("B2", "a")]);
    let b3 = abox(&[c("B1", "a"), c("B2", "a"), c("B3", "a")]);
    let ok = |h: &ABox| verify_hypothesis(&p, h, Constraints::NONE, Minimality::None).unwrap().valid;
    assert_eq!((ok(&b1), ok(&b2), ok(&b3)), (true, false, true));
    let m = check_minimality(&p, &b3, Constraints::NONE, Minimality::Subset).unwrap();
    assert!(!m.minimal);
    assert_eq!(m.counterexample, Some(b1.clone()));
    assert!(check_minimality(&p, &b1, Constraints::NONE, Minimality::Subset).unwrap().minimal);

    let all = enumerate_hypotheses(&p, Constraints::NONE, Minimality::None, usize::MAX).unwrap();
    assert!(all.contains(&b1) && all.contains(&b3) && !all.contains(&b2));
    let mins = enumerate_hypotheses(&p, Constraints::NONE, Minimality::Subset, 10).unwrap();
    assert!(mins.contains(&b1) && mins.contains(&abox(&[c("B3", "a")])), "{mins:?}");
    assert!(!mins.contains(&b2));

    let within = ar_exists_within(&p, &b1).unwrap();
    assert!(within.exists);
    assert_eq!(within.witness, Some(b1));
    assert!(!ar_exists_within(&p, &ABox::new()).unwrap().exists);
}

#[test]
fn brave_conflict_confinement() {
    let p = make_problem(brave_cc(), c("A", "a"), Semantics::Brave, None).unwrap();
    let cc = Constraints { conflict_confining: true, ..Constraints::NONE };
    let a = abox(&[c("A", "a")]);
    let d = abox(&[c("D", "a")]);
    assert!(verify_hypothesis(&p, &a, Constraints::NONE, Minimality::None).unwrap().valid);
    let v = verify_hypothesis(&p, &a, cc, Minimality::None).unwrap();
    assert!(!v.valid);
    assert_eq!(v.counterexample, Some(Counterexample::FreshConflict(abox(&[c("A", "a"), c("B", "a")]))));
    assert!(verify_hypothesis(&p, &d, cc, Minimality::None).unwrap().valid);
    let e = exists_hypothesis(&p, cc).unwrap();
    assert!(e.exists);
    assert_eq!(e.witness, Some(d.clone()));
    // {A(a)} induces a fresh conflict, {D(a)} none.
    let m = check_minimality(&p, &a, Constraints::NONE, Minimality::SubsetC).unwrap();
    assert_eq!(m.counterexample, Some(d));
}

#[test]
fn non_trivial_brave() {
    let p = make_problem(non_triv(), c("A", "a"), Semantics::Brave, None).unwrap();
    let nt = Constraints { nontrivial: true, ..Constraints::NONE };
    let e = exists_hypothesis(&p, nt).unwrap();
    assert!(e.exists);
    let w = e.witness.unwrap();
    assert_eq!(w, abox(&[c("B", "a")]));
    assert!(verify_hypothesis(&p, &w, nt, Minimality::None).unwrap().valid);
    let raa = abox(&[Assertion::role("r", "a", "a")]);
    assert!(!verify_hypothesis(&p, &raa, nt, Minimality::None).unwrap().valid);
}

#[test]
fn signature_and_nontriviality() {
    let kb = parse_kb("DIALECT elbot\nTBOX\n(A and B) <= C\n(D and (some r C)) <= A\nABOX\nB(m)\nr(m, n)\n").unwrap();
    let sig = parse_signature("concept C\nconcept D\nindividual m\nindividual n\n").unwrap();
    let p = make_problem(kb, c("C", "m"), Semantics::Classical, Some(sig)).unwrap();
    let both = Constraints { signature: true, nontrivial: true, conflict_confining: false };
    let h = abox(&[c("C", "n"), c("D", "m")]);
    assert!(verify_hypothesis(&p, &h, both, Minimality::None).unwrap().valid);
    let sig_only = Constraints { signature: true, ..Constraints::NONE };
    assert!(verify_hypothesis(&p, &abox(&[c("C", "m")]), sig_only, Minimality::None).unwrap().valid);
    let v = verify_hypothesis(&p, &abox(&[c("A", "m")]), both, Minimality::None).unwrap();
    assert_eq!(v.reasons, vec![Failure::OutsideSignature(c("A", "m"))]);
    let e = exists_hypothesis(&p, both).unwrap();
    assert_eq!(e.witness, Some(h));
}

#[test]
fn general_existence_shortcuts() {
    let coma = c("DiabeticComa", "patient");
    let ar = make_problem(diabetes(), coma.clone(), Semantics::Ar, None).unwrap();
    let e = exists_hypothesis(&ar, Constraints::NONE).unwrap();
    assert_eq!(e.witness, Some(abox(&[coma])));
    let kb = parse_kb("DIALECT dllite-core\nTBOX\nA <= not(A)\nB <= not(C)\nABOX\nB(a)\nC(a)\n").unwrap();
    let p = make_problem(kb, c("A", "a"), Semantics::Brave, None).unwrap();
    assert!(!exists_hypothesis(&p, Constraints::NONE).unwrap().exists);
}

#[test]
fn card_minimality_and_enumeration_limits() {
    let coma = c("DiabeticComa", "patient");
    let brave = make_problem(diabetes(), coma.clone(), Semantics::Brave, None).unwrap();
    assert!(enumerate_hypotheses(&brave, Constraints::NONE, Minimality::Subset, 0).unwrap().is_empty());
    let hs = enumerate_hypotheses(&brave, Constraints::NONE, Minimality::Subset, 10).unwrap();
    assert!(hs.contains(&abox(&[c("OverdosedInsulin", "patient")])));
    assert!(hs.contains(&abox(&[c("Ketoacidosis", "patient")])));
    let two = abox(&[c("Ketoacidosis", "patient"), c("OverdosedInsulin", "patient")]);
    let m = check_minimality(&brave, &two, Constraints::NONE, Minimality::Card).unwrap();
    assert_eq!(m.counterexample, Some(abox(&[coma])));
}

#[test]
fn classical_conflict_criteria_are_rejected() {
    let kb = parse_kb("DIALECT elbot\nTBOX\nB <= A\nABOX\nC(a)\n").unwrap();
    let p = make_problem(kb, c("A", "a"), Semantics::Classical, None).unwrap();
    let r = verify_hypothesis(&p, &abox(&[c("B", "a")]), Constraints::NONE, Minimality::CardC);
    assert!(matches!(r, Err(Error::UnsupportedCombination(_))));
}
