use super::*;
use crate::kb::validate_dialect;

fn cnf(v: u32, cs: &[&[i32]]) -> Cnf {
    Cnf::new(v, cs.iter().map(|c| c.to_vec()).collect(), Form::Cnf).unwrap()
}

fn agree(inst: &ReductionInstance) {
    validate_dialect(&inst.kb).unwrap();
    for o in cross_check(inst) {
        assert!(o.agrees(), "{}: {}", inst.name, o.describe());
    }
}

#[test]
fn reach_examples() {
    let g = Digraph::new("s", "t", &[("s", "t")]).unwrap();
    let i = gen_digraph_instance(&g, DigraphMode::ReachBraveVerify).unwrap();
    assert!(i.oracle_answer());
    assert!(i.promise().is_ok());
    agree(&i);
    let g2 = Digraph::new("s", "t", &[]).unwrap();
    let i2 = gen_digraph_instance(&g2, DigraphMode::ReachBraveVerify).unwrap();
    assert!(!i2.oracle_answer());
    agree(&i2);
}

#[test]
fn unreach_examples() {
    let path = Digraph::new("s", "t", &[("s", "v"), ("v", "t")]).unwrap();
    let i = gen_digraph_instance(&path, DigraphMode::UnreachCc).unwrap();
    assert!(!i.oracle_answer());
    agree(&i);
    let back = Digraph::new("s", "t", &[("t", "v"), ("v", "s")]).unwrap();
    let j = gen_digraph_instance(&back, DigraphMode::UnreachCc).unwrap();
    assert!(j.oracle_answer());
    agree(&j);
    let same = Digraph::new("s", "s", &[]).unwrap();
    assert!(matches!(gen_digraph_instance(&same, DigraphMode::UnreachCc), Err(Error::InvalidSource(_))));
}

#[test]
fn unsat_reduction_has_four_axioms() {
    let f = cnf(1, &[&[1], &[-1]]);
    let i = gen_cnf_instance(&f, CnfMode::UnsatArVerify).unwrap();
    assert_eq!(i.kb.tbox.len(), 4);
    assert!(i.oracle_answer());
    agree(&i);
    let g = cnf(1, &[&[1]]);
    let j = gen_cnf_instance(&g, CnfMode::UnsatArVerify).unwrap();
    assert!(!j.oracle_answer());
    agree(&j);
}

#[test]
fn unsat_instance_supports_every_repair() {
    let f = cnf(1, &[&[1], &[-1]]);
    let i = gen_cnf_instance(&f, CnfMode::UnsatArVerify).unwrap();
    let p = i.problem(Semantics::Ar).unwrap();
    assert!(crate::abduction::ar_exists_within(&p, i.candidate().unwrap()).unwrap().exists);
}

#[test]
fn card_min_and_mus() {
    let f = cnf(1, &[&[1], &[-1]]);
    agree(&gen_cnf_instance(&f, CnfMode::UnsatArCardMin).unwrap());
    let i = gen_cnf_instance(&f, CnfMode::MusSubsetMin).unwrap();
    assert!(i.oracle_answer());
    agree(&i);
    let g = cnf(2, &[&[1], &[-1], &[2]]);
    let j = gen_mus_instance(&g, &[0, 1, 2]).unwrap();
    assert!(!j.oracle_answer());
    agree(&j);
    assert!(gen_mus_instance(&g, &[3]).is_err());
}

#[test]
fn elbot_sat_modes() {
    for f in [cnf(2, &[&[1, 2], &[-1]]), cnf(1, &[&[1], &[-1]])] {
        for mode in [CnfMode::SatSigElbotClassical, CnfMode::SatSigElbotBrave, CnfMode::SatNontrivialElbotClassical] {
            let i = gen_cnf_instance(&f, mode).unwrap();
            assert!(i.promise().is_ok(), "{mode}");
            agree(&i);
        }
    }
}

#[test]
fn form_tags_are_enforced() {
    let dnf = Cnf::new(1, vec![vec![1], vec![-1]], Form::Dnf).unwrap();
    let i = gen_cnf_instance(&dnf, CnfMode::ForallDnfNontrivialArDllite).unwrap();
    assert!(i.oracle_answer());
    agree(&i);
    assert!(matches!(gen_cnf_instance(&dnf, CnfMode::UnsatArVerify), Err(Error::InvalidSource(_))));
    let plain = cnf(1, &[&[1]]);
    assert!(matches!(gen_cnf_instance(&plain, CnfMode::ForallDnfNontrivialArDllite), Err(Error::InvalidSource(_))));
}

#[test]
fn qbf_examples() {
    // ∃y∀z.(y ∧ ¬y) as a DNF
    let contradiction = parse_qdimacs("c form=dnf\np cnf 2 1\ne 1 0\na 2 0\n1 -1 0\n").unwrap();
    let i = gen_qbf_instance(&contradiction, QbfMode::EaSigArElbot).unwrap();
    assert!(!i.oracle_answer());
    agree(&i);
    // ∀x∃y.(x ↔ y)
    let iff = parse_qdimacs("p cnf 2 2\na 1 0\ne 2 0\n-1 2 0\n1 -2 0\n").unwrap();
    let j = gen_qbf_instance(&iff, QbfMode::Pi2SubsetminArElbot).unwrap();
    assert!(j.oracle_answer());
    agree(&j);
    // ∀y∃z.(z)
    let sat = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n2 0\n").unwrap();
    let k = gen_qbf_instance(&sat, QbfMode::AeCcBraveElbot).unwrap();
    assert!(!k.oracle_answer());
    agree(&k);
    agree(&gen_qbf_instance(&sat, QbfMode::AeSubsetcBraveElbot).unwrap());
    assert!(gen_qbf_instance(&sat, QbfMode::EaSigArElbot).is_err());
}

#[test]
fn builtin_examples_match_engine() {
    for name in EXAMPLES {
        let i = builtin_example(name).unwrap();
        assert!(i.promise().is_ok(), "{name}");
        agree(&i);
    }
    assert!(builtin_example("nope").is_err());
    let nc = builtin_example("ar-non-convex").unwrap();
    let answers: Vec<bool> = nc.checks.iter().take(3).map(|c| c.oracle_answer).collect();
    assert_eq!(answers, vec![true, false, true]);
}

#[test]
fn mode_names_parse() {
    assert_eq!("unreach-cc".parse::<Mode>().unwrap(), Mode::Digraph(DigraphMode::UnreachCc));
    assert_eq!("ae-subsetc-brave-elbot".parse::<Mode>().unwrap(), Mode::Qbf(QbfMode::AeSubsetcBraveElbot));
    assert!("nope".parse::<Mode>().is_err());
}
