//! Invariants over generated knowledge bases.

use std::collections::BTreeSet;

use abduce_core::abduction::Semantics;
use abduce_core::classical::{entails_classical, is_consistent, min_conflicts, min_supports, Reasoner};
use abduce_core::kb::{candidate_universe, parse_kb, serialize_kb, ABox, Dialect};
use abduce_core::oracle::fuzz::Generator;
use abduce_core::oracle::lattice::{Backend, Lattice};
use abduce_core::oracle::models::{model_consistent, model_entails};
use abduce_core::repair;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dialect() -> impl Strategy<Value = Dialect> {
    prop_oneof![Just(Dialect::DlLiteCore), Just(Dialect::DlLiteR), Just(Dialect::ElBot)]
}

fn as_set(v: Vec<ABox>) -> BTreeSet<ABox> {
    v.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialization_round_trips(d in dialect(), seed in any::<u64>()) {
        let inst = Generator::new(d, seed).raw();
        prop_assert_eq!(parse_kb(&serialize_kb(&inst.kb)).unwrap(), inst.kb);
    }

    #[test]
    fn reasoner_agrees_with_finite_models(d in dialect(), seed in any::<u64>()) {
        let inst = Generator::new(d, seed).raw();
        let kb = &inst.kb;
        let cons = is_consistent(kb);
        prop_assert_eq!(cons, model_consistent(kb.dialect, &kb.tbox, &kb.abox), "{}", serialize_kb(kb));
        if cons {
            let e = entails_classical(kb, &inst.obs).holds;
            prop_assert_eq!(e, model_entails(kb.dialect, &kb.tbox, &kb.abox, &inst.obs), "{}", serialize_kb(kb));
        }
    }

    #[test]
    fn conflicts_and_repairs_match_subset_enumeration(d in dialect(), seed in any::<u64>()) {
        let inst = Generator::new(d, seed).raw();
        let kb = &inst.kb;
        let l = Lattice::new(kb, &inst.obs, Semantics::Brave, None);
        let want: BTreeSet<ABox> = l.conflicts_in(l.base).into_iter().map(|m| l.abox(m)).collect();
        prop_assert_eq!(as_set(min_conflicts(kb).unwrap()), want.clone());
        prop_assert_eq!(want.is_empty(), is_consistent(kb));
        let reps: BTreeSet<ABox> = l.repairs(l.base).iter().map(|&m| l.abox(m)).collect();
        prop_assert_eq!(as_set(repair::repairs(kb).unwrap()), reps);
        if d.is_dllite() {
            prop_assert!(want.iter().all(|c| c.len() <= 2));
        }
    }

    #[test]
    fn supports_are_minimal_and_small_in_dllite(d in dialect(), seed in any::<u64>()) {
        let inst = Generator::new(d, seed).raw();
        let u = candidate_universe(&inst.kb, &inst.obs, None);
        let l = Lattice::new(&inst.kb, &inst.obs, Semantics::Brave, None);
        let want: BTreeSet<ABox> = l.supports.iter().map(|&m| l.abox(m)).collect();
        let got = as_set(min_supports(&inst.kb, &u, &inst.obs).unwrap());
        prop_assert_eq!(&got, &want);
        if d.is_dllite() {
            prop_assert!(got.iter().all(|s| s.len() == 1));
        }
    }

    #[test]
    fn repair_entailment_relations(d in dialect(), seed in any::<u64>()) {
        let inst = Generator::new(d, seed).raw();
        let kb = &inst.kb;
        let brave = repair::entails_brave(kb, &inst.obs).unwrap();
        let ar = repair::entails_ar(kb, &inst.obs).unwrap();
        // With an unsatisfiable TBox there is no repair and AR holds vacuously.
        let has_repair = !repair::repairs(kb).unwrap().is_empty();
        prop_assert!(!has_repair || !ar.holds || brave.holds);
        let l = Lattice::new(kb, &inst.obs, Semantics::Brave, None);
        prop_assert_eq!(brave.holds, l.brave(l.base));
        prop_assert_eq!(ar.holds, l.ar(l.base));
    }

    #[test]
    fn confinement_readings_coincide(d in dialect(), seed in any::<u64>(), pick in any::<u32>()) {
        let inst = Generator::new(d, seed).raw();
        let kb = &inst.kb;
        let l = Lattice::new(kb, &inst.obs, Semantics::Brave, None);
        let h = l.abox(pick & l.full() & !l.base);
        let cc = repair::is_conflict_confining(kb, &h).unwrap();
        let delta = repair::new_conflicts(kb, &h).unwrap();
        prop_assert_eq!(cc.holds, delta.fresh.is_empty());
        let r = Reasoner::for_kb(kb);
        let by_repairs = repair::repairs(kb).unwrap().iter().all(|rep| {
            let mut x = rep.clone();
            x.extend(h.iter().cloned());
            r.is_consistent(&x)
        });
        prop_assert_eq!(cc.holds, by_repairs);
        let want: BTreeSet<ABox> = l.fresh(l.mask(&h).unwrap()).into_iter().map(|m| l.abox(m)).collect();
        prop_assert_eq!(as_set(delta.fresh), want);
    }

    #[test]
    fn confinement_with_abox_overlap(d in dialect(), seed in any::<u64>(), pick in any::<u32>()) {
        // Re-adding a conflicting ABox assertion adds no conflict but still clashes
        // with a repair; confinement follows the repairs.
        let inst = Generator::new(d, seed).raw();
        let kb = &inst.kb;
        let l = Lattice::new(kb, &inst.obs, Semantics::Brave, None);
        let hm = pick & l.full();
        let h = l.abox(hm);
        let cc = repair::is_conflict_confining(kb, &h).unwrap();
        prop_assert_eq!(cc.holds, l.confined(hm));
        if cc.holds {
            prop_assert!(repair::new_conflicts(kb, &h).unwrap().fresh.is_empty());
        } else {
            let f = cc.fresh_conflict.unwrap();
            prop_assert!(!Reasoner::for_kb(kb).is_consistent(&f));
            prop_assert!(f.iter().any(|x| h.contains(x)));
        }
    }

    #[test]
    fn entailment_is_monotone_on_consistent_extensions(d in dialect(), seed in any::<u64>()) {
        let inst = Generator::new(d, seed).raw();
        let r = Reasoner::for_kb(&inst.kb);
        let u = candidate_universe(&inst.kb, &inst.obs, None);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let small: ABox = u.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
        let mut big = small.clone();
        big.extend(u.iter().filter(|_| rng.gen_bool(0.3)).cloned());
        if r.is_consistent(&big) && r.entails(&small, &inst.obs) {
            prop_assert!(r.entails(&big, &inst.obs));
        }
    }

    #[test]
    fn universe_is_monotone_in_the_signature(d in dialect(), seed in any::<u64>()) {
        let inst = Generator::new(d, seed).raw();
        let mut bigger = inst.signature.clone();
        bigger.concepts.insert("A".into());
        bigger.individuals.insert("a".into());
        let u1 = candidate_universe(&inst.kb, &inst.obs, Some(&inst.signature));
        let u2 = candidate_universe(&inst.kb, &inst.obs, Some(&bigger));
        prop_assert!(u1.is_subset(&u2));
        let mut known = inst.kb.individuals();
        known.extend(inst.obs.individuals().cloned());
        prop_assert!(u2.iter().all(|a| a.individuals().all(|i| known.contains(i))));
    }
}

#[test]
fn model_backend_reproduces_reasoner_tables() {
    let mut checked = 0;
    for d in [Dialect::DlLiteCore, Dialect::DlLiteR, Dialect::ElBot] {
        let mut g = Generator::new(d, 99);
        while checked < 40 {
            let inst = g.raw();
            let probe = Lattice::new(&inst.kb, &inst.obs, Semantics::Brave, None);
            if probe.len() > 8 {
                continue;
            }
            let m = Lattice::with_backend(&inst.kb, &inst.obs, Semantics::Brave, None, Backend::Models);
            assert_eq!(probe.conflicts, m.conflicts, "{}", serialize_kb(&inst.kb));
            assert_eq!(probe.supports, m.supports, "{}", serialize_kb(&inst.kb));
            checked += 1;
        }
        checked = 0;
    }
}
