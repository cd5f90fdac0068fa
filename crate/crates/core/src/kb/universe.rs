use std::collections::BTreeSet;

use super::{ABox, Assertion, Individual, KnowledgeBase, Signature};

/// Drops signature individuals that occur neither in the KB nor in the observation.
/// Returns the restricted signature and the dropped names.
pub fn restrict_signature(kb: &KnowledgeBase, obs: &Assertion, sig: &Signature) -> (Signature, Vec<Individual>) {
    let mut known = kb.individuals();
    known.extend(obs.individuals().cloned());
    let mut out = sig.clone();
    let dropped: Vec<Individual> = sig.individuals.iter().filter(|i| !known.contains(*i)).cloned().collect();
    for i in &dropped {
        out.individuals.remove(i);
    }
    (out, dropped)
}

/// Every assertion over the names of `kb` and `obs` (or of `sig` when given) and the
/// individuals of `kb` and `obs` (intersected with those of `sig`).
pub fn candidate_universe(kb: &KnowledgeBase, obs: &Assertion, sig: Option<&Signature>) -> ABox {
    let mut inds: BTreeSet<Individual> = kb.individuals();
    inds.extend(obs.individuals().cloned());
    let (concepts, roles) = match sig {
        Some(sig) => {
            inds.retain(|i| sig.individuals.contains(i));
            (sig.concepts.clone(), sig.roles.clone())
        }
        None => {
            let (mut concepts, roles) = kb.names();
            if let Assertion::Concept(c, _) = obs {
                concepts.insert(c.clone());
            }
            (concepts, roles)
        }
    };
    let mut out = ABox::new();
    for c in &concepts {
        for i in &inds {
            out.insert(Assertion::Concept(c.clone(), i.clone()));
        }
    }
    for r in &roles {
        for a in &inds {
            for b in &inds {
                out.insert(Assertion::Role(r.clone(), a.clone(), b.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;

    #[test]
    fn universe_respects_signature() {
        let kb = parse_kb(
            "DIALECT elbot\nTBOX\n(A and B) <= C\n(D and (some r C)) <= A\nABOX\nB(m)\nr(m, n)\n",
        )
        .unwrap();
        let obs = Assertion::concept("C", "m");
        let mut sig = Signature::default();
        for c in ["C", "D"] {
            sig.concepts.insert(c.into());
        }
        for i in ["m", "n"] {
            sig.individuals.insert(i.into());
        }
        let u = candidate_universe(&kb, &obs, Some(&sig));
        let got: Vec<String> = u.iter().map(|a| a.to_string()).collect();
        assert_eq!(got, vec!["C(m)", "C(n)", "D(m)", "D(n)"]);
        let full = candidate_universe(&kb, &obs, None);
        assert_eq!(full.len(), 4 * 2 + 4);
    }

    #[test]
    fn foreign_signature_individuals_are_dropped() {
        let kb = parse_kb("DIALECT elbot\nTBOX\nABOX\nA(a)\n").unwrap();
        let mut sig = Signature::default();
        sig.individuals.insert("a".into());
        sig.individuals.insert("zzz".into());
        let (s, dropped) = restrict_signature(&kb, &Assertion::concept("A", "a"), &sig);
        assert_eq!(dropped, vec![Individual::new("zzz")]);
        assert_eq!(s.individuals.len(), 1);
    }
}
