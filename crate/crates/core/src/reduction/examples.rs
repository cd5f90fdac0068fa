//! Small worked instances with known answers.

use super::{Check, ReductionInstance, Source, Task};
use crate::abduction::{Constraints, Minimality, Semantics};
use crate::error::{Error, Result};
use crate::kb::{parse_kb, parse_signature, ABox, Assertion};

pub const EXAMPLES: [&str; 5] = ["diabetes", "ar-non-convex", "brave-cc", "non-triv", "nt-sig"];

const DIABETES: &str = "DIALECT elbot
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
";

const AR_NON_CONVEX: &str = "DIALECT dllite-core
TBOX
B1 <= not(B2)
C1 <= not(C2)
B1 <= A
B3 <= A
ABOX
C1(a)
C2(a)
";

const BRAVE_CC: &str = "DIALECT elbot
TBOX
(A and B) <= bot
(B and C) <= bot
(C and D) <= A
ABOX
B(a)
C(a)
";

const NON_TRIV: &str = "DIALECT dllite-core
TBOX
B <= (some r)
(some r) <= A
A <= not((some inv(r)))
C <= not(C)
ABOX
C(a)
";

const NT_SIG: &str = "DIALECT elbot
TBOX
(A and B) <= C
(D and (some r C)) <= A
ABOX
B(m)
r(m, n)
";

fn h(items: &[Assertion]) -> ABox {
    items.iter().cloned().collect()
}

fn c(name: &str, ind: &str) -> Assertion {
    Assertion::concept(name, ind)
}

fn verify(s: Semantics, cons: Constraints, m: Minimality, hyp: ABox, answer: bool, meaning: &str) -> Check {
    Check { semantics: s, task: Task::Verify(cons, m), hypothesis: Some(hyp), oracle_answer: answer, meaning: meaning.into() }
}

fn exist(s: Semantics, cons: Constraints, answer: bool, meaning: &str) -> Check {
    Check { semantics: s, task: Task::Exist(cons), hypothesis: None, oracle_answer: answer, meaning: meaning.into() }
}

const NONE: Constraints = Constraints::NONE;
const CC: Constraints = Constraints { signature: false, nontrivial: false, conflict_confining: true };
const NT: Constraints = Constraints { signature: false, nontrivial: true, conflict_confining: false };
const SIG: Constraints = Constraints { signature: true, nontrivial: false, conflict_confining: false };
const SIG_NT: Constraints = Constraints { signature: true, nontrivial: true, conflict_confining: false };

pub fn builtin_example(name: &str) -> Result<ReductionInstance> {
    use Minimality as M;
    use Semantics::{Ar, Brave, Classical};
    let (text, obs, signature, checks) = match name {
        "diabetes" => {
            let od = h(&[c("OverdosedInsulin", "patient")]);
            let keto = h(&[c("Ketoacidosis", "patient")]);
            let checks = vec![
                verify(Brave, NONE, M::None, od.clone(), true, "brave hypothesis"),
                verify(Brave, NONE, M::None, keto.clone(), true, "brave hypothesis"),
                verify(Ar, NONE, M::None, od, false, "AR hypothesis"),
                verify(Ar, NONE, M::None, keto, true, "AR hypothesis"),
            ];
            (DIABETES, c("DiabeticComa", "patient"), None, checks)
        }
        "ar-non-convex" => {
            let b1 = h(&[c("B1", "a")]);
            let b2 = h(&[c("B1", "a"), c("B2", "a")]);
            let b3 = h(&[c("B1", "a"), c("B2", "a"), c("B3", "a")]);
            let checks = vec![
                verify(Ar, NONE, M::None, b1.clone(), true, "AR hypothesis"),
                verify(Ar, NONE, M::None, b2, false, "AR hypothesis"),
                verify(Ar, NONE, M::None, b3.clone(), true, "AR hypothesis"),
                verify(Ar, NONE, M::Subset, b1, true, "subset-minimal AR hypothesis"),
                verify(Ar, NONE, M::Subset, b3, false, "subset-minimal AR hypothesis"),
            ];
            (AR_NON_CONVEX, c("A", "a"), None, checks)
        }
        "brave-cc" => {
            let checks = vec![
                verify(Brave, NONE, M::None, h(&[c("A", "a")]), true, "brave hypothesis"),
                verify(Brave, CC, M::None, h(&[c("A", "a")]), false, "conflict-confining brave hypothesis"),
                verify(Brave, CC, M::None, h(&[c("D", "a")]), true, "conflict-confining brave hypothesis"),
            ];
            (BRAVE_CC, c("A", "a"), None, checks)
        }
        "non-triv" => {
            let checks = vec![
                exist(Brave, NT, true, "a non-trivial brave hypothesis exists"),
                verify(Brave, NT, M::None, h(&[Assertion::role("r", "a", "a")]), false, "non-trivial brave hypothesis"),
                verify(Brave, NT, M::None, h(&[c("B", "a")]), true, "non-trivial brave hypothesis"),
            ];
            (NON_TRIV, c("A", "a"), None, checks)
        }
        "nt-sig" => {
            let sig = parse_signature("concept C\nconcept D\nindividual m\nindividual n\n")?;
            let checks = vec![
                verify(Classical, SIG_NT, M::None, h(&[c("C", "n"), c("D", "m")]), true, "non-trivial signature-restricted hypothesis"),
                verify(Classical, SIG, M::None, h(&[c("C", "m")]), true, "signature-restricted hypothesis"),
                verify(Classical, NT, M::None, h(&[c("A", "m")]), true, "non-trivial hypothesis"),
                verify(Classical, SIG, M::None, h(&[c("A", "m")]), false, "signature-restricted hypothesis"),
            ];
            (NT_SIG, c("C", "m"), Some(sig), checks)
        }
        _ => {
            return Err(Error::InvalidInput(format!("unknown example `{name}`; known: {}", EXAMPLES.join(", "))));
        }
    };
    let name = EXAMPLES.iter().copied().find(|n| *n == name).expect("matched above");
    Ok(ReductionInstance {
        name: name.to_string(),
        source: Source::Example(name),
        kb: parse_kb(text)?,
        obs,
        signature,
        checks,
    })
}
