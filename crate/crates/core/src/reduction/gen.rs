//! The hardness constructions.

use super::oracle::{is_mus, qbf_brute, reachable, sat_brute, valid_brute};
use super::source::{Cnf, Digraph, Form, Qbf, Quant};
use super::{Check, CnfMode, DigraphMode, QbfMode, ReductionInstance, Source, Task};
use crate::abduction::{Constraints, Minimality, Semantics};
use crate::error::{Error, Result};
use crate::kb::{ABox, Assertion, Axiom, Concept, Dialect, KnowledgeBase, Role, Signature, TBox};

fn atom(name: &str) -> Concept {
    Concept::atomic(name)
}

fn sub(l: Concept, r: Concept) -> Axiom {
    Axiom::sub(l, r)
}

fn disjoint(parts: Vec<Concept>) -> Axiom {
    sub(Concept::and_all(parts), Concept::Bottom)
}

fn av(g: &Digraph, v: usize) -> String {
    format!("Av_{}", g.name(v))
}

fn lit(l: i32) -> String {
    if l > 0 {
        format!("Tx_{l}")
    } else {
        format!("Fx_{}", -l)
    }
}

fn tx(v: u32) -> String {
    format!("Tx_{v}")
}

fn fx(v: u32) -> String {
    format!("Fx_{v}")
}

fn ex(role: &str) -> Concept {
    Concept::ExistsRole(Role::named(role))
}

fn ex_inv(role: &str) -> Concept {
    Concept::ExistsRole(Role::named(role).inv())
}

const NONE: Constraints = Constraints::NONE;
const SIG: Constraints = Constraints { signature: true, nontrivial: false, conflict_confining: false };
const NONTRIVIAL: Constraints = Constraints { signature: false, nontrivial: true, conflict_confining: false };
const CONFINING: Constraints = Constraints { signature: false, nontrivial: false, conflict_confining: true };

struct Parts {
    dialect: Dialect,
    tbox: TBox,
    abox: ABox,
    obs: Assertion,
    signature: Option<Signature>,
}

fn finish(name: &str, source: Source, p: Parts, check: Check) -> ReductionInstance {
    ReductionInstance {
        name: name.to_string(),
        source,
        kb: KnowledgeBase::new(p.dialect, p.tbox, p.abox),
        obs: p.obs,
        signature: p.signature,
        checks: vec![check],
    }
}

fn check(semantics: Semantics, task: Task, hypothesis: Option<ABox>, oracle_answer: bool, meaning: &str) -> Check {
    Check { semantics, task, hypothesis, oracle_answer, meaning: meaning.to_string() }
}

/// `B1 ⊑ ¬B2` (or its EL-bot form) with `B1(b), B2(b)`: makes the KB inconsistent
/// without touching anything else.
fn dummy_conflict(dialect: Dialect, tbox: &mut TBox, abox: &mut ABox) {
    if dialect.is_dllite() {
        tbox.insert(sub(atom("B1"), Concept::not(atom("B2"))));
    } else {
        tbox.insert(disjoint(vec![atom("B1"), atom("B2")]));
    }
    abox.insert(Assertion::concept("B1", "b"));
    abox.insert(Assertion::concept("B2", "b"));
}

pub fn gen_digraph_instance(g: &Digraph, mode: DigraphMode) -> Result<ReductionInstance> {
    let reach = reachable(g);
    let (s, t) = (av(g, g.s), av(g, g.t));
    let mut tbox = TBox::new();
    let mut abox = ABox::new();
    dummy_conflict(Dialect::DlLiteCore, &mut tbox, &mut abox);
    let obs = Assertion::concept(&t, "a");
    let (hyp, task, answer, meaning) = match mode {
        DigraphMode::ReachBraveVerify => {
            for &(v, w) in &g.edges {
                tbox.insert(sub(atom(&av(g, v)), atom(&av(g, w))));
            }
            let h: ABox = [Assertion::concept(&s, "a")].into();
            (h, Task::Verify(NONE, Minimality::None), reach, "the hypothesis is a brave hypothesis iff t is reachable from s")
        }
        DigraphMode::UnreachCc => {
            if g.s == g.t {
                return Err(Error::InvalidSource("unreach-cc needs s ≠ t".into()));
            }
            for &(v, w) in &g.edges {
                if v != w && v != g.t && w != g.t {
                    tbox.insert(sub(atom(&av(g, v)), atom(&av(g, w))));
                }
                if w == g.t && v != g.t {
                    tbox.insert(sub(atom(&av(g, v)), Concept::not(atom(&t))));
                }
            }
            tbox.insert(sub(atom(&t), atom(&s)));
            let h: ABox = [obs.clone()].into();
            let meaning = "the observation is a conflict-confining brave hypothesis iff t is unreachable from s";
            (h, Task::Verify(CONFINING, Minimality::None), !reach, meaning)
        }
    };
    let parts = Parts { dialect: Dialect::DlLiteCore, tbox, abox, obs, signature: None };
    let c = check(Semantics::Brave, task, Some(hyp), answer, meaning);
    Ok(finish(mode.as_str(), Source::Digraph(g.clone()), parts, c))
}

fn require_form(f: &Cnf, want: Form, mode: &str) -> Result<()> {
    if f.form != want {
        return Err(Error::InvalidSource(format!(
            "{mode} needs a {} matrix, got {}",
            want.as_str().to_uppercase(),
            f.form.as_str().to_uppercase()
        )));
    }
    Ok(())
}

/// `∃U ⊑ A, ∃P⁻ ⊑ ¬∃N⁻, ∃P ⊑ ¬∃U⁻, ∃N ⊑ ¬∃U⁻` with `P(c_j, x_i)` / `N(c_j, x_i)` for
/// positive / negative occurrences.
fn clause_roles(f: &Cnf) -> (TBox, ABox) {
    let tbox: TBox = [
        sub(ex("U"), atom("A")),
        sub(ex_inv("P"), Concept::not(ex_inv("N"))),
        sub(ex("P"), Concept::not(ex_inv("U"))),
        sub(ex("N"), Concept::not(ex_inv("U"))),
    ]
    .into();
    let mut abox = ABox::new();
    for (j, c) in f.clauses.iter().enumerate() {
        for &l in c {
            let role = if l > 0 { "P" } else { "N" };
            abox.insert(Assertion::role(role, &format!("c{}", j + 1), &format!("x{}", l.unsigned_abs())));
        }
    }
    (tbox, abox)
}

fn u_edge(j: usize) -> Assertion {
    Assertion::role("U", "a", &format!("c{}", j + 1))
}

/// `Tx_i ⊓ Fx_i ⊑ ⊥` for every variable.
fn el_literal_disjointness(vars: impl IntoIterator<Item = u32>, tbox: &mut TBox) {
    for v in vars {
        tbox.insert(disjoint(vec![atom(&tx(v)), atom(&fx(v))]));
    }
}

/// Clause concepts `A_ℓ ⊑ Cc_j` and `⊓ Cc_j ⊑ Phi`, each left side guarded by `guard`.
fn el_clauses(f: &Cnf, guard: &[Concept], extra: &[Concept], tbox: &mut TBox) {
    let with = |c: Concept| -> Concept {
        let mut parts = guard.to_vec();
        parts.push(c);
        Concept::and_all(parts)
    };
    for (j, c) in f.clauses.iter().enumerate() {
        for &l in c {
            tbox.insert(sub(with(atom(&lit(l))), atom(&format!("Cc_{}", j + 1))));
        }
    }
    let mut all: Vec<Concept> = guard.to_vec();
    all.extend(extra.iter().cloned());
    all.extend((1..=f.clauses.len()).map(|j| atom(&format!("Cc_{j}"))));
    tbox.insert(sub(Concept::and_all(all), atom("Phi")));
}

pub fn gen_cnf_instance(f: &Cnf, mode: CnfMode) -> Result<ReductionInstance> {
    gen_cnf(f, None, mode)
}

/// `mus-subset-min` with an explicit clause subset (0-based indices).
pub fn gen_mus_instance(f: &Cnf, subset: &[usize]) -> Result<ReductionInstance> {
    gen_cnf(f, Some(subset), CnfMode::MusSubsetMin)
}

fn gen_cnf(f: &Cnf, subset: Option<&[usize]>, mode: CnfMode) -> Result<ReductionInstance> {
    let name = mode.as_str();
    let want = if mode == CnfMode::ForallDnfNontrivialArDllite { Form::Dnf } else { Form::Cnf };
    require_form(f, want, name)?;
    let source = Source::Cnf(f.clone());
    let vars = 1..=f.variables;
    match mode {
        CnfMode::UnsatArVerify => {
            let (tbox, abox) = clause_roles(f);
            let h: ABox = (0..f.clauses.len()).map(u_edge).collect();
            let parts = Parts { dialect: Dialect::DlLiteCore, tbox, abox, obs: Assertion::concept("A", "a"), signature: None };
            let c = check(Semantics::Ar, Task::Verify(NONE, Minimality::None), Some(h), !sat_brute(f)?, "the hypothesis is an AR hypothesis iff the CNF is unsatisfiable");
            Ok(finish(name, source, parts, c))
        }
        CnfMode::UnsatArCardMin => {
            let (n, k) = (f.variables as i32, f.clauses.len());
            let mut clauses: Vec<Vec<i32>> = f.clauses.iter().map(|c| [c.as_slice(), &[n + 1]].concat()).collect();
            clauses.push(vec![-(n + 1), n + 2]);
            clauses.push(vec![-(n + 2)]);
            let padded = Cnf::new(f.variables + 2, clauses, Form::Cnf)?;
            let (tbox, mut abox) = clause_roles(&padded);
            abox.extend((0..=k).map(u_edge));
            let h: ABox = [u_edge(k + 1)].into();
            let parts = Parts { dialect: Dialect::DlLiteCore, tbox, abox, obs: Assertion::concept("A", "a"), signature: None };
            let c = check(Semantics::Ar, Task::Verify(NONE, Minimality::Card), Some(h), !sat_brute(f)?, "the hypothesis is a cardinality-minimal AR hypothesis iff the CNF is unsatisfiable");
            Ok(finish(name, source, parts, c))
        }
        CnfMode::MusSubsetMin => {
            let all: Vec<usize> = (0..f.clauses.len()).collect();
            let psi = subset.unwrap_or(&all);
            if let Some(&j) = psi.iter().find(|&&j| j >= f.clauses.len()) {
                return Err(Error::InvalidSource(format!("clause index {} is out of range", j + 1)));
            }
            let (tbox, abox) = clause_roles(f);
            let h: ABox = psi.iter().map(|&j| u_edge(j)).collect();
            let parts = Parts { dialect: Dialect::DlLiteCore, tbox, abox, obs: Assertion::concept("A", "a"), signature: None };
            let c = check(Semantics::Ar, Task::Verify(NONE, Minimality::Subset), Some(h), is_mus(f, psi)?, "the hypothesis is a subset-minimal AR hypothesis iff the clause subset is a minimal unsatisfiable subset");
            let source = Source::CnfSubset(f.clone(), psi.to_vec());
            Ok(finish(name, source, parts, c))
        }
        CnfMode::SatSigElbotClassical | CnfMode::SatSigElbotBrave => {
            let mut tbox = TBox::new();
            let mut abox = ABox::new();
            el_literal_disjointness(vars.clone(), &mut tbox);
            el_clauses(f, &[], &[], &mut tbox);
            let mut sig = Signature::default();
            for v in vars {
                sig.concepts.insert(tx(v).as_str().into());
                sig.concepts.insert(fx(v).as_str().into());
            }
            sig.individuals.insert("m".into());
            let semantics = if mode == CnfMode::SatSigElbotBrave {
                dummy_conflict(Dialect::ElBot, &mut tbox, &mut abox);
                Semantics::Brave
            } else {
                Semantics::Classical
            };
            let parts = Parts { dialect: Dialect::ElBot, tbox, abox, obs: Assertion::concept("Phi", "m"), signature: Some(sig) };
            let c = check(semantics, Task::Exist(SIG), None, sat_brute(f)?, "a signature-restricted hypothesis exists iff the CNF is satisfiable");
            Ok(finish(name, source, parts, c))
        }
        CnfMode::SatNontrivialElbotClassical => {
            let mut tbox = TBox::new();
            el_literal_disjointness(vars, &mut tbox);
            for (j, c) in f.clauses.iter().enumerate() {
                for &l in c {
                    tbox.insert(sub(atom(&lit(l)), Concept::exists(&format!("r_{}", j + 1), atom("B"))));
                }
            }
            let all = (1..=f.clauses.len()).map(|j| Concept::exists(&format!("r_{j}"), atom("B")));
            tbox.insert(sub(Concept::and_all(all), atom("Phi")));
            tbox.insert(disjoint(vec![atom("Phi"), atom("B")]));
            let parts = Parts { dialect: Dialect::ElBot, tbox, abox: ABox::new(), obs: Assertion::concept("Phi", "m"), signature: None };
            let c = check(Semantics::Classical, Task::Exist(NONTRIVIAL), None, sat_brute(f)?, "a non-trivial hypothesis exists iff the CNF is satisfiable");
            Ok(finish(name, source, parts, c))
        }
        CnfMode::ForallDnfNontrivialArDllite => {
            let mut tbox = TBox::new();
            let mut abox = ABox::new();
            for (j, t) in f.clauses.iter().enumerate() {
                let ct = atom(&format!("Ct_{}", j + 1));
                tbox.insert(sub(ct.clone(), atom("A")));
                for &l in t {
                    // the opposite literal rules the term out
                    tbox.insert(sub(atom(&lit(-l)), Concept::not(ct.clone())));
                }
            }
            for v in vars {
                tbox.insert(sub(atom(&tx(v)), Concept::not(atom(&fx(v)))));
                abox.insert(Assertion::concept(&tx(v), "a"));
                abox.insert(Assertion::concept(&fx(v), "a"));
            }
            let parts = Parts { dialect: Dialect::DlLiteCore, tbox, abox, obs: Assertion::concept("A", "a"), signature: None };
            let c = check(Semantics::Ar, Task::Exist(NONTRIVIAL), None, valid_brute(f)?, "a non-trivial AR hypothesis exists iff the DNF holds under every assignment");
            Ok(finish(name, source, parts, c))
        }
    }
}

pub fn gen_qbf_instance(q: &Qbf, mode: QbfMode) -> Result<ReductionInstance> {
    let name = mode.as_str();
    let (outer, form) = match mode {
        QbfMode::EaSigArElbot | QbfMode::EaNontrivialArElbot => (Quant::Exists, Form::Dnf),
        _ => (Quant::Forall, Form::Cnf),
    };
    require_form(&q.matrix, form, name)?;
    let (first, second) = q.two_blocks(outer)?;
    let truth = qbf_brute(q)?;
    let f = &q.matrix;
    let source = Source::Qbf(q.clone());
    let all = 1..=f.variables;
    let m = |c: &str| Assertion::concept(c, "m");
    let mut tbox = TBox::new();
    let mut abox = ABox::new();
    match mode {
        QbfMode::EaSigArElbot => {
            // The clauses of the negated matrix.
            let phi = f.negated();
            el_literal_disjointness(all, &mut tbox);
            el_clauses(&phi, &[], &[], &mut tbox);
            tbox.insert(disjoint(vec![atom("Phi"), atom("PhiBar")]));
            for &y in &first {
                tbox.insert(sub(atom(&tx(y)), atom(&format!("V_{y}"))));
                tbox.insert(sub(atom(&fx(y)), atom(&format!("V_{y}"))));
            }
            let mut guard: Vec<Concept> = first.iter().map(|y| atom(&format!("V_{y}"))).collect();
            guard.push(atom("PhiBar"));
            tbox.insert(sub(Concept::and_all(guard), atom("C")));
            for &z in &second {
                abox.insert(m(&tx(z)));
                abox.insert(m(&fx(z)));
            }
            abox.insert(m("PhiBar"));
            let mut sig = Signature::default();
            for &y in &first {
                sig.concepts.insert(tx(y).as_str().into());
                sig.concepts.insert(fx(y).as_str().into());
            }
            sig.individuals.insert("m".into());
            let parts = Parts { dialect: Dialect::ElBot, tbox, abox, obs: m("C"), signature: Some(sig) };
            let c = check(Semantics::Ar, Task::Exist(SIG), None, truth, "a signature-restricted AR hypothesis exists iff the ∃∀ formula is true");
            Ok(finish(name, source, parts, c))
        }
        QbfMode::EaNontrivialArElbot => {
            el_literal_disjointness(all, &mut tbox);
            for t in &f.clauses {
                let mut parts = vec![atom("C")];
                parts.extend(t.iter().map(|&l| atom(&lit(l))));
                tbox.insert(sub(Concept::and_all(parts), atom("Psi")));
            }
            for &z in &second {
                abox.insert(m(&tx(z)));
                abox.insert(m(&fx(z)));
            }
            let parts = Parts { dialect: Dialect::ElBot, tbox, abox, obs: m("Psi"), signature: None };
            let c = check(Semantics::Ar, Task::Exist(NONTRIVIAL), None, truth, "a non-trivial AR hypothesis exists iff the ∃∀ formula is true");
            Ok(finish(name, source, parts, c))
        }
        QbfMode::AeCcBraveElbot | QbfMode::AeSubsetcBraveElbot => {
            confining_gadget(f, &first, &second, &mut tbox, &mut abox);
            if mode == QbfMode::AeCcBraveElbot {
                let parts = Parts { dialect: Dialect::ElBot, tbox, abox, obs: m("C"), signature: None };
                let c = check(Semantics::Brave, Task::Exist(CONFINING), None, !truth, "a conflict-confining brave hypothesis exists iff the ∀∃ formula is false");
                return Ok(finish(name, source, parts, c));
            }
            tbox.insert(sub(Concept::and(atom("Cd"), atom("X")), atom("C")));
            tbox.insert(disjoint(vec![atom("X"), atom("Y")]));
            abox.insert(m("Y"));
            let h: ABox = [m("X")].into();
            let parts = Parts { dialect: Dialect::ElBot, tbox, abox, obs: m("C"), signature: None };
            let c = check(Semantics::Brave, Task::Verify(NONE, Minimality::SubsetC), Some(h), truth, "the hypothesis is conflict-subset-minimal iff the ∀∃ formula is true");
            Ok(finish(name, source, parts, c))
        }
        QbfMode::Pi2SubsetminArElbot => {
            if first.is_empty() {
                return Err(Error::InvalidSource("pi2-subsetmin-ar-elbot needs a non-empty universal block".into()));
            }
            let a = |c: &str| Assertion::concept(c, "a");
            tbox.insert(disjoint(vec![atom("B1"), atom("B2")]));
            tbox.insert(disjoint(vec![atom("B1p"), atom("B2")]));
            let mut both = vec![atom("B1")];
            for &x in &first {
                both.push(atom(&tx(x)));
                both.push(atom(&fx(x)));
            }
            tbox.insert(sub(Concept::and_all(both), atom("A")));
            for &y in &second {
                tbox.insert(disjoint(vec![atom("B1p"), atom(&tx(y)), atom(&fx(y))]));
            }
            // Term j of the negated matrix is clause j with every literal flipped; its
            // concept clashes with each literal that falsifies the term.
            for (j, c) in f.clauses.iter().enumerate() {
                let ct = format!("Ct_{}", j + 1);
                tbox.insert(sub(Concept::and(atom("B1"), atom(&ct)), atom("A")));
                for &l in c {
                    tbox.insert(disjoint(vec![atom("B1p"), atom(&lit(l)), atom(&ct)]));
                }
                abox.insert(a(&ct));
            }
            let mut have = vec![atom("B2")];
            for &x in &first {
                let hv = format!("Have_{x}");
                tbox.insert(sub(atom(&tx(x)), atom(&hv)));
                tbox.insert(sub(atom(&fx(x)), atom(&hv)));
                have.push(atom(&hv));
            }
            tbox.insert(sub(Concept::and_all(have), atom("A")));
            for c in ["B1", "B1p", "B2"] {
                abox.insert(a(c));
            }
            for &y in &second {
                abox.insert(a(&tx(y)));
                abox.insert(a(&fx(y)));
            }
            let h: ABox = first.iter().flat_map(|&x| [a(&tx(x)), a(&fx(x))]).collect();
            let parts = Parts { dialect: Dialect::ElBot, tbox, abox, obs: a("A"), signature: None };
            let c = check(Semantics::Ar, Task::Verify(NONE, Minimality::Subset), Some(h), truth, "the hypothesis is a subset-minimal AR hypothesis iff the ∀∃ formula is true");
            Ok(finish(name, source, parts, c))
        }
    }
}

/// The ∀∃ construction whose conflict-confining brave hypotheses are the
/// assignments to the universal block that falsify the formula. `Cd` guards every
/// derivation and `Bd` clashes with every derived name, so any hypothesis outside
/// the universal literals brings a fresh conflict.
fn confining_gadget(f: &Cnf, ys: &[u32], zs: &[u32], tbox: &mut TBox, abox: &mut ABox) {
    let v = |y: &u32| atom(&format!("V_{y}"));
    let cd = atom("Cd");
    let mut head = vec![cd.clone()];
    head.extend(ys.iter().map(v));
    let mut c_rule = head.clone();
    c_rule.push(atom("PhiBar"));
    tbox.insert(sub(Concept::and_all(c_rule), atom("C")));
    for y in ys {
        tbox.insert(sub(Concept::and(cd.clone(), atom(&tx(*y))), v(y)));
        tbox.insert(sub(Concept::and(cd.clone(), atom(&fx(*y))), v(y)));
    }
    el_literal_disjointness(1..=f.variables, tbox);
    let vs: Vec<Concept> = ys.iter().map(v).collect();
    el_clauses(f, &[cd.clone()], &vs, tbox);
    let bd = atom("Bd");
    for other in [atom("PhiBar"), bd.clone()] {
        tbox.insert(disjoint(vec![atom("Phi"), other]));
    }
    for c in [cd, atom("C")] {
        tbox.insert(disjoint(vec![c, bd.clone()]));
    }
    for j in 1..=f.clauses.len() {
        tbox.insert(disjoint(vec![atom(&format!("Cc_{j}")), bd.clone()]));
    }
    for y in ys {
        tbox.insert(disjoint(vec![v(y), bd.clone()]));
    }
    for z in zs {
        abox.insert(Assertion::concept(&tx(*z), "m"));
        abox.insert(Assertion::concept(&fx(*z), "m"));
    }
    for c in ["PhiBar", "Bd", "Cd"] {
        abox.insert(Assertion::concept(c, "m"));
    }
}
