use abduce_core::abduction::{Constraints, Counterexample, Failure, HypothesisVerdict};
use abduce_core::kb::ABox;
use abduce_core::reduction::{Check, ReductionInstance, Task};
use abduce_core::Error;
use serde_json::{json, Value};

pub fn abox(a: &ABox) -> Value {
    Value::Array(a.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn aboxes(v: &[ABox]) -> Value {
    Value::Array(v.iter().map(abox).collect())
}

pub fn opt_abox(a: Option<&ABox>) -> Value {
    a.map_or(Value::Null, abox)
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "syntax",
        Error::DialectViolation { .. } => "dialect-violation",
        Error::PromiseViolation(k) => k.as_str(),
        Error::BudgetExceeded { .. } => "budget-exceeded",
        Error::UnsupportedCombination(_) => "unsupported-combination",
        Error::InvalidInput(_) => "invalid-input",
        Error::InvalidSource(_) => "invalid-source",
    }
}

pub fn constraints(c: Constraints) -> Value {
    json!({
        "signature": c.signature,
        "nontrivial": c.nontrivial,
        "conflict_confining": c.conflict_confining,
    })
}

fn failure(f: &Failure) -> Value {
    let evidence = match f {
        Failure::ForeignIndividual(a) | Failure::OutsideSignature(a) => json!(a.to_string()),
        Failure::Trivial => Value::Null,
        Failure::Inconsistent(b) | Failure::FreshConflict(b) | Failure::NotMinimal(b) => abox(b),
        Failure::NotEntailed(b) => opt_abox(b.as_ref()),
    };
    json!({ "kind": f.tag(), "evidence": evidence })
}

fn counterexample(c: &Counterexample) -> Value {
    json!({ "kind": c.kind(), "abox": abox(c.abox()) })
}

pub fn verdict(v: &HypothesisVerdict) -> Value {
    json!({
        "valid": v.valid,
        "reasons": v.reasons.iter().map(failure).collect::<Vec<_>>(),
        "witness": opt_abox(v.witness_repair.as_ref()),
        "counterexample": v.counterexample.as_ref().map_or(Value::Null, counterexample),
        "fresh_conflicts": aboxes(&v.fresh_conflicts),
        "experimental": v.experimental,
    })
}

pub fn check(c: &Check) -> Value {
    let (task, cons, minimality) = match c.task {
        Task::Verify(cons, m) => ("verify", cons, Some(m.as_str())),
        Task::Exist(cons) => ("exist", cons, None),
    };
    json!({
        "semantics": c.semantics.as_str(),
        "task": task,
        "constraints": constraints(cons),
        "minimality": minimality,
        "hypothesis": opt_abox(c.hypothesis.as_ref()),
        "oracle_answer": c.oracle_answer,
        "meaning": c.meaning,
    })
}

pub fn instance(inst: &ReductionInstance) -> Value {
    json!({
        "name": inst.name,
        "source_kind": inst.source_kind(),
        "dialect": inst.kb.dialect.as_str(),
        "tbox_axioms": inst.kb.tbox.len(),
        "abox_assertions": inst.kb.abox.len(),
        "observation": inst.obs.to_string(),
        "signature": inst.signature.as_ref().map(|s| s.to_string()),
        "checks": inst.checks.iter().map(check).collect::<Vec<_>>(),
    })
}
