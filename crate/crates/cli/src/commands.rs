use std::fs;
use std::path::Path;

use abduce_core::abduction::{
    enumerate_hypotheses, exists_hypothesis, make_problem, verify_hypothesis, AbductionProblem, Constraints, Minimality,
    Semantics,
};
use abduce_core::classical::{entails_classical, is_consistent, min_conflicts};
use abduce_core::kb::{parse_abox, parse_kb, parse_observation, parse_signature, serialize_abox, serialize_kb, serialize_signature, KnowledgeBase};
use abduce_core::reduction::{
    builtin_example, cross_check, gen_cnf_instance, gen_digraph_instance, gen_mus_instance, gen_qbf_instance, parse_digraph,
    parse_dimacs, parse_qdimacs, CnfMode, Mode, ReductionInstance, Source, Task,
};
use abduce_core::repair::{entails_ar, entails_brave, repairs};
use abduce_core::selftest::{self, SelftestConfig};
use abduce_core::{Error, Result};
use serde_json::{json, Value};

use crate::args::{Command, EntailArgs, EnumerateArgs, ExampleArgs, GenArgs, KbArg, ProblemArgs, SelftestArgs, VerifyArgs};
use crate::{json as out, CommandResult, Status};

/// Failures listed in a selftest payload; the rest are only counted.
const SHOWN_FAILURES: usize = 20;

pub struct Io<'a> {
    pub stdin: Option<&'a str>,
    pub jobs: usize,
}

impl Io<'_> {
    fn read(&self, path: &Path) -> Result<String> {
        if path.as_os_str() == "-" {
            return self.stdin.map(str::to_owned).ok_or_else(|| Error::InvalidInput("no standard input to read".into()));
        }
        fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
    }

    fn kb(&self, path: &Path) -> Result<KnowledgeBase> {
        parse_kb(&self.read(path)?)
    }
}

pub fn dispatch(cmd: &Command, io: &Io) -> Result<CommandResult> {
    match cmd {
        Command::Check(a) => check(a, io),
        Command::Repairs(a) => repairs_cmd(a, io),
        Command::Conflicts(a) => conflicts(a, io),
        Command::Entail(a) => entail(a, io),
        Command::Exist(a) => exist(a, io),
        Command::Verify(a) => verify(a, io),
        Command::Enumerate(a) => enumerate(a, io),
        Command::Gen(a) => gen(a, io),
        Command::Example(a) => example(a),
        Command::Selftest(a) => selftest_cmd(a, io),
    }
}

fn ok(mut payload: Value) -> CommandResult {
    let mut doc = json!({ "status": "ok" });
    doc.as_object_mut().unwrap().append(payload.as_object_mut().expect("payloads are objects"));
    CommandResult::ok(doc)
}

fn check(a: &KbArg, io: &Io) -> Result<CommandResult> {
    let kb = io.kb(&a.kb)?;
    Ok(ok(json!({ "consistent": is_consistent(&kb) })))
}

fn repairs_cmd(a: &KbArg, io: &Io) -> Result<CommandResult> {
    let kb = io.kb(&a.kb)?;
    let r = repairs(&kb)?;
    Ok(ok(json!({ "count": r.len(), "repairs": out::aboxes(&r) })))
}

fn conflicts(a: &KbArg, io: &Io) -> Result<CommandResult> {
    let kb = io.kb(&a.kb)?;
    let c = min_conflicts(&kb)?;
    Ok(ok(json!({ "count": c.len(), "conflicts": out::aboxes(&c) })))
}

fn entail(a: &EntailArgs, io: &Io) -> Result<CommandResult> {
    let kb = io.kb(&a.kb)?;
    let obs = parse_observation(&a.obs)?;
    let body = match a.semantics.parse::<Semantics>()? {
        Semantics::Classical => {
            let e = entails_classical(&kb, &obs);
            json!({ "semantics": "classical", "entailed": e.holds, "vacuous": e.vacuous })
        }
        Semantics::Brave => {
            let e = entails_brave(&kb, &obs)?;
            json!({ "semantics": "brave", "entailed": e.holds, "witness": out::opt_abox(e.witness.as_ref()) })
        }
        Semantics::Ar => {
            let e = entails_ar(&kb, &obs)?;
            json!({ "semantics": "ar", "entailed": e.holds, "counterexample": out::opt_abox(e.counterexample.as_ref()) })
        }
    };
    Ok(ok(body))
}

fn problem(a: &ProblemArgs, io: &Io) -> Result<(AbductionProblem, Constraints)> {
    let kb = io.kb(&a.kb)?;
    let obs = parse_observation(&a.obs)?;
    let semantics: Semantics = a.semantics.parse()?;
    let signature = match &a.signature {
        Some(path) => Some(parse_signature(&io.read(path)?)?),
        None => None,
    };
    let c = Constraints {
        signature: signature.is_some(),
        nontrivial: a.nontrivial,
        conflict_confining: a.conflict_confining,
    };
    Ok((make_problem(kb, obs, semantics, signature)?, c))
}

fn with_warnings(p: &AbductionProblem, mut r: CommandResult) -> CommandResult {
    if !p.warnings.is_empty() {
        r.payload["warnings"] = json!(p.warnings);
        r.message = Some(p.warnings.iter().map(|w| format!("warning: {w}")).collect::<Vec<_>>().join("\n"));
    }
    r
}

fn exist(a: &ProblemArgs, io: &Io) -> Result<CommandResult> {
    let (p, c) = problem(a, io)?;
    let e = exists_hypothesis(&p, c)?;
    let r = ok(json!({
        "exists": e.exists,
        "witness": out::opt_abox(e.witness.as_ref()),
        "strategy": e.strategy,
    }));
    Ok(with_warnings(&p, r))
}

fn verify(a: &VerifyArgs, io: &Io) -> Result<CommandResult> {
    let (p, c) = problem(&a.problem, io)?;
    let hyp = parse_abox(&io.read(&a.hyp)?)?;
    let m: Minimality = a.minimality.parse()?;
    let v = verify_hypothesis(&p, &hyp, c, m)?;
    Ok(with_warnings(&p, ok(out::verdict(&v))))
}

fn enumerate(a: &EnumerateArgs, io: &Io) -> Result<CommandResult> {
    let (p, c) = problem(&a.problem, io)?;
    let m: Minimality = a.minimality.parse()?;
    let hs = enumerate_hypotheses(&p, c, m, a.limit)?;
    let r = ok(json!({ "minimality": m.as_str(), "count": hs.len(), "hypotheses": out::aboxes(&hs) }));
    Ok(with_warnings(&p, r))
}

fn gen(a: &GenArgs, io: &Io) -> Result<CommandResult> {
    let mode: Mode = a.mode.parse()?;
    if a.subset.is_some() && mode != Mode::Cnf(CnfMode::MusSubsetMin) {
        return Err(Error::InvalidInput("--subset only applies to mus-subset-min".into()));
    }
    let wrong = |flag: &str| Error::InvalidInput(format!("mode {} does not take --{flag}", a.mode));
    let inst = match mode {
        Mode::Digraph(m) => {
            let path = a.graph.as_ref().ok_or_else(|| wrong(if a.cnf.is_some() { "cnf" } else { "qbf" }))?;
            gen_digraph_instance(&parse_digraph(&io.read(path)?)?, m)?
        }
        Mode::Cnf(m) => {
            let path = a.cnf.as_ref().ok_or_else(|| wrong(if a.graph.is_some() { "graph" } else { "qbf" }))?;
            let f = parse_dimacs(&io.read(path)?)?;
            match &a.subset {
                Some(idx) => {
                    if idx.contains(&0) {
                        return Err(Error::InvalidInput("clause indices are 1-based".into()));
                    }
                    let zero: Vec<usize> = idx.iter().map(|i| i - 1).collect();
                    gen_mus_instance(&f, &zero)?
                }
                None => gen_cnf_instance(&f, m)?,
            }
        }
        Mode::Qbf(m) => {
            let path = a.qbf.as_ref().ok_or_else(|| wrong(if a.graph.is_some() { "graph" } else { "cnf" }))?;
            gen_qbf_instance(&parse_qdimacs(&io.read(path)?)?, m)?
        }
    };
    let files = write_instance(&inst, &a.out)?;
    Ok(ok(json!({ "out": a.out.display().to_string(), "files": files, "instance": out::instance(&inst) })))
}

fn write(dir: &Path, name: &str, text: &str, files: &mut Vec<String>) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    files.push(name.to_string());
    Ok(())
}

/// Argument vector reproducing one check with the written files.
fn command_for(inst: &ReductionInstance, i: usize) -> Vec<String> {
    let check = &inst.checks[i];
    let mut argv: Vec<String> = Vec::new();
    let cons = match check.task {
        Task::Verify(c, _) => {
            argv.push("verify".into());
            c
        }
        Task::Exist(c) => {
            argv.push("exist".into());
            c
        }
    };
    argv.extend(["--kb".into(), "instance.kb".into(), "--obs".into(), inst.obs.to_string()]);
    argv.extend(["--semantics".into(), check.semantics.as_str().into()]);
    if cons.signature {
        argv.extend(["--signature".into(), "signature.sig".into()]);
    }
    if cons.nontrivial {
        argv.push("--nontrivial".into());
    }
    if cons.conflict_confining {
        argv.push("--conflict-confining".into());
    }
    if let Task::Verify(_, m) = check.task {
        argv.extend(["--hyp".into(), format!("hypothesis-{}.abox", i + 1), "--minimality".into(), m.as_str().into()]);
    }
    argv
}

/// Instance files plus a manifest with the oracle answers and the commands that
/// re-run each check.
fn write_instance(inst: &ReductionInstance, dir: &Path) -> Result<Vec<String>> {
    fs::create_dir_all(dir).map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    write(dir, "instance.kb", &serialize_kb(&inst.kb), &mut files)?;
    write(dir, "observation.txt", &format!("{}\n", inst.obs), &mut files)?;
    if let Some(sig) = &inst.signature {
        write(dir, "signature.sig", &serialize_signature(sig), &mut files)?;
    }
    for (i, c) in inst.checks.iter().enumerate() {
        if let Some(h) = &c.hypothesis {
            write(dir, &format!("hypothesis-{}.abox", i + 1), &serialize_abox(h), &mut files)?;
        }
    }
    match &inst.source {
        Source::Digraph(g) => write(dir, "source.graph", &g.to_text(), &mut files)?,
        Source::Cnf(f) | Source::CnfSubset(f, _) => write(dir, "source.cnf", &f.to_dimacs(), &mut files)?,
        Source::Qbf(q) => write(dir, "source.qdimacs", &q.to_qdimacs(), &mut files)?,
        Source::Example(_) => {}
    }
    let mut manifest = out::instance(inst);
    if let Source::CnfSubset(_, idx) = &inst.source {
        manifest["subset"] = json!(idx.iter().map(|i| i + 1).collect::<Vec<_>>());
    }
    for (i, c) in manifest["checks"].as_array_mut().unwrap().iter_mut().enumerate() {
        c["command"] = json!(command_for(inst, i));
    }
    let text = serde_json::to_string_pretty(&manifest).expect("plain JSON") + "\n";
    write(dir, "manifest.json", &text, &mut files)?;
    Ok(files)
}

fn example(a: &ExampleArgs) -> Result<CommandResult> {
    let inst = builtin_example(&a.name)?;
    let outcomes = cross_check(&inst);
    let results: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let mut v = out::check(&o.check);
            v["engine_answer"] = match &o.engine {
                Ok(b) => json!(b),
                Err(e) => json!({ "error": e.to_string() }),
            };
            v["agrees"] = json!(o.agrees());
            v
        })
        .collect();
    let mut body = json!({
        "name": inst.name,
        "kb": serialize_kb(&inst.kb),
        "observation": inst.obs.to_string(),
        "signature": inst.signature.as_ref().map(|s| s.to_string()),
        "checks": results,
        "agrees": outcomes.iter().all(|o| o.agrees()),
    });
    if let Some(dir) = &a.out {
        body["files"] = json!(write_instance(&inst, dir)?);
    }
    Ok(ok(body))
}

fn selftest_cmd(a: &SelftestArgs, io: &Io) -> Result<CommandResult> {
    let rep = selftest::run(SelftestConfig { seed: a.seed, rounds: a.rounds, jobs: io.jobs });
    let status = if rep.passed() { Status::Ok } else { Status::SelftestFailed };
    let payload = json!({
        "status": status.as_str(),
        "passed": rep.passed(),
        "seed": a.seed,
        "rounds": a.rounds,
        "checks": rep.checks,
        "failure_count": rep.failures.len(),
        "failures": rep.failures.iter().take(SHOWN_FAILURES).collect::<Vec<_>>(),
        "experimental_disagreements": rep.experimental_disagreements,
    });
    let message = (!rep.passed()).then(|| format!("selftest failed: {} of {} checks disagree", rep.failures.len(), rep.checks));
    Ok(CommandResult { status, payload, message })
}
