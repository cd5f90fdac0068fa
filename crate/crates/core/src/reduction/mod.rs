//! Abduction instances built from digraphs, CNFs and QBFs by hardness
//! constructions, each paired with an answer from an exhaustive oracle, plus the
//! worked fixture instances.
//!
//! Fresh names: `Av_<node>` per graph node; `Tx_<i>`/`Fx_<i>` for the literals of
//! variable `i`; `Cc_<j>` per clause and `Ct_<j>` per term (1-based); `V_<i>`,
//! `Have_<i>` per variable; `r_<j>` per clause; `Phi`, `PhiBar`, `Psi`, `B`, `B1`,
//! `B1p`, `B2`, `C`, `Cd`, `Bd`, `X`, `Y` for the fixed gadgets. Individuals are `a`
//! (DL-Lite) or `m` (EL-bot), `b` for a dummy conflict, `c<j>` and `x<i>` for the
//! clause and variable objects of the role-based encodings.

mod examples;
mod gen;
pub mod oracle;
pub mod random;
pub mod source;

use std::fmt;
use std::str::FromStr;

pub use examples::{builtin_example, EXAMPLES};
pub use gen::{gen_cnf_instance, gen_digraph_instance, gen_mus_instance, gen_qbf_instance};
pub use oracle::{is_mus, qbf_brute, reachable, sat_brute, valid_brute};
pub use source::{parse_digraph, parse_dimacs, parse_qdimacs, Cnf, Digraph, Form, Qbf, Quant};

use crate::abduction::{exists_hypothesis, make_problem, verify_hypothesis, AbductionProblem, Constraints, Minimality, Semantics};
use crate::error::{Error, Result};
use crate::kb::{format_abox, ABox, Assertion, KnowledgeBase, Signature};

macro_rules! modes {
    ($name:ident { $($variant:ident => $text:literal),* $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),*
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),*
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<$name> {
                $name::ALL
                    .iter()
                    .copied()
                    .find(|m| m.as_str() == s)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown mode `{s}`")))
            }
        }
    };
}

modes!(DigraphMode {
    ReachBraveVerify => "reach-brave-verify",
    UnreachCc => "unreach-cc",
});

modes!(CnfMode {
    UnsatArVerify => "unsat-ar-verify",
    UnsatArCardMin => "unsat-ar-card-min",
    MusSubsetMin => "mus-subset-min",
    SatSigElbotClassical => "sat-sig-elbot-classical",
    SatSigElbotBrave => "sat-sig-elbot-brave",
    SatNontrivialElbotClassical => "sat-nontrivial-elbot-classical",
    ForallDnfNontrivialArDllite => "forall-dnf-nontrivial-ar-dllite",
});

modes!(QbfMode {
    EaSigArElbot => "ea-sig-ar-elbot",
    EaNontrivialArElbot => "ea-nontrivial-ar-elbot",
    AeCcBraveElbot => "ae-cc-brave-elbot",
    Pi2SubsetminArElbot => "pi2-subsetmin-ar-elbot",
    AeSubsetcBraveElbot => "ae-subsetc-brave-elbot",
});

/// Any generator mode, for front ends that take the mode as a string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Digraph(DigraphMode),
    Cnf(CnfMode),
    Qbf(QbfMode),
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        s.parse()
            .map(Mode::Digraph)
            .or_else(|_| s.parse().map(Mode::Cnf))
            .or_else(|_| s.parse().map(Mode::Qbf))
            .map_err(|_| Error::InvalidInput(format!("unknown mode `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Digraph(Digraph),
    Cnf(Cnf),
    /// A CNF with a selected subset of clause indices (0-based).
    CnfSubset(Cnf, Vec<usize>),
    Qbf(Qbf),
    Example(&'static str),
}

impl Source {
    pub fn kind(&self) -> &'static str {
        match self {
            Source::Digraph(_) => "digraph",
            Source::Cnf(_) => "cnf",
            Source::CnfSubset(..) => "cnf-subset",
            Source::Qbf(_) => "qbf",
            Source::Example(_) => "example",
        }
    }
}

/// The engine operation a check runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Verify(Constraints, Minimality),
    Exist(Constraints),
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Verify(c, m) => write!(f, "verify[{}, {m}]", c.label()),
            Task::Exist(c) => write!(f, "exist[{}]", c.label()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub semantics: Semantics,
    pub task: Task,
    /// The hypothesis under test for [`Task::Verify`].
    pub hypothesis: Option<ABox>,
    pub oracle_answer: bool,
    /// What a `true` answer means.
    pub meaning: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionInstance {
    /// Mode or fixture name.
    pub name: String,
    pub source: Source,
    pub kb: KnowledgeBase,
    pub obs: Assertion,
    pub signature: Option<Signature>,
    pub checks: Vec<Check>,
}

impl ReductionInstance {
    pub fn source_kind(&self) -> &'static str {
        self.source.kind()
    }

    /// Semantics of the first check.
    pub fn semantics(&self) -> Semantics {
        self.checks[0].semantics
    }

    pub fn candidate(&self) -> Option<&ABox> {
        self.checks[0].hypothesis.as_ref()
    }

    pub fn oracle_answer(&self) -> bool {
        self.checks[0].oracle_answer
    }

    pub fn problem(&self, s: Semantics) -> Result<AbductionProblem> {
        AbductionProblem::unchecked(self.kb.clone(), self.obs.clone(), s, self.signature.clone())
    }

    /// Whether the promise of a well-formed abduction problem holds for the first check.
    pub fn promise(&self) -> Result<()> {
        make_problem(self.kb.clone(), self.obs.clone(), self.semantics(), self.signature.clone()).map(|_| ())
    }
}

/// The engine's answer to one check.
pub fn engine_answer(inst: &ReductionInstance, check: &Check) -> Result<bool> {
    let p = inst.problem(check.semantics)?;
    match check.task {
        Task::Verify(c, m) => {
            let h = check.hypothesis.as_ref().ok_or_else(|| Error::InvalidInput("verify check without hypothesis".into()))?;
            Ok(verify_hypothesis(&p, h, c, m)?.valid)
        }
        Task::Exist(c) => Ok(exists_hypothesis(&p, c)?.exists),
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub check: Check,
    pub engine: Result<bool>,
}

impl CheckOutcome {
    pub fn agrees(&self) -> bool {
        matches!(self.engine, Ok(v) if v == self.check.oracle_answer)
    }

    pub fn describe(&self) -> String {
        let hyp = self.check.hypothesis.as_ref().map(|h| format!(" {}", format_abox(h))).unwrap_or_default();
        let got = match &self.engine {
            Ok(v) => v.to_string(),
            Err(e) => format!("error ({e})"),
        };
        format!(
            "{} {}{hyp}: oracle={} engine={got}",
            self.check.semantics, self.check.task, self.check.oracle_answer
        )
    }
}

/// Runs every check of `inst` through the engine.
pub fn cross_check(inst: &ReductionInstance) -> Vec<CheckOutcome> {
    inst.checks.iter().map(|c| CheckOutcome { check: c.clone(), engine: engine_answer(inst, c) }).collect()
}

#[cfg(test)]
mod tests;
