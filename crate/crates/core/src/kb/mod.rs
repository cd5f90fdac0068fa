//! Knowledge bases: names, concepts, axioms, assertions and the text format.

mod parse;
mod universe;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Error;

pub use parse::{parse_abox, parse_assertion, parse_kb, parse_observation, parse_signature};
pub use universe::{candidate_universe, restrict_signature};

macro_rules! name_type {
    ($(#[$m:meta])* $t:ident) => {
        $(#[$m])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $t(Arc<str>);

        impl $t {
            pub fn new(s: &str) -> Self {
                $t(Arc::from(s))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $t {
            fn from(s: &str) -> Self {
                $t::new(s)
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

name_type!(
    /// Atomic concept name.
    ConceptName
);
name_type!(
    /// Role name.
    RoleName
);
name_type!(
    /// Individual name.
    Individual
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dialect {
    DlLiteCore,
    DlLiteR,
    ElBot,
}

impl Dialect {
    pub fn as_str(self) -> &'static str {
        match self {
            Dialect::DlLiteCore => "dllite-core",
            Dialect::DlLiteR => "dllite-r",
            Dialect::ElBot => "elbot",
        }
    }

    pub fn is_dllite(self) -> bool {
        matches!(self, Dialect::DlLiteCore | Dialect::DlLiteR)
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Dialect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "dllite-core" => Ok(Dialect::DlLiteCore),
            "dllite-r" => Ok(Dialect::DlLiteR),
            "elbot" => Ok(Dialect::ElBot),
            _ => Err(Error::InvalidInput(format!("unknown dialect `{s}`"))),
        }
    }
}

/// A role or its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Role {
    pub name: RoleName,
    pub inverse: bool,
}

impl Role {
    pub fn named(name: &str) -> Role {
        Role { name: RoleName::new(name), inverse: false }
    }

    pub fn inv(&self) -> Role {
        Role { name: self.name.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "inv({})", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Concept {
    Top,
    Bottom,
    Atomic(ConceptName),
    And(Box<Concept>, Box<Concept>),
    /// Qualified existential `∃r.C` (EL-bot).
    Exists(RoleName, Box<Concept>),
    /// Unqualified existential `∃Q` (DL-Lite).
    ExistsRole(Role),
    Not(Box<Concept>),
}

impl Concept {
    pub fn atomic(name: &str) -> Concept {
        Concept::Atomic(ConceptName::new(name))
    }

    pub fn and(a: Concept, b: Concept) -> Concept {
        Concept::And(Box::new(a), Box::new(b))
    }

    /// Left-folded conjunction; the empty conjunction is `top`.
    pub fn and_all<I: IntoIterator<Item = Concept>>(items: I) -> Concept {
        let mut it = items.into_iter();
        match it.next() {
            None => Concept::Top,
            Some(first) => it.fold(first, Concept::and),
        }
    }

    pub fn exists(role: &str, filler: Concept) -> Concept {
        Concept::Exists(RoleName::new(role), Box::new(filler))
    }

    pub fn exists_role(role: Role) -> Concept {
        Concept::ExistsRole(role)
    }

    pub fn not(c: Concept) -> Concept {
        Concept::Not(Box::new(c))
    }

    /// DL-Lite basic concept: `A` or `∃Q`.
    pub fn is_basic(&self) -> bool {
        matches!(self, Concept::Atomic(_) | Concept::ExistsRole(_))
    }

    pub fn is_el(&self) -> bool {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => true,
            Concept::And(a, b) => a.is_el() && b.is_el(),
            Concept::Exists(_, c) => c.is_el(),
            Concept::ExistsRole(_) | Concept::Not(_) => false,
        }
    }

    pub fn collect_names(&self, concepts: &mut BTreeSet<ConceptName>, roles: &mut BTreeSet<RoleName>) {
        match self {
            Concept::Top | Concept::Bottom => {}
            Concept::Atomic(a) => {
                concepts.insert(a.clone());
            }
            Concept::And(a, b) => {
                a.collect_names(concepts, roles);
                b.collect_names(concepts, roles);
            }
            Concept::Exists(r, c) => {
                roles.insert(r.clone());
                c.collect_names(concepts, roles);
            }
            Concept::ExistsRole(q) => {
                roles.insert(q.name.clone());
            }
            Concept::Not(c) => c.collect_names(concepts, roles),
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("top"),
            Concept::Bottom => f.write_str("bot"),
            Concept::Atomic(a) => write!(f, "{a}"),
            Concept::And(a, b) => write!(f, "({a} and {b})"),
            Concept::Exists(r, c) => write!(f, "(some {r} {c})"),
            Concept::ExistsRole(q) => write!(f, "(some {q})"),
            Concept::Not(c) => write!(f, "not({c})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Axiom {
    ConceptInclusion(Concept, Concept),
    /// `Q1 ⊑ Q2`, or `Q1 ⊑ ¬Q2` when `negated`.
    RoleInclusion { lhs: Role, rhs: Role, negated: bool },
}

impl Axiom {
    pub fn sub(lhs: Concept, rhs: Concept) -> Axiom {
        Axiom::ConceptInclusion(lhs, rhs)
    }

    pub fn collect_names(&self, concepts: &mut BTreeSet<ConceptName>, roles: &mut BTreeSet<RoleName>) {
        match self {
            Axiom::ConceptInclusion(l, r) => {
                l.collect_names(concepts, roles);
                r.collect_names(concepts, roles);
            }
            Axiom::RoleInclusion { lhs, rhs, .. } => {
                roles.insert(lhs.name.clone());
                roles.insert(rhs.name.clone());
            }
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::ConceptInclusion(l, r) => write!(f, "{l} <= {r}"),
            Axiom::RoleInclusion { lhs, rhs, negated: false } => write!(f, "role {lhs} <= {rhs}"),
            Axiom::RoleInclusion { lhs, rhs, negated: true } => write!(f, "role {lhs} <= not({rhs})"),
        }
    }
}

pub type TBox = BTreeSet<Axiom>;

/// Ground fact. Concept assertions order before role assertions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Assertion {
    Concept(ConceptName, Individual),
    Role(RoleName, Individual, Individual),
}

impl Assertion {
    pub fn concept(name: &str, ind: &str) -> Assertion {
        Assertion::Concept(ConceptName::new(name), Individual::new(ind))
    }

    pub fn role(name: &str, a: &str, b: &str) -> Assertion {
        Assertion::Role(RoleName::new(name), Individual::new(a), Individual::new(b))
    }

    pub fn individuals(&self) -> impl Iterator<Item = &Individual> {
        let (a, b) = match self {
            Assertion::Concept(_, a) => (a, None),
            Assertion::Role(_, a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }

    pub fn predicate(&self) -> &str {
        match self {
            Assertion::Concept(c, _) => c.as_str(),
            Assertion::Role(r, _, _) => r.as_str(),
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Concept(c, a) => write!(f, "{c}({a})"),
            Assertion::Role(r, a, b) => write!(f, "{r}({a}, {b})"),
        }
    }
}

pub type ABox = BTreeSet<Assertion>;

pub fn format_abox(abox: &ABox) -> String {
    let items: Vec<String> = abox.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// One assertion per line, canonical order.
pub fn serialize_abox(abox: &ABox) -> String {
    let mut out = String::new();
    for a in abox {
        out.push_str(&a.to_string());
        out.push('\n');
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KnowledgeBase {
    pub dialect: Dialect,
    pub tbox: TBox,
    pub abox: ABox,
}

impl KnowledgeBase {
    pub fn new(dialect: Dialect, tbox: TBox, abox: ABox) -> KnowledgeBase {
        KnowledgeBase { dialect, tbox, abox }
    }

    pub fn with_abox(&self, abox: ABox) -> KnowledgeBase {
        KnowledgeBase { dialect: self.dialect, tbox: self.tbox.clone(), abox }
    }

    pub fn individuals(&self) -> BTreeSet<Individual> {
        self.abox.iter().flat_map(|a| a.individuals().cloned()).collect()
    }

    /// Concept and role names occurring in the TBox or ABox.
    pub fn names(&self) -> (BTreeSet<ConceptName>, BTreeSet<RoleName>) {
        let (mut concepts, mut roles) = self.tbox_names();
        for a in &self.abox {
            match a {
                Assertion::Concept(c, _) => {
                    concepts.insert(c.clone());
                }
                Assertion::Role(r, _, _) => {
                    roles.insert(r.clone());
                }
            }
        }
        (concepts, roles)
    }

    pub fn tbox_names(&self) -> (BTreeSet<ConceptName>, BTreeSet<RoleName>) {
        let mut concepts = BTreeSet::new();
        let mut roles = BTreeSet::new();
        for ax in &self.tbox {
            ax.collect_names(&mut concepts, &mut roles);
        }
        (concepts, roles)
    }
}

pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    let mut out = format!("DIALECT {}\nTBOX\n", kb.dialect);
    for ax in &kb.tbox {
        out.push_str(&ax.to_string());
        out.push('\n');
    }
    out.push_str("ABOX\n");
    out.push_str(&serialize_abox(&kb.abox));
    out
}

/// Rejects axioms outside the declared dialect.
pub fn validate_dialect(kb: &KnowledgeBase) -> Result<(), Error> {
    for ax in &kb.tbox {
        let ok = match (kb.dialect, ax) {
            (Dialect::ElBot, Axiom::ConceptInclusion(l, r)) => l.is_el() && r.is_el(),
            (Dialect::ElBot, Axiom::RoleInclusion { .. }) => false,
            (_, Axiom::ConceptInclusion(l, r)) => {
                l.is_basic()
                    && match r {
                        Concept::Not(b) => b.is_basic(),
                        other => other.is_basic(),
                    }
            }
            (Dialect::DlLiteCore, Axiom::RoleInclusion { .. }) => false,
            (Dialect::DlLiteR, Axiom::RoleInclusion { .. }) => true,
        };
        if !ok {
            return Err(Error::DialectViolation { axiom: ax.to_string(), dialect: kb.dialect });
        }
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Signature {
    pub concepts: BTreeSet<ConceptName>,
    pub roles: BTreeSet<RoleName>,
    pub individuals: BTreeSet<Individual>,
}

impl Signature {
    pub fn admits(&self, a: &Assertion) -> bool {
        let pred = match a {
            Assertion::Concept(c, _) => self.concepts.contains(c),
            Assertion::Role(r, _, _) => self.roles.contains(r),
        };
        pred && a.individuals().all(|i| self.individuals.contains(i))
    }

    pub fn admits_all(&self, abox: &ABox) -> bool {
        abox.iter().all(|a| self.admits(a))
    }
}

pub fn serialize_signature(sig: &Signature) -> String {
    let mut out = String::new();
    for c in &sig.concepts {
        out.push_str(&format!("concept {c}\n"));
    }
    for r in &sig.roles {
        out.push_str(&format!("role {r}\n"));
    }
    for i in &sig.individuals {
        out.push_str(&format!("individual {i}\n"));
    }
    out
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .concepts
            .iter()
            .map(|c| c.to_string())
            .chain(self.roles.iter().map(|r| r.to_string()))
            .chain(self.individuals.iter().map(|i| i.to_string()))
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}
