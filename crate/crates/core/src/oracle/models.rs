//! Semantic oracle: a KB is consistent iff the ground propositional encoding of its
//! axioms and assertions over a bounded domain is satisfiable.
//!
//! The domain is the named individuals plus anonymous elements. In EL-bot one
//! element per existential on a right-hand side suffices (canonical model with one
//! witness per filler). In DL-Lite each `∃Q` gets three copies, linked cyclically
//! so the folded chase never creates two-cycles or self-loops that a negative role
//! inclusion could forbid. In both cases the folded canonical model keeps the
//! labels of named individuals, so instance checking is exact as well.

use std::collections::{BTreeSet, HashMap};

use super::sat::{neg, pos, Cnf, Lit};
use crate::kb::{ABox, Assertion, Axiom, Concept, Dialect, Individual, Role, RoleName, TBox};

struct Ground<'t> {
    cnf: Cnf,
    domain: usize,
    truth: u32,
    atoms: HashMap<(String, usize), u32>,
    roles: HashMap<(String, usize, usize), u32>,
    memo: HashMap<(&'t Concept, usize), Lit>,
}

impl<'t> Ground<'t> {
    fn atom(&mut self, name: &str, d: usize) -> u32 {
        if let Some(&v) = self.atoms.get(&(name.to_string(), d)) {
            return v;
        }
        let v = self.cnf.new_var();
        self.atoms.insert((name.to_string(), d), v);
        v
    }

    fn role(&mut self, name: &RoleName, d: usize, e: usize) -> u32 {
        let key = (name.as_str().to_string(), d, e);
        if let Some(&v) = self.roles.get(&key) {
            return v;
        }
        let v = self.cnf.new_var();
        self.roles.insert(key, v);
        v
    }

    fn role_lit(&mut self, q: &Role, d: usize, e: usize) -> Lit {
        if q.inverse {
            pos(self.role(&q.name, e, d))
        } else {
            pos(self.role(&q.name, d, e))
        }
    }

    /// `v ↔ ∨ parts`.
    fn define_or(&mut self, parts: Vec<Lit>) -> Lit {
        let v = self.cnf.new_var();
        let mut big = vec![neg(v)];
        for &p in &parts {
            self.cnf.add(vec![pos(v), p ^ 1]);
            big.push(p);
        }
        self.cnf.add(big);
        pos(v)
    }

    /// `v ↔ ∧ parts`.
    fn define_and(&mut self, parts: Vec<Lit>) -> Lit {
        let v = self.cnf.new_var();
        let mut big = vec![pos(v)];
        for &p in &parts {
            self.cnf.add(vec![neg(v), p]);
            big.push(p ^ 1);
        }
        self.cnf.add(big);
        pos(v)
    }

    fn lit(&mut self, c: &'t Concept, d: usize) -> Lit {
        if let Some(&l) = self.memo.get(&(c, d)) {
            return l;
        }
        let l = match c {
            Concept::Top => pos(self.truth),
            Concept::Bottom => neg(self.truth),
            Concept::Atomic(a) => pos(self.atom(a.as_str(), d)),
            Concept::And(x, y) => {
                let (a, b) = (self.lit(x, d), self.lit(y, d));
                self.define_and(vec![a, b])
            }
            Concept::Exists(r, f) => {
                let q = Role { name: r.clone(), inverse: false };
                let mut parts = Vec::new();
                for e in 0..self.domain {
                    let edge = self.role_lit(&q, d, e);
                    let fill = self.lit(f, e);
                    parts.push(self.define_and(vec![edge, fill]));
                }
                self.define_or(parts)
            }
            Concept::ExistsRole(q) => {
                let parts = (0..self.domain).map(|e| self.role_lit(q, d, e)).collect();
                self.define_or(parts)
            }
            Concept::Not(x) => self.lit(x, d) ^ 1,
        };
        self.memo.insert((c, d), l);
        l
    }
}

fn existentials(c: &Concept, out: &mut BTreeSet<Concept>) {
    match c {
        Concept::And(a, b) => {
            existentials(a, out);
            existentials(b, out);
        }
        Concept::Exists(_, f) => {
            out.insert(c.clone());
            existentials(f, out);
        }
        Concept::ExistsRole(_) => {
            out.insert(c.clone());
        }
        Concept::Not(x) => existentials(x, out),
        _ => {}
    }
}

fn anonymous_count(dialect: Dialect, tbox: &TBox) -> usize {
    let mut ex = BTreeSet::new();
    for ax in tbox {
        match ax {
            Axiom::ConceptInclusion(l, r) => {
                existentials(r, &mut ex);
                if dialect.is_dllite() {
                    existentials(l, &mut ex);
                }
            }
            Axiom::RoleInclusion { lhs, rhs, .. } => {
                for q in [lhs, rhs] {
                    ex.insert(Concept::ExistsRole(q.clone()));
                    ex.insert(Concept::ExistsRole(q.inv()));
                }
            }
        }
    }
    let per = if dialect.is_dllite() { 3 } else { 1 };
    per * ex.len() + 1
}

fn satisfiable(dialect: Dialect, tbox: &TBox, abox: &ABox, negated: Option<&Assertion>) -> bool {
    let mut named: BTreeSet<Individual> = abox.iter().flat_map(|a| a.individuals().cloned()).collect();
    if let Some(a) = negated {
        named.extend(a.individuals().cloned());
    }
    let index: HashMap<Individual, usize> = named.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
    let domain = named.len() + anonymous_count(dialect, tbox);
    let mut g = Ground {
        cnf: Cnf::default(),
        domain,
        truth: 0,
        atoms: HashMap::new(),
        roles: HashMap::new(),
        memo: HashMap::new(),
    };
    g.truth = g.cnf.new_var();
    g.cnf.add(vec![pos(g.truth)]);
    for ax in tbox {
        match ax {
            Axiom::ConceptInclusion(l, r) => {
                for d in 0..domain {
                    let (a, b) = (g.lit(l, d), g.lit(r, d));
                    g.cnf.add(vec![a ^ 1, b]);
                }
            }
            Axiom::RoleInclusion { lhs, rhs, negated } => {
                for d in 0..domain {
                    for e in 0..domain {
                        let a = g.role_lit(lhs, d, e);
                        let b = g.role_lit(rhs, d, e);
                        g.cnf.add(vec![a ^ 1, if *negated { b ^ 1 } else { b }]);
                    }
                }
            }
        }
    }
    let fact = |g: &mut Ground, a: &Assertion| -> Lit {
        match a {
            Assertion::Concept(c, x) => pos(g.atom(c.as_str(), index[x])),
            Assertion::Role(r, x, y) => pos(g.role(r, index[x], index[y])),
        }
    };
    for a in abox {
        let l = fact(&mut g, a);
        g.cnf.add(vec![l]);
    }
    if let Some(a) = negated {
        let l = fact(&mut g, a);
        g.cnf.add(vec![l ^ 1]);
    }
    g.cnf.solve()
}

pub fn model_consistent(dialect: Dialect, tbox: &TBox, abox: &ABox) -> bool {
    satisfiable(dialect, tbox, abox, None)
}

/// Classical entailment (vacuous on inconsistent input).
pub fn model_entails(dialect: Dialect, tbox: &TBox, abox: &ABox, obs: &Assertion) -> bool {
    !satisfiable(dialect, tbox, abox, Some(obs))
}
