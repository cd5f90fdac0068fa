//! DL-Lite reasoning by closure of positive and negative inclusions.
//!
//! Inconsistency in DL-Lite is always witnessed by at most two assertions, so an
//! ABox is checked by looking at the basic concepts and roles each assertion
//! contributes at named individuals.

use std::collections::HashMap;

use crate::bits::Bits;
use crate::kb::{Assertion, Axiom, Concept, ConceptName, Role, RoleName, TBox};

#[derive(Clone, Debug)]
pub struct Closure {
    concepts: HashMap<ConceptName, usize>,
    roles: HashMap<RoleName, usize>,
    /// `reach[b]`: basic concepts implied by `b` (reflexive).
    reach: Vec<Bits>,
    disjoint: Vec<Bits>,
    unsat: Vec<bool>,
    role_disjoint: Vec<Bits>,
}

/// What a single assertion says about named individuals.
#[derive(Clone, Debug, Default)]
pub struct Contribution {
    /// (individual, basic concept id)
    pub basics: Vec<(usize, usize)>,
    /// (subject, object, role id)
    pub pairs: Vec<(usize, usize, usize)>,
}

impl Closure {
    pub fn new(tbox: &TBox) -> Closure {
        let mut concepts = HashMap::new();
        let mut roles = HashMap::new();
        for ax in tbox {
            let mut cs = Default::default();
            let mut rs = Default::default();
            ax.collect_names(&mut cs, &mut rs);
            for c in cs {
                let n = concepts.len();
                concepts.entry(c).or_insert(n);
            }
            for r in rs {
                let n = roles.len();
                roles.entry(r).or_insert(n);
            }
        }
        let nc = concepts.len();
        let nr = roles.len();
        let nb = nc + 2 * nr;
        let mut c = Closure {
            concepts,
            roles,
            reach: Vec::new(),
            disjoint: vec![Bits::empty(nb); nb],
            unsat: vec![false; nb],
            role_disjoint: vec![Bits::empty(2 * nr); 2 * nr],
        };

        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); nb];
        let mut redges: Vec<Vec<usize>> = vec![Vec::new(); 2 * nr];
        let mut neg: Vec<(usize, usize)> = Vec::new();
        let mut rneg: Vec<(usize, usize)> = Vec::new();
        for ax in tbox {
            match ax {
                Axiom::ConceptInclusion(l, r) => {
                    let Some(lb) = c.basic(l) else { continue };
                    match r {
                        Concept::Not(inner) => {
                            if let Some(rb) = c.basic(inner) {
                                neg.push((lb, rb));
                            }
                        }
                        other => {
                            if let Some(rb) = c.basic(other) {
                                edges[lb].push(rb);
                            }
                        }
                    }
                }
                Axiom::RoleInclusion { lhs, rhs, negated } => {
                    let (l, r) = (c.role_id(lhs).unwrap(), c.role_id(rhs).unwrap());
                    let (li, ri) = (l ^ 1, r ^ 1);
                    if *negated {
                        rneg.push((l, r));
                        rneg.push((li, ri));
                    } else {
                        redges[l].push(r);
                        redges[li].push(ri);
                        edges[nc + l].push(nc + r);
                        edges[nc + li].push(nc + ri);
                    }
                }
            }
        }
        c.reach = closure(&edges);
        let rreach = closure(&redges);

        for &(x, y) in &neg {
            for a in 0..nb {
                if !c.reach[a].contains(x) {
                    continue;
                }
                for b in 0..nb {
                    if c.reach[b].contains(y) {
                        c.disjoint[a].insert(b);
                        c.disjoint[b].insert(a);
                    }
                }
            }
        }
        for &(x, y) in &rneg {
            for a in 0..2 * nr {
                if !rreach[a].contains(x) {
                    continue;
                }
                for b in 0..2 * nr {
                    if rreach[b].contains(y) {
                        c.role_disjoint[a].insert(b);
                        c.role_disjoint[b].insert(a);
                    }
                }
            }
        }

        let mut runsat = vec![false; 2 * nr];
        loop {
            let mut changed = false;
            for b in 0..nb {
                if !c.unsat[b] && (c.disjoint[b].contains(b) || c.reach[b].iter().any(|x| c.unsat[x])) {
                    c.unsat[b] = true;
                    changed = true;
                }
            }
            for q in 0..2 * nr {
                if runsat[q] {
                    continue;
                }
                let bad = c.role_disjoint[q].contains(q)
                    || rreach[q].iter().any(|x| runsat[x])
                    || c.unsat[nc + q]
                    || c.unsat[nc + (q ^ 1)];
                if bad {
                    runsat[q] = true;
                    changed = true;
                }
            }
            for q in 0..2 * nr {
                if runsat[q] && !c.unsat[nc + q] {
                    c.unsat[nc + q] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        c
    }

    fn nc(&self) -> usize {
        self.concepts.len()
    }

    /// Role id: `2 * index` for the role, `2 * index + 1` for its inverse.
    fn role_id(&self, q: &Role) -> Option<usize> {
        self.roles.get(&q.name).map(|&i| 2 * i + usize::from(q.inverse))
    }

    fn basic(&self, c: &Concept) -> Option<usize> {
        match c {
            Concept::Atomic(a) => self.concepts.get(a).copied(),
            Concept::ExistsRole(q) => self.role_id(q).map(|r| self.nc() + r),
            _ => None,
        }
    }

    fn exists_id(&self, name: &RoleName, inverse: bool) -> Option<usize> {
        self.roles.get(name).map(|&i| self.nc() + 2 * i + usize::from(inverse))
    }

    /// Contribution of one assertion, individuals numbered by `ind`.
    pub fn contribution(&self, a: &Assertion, ind: &mut impl FnMut(&str) -> usize) -> Contribution {
        let mut out = Contribution::default();
        match a {
            Assertion::Concept(c, x) => {
                if let Some(&id) = self.concepts.get(c) {
                    out.basics.push((ind(x.as_str()), id));
                }
            }
            Assertion::Role(r, x, y) => {
                if let Some(&i) = self.roles.get(r) {
                    let (xi, yi) = (ind(x.as_str()), ind(y.as_str()));
                    out.basics.push((xi, self.exists_id(r, false).unwrap()));
                    out.basics.push((yi, self.exists_id(r, true).unwrap()));
                    out.pairs.push((xi, yi, 2 * i));
                    out.pairs.push((yi, xi, 2 * i + 1));
                }
            }
        }
        out
    }

    pub fn contribution_unsat(&self, c: &Contribution) -> bool {
        c.basics.iter().any(|&(_, b)| self.unsat[b]) || self.clash(c, c)
    }

    /// True when the two contributions contradict each other at some individual or pair.
    pub fn clash(&self, c1: &Contribution, c2: &Contribution) -> bool {
        for &(x, b) in &c1.basics {
            for &(y, d) in &c2.basics {
                if x == y && self.disjoint[b].contains(d) {
                    return true;
                }
            }
        }
        for &(x, y, q) in &c1.pairs {
            for &(u, v, p) in &c2.pairs {
                if x == u && y == v && self.role_disjoint[q].contains(p) {
                    return true;
                }
            }
        }
        false
    }

    /// Does a contribution imply concept `target` at individual `x`?
    pub fn implies(&self, c: &Contribution, x: usize, target: &ConceptName) -> bool {
        let Some(&t) = self.concepts.get(target) else { return false };
        c.basics.iter().any(|&(y, b)| y == x && self.reach[b].contains(t))
    }

    pub fn concept_satisfiable(&self, name: &ConceptName) -> bool {
        self.concepts.get(name).map_or(true, |&i| !self.unsat[i])
    }
}

fn closure(edges: &[Vec<usize>]) -> Vec<Bits> {
    let n = edges.len();
    (0..n)
        .map(|s| {
            let mut seen = Bits::empty(n);
            seen.insert(s);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &edges[x] {
                    if !seen.contains(y) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect()
}
