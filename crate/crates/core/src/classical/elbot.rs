//! EL-bot reasoning: normalization with fresh names and completion-rule saturation.
//!
//! Anonymous witnesses for `A ⊑ ∃r.B` are shared per filler `B` and their labels do
//! not depend on the ABox, so they are saturated once per TBox and folded into a
//! table of consequences at the named individual.

use std::collections::{HashMap, VecDeque};

use crate::bits::Bits;
use crate::kb::{Assertion, Axiom, Concept, ConceptName, RoleName, TBox};

pub const TOP: usize = 0;
pub const BOT: usize = 1;

#[derive(Clone, Debug)]
pub struct Saturator {
    names: HashMap<ConceptName, usize>,
    roles: HashMap<RoleName, usize>,
    ncon: usize,
    sub: Vec<Vec<usize>>,
    conj: Vec<Vec<(usize, usize)>>,
    /// Consequences at a node of holding `a`, through `a ⊑ ∃r.B` witnesses.
    via_witness: Vec<Vec<usize>>,
    /// `exl[r][a]`: concepts `b` with `∃r.a ⊑ b`.
    exl: Vec<HashMap<usize, Vec<usize>>>,
    /// Labels of a node that only holds `top`.
    top_labels: Bits,
}

#[derive(Default)]
struct Builder {
    names: HashMap<ConceptName, usize>,
    roles: HashMap<RoleName, usize>,
    ncon: usize,
    sub: Vec<(usize, usize)>,
    conj: Vec<(usize, usize, usize)>,
    exr: Vec<(usize, usize, usize)>,
    exl: Vec<(usize, usize, usize)>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.ncon += 1;
        self.ncon - 1
    }

    fn role(&mut self, r: &RoleName) -> usize {
        let n = self.roles.len();
        *self.roles.entry(r.clone()).or_insert(n)
    }

    fn atom(&mut self, a: &ConceptName) -> usize {
        if let Some(&i) = self.names.get(a) {
            return i;
        }
        let i = self.fresh();
        self.names.insert(a.clone(), i);
        i
    }

    /// A name implied by `c`.
    fn lhs(&mut self, c: &Concept) -> usize {
        match c {
            Concept::Top => TOP,
            Concept::Bottom => BOT,
            Concept::Atomic(a) => self.atom(a),
            Concept::And(x, y) => {
                let (a, b) = (self.lhs(x), self.lhs(y));
                let n = self.fresh();
                self.conj.push((a, b, n));
                n
            }
            Concept::Exists(r, f) => {
                let a = self.lhs(f);
                let r = self.role(r);
                let n = self.fresh();
                self.exl.push((r, a, n));
                n
            }
            Concept::ExistsRole(_) | Concept::Not(_) => unreachable!("validated EL-bot concept"),
        }
    }

    /// A name implying `c`.
    fn rhs(&mut self, c: &Concept) -> usize {
        match c {
            Concept::Top => TOP,
            Concept::Bottom => BOT,
            Concept::Atomic(a) => self.atom(a),
            Concept::And(x, y) => {
                let n = self.fresh();
                let (a, b) = (self.rhs(x), self.rhs(y));
                self.sub.push((n, a));
                self.sub.push((n, b));
                n
            }
            Concept::Exists(r, f) => {
                let n = self.fresh();
                let b = self.rhs(f);
                let r = self.role(r);
                self.exr.push((n, r, b));
                n
            }
            Concept::ExistsRole(_) | Concept::Not(_) => unreachable!("validated EL-bot concept"),
        }
    }
}

impl Saturator {
    pub fn new(tbox: &TBox) -> Saturator {
        let mut b = Builder { ncon: 2, ..Default::default() };
        for ax in tbox {
            if let Axiom::ConceptInclusion(l, r) = ax {
                let (x, y) = (b.lhs(l), b.rhs(r));
                b.sub.push((x, y));
            }
        }
        let n = b.ncon;
        let nr = b.roles.len();
        let mut sub = vec![Vec::new(); n];
        for &(x, y) in &b.sub {
            sub[x].push(y);
        }
        let mut conj = vec![Vec::new(); n];
        for &(x, y, z) in &b.conj {
            conj[x].push((y, z));
            conj[y].push((x, z));
        }
        let mut exl: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new(); nr];
        for &(r, a, z) in &b.exl {
            exl[r].entry(a).or_default().push(z);
        }

        let mut s = Saturator {
            names: b.names,
            roles: b.roles,
            ncon: n,
            sub,
            conj,
            via_witness: vec![Vec::new(); n],
            exl,
            top_labels: Bits::empty(n),
        };
        let fillers = anonymous_labels(&s, &b.exr);
        for &(a, r, f) in &b.exr {
            let labels = &fillers[&f];
            let mut out = Vec::new();
            if labels.contains(BOT) {
                out.push(BOT);
            }
            for l in labels.iter() {
                if let Some(zs) = s.exl[r].get(&l) {
                    out.extend(zs.iter().copied());
                }
            }
            s.via_witness[a].extend(out);
        }
        for v in &mut s.via_witness {
            v.sort_unstable();
            v.dedup();
        }
        let mut top = Bits::empty(n);
        s.close_single(&mut top, TOP);
        s.top_labels = top;
        s
    }

    /// Saturates an isolated node starting from `start`.
    fn close_single(&self, labels: &mut Bits, start: usize) {
        let mut queue = VecDeque::new();
        for c in [TOP, start] {
            if !labels.contains(c) {
                labels.insert(c);
                queue.push_back(c);
            }
        }
        while let Some(a) = queue.pop_front() {
            let mut add = |c: usize, labels: &mut Bits| {
                if !labels.contains(c) {
                    labels.insert(c);
                    queue.push_back(c);
                }
            };
            for &b in &self.sub[a] {
                add(b, labels);
            }
            for &(o, b) in &self.conj[a] {
                if labels.contains(o) {
                    add(b, labels);
                }
            }
            for &b in &self.via_witness[a] {
                add(b, labels);
            }
        }
    }

    pub fn tbox_unsatisfiable(&self) -> bool {
        self.top_labels.contains(BOT)
    }

    pub fn concept_id(&self, c: &ConceptName) -> Option<usize> {
        self.names.get(c).copied()
    }

    pub fn role_id(&self, r: &RoleName) -> Option<usize> {
        self.roles.get(r).copied()
    }

    pub fn top_implies(&self, c: &ConceptName) -> bool {
        self.concept_id(c).is_some_and(|i| self.top_labels.contains(i))
    }

    pub fn concept_satisfiable(&self, c: &ConceptName) -> bool {
        if self.tbox_unsatisfiable() {
            return false;
        }
        match self.concept_id(c) {
            None => true,
            Some(i) => {
                let mut labels = Bits::empty(self.ncon);
                self.close_single(&mut labels, i);
                !labels.contains(BOT)
            }
        }
    }

    /// Saturates named individuals `0..nodes` from encoded facts.
    /// Stops early once `bot` appears when `stop_on_bot` is set.
    pub fn saturate(&self, nodes: usize, facts: &[Fact], stop_on_bot: bool) -> Vec<Bits> {
        let mut labels = vec![Bits::empty(self.ncon); nodes];
        let mut incoming: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        let push = |x: usize, c: usize, labels: &mut Vec<Bits>, queue: &mut VecDeque<(usize, usize)>| {
            if !labels[x].contains(c) {
                labels[x].insert(c);
                queue.push_back((x, c));
            }
        };
        for x in 0..nodes {
            push(x, TOP, &mut labels, &mut queue);
        }
        for f in facts {
            match *f {
                Fact::Concept(x, c) => push(x, c, &mut labels, &mut queue),
                Fact::Edge(x, r, y) => incoming[y].push((x, r)),
            }
        }
        while let Some((x, a)) = queue.pop_front() {
            if a == BOT {
                if stop_on_bot {
                    return labels;
                }
                for &(p, _) in &incoming[x] {
                    push(p, BOT, &mut labels, &mut queue);
                }
            }
            for &b in &self.sub[a] {
                push(x, b, &mut labels, &mut queue);
            }
            for &(o, b) in &self.conj[a] {
                if labels[x].contains(o) {
                    push(x, b, &mut labels, &mut queue);
                }
            }
            for &b in &self.via_witness[a] {
                push(x, b, &mut labels, &mut queue);
            }
            for &(p, r) in &incoming[x] {
                if let Some(bs) = self.exl[r].get(&a) {
                    for &b in bs {
                        push(p, b, &mut labels, &mut queue);
                    }
                }
            }
        }
        labels
    }

    /// Encodes an assertion; facts over names unknown to the TBox are dropped.
    pub fn encode(&self, a: &Assertion, ind: &mut impl FnMut(&str) -> usize) -> Option<Fact> {
        match a {
            Assertion::Concept(c, x) => self.concept_id(c).map(|i| Fact::Concept(ind(x.as_str()), i)),
            Assertion::Role(r, x, y) => {
                let r = self.role_id(r)?;
                Some(Fact::Edge(ind(x.as_str()), r, ind(y.as_str())))
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Fact {
    Concept(usize, usize),
    Edge(usize, usize, usize),
}

/// Labels of the shared witness node of every filler.
fn anonymous_labels(s: &Saturator, exr: &[(usize, usize, usize)]) -> HashMap<usize, Bits> {
    let n = s.ncon;
    let mut fillers: Vec<usize> = exr.iter().map(|e| e.2).collect();
    fillers.sort_unstable();
    fillers.dedup();
    let index: HashMap<usize, usize> = fillers.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut labels: Vec<Bits> = fillers
        .iter()
        .map(|&f| {
            let mut b = Bits::empty(n);
            b.insert(TOP);
            b.insert(f);
            b
        })
        .collect();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    loop {
        let mut changed = false;
        for x in 0..fillers.len() {
            let current: Vec<usize> = labels[x].iter().collect();
            for a in current {
                for &b in &s.sub[a] {
                    if !labels[x].contains(b) {
                        labels[x].insert(b);
                        changed = true;
                    }
                }
                for &(o, b) in &s.conj[a] {
                    if labels[x].contains(o) && !labels[x].contains(b) {
                        labels[x].insert(b);
                        changed = true;
                    }
                }
                for &(src, r, f) in exr {
                    if src == a {
                        let e = (x, r, index[&f]);
                        if !edges.contains(&e) {
                            edges.push(e);
                            changed = true;
                        }
                    }
                }
            }
        }
        for &(x, r, y) in &edges {
            let ys: Vec<usize> = labels[y].iter().collect();
            for a in ys {
                let mut add: Vec<usize> = Vec::new();
                if a == BOT {
                    add.push(BOT);
                }
                if let Some(bs) = s.exl[r].get(&a) {
                    add.extend(bs.iter().copied());
                }
                for b in add {
                    if !labels[x].contains(b) {
                        labels[x].insert(b);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    fillers.iter().copied().zip(labels).collect()
}
