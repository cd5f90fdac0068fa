//! Seeded generator of tiny knowledge bases, observations and signatures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lattice::Lattice;
use crate::abduction::Semantics;
use crate::kb::{ABox, Assertion, Axiom, Concept, Dialect, KnowledgeBase, Role, Signature, TBox};

const CONCEPTS: [&str; 4] = ["A", "B", "C", "D"];
const ROLES: [&str; 2] = ["r", "s"];
const INDIVIDUALS: [&str; 3] = ["a", "b", "c"];

/// Upper bound on `concepts·individuals + roles·individuals²`, the size of the
/// candidate lattice.
pub const MAX_LATTICE: usize = 12;

#[derive(Clone, Debug)]
pub struct Instance {
    pub kb: KnowledgeBase,
    pub obs: Assertion,
    pub signature: Signature,
}

pub struct Generator {
    rng: ChaCha8Rng,
    dialect: Dialect,
}

struct Pool {
    concepts: Vec<&'static str>,
    roles: Vec<&'static str>,
    individuals: Vec<&'static str>,
}

impl Generator {
    pub fn new(dialect: Dialect, seed: u64) -> Generator {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), dialect }
    }

    fn pool(&mut self) -> Pool {
        loop {
            let ni = self.rng.gen_range(1..=3);
            let nc = self.rng.gen_range(2..=4);
            let nr = self.rng.gen_range(0..=2);
            if nc * ni + nr * ni * ni <= MAX_LATTICE {
                return Pool {
                    concepts: CONCEPTS[..nc].to_vec(),
                    roles: ROLES[..nr].to_vec(),
                    individuals: INDIVIDUALS[..ni].to_vec(),
                };
            }
        }
    }

    fn role(&mut self, pool: &Pool) -> Role {
        let name = *pool.roles.choose(&mut self.rng).unwrap();
        Role { name: name.into(), inverse: self.rng.gen_bool(0.4) }
    }

    fn basic(&mut self, pool: &Pool) -> Concept {
        if !pool.roles.is_empty() && self.rng.gen_bool(0.3) {
            Concept::ExistsRole(self.role(pool))
        } else {
            Concept::atomic(pool.concepts.choose(&mut self.rng).unwrap())
        }
    }

    fn el(&mut self, pool: &Pool, depth: u32) -> Concept {
        let atom = |g: &mut Generator| Concept::atomic(pool.concepts.choose(&mut g.rng).unwrap());
        let roll = self.rng.gen_range(0..10);
        match roll {
            0..=4 => atom(self),
            5..=6 if depth > 0 => {
                let left = atom(self);
                Concept::and(left, self.el(pool, depth - 1))
            }
            7..=8 if depth > 0 && !pool.roles.is_empty() => {
                let r = *pool.roles.choose(&mut self.rng).unwrap();
                let filler = if self.rng.gen_bool(0.2) { Concept::Top } else { self.el(pool, depth - 1) };
                Concept::exists(r, filler)
            }
            9 if self.rng.gen_bool(0.3) => Concept::Top,
            _ => atom(self),
        }
    }

    fn axiom(&mut self, pool: &Pool) -> Axiom {
        match self.dialect {
            Dialect::ElBot => {
                let lhs = self.el(pool, 2);
                let rhs = if self.rng.gen_bool(0.35) { Concept::Bottom } else { self.el(pool, 1) };
                Axiom::sub(lhs, rhs)
            }
            d => {
                if d == Dialect::DlLiteR && !pool.roles.is_empty() && self.rng.gen_bool(0.15) {
                    let (lhs, rhs) = (self.role(pool), self.role(pool));
                    return Axiom::RoleInclusion { lhs, rhs, negated: self.rng.gen_bool(0.4) };
                }
                let lhs = self.basic(pool);
                let rhs = self.basic(pool);
                let rhs = if self.rng.gen_bool(0.4) { Concept::not(rhs) } else { rhs };
                Axiom::sub(lhs, rhs)
            }
        }
    }

    fn assertion(&mut self, pool: &Pool) -> Assertion {
        let ind = |g: &mut Generator| *pool.individuals.choose(&mut g.rng).unwrap();
        if !pool.roles.is_empty() && self.rng.gen_bool(0.3) {
            let r = *pool.roles.choose(&mut self.rng).unwrap();
            let (a, b) = (ind(self), ind(self));
            Assertion::role(r, a, b)
        } else {
            let c = *pool.concepts.choose(&mut self.rng).unwrap();
            Assertion::concept(c, ind(self))
        }
    }

    /// One instance with no promise filtering.
    pub fn raw(&mut self) -> Instance {
        let pool = self.pool();
        let n_ax = self.rng.gen_range(1..=8);
        let tbox: TBox = (0..n_ax).map(|_| self.axiom(&pool)).collect();
        let n_as = self.rng.gen_range(1..=6);
        let abox: ABox = (0..n_as).map(|_| self.assertion(&pool)).collect();
        let obs = Assertion::concept(
            pool.concepts.choose(&mut self.rng).unwrap(),
            pool.individuals.choose(&mut self.rng).unwrap(),
        );
        let mut signature = Signature::default();
        for c in &pool.concepts {
            if self.rng.gen_bool(0.6) {
                signature.concepts.insert((*c).into());
            }
        }
        for r in &pool.roles {
            if self.rng.gen_bool(0.5) {
                signature.roles.insert((*r).into());
            }
        }
        for i in &pool.individuals {
            if self.rng.gen_bool(0.7) {
                signature.individuals.insert((*i).into());
            }
        }
        Instance { kb: KnowledgeBase::new(self.dialect, tbox, abox), obs, signature }
    }
}

/// A generated instance with its oracle, one per semantics whose promise holds.
pub struct Case {
    pub instance: Instance,
    pub lattices: Vec<Lattice>,
}

impl Case {
    pub fn lattice(&self, s: Semantics) -> Option<&Lattice> {
        self.lattices.iter().find(|l| l.semantics == s)
    }
}

/// `count` instances on which the promise holds: for brave or AR when
/// `classical` is false, otherwise for classical semantics. Also returns how many
/// raw instances were drawn.
pub fn corpus(dialect: Dialect, seed: u64, count: usize, classical: bool) -> (Vec<Case>, usize) {
    let mut g = Generator::new(dialect, seed);
    let mut out = Vec::new();
    let mut drawn = 0;
    let sems: &[Semantics] = if classical { &[Semantics::Classical] } else { &[Semantics::Brave, Semantics::Ar] };
    while out.len() < count {
        drawn += 1;
        let inst = g.raw();
        let lattices: Vec<Lattice> = sems
            .iter()
            .map(|&s| Lattice::new(&inst.kb, &inst.obs, s, Some(&inst.signature)))
            .filter(|l| l.promise_holds())
            .collect();
        if !lattices.is_empty() {
            out.push(Case { instance: inst, lattices });
        }
    }
    (out, drawn)
}
