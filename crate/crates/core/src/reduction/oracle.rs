//! Exhaustive ground-truth procedures for the source problems.

use std::collections::VecDeque;

use super::source::{Cnf, Digraph, Form, Qbf, Quant};
use crate::error::{Error, Result};

pub const SAT_MAX_VARS: u32 = 24;
pub const QBF_MAX_VARS: u32 = 16;

/// Clauses as bit masks over variables: bit `v-1` set in `pos` for literal `v`.
struct Masks(Vec<(u32, u32)>);

impl Masks {
    fn new(f: &Cnf) -> Masks {
        Masks(
            f.clauses
                .iter()
                .map(|c| {
                    c.iter().fold((0, 0), |(p, n), &l| {
                        let bit = 1u32 << (l.unsigned_abs() - 1);
                        if l > 0 {
                            (p | bit, n)
                        } else {
                            (p, n | bit)
                        }
                    })
                })
                .collect(),
        )
    }

    fn eval(&self, form: Form, asg: u32) -> bool {
        match form {
            Form::Cnf => self.0.iter().all(|&(p, n)| (asg & p) | (!asg & n) != 0),
            Form::Dnf => self.0.iter().any(|&(p, n)| asg & p == p && asg & n == 0),
        }
    }
}

/// Satisfiability by scanning all assignments; DNF input is read as DNF.
pub fn sat_brute(f: &Cnf) -> Result<bool> {
    if f.variables > SAT_MAX_VARS {
        return Err(Error::budget("variables for exhaustive SAT", SAT_MAX_VARS as u64));
    }
    let m = Masks::new(f);
    Ok((0..1u64 << f.variables).any(|a| m.eval(f.form, a as u32)))
}

/// True under every assignment.
pub fn valid_brute(f: &Cnf) -> Result<bool> {
    Ok(!sat_brute(&f.negated())?)
}

pub fn qbf_brute(q: &Qbf) -> Result<bool> {
    if q.matrix.variables > QBF_MAX_VARS {
        return Err(Error::budget("variables for QBF expansion", QBF_MAX_VARS as u64));
    }
    let order: Vec<(Quant, u32)> = q.prefix.iter().flat_map(|(qu, b)| b.iter().map(move |&v| (*qu, v))).collect();
    let m = Masks::new(&q.matrix);
    fn go(order: &[(Quant, u32)], m: &Masks, form: Form, asg: u32) -> bool {
        match order.split_first() {
            None => m.eval(form, asg),
            Some((&(q, v), rest)) => {
                let bit = 1u32 << (v - 1);
                let (a, b) = (go(rest, m, form, asg), || go(rest, m, form, asg | bit));
                match q {
                    Quant::Exists => a || b(),
                    Quant::Forall => a && b(),
                }
            }
        }
    }
    Ok(go(&order, &m, q.matrix.form, 0))
}

/// `subset` (clause indices) is unsatisfiable and every proper subset is satisfiable.
pub fn is_mus(f: &Cnf, subset: &[usize]) -> Result<bool> {
    if sat_brute(&f.subset(subset))? {
        return Ok(false);
    }
    for skip in 0..subset.len() {
        let rest: Vec<usize> = subset.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &j)| j).collect();
        if !sat_brute(&f.subset(&rest))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Breadth-first search from `s`; a node reaches itself.
pub fn reachable(g: &Digraph) -> bool {
    let mut seen = vec![false; g.nodes.len()];
    let mut queue = VecDeque::from([g.s]);
    seen[g.s] = true;
    while let Some(u) = queue.pop_front() {
        if u == g.t {
            return true;
        }
        for &(a, b) in g.edges.range((u, 0)..(u + 1, 0)) {
            debug_assert_eq!(a, u);
            if !seen[b] {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    false
}
