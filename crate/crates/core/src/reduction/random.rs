//! Seeded random sources for the cross-check suites.

use rand::seq::SliceRandom;
use rand::Rng;

use super::oracle::sat_brute;
use super::source::{Cnf, Digraph, Form, Qbf, Quant};

/// 2 to `max_nodes` nodes named `0, 1, …`, a random edge density and distinct `s`, `t`.
pub fn digraph<R: Rng>(rng: &mut R, max_nodes: usize) -> Digraph {
    let n = rng.gen_range(2..=max_nodes.max(2));
    let p = rng.gen_range(0.05..0.35);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(p) {
                edges.push((names[u].as_str(), names[v].as_str()));
            }
        }
    }
    let s = rng.gen_range(0..n);
    let t = (s + rng.gen_range(1..n)) % n;
    Digraph::new(&names[s], &names[t], &edges).expect("generated names are valid")
}

fn clause<R: Rng>(rng: &mut R, vars: u32, width: usize) -> Vec<i32> {
    let mut pool: Vec<i32> = (1..=vars as i32).collect();
    pool.shuffle(rng);
    pool.truncate(width.min(vars as usize));
    pool.into_iter().map(|v| if rng.gen_bool(0.5) { v } else { -v }).collect()
}

/// Clauses of exactly three distinct variables over 3 to `max_vars` variables. The
/// clause/variable ratio ranges over 2 to 7, so both answers come up often.
pub fn three_cnf<R: Rng>(rng: &mut R, max_vars: u32) -> Cnf {
    let n = rng.gen_range(3..=max_vars.max(3));
    let k = rng.gen_range(2 * n as usize..=7 * n as usize);
    let clauses = (0..k).map(|_| clause(rng, n, 3)).collect();
    Cnf::new(n, clauses, Form::Cnf).expect("generated clauses are valid")
}

/// 1 to `max_vars` variables, 1 to `max_clauses` clauses of width 1 to 3.
pub fn small_cnf<R: Rng>(rng: &mut R, max_vars: u32, max_clauses: usize, form: Form) -> Cnf {
    let n = rng.gen_range(1..=max_vars.max(1));
    let k = rng.gen_range(1..=max_clauses.max(1));
    let clauses = (0..k)
        .map(|_| {
            let w = rng.gen_range(1..=3);
            clause(rng, n, w)
        })
        .collect();
    Cnf::new(n, clauses, form).expect("generated clauses are valid")
}

/// A subset of clause indices, each kept with probability 0.6.
pub fn clause_subset<R: Rng>(rng: &mut R, f: &Cnf) -> Vec<usize> {
    (0..f.clauses.len()).filter(|_| rng.gen_bool(0.6)).collect()
}

/// A CNF with a clause subset. About half the time, when the CNF is unsatisfiable,
/// the subset is a minimal unsatisfiable one, found by deletion in random order.
pub fn mus_pair<R: Rng>(rng: &mut R, max_vars: u32, max_clauses: usize) -> (Cnf, Vec<usize>) {
    let f = small_cnf(rng, max_vars, max_clauses, Form::Cnf);
    if rng.gen_bool(0.5) && !sat_brute(&f).expect("small enough for the oracle") {
        let mut order: Vec<usize> = (0..f.clauses.len()).collect();
        order.shuffle(rng);
        let mut keep = order.clone();
        for j in order {
            let without: Vec<usize> = keep.iter().copied().filter(|&i| i != j).collect();
            if !sat_brute(&f.subset(&without)).expect("small enough for the oracle") {
                keep = without;
            }
        }
        keep.sort_unstable();
        return (f, keep);
    }
    let s = clause_subset(rng, &f);
    (f, s)
}

/// Two non-empty blocks of 1 to `max_block` variables each, `outer` quantifying
/// the first, over a matrix of 1 to `max_clauses` clauses or terms of width 1 to 3.
pub fn two_block_qbf<R: Rng>(rng: &mut R, outer: Quant, max_block: u32, max_clauses: usize, form: Form) -> Qbf {
    let a = rng.gen_range(1..=max_block.max(1));
    let b = rng.gen_range(1..=max_block.max(1));
    let n = a + b;
    let k = rng.gen_range(1..=max_clauses.max(1));
    let clauses = (0..k)
        .map(|_| {
            let w = rng.gen_range(1..=3);
            clause(rng, n, w)
        })
        .collect();
    let inner = match outer {
        Quant::Exists => Quant::Forall,
        Quant::Forall => Quant::Exists,
    };
    let matrix = Cnf::new(n, clauses, form).expect("generated clauses are valid");
    Qbf::new(vec![(outer, (1..=a).collect()), (inner, (a + 1..=n).collect())], matrix).expect("every variable is quantified")
}
