//! Combinatorial source objects and their text formats: DIMACS CNF, QDIMACS and
//! edge-list digraphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Whether a clause list is read as a conjunction of disjunctions or the converse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Cnf,
    Dnf,
}

impl Form {
    pub fn as_str(self) -> &'static str {
        match self {
            Form::Cnf => "cnf",
            Form::Dnf => "dnf",
        }
    }
}

/// Clauses (or terms, for [`Form::Dnf`]) over variables `1..=variables`, literals
/// signed as in DIMACS.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub variables: u32,
    pub clauses: Vec<Vec<i32>>,
    pub form: Form,
}

impl Cnf {
    /// Checks the invariants and normalizes each clause (sorted by variable, duplicates
    /// removed).
    pub fn new(variables: u32, clauses: Vec<Vec<i32>>, form: Form) -> Result<Cnf> {
        let mut out = Vec::with_capacity(clauses.len());
        for (j, c) in clauses.into_iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidSource(format!("clause {} is empty", j + 1)));
            }
            let mut set: Vec<i32> = c.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            if let Some(&l) = set.iter().find(|l| **l == 0 || l.unsigned_abs() > variables) {
                return Err(Error::InvalidSource(format!("literal {l} in clause {} is out of range", j + 1)));
            }
            set.sort_by_key(|l| (l.unsigned_abs(), *l < 0));
            out.push(set);
        }
        Ok(Cnf { variables, clauses: out, form })
    }

    /// Variables that occur in some clause.
    pub fn used(&self) -> BTreeSet<u32> {
        self.clauses.iter().flatten().map(|l| l.unsigned_abs()).collect()
    }

    /// The same clauses read with every literal flipped and the other form: the
    /// negation of the formula.
    pub fn negated(&self) -> Cnf {
        let form = match self.form {
            Form::Cnf => Form::Dnf,
            Form::Dnf => Form::Cnf,
        };
        let clauses = self.clauses.iter().map(|c| c.iter().map(|l| -l).collect()).collect();
        Cnf::new(self.variables, clauses, form).expect("negation keeps the invariants")
    }

    pub fn subset(&self, idx: &[usize]) -> Cnf {
        Cnf { variables: self.variables, clauses: idx.iter().map(|&j| self.clauses[j].clone()).collect(), form: self.form }
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        if self.form == Form::Dnf {
            s.push_str("c form=dnf\n");
        }
        s.push_str(&format!("p cnf {} {}\n", self.variables, self.clauses.len()));
        for c in &self.clauses {
            write_clause(&mut s, c);
        }
        s
    }
}

fn write_clause(s: &mut String, c: &[i32]) {
    for l in c {
        s.push_str(&l.to_string());
        s.push(' ');
    }
    s.push_str("0\n");
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quant {
    Exists,
    Forall,
}

impl fmt::Display for Quant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quant::Exists => "e",
            Quant::Forall => "a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qbf {
    pub prefix: Vec<(Quant, Vec<u32>)>,
    pub matrix: Cnf,
}

impl Qbf {
    /// Every variable of the matrix must be quantified, and none twice.
    pub fn new(prefix: Vec<(Quant, Vec<u32>)>, matrix: Cnf) -> Result<Qbf> {
        let mut seen = BTreeSet::new();
        for (_, block) in &prefix {
            for &v in block {
                if v == 0 || v > matrix.variables {
                    return Err(Error::InvalidSource(format!("quantified variable {v} is out of range")));
                }
                if !seen.insert(v) {
                    return Err(Error::InvalidSource(format!("variable {v} is quantified twice")));
                }
            }
        }
        if let Some(v) = matrix.used().into_iter().find(|v| !seen.contains(v)) {
            return Err(Error::InvalidSource(format!("variable {v} is not quantified")));
        }
        let prefix = prefix.into_iter().filter(|(_, b)| !b.is_empty()).collect();
        Ok(Qbf { prefix, matrix })
    }

    /// Splits the prefix into two blocks quantified by `outer` and then by its dual;
    /// adjacent blocks of one quantifier are merged and either block may be empty.
    pub fn two_blocks(&self, outer: Quant) -> Result<(Vec<u32>, Vec<u32>)> {
        let mut first = Vec::new();
        let mut second = Vec::new();
        let mut in_second = false;
        for (q, block) in &self.prefix {
            if *q == outer && !in_second {
                first.extend(block);
            } else if *q != outer {
                in_second = true;
                second.extend(block);
            } else {
                let shape = if outer == Quant::Exists { "∃∀" } else { "∀∃" };
                return Err(Error::InvalidSource(format!("prefix has more than two blocks; expected {shape}")));
            }
        }
        Ok((first, second))
    }

    pub fn to_qdimacs(&self) -> String {
        let mut s = String::new();
        if self.matrix.form == Form::Dnf {
            s.push_str("c form=dnf\n");
        }
        s.push_str(&format!("p cnf {} {}\n", self.matrix.variables, self.matrix.clauses.len()));
        for (q, block) in &self.prefix {
            s.push_str(&q.to_string());
            for v in block {
                s.push_str(&format!(" {v}"));
            }
            s.push_str(" 0\n");
        }
        for c in &self.matrix.clauses {
            write_clause(&mut s, c);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    /// Node names in order of first appearance.
    pub nodes: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
    pub s: usize,
    pub t: usize,
}

impl Digraph {
    /// Builds a graph from named edges; `s` and `t` are added as nodes if needed.
    pub fn new(s: &str, t: &str, edges: &[(&str, &str)]) -> Result<Digraph> {
        let mut names: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut id = |n: &str| -> Result<usize> {
            if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidSource(format!("node name `{n}` must be alphanumeric")));
            }
            if let Some(&i) = index.get(n) {
                return Ok(i);
            }
            index.insert(n.to_string(), names.len());
            names.push(n.to_string());
            Ok(names.len() - 1)
        };
        let (si, ti) = (id(s)?, id(t)?);
        let mut es = BTreeSet::new();
        for (u, v) in edges {
            es.insert((id(u)?, id(v)?));
        }
        Ok(Digraph { nodes: names, edges: es, s: si, t: ti })
    }

    pub fn name(&self, i: usize) -> &str {
        &self.nodes[i]
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("s={} t={}\n", self.name(self.s), self.name(self.t));
        for &(u, v) in &self.edges {
            s.push_str(&format!("{} {}\n", self.name(u), self.name(v)));
        }
        s
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::syntax(line, 1, msg)
}

fn form_comment(line: &str) -> Option<Form> {
    let rest = line.strip_prefix('c')?.trim();
    match rest {
        "form=dnf" => Some(Form::Dnf),
        "form=cnf" => Some(Form::Cnf),
        _ => None,
    }
}

fn header(line: usize, l: &str) -> Result<(u32, usize)> {
    let w: Vec<&str> = l.split_whitespace().collect();
    if w.len() != 4 || w[0] != "p" || w[1] != "cnf" {
        return Err(syntax(line, "expected `p cnf <variables> <clauses>`"));
    }
    let v = w[2].parse().map_err(|_| syntax(line, "bad variable count"))?;
    let c = w[3].parse().map_err(|_| syntax(line, "bad clause count"))?;
    Ok((v, c))
}

fn numbers(line: usize, words: &[&str]) -> Result<Vec<i32>> {
    words.iter().map(|w| w.parse::<i32>().map_err(|_| syntax(line, format!("bad literal `{w}`")))).collect()
}

/// Clause lines may span several text lines; a clause ends at `0`.
struct ClauseReader {
    clauses: Vec<Vec<i32>>,
    cur: Vec<i32>,
}

impl ClauseReader {
    fn push(&mut self, lits: Vec<i32>) {
        for l in lits {
            if l == 0 {
                self.clauses.push(std::mem::take(&mut self.cur));
            } else {
                self.cur.push(l);
            }
        }
    }

    fn finish(self, line: usize) -> Result<Vec<Vec<i32>>> {
        if !self.cur.is_empty() {
            return Err(syntax(line, "last clause is not terminated by 0"));
        }
        Ok(self.clauses)
    }
}

pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    parse_with_prefix(text, false).map(|(cnf, _)| cnf)
}

pub fn parse_qdimacs(text: &str) -> Result<Qbf> {
    let (cnf, prefix) = parse_with_prefix(text, true)?;
    Qbf::new(prefix, cnf)
}

fn parse_with_prefix(text: &str, quantified: bool) -> Result<(Cnf, Vec<(Quant, Vec<u32>)>)> {
    let mut form = Form::Cnf;
    let mut head: Option<(u32, usize)> = None;
    let mut prefix = Vec::new();
    let mut reader = ClauseReader { clauses: Vec::new(), cur: Vec::new() };
    let mut last = 1;
    for (n, l) in data_lines(text) {
        last = n;
        if l.starts_with('c') {
            if let Some(f) = form_comment(l) {
                form = f;
            }
            continue;
        }
        if l.starts_with('p') {
            if head.is_some() {
                return Err(syntax(n, "duplicate problem line"));
            }
            head = Some(header(n, l)?);
            continue;
        }
        if head.is_none() {
            return Err(syntax(n, "clause before the problem line"));
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        if quantified && (words[0] == "e" || words[0] == "a") {
            if !reader.clauses.is_empty() || !reader.cur.is_empty() {
                return Err(syntax(n, "quantifier block after the first clause"));
            }
            let q = if words[0] == "e" { Quant::Exists } else { Quant::Forall };
            let vars = numbers(n, &words[1..])?;
            if vars.last() != Some(&0) || vars[..vars.len() - 1].iter().any(|&v| v <= 0) {
                return Err(syntax(n, "quantifier block must list positive variables and end with 0"));
            }
            prefix.push((q, vars[..vars.len() - 1].iter().map(|&v| v as u32).collect()));
            continue;
        }
        reader.push(numbers(n, &words)?);
    }
    let (vars, count) = head.ok_or_else(|| syntax(1, "missing `p cnf` line"))?;
    let clauses = reader.finish(last)?;
    if clauses.len() != count {
        return Err(Error::InvalidSource(format!("header declares {count} clauses, found {}", clauses.len())));
    }
    Ok((Cnf::new(vars, clauses, form)?, prefix))
}

/// Header `s=<node> t=<node>`, then one edge `<u> <v>` per line; `#` starts a comment.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut st: Option<(String, String)> = None;
    let mut edges: Vec<(String, String)> = Vec::new();
    for (n, raw) in data_lines(text) {
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        if st.is_none() {
            let mut s = None;
            let mut t = None;
            for w in &words {
                if let Some(x) = w.strip_prefix("s=") {
                    s = Some(x.to_string());
                } else if let Some(x) = w.strip_prefix("t=") {
                    t = Some(x.to_string());
                } else {
                    return Err(syntax(n, "expected header `s=<node> t=<node>`"));
                }
            }
            match (s, t) {
                (Some(s), Some(t)) => st = Some((s, t)),
                _ => return Err(syntax(n, "expected header `s=<node> t=<node>`")),
            }
            continue;
        }
        if words.len() != 2 {
            return Err(syntax(n, "expected an edge `<u> <v>`"));
        }
        edges.push((words[0].to_string(), words[1].to_string()));
    }
    let (s, t) = st.ok_or_else(|| syntax(1, "missing header `s=<node> t=<node>`"))?;
    let refs: Vec<(&str, &str)> = edges.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
    Digraph::new(&s, &t, &refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let cnf = parse_dimacs("c a comment\np cnf 3 2\n1 -2 0\n3\n-1 0\n").unwrap();
        assert_eq!(cnf.clauses, vec![vec![1, -2], vec![-1, 3]]);
        assert_eq!(cnf.form, Form::Cnf);
        assert_eq!(parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
    }

    #[test]
    fn dimacs_errors() {
        assert!(parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 2\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n0\n").is_err());
        assert!(parse_dimacs("1 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n1\n").is_err());
    }

    #[test]
    fn qdimacs_with_dnf_tag() {
        let q = parse_qdimacs("c form=dnf\np cnf 2 1\ne 1 0\na 2 0\n1 -1 0\n").unwrap();
        assert_eq!(q.matrix.form, Form::Dnf);
        assert_eq!(q.prefix, vec![(Quant::Exists, vec![1]), (Quant::Forall, vec![2])]);
        assert_eq!(q.two_blocks(Quant::Exists).unwrap(), (vec![1], vec![2]));
        assert!(q.two_blocks(Quant::Forall).is_err());
        assert_eq!(parse_qdimacs(&q.to_qdimacs()).unwrap(), q);
    }

    #[test]
    fn qdimacs_quantification_is_checked() {
        assert!(parse_qdimacs("p cnf 2 1\ne 1 0\n1 2 0\n").is_err());
        assert!(parse_qdimacs("p cnf 1 1\ne 1 0\na 1 0\n1 0\n").is_err());
    }

    #[test]
    fn digraph_format() {
        let g = parse_digraph("s=a t=c\na b\nb c # edge\n\n").unwrap();
        assert_eq!(g.nodes, vec!["a", "c", "b"]);
        assert_eq!(g.edges.len(), 2);
        assert_eq!(parse_digraph(&g.to_text()).unwrap().edges.len(), 2);
        assert!(parse_digraph("a b\n").is_err());
        assert!(parse_digraph("s=a t=b\na-x b\n").is_err());
    }
}
