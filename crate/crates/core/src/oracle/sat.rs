//! A small DPLL solver with two watched literals and chronological backtracking.
//! Only meant for the ground encodings of desk-scale knowledge bases.

/// Literals are `2 * var + negated`.
pub type Lit = u32;

pub fn pos(v: u32) -> Lit {
    2 * v
}

pub fn neg(v: u32) -> Lit {
    2 * v + 1
}

#[derive(Clone, Debug, Default)]
pub struct Cnf {
    pub vars: u32,
    pub clauses: Vec<Vec<Lit>>,
    /// Set once an empty clause was added.
    contradiction: bool,
}

impl Cnf {
    pub fn new_var(&mut self) -> u32 {
        self.vars += 1;
        self.vars - 1
    }

    pub fn add(&mut self, mut clause: Vec<Lit>) {
        clause.sort_unstable();
        clause.dedup();
        if clause.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return;
        }
        if clause.is_empty() {
            self.contradiction = true;
            return;
        }
        self.clauses.push(clause);
    }

    pub fn solve(&self) -> bool {
        if self.contradiction {
            return false;
        }
        Dpll::new(self).run()
    }
}

struct Dpll<'a> {
    clauses: &'a [Vec<Lit>],
    /// `watch[l]`: clauses watching literal `l`.
    watch: Vec<Vec<usize>>,
    /// Per clause, the two watched positions.
    slots: Vec<[usize; 2]>,
    value: Vec<i8>,
    trail: Vec<Lit>,
    /// Trail length at each decision, with the decision literal.
    decisions: Vec<(usize, Lit)>,
    head: usize,
}

fn lit_value(value: &[i8], l: Lit) -> i8 {
    let v = value[(l / 2) as usize];
    if l & 1 == 1 {
        -v
    } else {
        v
    }
}

impl<'a> Dpll<'a> {
    fn new(cnf: &'a Cnf) -> Dpll<'a> {
        let n = cnf.vars as usize;
        let mut d = Dpll {
            clauses: &cnf.clauses,
            watch: vec![Vec::new(); 2 * n],
            slots: Vec::with_capacity(cnf.clauses.len()),
            value: vec![0; n],
            trail: Vec::new(),
            decisions: Vec::new(),
            head: 0,
        };
        for (i, c) in cnf.clauses.iter().enumerate() {
            let s = [0, if c.len() > 1 { 1 } else { 0 }];
            d.slots.push(s);
            d.watch[c[s[0]] as usize].push(i);
            if c.len() > 1 {
                d.watch[c[s[1]] as usize].push(i);
            }
        }
        d
    }

    fn assign(&mut self, l: Lit) {
        self.value[(l / 2) as usize] = if l & 1 == 1 { -1 } else { 1 };
        self.trail.push(l);
    }

    /// Unit propagation; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let l = self.trail[self.head];
            self.head += 1;
            let falsified = l ^ 1;
            let watching = std::mem::take(&mut self.watch[falsified as usize]);
            let mut keep = Vec::with_capacity(watching.len());
            let mut ok = true;
            for (k, &ci) in watching.iter().enumerate() {
                if !ok {
                    keep.extend_from_slice(&watching[k..]);
                    break;
                }
                let c = &self.clauses[ci];
                if c.len() == 1 {
                    keep.push(ci);
                    if lit_value(&self.value, c[0]) == -1 {
                        ok = false;
                    }
                    continue;
                }
                let [s0, s1] = self.slots[ci];
                let (mine, other) = if c[s0] == falsified { (0, s1) } else { (1, s0) };
                if lit_value(&self.value, c[other]) == 1 {
                    keep.push(ci);
                    continue;
                }
                let replacement = (0..c.len()).find(|&j| j != s0 && j != s1 && lit_value(&self.value, c[j]) != -1);
                match replacement {
                    Some(j) => {
                        self.slots[ci][mine] = j;
                        self.watch[c[j] as usize].push(ci);
                    }
                    None => {
                        keep.push(ci);
                        match lit_value(&self.value, c[other]) {
                            0 => self.assign(c[other]),
                            -1 => ok = false,
                            _ => {}
                        }
                    }
                }
            }
            self.watch[falsified as usize] = keep;
            if !ok {
                return false;
            }
        }
        true
    }

    fn backtrack(&mut self) -> Option<Lit> {
        let (len, lit) = self.decisions.pop()?;
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            self.value[(l / 2) as usize] = 0;
        }
        self.head = len;
        Some(lit)
    }

    fn run(mut self) -> bool {
        for i in 0..self.clauses.len() {
            if self.clauses[i].len() == 1 {
                match lit_value(&self.value, self.clauses[i][0]) {
                    0 => self.assign(self.clauses[i][0]),
                    -1 => return false,
                    _ => {}
                }
            }
        }
        // Whether each open decision already had its second branch tried.
        let mut flipped: Vec<bool> = Vec::new();
        loop {
            if self.propagate() {
                let Some(v) = self.value.iter().position(|&x| x == 0) else { return true };
                self.decisions.push((self.trail.len(), neg(v as u32)));
                flipped.push(false);
                self.assign(neg(v as u32));
                continue;
            }
            loop {
                let Some(lit) = self.backtrack() else { return false };
                let was_flipped = flipped.pop().unwrap();
                if !was_flipped {
                    self.decisions.push((self.trail.len(), lit ^ 1));
                    flipped.push(true);
                    self.assign(lit ^ 1);
                    break;
                }
            }
        }
    }
}
