//! Fixed-width bit sets indexing into a canonical list of items.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
    width: usize,
}

impl Bits {
    pub fn empty(width: usize) -> Bits {
        Bits { words: vec![0; width.div_ceil(64)], width }
    }

    pub fn full(width: usize) -> Bits {
        let mut b = Bits::empty(width);
        for i in 0..width {
            b.insert(i);
        }
        b
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, idx: I) -> Bits {
        let mut b = Bits::empty(width);
        for i in idx {
            b.insert(i);
        }
        b
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Bits { words, width: self.width }
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Bits { words, width: self.width }
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        Bits { words, width: self.width }
    }

    pub fn complement(&self) -> Bits {
        let mut out = Bits::full(self.width);
        for (w, s) in out.words.iter_mut().zip(&self.words) {
            *w &= !s;
        }
        out
    }

    pub fn with(&self, i: usize) -> Bits {
        let mut b = self.clone();
        b.insert(i);
        b
    }

    pub fn without(&self, i: usize) -> Bits {
        let mut b = self.clone();
        b.remove(i);
        b
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }
}

/// Lexicographic order on the ascending index sequences.
impl Ord for Bits {
    fn cmp(&self, other: &Bits) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Bits) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates all subsets of `0..n` with exactly `k` elements in lexicographic order.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    first: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Combinations {
        Combinations { n, idx: (0..k).collect(), first: true }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let k = self.idx.len();
        if k > self.n {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(self.idx.clone());
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(self.idx.clone());
            }
        }
        None
    }
}
