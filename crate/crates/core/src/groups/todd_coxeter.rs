//! Coset enumeration (HLT strategy with coincidence processing) over the
//! trivial subgroup, producing the regular representation.

use std::collections::VecDeque;

use super::{FiniteGroup, ORDER_CAP};
use crate::error::{Error, Result};

/// Largest number of coset definitions before enumeration gives up.
pub const DEFAULT_COSET_CAP: usize = 200_000;

struct Table {
    cols: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    cap: usize,
}

impl Table {
    fn inv(x: usize) -> usize {
        x ^ 1
    }

    fn rep(&mut self, mut k: usize) -> usize {
        let mut root = k;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize> {
        if self.rows.len() >= self.cap {
            return Err(Error::SizeBound { what: "coset table", actual: self.rows.len() + 1, limit: self.cap });
        }
        let d = self.rows.len();
        self.rows.push(vec![None; self.cols]);
        self.parent.push(d);
        self.rows[c][x] = Some(d);
        self.rows[d][Self::inv(x)] = Some(c);
        Ok(d)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        queue.push_back(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.cols {
                let Some(f) = self.rows[e][x] else { continue };
                self.rows[f][Self::inv(x)] = None;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if let Some(t) = self.rows[e1][x] {
                    self.merge(f1, t, &mut queue);
                } else if let Some(t) = self.rows[f1][Self::inv(x)] {
                    self.merge(e1, t, &mut queue);
                } else {
                    self.rows[e1][x] = Some(f1);
                    self.rows[f1][Self::inv(x)] = Some(e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j {
                match self.rows[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.rows[b][Self::inv(w[j])] {
                    Some(n) => {
                        b = n;
                        if j == 0 {
                            // whole word scanned backwards
                            self.coincidence(f, b);
                            return Ok(());
                        }
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.rows[f][w[i]] = Some(b);
                self.rows[b][Self::inv(w[i])] = Some(f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup in the group presented by
/// `generators` and `relators` (signed 1-based generator indices) and
/// returns its Cayley table.
pub fn enumerate_cosets(generators: usize, relators: &[Vec<i64>], cap: usize) -> Result<FiniteGroup> {
    enumerate_with_generators(generators, relators, cap).map(|(g, _)| g)
}

/// As [`enumerate_cosets`], also returning the element of each generator.
pub fn enumerate_with_generators(generators: usize, relators: &[Vec<i64>], cap: usize) -> Result<(FiniteGroup, Vec<usize>)> {
    let cols = 2 * generators;
    let mut words: Vec<Vec<usize>> = Vec::new();
    for r in relators {
        let mut w = Vec::with_capacity(r.len());
        for &l in r {
            let g = l.unsigned_abs() as usize;
            if l == 0 || g > generators {
                return Err(Error::invalid(format!("relator letter {l} out of range 1..={generators}")));
            }
            w.push(2 * (g - 1) + usize::from(l < 0));
        }
        words.push(w);
    }
    if generators == 0 {
        return Ok((FiniteGroup::from_fn(1, |_, _| 0), Vec::new()));
    }
    let mut t = Table { cols, rows: vec![vec![None; cols]], parent: vec![0], cap };
    let mut c = 0;
    while c < t.rows.len() {
        for w in &words {
            if !t.alive(c) {
                break;
            }
            t.scan_and_fill(c, w)?;
        }
        if t.alive(c) {
            for x in 0..cols {
                if t.rows[c][x].is_none() {
                    t.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    // compact live cosets; coset 0 is the subgroup itself
    let live: Vec<usize> = (0..t.rows.len()).filter(|&k| t.alive(k)).collect();
    let n = live.len();
    if n > ORDER_CAP {
        return Err(Error::SizeBound { what: "group order", actual: n, limit: ORDER_CAP });
    }
    let mut idx = vec![usize::MAX; t.rows.len()];
    for (i, &k) in live.iter().enumerate() {
        idx[k] = i;
    }
    let act: Vec<Vec<usize>> = live
        .iter()
        .map(|&k| (0..cols).step_by(2).map(|x| idx[t.rep(t.rows[k][x].expect("complete table"))]).collect())
        .collect();
    // word for each coset via BFS over generator columns
    let mut word: Vec<Option<Vec<usize>>> = vec![None; n];
    word[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for g in 0..generators {
            let b = act[a][g];
            if word[b].is_none() {
                let mut w = word[a].clone().unwrap();
                w.push(g);
                word[b] = Some(w);
                queue.push_back(b);
            }
        }
    }
    let words: Vec<Vec<usize>> = word.into_iter().map(|w| w.expect("coset graph is connected")).collect();
    let gens = (0..generators).map(|g| act[0][g]).collect();
    Ok((FiniteGroup::from_fn(n, |a, b| words[b].iter().fold(a, |c, &g| act[c][g])), gens))
}
