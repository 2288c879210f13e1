//! Metacyclic groups M(m, n, i, t) = ⟨x, y | x^m = y^i, y^n = 1, x⁻¹yx = y^t⟩.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{FiniteGroup, Subgroup, ORDER_CAP};
use crate::arith::int::{gcd, pow_mod};
use crate::error::{Error, Result};

/// Parameters (m, n, i, t) with t stored in [1, n] and i normalized to
/// gcd(i, n) in [1, n] (i = n encodes x^m = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MetacyclicPresentation {
    pub m: u64,
    pub n: u64,
    pub i: u64,
    pub t: u64,
}

impl fmt::Display for MetacyclicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{},{},{})", self.m, self.n, self.i, self.t)
    }
}

fn reduce_to_range(x: u64, n: u64) -> u64 {
    match x % n {
        0 => n,
        r => r,
    }
}

impl MetacyclicPresentation {
    /// Validates t^m ≡ 1 (mod n) and n | (t - 1) i, then normalizes t and i.
    pub fn new(m: u64, n: u64, i: u64, t: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::invalid("metacyclic parameters m and n must be positive"));
        }
        if m.saturating_mul(n) > ORDER_CAP as u64 {
            return Err(Error::SizeBound { what: "group order", actual: (m.saturating_mul(n)).min(usize::MAX as u64) as usize, limit: ORDER_CAP });
        }
        let t_red = reduce_to_range(t, n);
        if n > 1 && pow_mod(t_red % n, m, n) != 1 % n {
            return Err(Error::invalid(format!("t^m = {t}^{m} is not 1 mod {n}")));
        }
        if !(((t_red + n - 1) % n) * (i % n)).is_multiple_of(n) {
            return Err(Error::invalid(format!("{n} does not divide (t-1)i = ({t}-1)*{i}")));
        }
        Ok(MetacyclicPresentation { m, n, i: reduce_to_range(gcd(i % n, n), n), t: t_red })
    }

    /// Parses "m,n,i,t".
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("presentation {s:?}: expected m,n,i,t")));
        }
        let mut v = [0u64; 4];
        for (k, p) in parts.iter().enumerate() {
            v[k] = p.parse().map_err(|_| Error::Parse(format!("presentation {s:?}: {p:?} is not a positive integer")))?;
        }
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    /// t as a residue mod n (the only thing Liedahl's condition sees).
    pub fn t_mod_n(&self) -> u64 {
        self.t % self.n
    }

    /// Cayley table on x^a y^b, numbered a·n + b, using
    /// (x^a y^b)(x^c y^d) = x^{a+c} y^{b t^c + d} and x^m = y^i.
    pub fn to_group(&self) -> Result<FiniteGroup> {
        let (m, n) = (self.m as usize, self.n as usize);
        let tp: Vec<usize> = (0..m).map(|c| pow_mod(self.t % self.n, c as u64, self.n) as usize).collect();
        let i = self.i as usize % n;
        Ok(FiniteGroup::from_fn(m * n, |x, y| {
            let (a, b) = (x / n, x % n);
            let (c, d) = (y / n, y % n);
            let mut e = a + c;
            let mut f = (b * tp[c] + d) % n;
            if e >= m {
                e -= m;
                f = (f + i) % n;
            }
            e * n + f
        }))
    }
}

/// A normal cyclic subgroup ⟨y⟩ with cyclic quotient generated by the image of x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetacyclicWitness {
    pub kernel: Subgroup,
    pub y: usize,
    pub x: usize,
}

/// Smallest k ≥ 1 with x^k ∈ C.
fn order_mod(g: &FiniteGroup, x: usize, c: &Subgroup) -> usize {
    let mut p = x;
    let mut k = 1;
    while !c.contains(p) {
        p = g.mul(p, x);
        k += 1;
    }
    k
}

fn normal_cyclic_with_cyclic_quotient(g: &FiniteGroup) -> Vec<(Subgroup, usize)> {
    let mut out = Vec::new();
    for c in g.cyclic_subgroups() {
        if !g.is_normal(&c) {
            continue;
        }
        let m = g.order() / c.order();
        if let Some(x) = (0..g.order()).find(|&x| order_mod(g, x, &c) == m) {
            out.push((c, x));
        }
    }
    out
}

/// Some normal cyclic C with G/C cyclic, if one exists.
pub fn is_metacyclic(g: &FiniteGroup) -> Option<MetacyclicWitness> {
    let (c, x) = normal_cyclic_with_cyclic_quotient(g).into_iter().next()?;
    let y = *c.elements().iter().find(|&&y| g.element_order(y) == c.order()).unwrap();
    Some(MetacyclicWitness { kernel: c, y, x })
}

/// Every (m, n, i, t) arising from a generator y of a normal cyclic subgroup
/// and an element x whose image generates the quotient, normalized and
/// deduplicated.
pub fn metacyclic_presentations(g: &FiniteGroup) -> Result<Vec<MetacyclicPresentation>> {
    let candidates = normal_cyclic_with_cyclic_quotient(g);
    if candidates.is_empty() {
        return Err(Error::NotMetacyclic);
    }
    let mut out = BTreeSet::new();
    for (c, _) in candidates {
        let n = c.order();
        let m = g.order() / n;
        let gens: Vec<usize> = c.elements().iter().copied().filter(|&y| g.element_order(y) == n).collect();
        let xs: Vec<usize> = (0..g.order()).filter(|&x| order_mod(g, x, &c) == m).collect();
        for &y in &gens {
            let mut log = vec![usize::MAX; g.order()];
            let mut p = 0;
            for k in 0..n {
                log[p] = k;
                p = g.mul(p, y);
            }
            for &x in &xs {
                let t = log[g.conj(y, x)];
                let i = log[g.pow(x, m as u64)];
                let i = if i == 0 { n } else { i };
                out.insert(MetacyclicPresentation::new(m as u64, n as u64, i as u64, t as u64)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}
