//! Finite groups given by Cayley tables, with the subgroup utilities needed
//! by the admissibility criteria: Sylow subgroups, metacyclic detection and
//! presentations, semicyclic classes and meta-split extensions.

mod abelian;
pub mod catalog;
mod extension;
mod iso;
mod metacyclic;
mod semicyclic;
mod todd_coxeter;

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Deserialize;

use crate::arith::int::{factorize, is_prime, val_u64};
use crate::error::{Error, Result};

pub use abelian::{abelian_invariants, AbelianInvariants, PrimaryPart};
pub use extension::{find_complement, meta_splits, splits, GroupExtension};
pub use iso::{are_isomorphic, GroupSignature};
pub use metacyclic::{is_metacyclic, metacyclic_presentations, MetacyclicPresentation, MetacyclicWitness};
pub use semicyclic::{is_semicyclic, SemicyclicClass};
pub use todd_coxeter::{enumerate_cosets, enumerate_with_generators, DEFAULT_COSET_CAP};

/// Largest group order accepted anywhere in the crate.
pub const ORDER_CAP: usize = 2048;

/// A finite group on elements 0..order with identity 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.n)
    }
}

/// A subgroup stored as a membership mask plus its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    mask: FixedBitSet,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn from_mask(mask: FixedBitSet) -> Self {
        let elements = mask.ones().collect();
        Subgroup { mask, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask.contains(g)
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut m = self.mask.clone();
        m.intersect_with(&other.mask);
        Subgroup::from_mask(m)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationJson {
    generators: usize,
    relators: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum GroupJson {
    Cayley(Vec<Vec<usize>>),
    Presentation(PresentationJson),
    Catalog(String),
    Abelian(Vec<usize>),
    Metacyclic([u64; 4]),
}

impl FiniteGroup {
    /// Builds a group from a full Cayley table, checking the group axioms.
    /// Elements are relabeled so that the identity comes first.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("empty Cayley table"));
        }
        if n > ORDER_CAP {
            return Err(Error::SizeBound { what: "group order", actual: n, limit: ORDER_CAP });
        }
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::invalid("Cayley table must be square with entries below the order"));
        }
        for row in rows {
            let mut seen = FixedBitSet::with_capacity(n);
            for &x in row {
                if seen.put(x) {
                    return Err(Error::invalid("Cayley table rows must be permutations"));
                }
            }
        }
        for c in 0..n {
            let mut seen = FixedBitSet::with_capacity(n);
            for row in rows {
                if seen.put(row[c]) {
                    return Err(Error::invalid("Cayley table columns must be permutations"));
                }
            }
        }
        let e = (0..n)
            .find(|&a| (0..n).all(|x| rows[a][x] == x && rows[x][a] == x))
            .ok_or_else(|| Error::invalid("Cayley table has no identity"))?;
        // relabel: swap e and 0
        let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u16;
            }
        }
        let g = Self::from_flat(n, table);
        // Light's test: associativity over a generating set of middle elements
        for &s in &g.generating_set() {
            for x in 0..n {
                let xs = g.mul(x, s);
                for y in 0..n {
                    if g.mul(xs, y) != g.mul(x, g.mul(s, y)) {
                        return Err(Error::invalid("Cayley table is not associative"));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Trusted constructor for tables produced by this crate.
    pub(crate) fn from_flat(n: usize, table: Vec<u16>) -> Self {
        let mut inv = vec![0u16; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        FiniteGroup { n, table, inv }
    }

    /// Builds a group from a multiplication closure on 0..n (identity 0).
    pub(crate) fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = mul(a, b) as u16;
            }
        }
        Self::from_flat(n, table)
    }

    /// Parses `{"cayley": [[...]]}`,
    /// `{"presentation": {"generators": k, "relators": [[...]]}}` (a relator
    /// is a word of signed 1-based generator indices), `{"catalog": "Q8"}`,
    /// `{"abelian": [2, 4]}` or `{"metacyclic": [m, n, i, t]}`. A bare
    /// catalog name is accepted too.
    pub fn parse(s: &str) -> Result<Self> {
        if !s.trim_start().starts_with('{') {
            return catalog::by_name(s.trim()).ok_or_else(|| Error::Parse(format!("group: unknown catalog name {:?}", s.trim())));
        }
        let raw: GroupJson = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("group: {e}")))?;
        match raw {
            GroupJson::Cayley(rows) => Self::from_table(&rows),
            GroupJson::Presentation(p) => Self::from_presentation(p.generators, &p.relators),
            GroupJson::Catalog(name) => catalog::by_name(&name).ok_or_else(|| Error::Parse(format!("group: unknown catalog name {name:?}"))),
            GroupJson::Abelian(orders) => catalog::abelian(&orders),
            GroupJson::Metacyclic([m, n, i, t]) => MetacyclicPresentation::new(m, n, i, t)?.to_group(),
        }
    }

    /// Coset enumeration over the trivial subgroup.
    pub fn from_presentation(generators: usize, relators: &[Vec<i64>]) -> Result<Self> {
        enumerate_cosets(generators, relators, DEFAULT_COSET_CAP)
    }

    /// Closure of a set of permutations of 0..degree under composition
    /// (apply the left factor first).
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let degree = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let mut seen = FixedBitSet::with_capacity(degree);
            if g.len() != degree || g.iter().any(|&x| x >= degree || seen.put(x)) {
                return Err(Error::invalid("generators must be permutations of a common degree"));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index = std::collections::HashMap::from([(id, 0usize)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let prod: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() >= ORDER_CAP {
                        return Err(Error::SizeBound { what: "group order", actual: elems.len() + 1, limit: ORDER_CAP });
                    }
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
            i += 1;
        }
        let n = elems.len();
        Ok(Self::from_fn(n, |a, b| {
            let prod: Vec<usize> = elems[a].iter().map(|&x| elems[b][x]).collect();
            index[&prod]
        }))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    /// a⁻¹ b a
    pub fn conj(&self, b: usize, a: usize) -> usize {
        self.mul(self.mul(self.inv(a), b), a)
    }

    /// a⁻¹ b⁻¹ a b
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.n).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.element_order(a) == self.n)
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        self.generate_bounded(gens, self.n).expect("bound equals the order")
    }

    /// Subgroup generated by `gens`, or `None` once it exceeds `limit` elements.
    pub fn generate_bounded(&self, gens: &[usize], limit: usize) -> Option<Subgroup> {
        let mut mask = FixedBitSet::with_capacity(self.n);
        mask.insert(0);
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask.put(y) {
                    count += 1;
                    if count > limit {
                        return None;
                    }
                    queue.push_back(y);
                }
            }
        }
        Some(Subgroup::from_mask(mask))
    }

    pub fn whole(&self) -> Subgroup {
        let mut m = FixedBitSet::with_capacity(self.n);
        m.insert_range(..);
        Subgroup::from_mask(m)
    }

    pub fn trivial(&self) -> Subgroup {
        self.generate(&[])
    }

    pub fn cyclic_subgroup(&self, a: usize) -> Subgroup {
        self.generate(&[a])
    }

    /// Subgroup generated by the union of two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = self.small_generators(a).into_iter().chain(self.small_generators(b)).collect();
        self.generate(&gens)
    }

    /// A small generating set for `h`, chosen greedily by index.
    pub fn small_generators(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for &x in h.elements() {
            if cur.order() == h.order() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.generate(&gens);
            }
        }
        gens
    }

    /// Greedy generating set of the whole group, preferring elements of large order.
    pub fn generating_set(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut idx: Vec<usize> = (0..self.n).collect();
        idx.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for x in idx {
            if cur.order() == self.n {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.generate(&gens);
            }
        }
        gens
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = self.generating_set();
        let hg = self.small_generators(h);
        gens.iter().all(|&g| hg.iter().all(|&x| h.contains(self.conj(x, g))))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let hg = self.small_generators(h);
        let mut m = FixedBitSet::with_capacity(self.n);
        for g in 0..self.n {
            if hg.iter().all(|&x| h.contains(self.conj(x, g))) {
                m.insert(g);
            }
        }
        Subgroup::from_mask(m)
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generating_set();
        let mut m = FixedBitSet::with_capacity(self.n);
        for a in 0..self.n {
            if gens.iter().all(|&g| self.mul(a, g) == self.mul(g, a)) {
                m.insert(a);
            }
        }
        Subgroup::from_mask(m)
    }

    /// Commutator subgroup [H, H].
    pub fn derived_subgroup_of(&self, h: &Subgroup) -> Subgroup {
        let hg = self.small_generators(h);
        let mut comms = Vec::new();
        for &a in &hg {
            for &b in &hg {
                comms.push(self.commutator(a, b));
            }
        }
        // normal closure in H of the generator commutators
        let mut cur = self.generate(&comms);
        loop {
            let extra: Vec<usize> = cur
                .elements()
                .iter()
                .flat_map(|&c| hg.iter().map(move |&g| (c, g)))
                .map(|(c, g)| self.conj(c, g))
                .filter(|&c| !cur.contains(c))
                .collect();
            if extra.is_empty() {
                return cur;
            }
            let mut gens = self.small_generators(&cur);
            gens.extend(extra);
            cur = self.generate(&gens);
        }
    }

    /// Orders of the derived series G ⊇ G' ⊇ G'' ⊇ ... until it stabilizes.
    pub fn derived_series_orders(&self) -> Vec<usize> {
        let mut out = vec![self.n];
        let mut cur = self.whole();
        loop {
            let next = self.derived_subgroup_of(&cur);
            if next.order() == cur.order() {
                return out;
            }
            out.push(next.order());
            cur = next;
        }
    }

    pub fn is_solvable(&self) -> bool {
        *self.derived_series_orders().last().unwrap() == 1
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let f = factorize(self.n as u64);
        self.n == 1 || (f.len() == 1 && f[0].0 == p)
    }

    /// A Sylow p-subgroup: greedily grow a p-subgroup by elements in index order.
    pub fn sylow(&self, p: u64) -> Result<Subgroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let k = val_u64(self.n as u64, p);
        if k == 0 {
            return Err(Error::invalid(format!("{p} does not divide the group order {}", self.n)));
        }
        let target = (p as usize).pow(k);
        let orders = self.element_orders();
        let is_p_power = |m: usize| {
            let mut m = m;
            while m.is_multiple_of(p as usize) {
                m /= p as usize;
            }
            m == 1
        };
        let mut cur = self.trivial();
        let mut gens: Vec<usize> = Vec::new();
        while cur.order() < target {
            let before = cur.order();
            for x in 0..self.n {
                if cur.order() == target {
                    break;
                }
                if cur.contains(x) || !is_p_power(orders[x]) {
                    continue;
                }
                gens.push(x);
                match self.generate_bounded(&gens, target) {
                    Some(s) if is_p_power(s.order()) => cur = s,
                    _ => {
                        gens.pop();
                    }
                }
            }
            assert!(cur.order() > before || cur.order() == target, "Sylow growth stalled");
        }
        Ok(cur)
    }

    /// Relabels a subgroup as a group in its own right (identity first).
    pub fn induced(&self, h: &Subgroup) -> FiniteGroup {
        let elems = h.elements();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        FiniteGroup::from_fn(elems.len(), |a, b| pos[self.mul(elems[a], elems[b])])
    }

    /// G/N with the projection, cosets numbered by least representative.
    pub fn quotient(&self, normal: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let mut map = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if map[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &h in normal.elements() {
                map[self.mul(g, h)] = c;
            }
        }
        let q = FiniteGroup::from_fn(reps.len(), |a, b| map[self.mul(reps[a], reps[b])]);
        (q, map)
    }

    /// Direct product with elements (a, b) numbered a·|H| + b.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let m = other.n;
        let n = self.n * m;
        if n > ORDER_CAP {
            return Err(Error::SizeBound { what: "group order", actual: n, limit: ORDER_CAP });
        }
        Ok(FiniteGroup::from_fn(n, |x, y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m)))
    }

    /// All cyclic subgroups, deduplicated, ordered by (order, least element list).
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for a in 0..self.n {
            let c = self.cyclic_subgroup(a);
            if seen.insert(c.mask.clone()) {
                out.push(c);
            }
        }
        out.sort_by(|a, b| a.order().cmp(&b.order()).then(a.elements.cmp(&b.elements)));
        out
    }

    /// The full subgroup lattice (as a list), ordered by (order, elements).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let cyclic = self.cyclic_subgroups();
        let mut seen: std::collections::HashSet<FixedBitSet> = cyclic.iter().map(|c| c.mask.clone()).collect();
        let mut all = cyclic.clone();
        let mut frontier = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.is_subset(h) {
                        continue;
                    }
                    let j = self.join(h, c);
                    if seen.insert(j.mask.clone()) {
                        next.push(j.clone());
                        all.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.sort_by(|a, b| a.order().cmp(&b.order()).then(a.elements.cmp(&b.elements)));
        all
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups().into_iter().filter(|h| self.is_normal(h)).collect()
    }

    /// Minimal number of generators of a p-group: log_p [P : Φ(P)] with
    /// Φ(P) = P^p [P, P].
    pub fn p_group_rank(&self, p: u64) -> Result<u32> {
        if !self.is_p_group(p) {
            return Err(Error::invalid(format!("not a {p}-group")));
        }
        if self.n == 1 {
            return Ok(0);
        }
        let derived = self.derived_subgroup_of(&self.whole());
        let mut gens = self.small_generators(&derived);
        gens.extend((0..self.n).map(|a| self.pow(a, p)));
        let frattini = self.generate(&gens);
        Ok(val_u64((self.n / frattini.order()) as u64, p))
    }

    /// Is every Sylow subgroup metacyclic?
    pub fn is_sylow_metacyclic(&self) -> bool {
        factorize(self.n as u64).iter().all(|&(p, _)| {
            let s = self.sylow(p).expect("p divides the order");
            is_metacyclic(&self.induced(&s)).is_some()
        })
    }

    /// Checks the group axioms exhaustively (tests only; cubic time).
    pub fn verify_axioms(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a && self.mul(a, self.inv(a)) == 0)
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    /// Cayley table as nested rows (for JSON output).
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }
}
