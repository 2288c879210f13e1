//! Finite abelian groups given by a list of cyclic factor orders.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::arith::int::{factorize, val_u64};
use crate::error::{Error, Result};

/// The p-primary component Z/p^{a_1} × ... × Z/p^{a_r}, factors ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimaryPart {
    pub p: u64,
    /// n_p: number of cyclic factors
    pub rank: u32,
    /// q_p: order of the smallest cyclic factor
    pub smallest: u64,
    pub factors: Vec<u64>,
}

impl PrimaryPart {
    pub fn largest(&self) -> u64 {
        *self.factors.last().unwrap()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_metacyclic(&self) -> bool {
        self.rank <= 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub parts: Vec<PrimaryPart>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AbelianJson {
    Bare(Vec<u64>),
    Tagged { abelian: Vec<u64> },
}

impl AbelianInvariants {
    /// Parses `[2, 8, 8]` or `{"abelian": [2, 8, 8]}`.
    pub fn parse(s: &str) -> Result<Self> {
        let raw: AbelianJson = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("abelian group: {e}")))?;
        let orders = match raw {
            AbelianJson::Bare(v) | AbelianJson::Tagged { abelian: v } => v,
        };
        abelian_invariants(&orders)
    }

    pub fn part(&self, p: u64) -> Option<&PrimaryPart> {
        self.parts.iter().find(|q| q.p == p)
    }

    pub fn order(&self) -> u64 {
        self.parts.iter().map(PrimaryPart::order).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.is_empty()
    }

    /// Metacyclic iff every primary component has rank ≤ 2.
    pub fn is_metacyclic(&self) -> bool {
        self.parts.iter().all(PrimaryPart::is_metacyclic)
    }

    /// Invariants of an abelian group given by its Cayley table, read off from
    /// the counts |{x : x^{p^k} = 1}|.
    pub fn of_group(g: &FiniteGroup) -> Option<Self> {
        if !g.is_abelian() {
            return None;
        }
        let orders = g.element_orders();
        let mut all = Vec::new();
        for (p, e) in factorize(g.order() as u64) {
            // logs[k] = log_p |Ω_k| = Σ_i min(a_i, k)
            let logs: Vec<u32> = (0..=e)
                .map(|k| {
                    let pk = p.pow(k) as usize;
                    let count = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
                    val_u64(count, p)
                })
                .collect();
            // number of factors of exponent ≥ k is logs[k] - logs[k-1]
            for k in 1..=e as usize {
                let ge_k = logs[k] - logs[k - 1];
                let ge_next = if k < e as usize { logs[k + 1] - logs[k] } else { 0 };
                for _ in 0..(ge_k - ge_next) {
                    all.push(p.pow(k as u32));
                }
            }
        }
        abelian_invariants(&all).ok()
    }

    /// Prime-power factor orders, grouped by prime.
    pub fn factor_orders(&self) -> Vec<u64> {
        self.parts.iter().flat_map(|q| q.factors.iter().copied()).collect()
    }
}

/// Primary decomposition of Z/a_1 × ... × Z/a_k. Composite entries are split
/// by the Chinese remainder theorem; zero entries are rejected.
pub fn abelian_invariants(orders: &[u64]) -> Result<AbelianInvariants> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &a in orders {
        if a == 0 {
            return Err(Error::invalid("cyclic factor orders must be positive"));
        }
        for (p, e) in factorize(a) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let parts = by_prime
        .into_iter()
        .map(|(p, mut factors)| {
            factors.sort_unstable();
            PrimaryPart { p, rank: factors.len() as u32, smallest: factors[0], factors }
        })
        .collect();
    Ok(AbelianInvariants { parts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a = abelian_invariants(&[2, 8, 8]).unwrap();
        let p2 = a.part(2).unwrap();
        assert_eq!((p2.rank, p2.smallest, p2.factors.clone()), (3, 2, vec![2, 8, 8]));
        let a = abelian_invariants(&[6]).unwrap();
        assert_eq!((a.part(2).unwrap().rank, a.part(2).unwrap().smallest), (1, 2));
        assert_eq!((a.part(3).unwrap().rank, a.part(3).unwrap().smallest), (1, 3));
        let a = abelian_invariants(&[4, 4]).unwrap();
        assert_eq!((a.part(2).unwrap().rank, a.part(2).unwrap().smallest), (2, 4));
        assert!(abelian_invariants(&[0]).is_err());
        assert!(abelian_invariants(&[1]).unwrap().is_trivial());
        assert_eq!(AbelianInvariants::parse("{\"abelian\":[2,8,8]}").unwrap().order(), 128);
        assert!(AbelianInvariants::parse("[2,").is_err());
    }

    #[test]
    fn invariants_from_tables() {
        use crate::groups::catalog;
        let g = catalog::abelian(&[2, 8, 8]).unwrap();
        assert_eq!(AbelianInvariants::of_group(&g).unwrap(), abelian_invariants(&[2, 8, 8]).unwrap());
        let g = catalog::abelian(&[6, 4]).unwrap();
        assert_eq!(AbelianInvariants::of_group(&g).unwrap(), abelian_invariants(&[2, 3, 4]).unwrap());
        assert!(AbelianInvariants::of_group(&catalog::quaternion8()).is_none());
        assert!(AbelianInvariants::of_group(&catalog::cyclic(1)).unwrap().is_trivial());
    }
}
