//! K ∩ Q(μ_n) through the subgroup lattice of (Z/n)^*: a subfield of
//! Q(μ_n) lies in K exactly when a generator of it (a generalised Gaussian
//! period) has a root in K.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{LocalPlace, NumberField};
use crate::arith::int::{divisors, euler_phi, mul_mod, units_mod};
use crate::arith::nf_poly::{FieldArith, NfPoly};
use crate::arith::poly::Poly;
use crate::error::{Error, Result};

/// Largest φ(n)·[K:Q] accepted by the intersection computation.
pub const CYCLOTOMIC_SIZE_BOUND: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicIntersection {
    pub n: u64,
    /// Gal(Q(μ_n) / (Q(μ_n) ∩ K)) as residues mod n, ascending
    pub h: Vec<u64>,
    /// largest divisor d of n with μ_d ⊆ K
    pub d: u64,
}

impl CyclotomicIntersection {
    pub fn contains(&self, a: u64) -> bool {
        let a = if self.n == 1 { 0 } else { a % self.n };
        self.h.binary_search(&a).is_ok()
    }

    /// [K(μ_n) : K] = |H|.
    pub fn degree_over_k(&self) -> usize {
        self.h.len()
    }
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Poly {
    let mut xn = vec![0i64; n as usize + 1];
    xn[0] = -1;
    xn[n as usize] = 1;
    let mut f = Poly::from_ints(&xn);
    for d in divisors(n) {
        if d < n {
            f = f.exact_div(&cyclotomic_poly(d)).expect("cyclotomic division is exact");
        }
    }
    f
}

fn unit_group(n: u64) -> Vec<u64> {
    units_mod(n)
}

fn closure(n: u64, gens: &BTreeSet<u64>) -> BTreeSet<u64> {
    let one = if n == 1 { 0 } else { 1 };
    let mut set: BTreeSet<u64> = BTreeSet::from([one]);
    let mut frontier: Vec<u64> = vec![one];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = if n == 1 { 0 } else { mul_mod(x, g, n) };
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// All subgroups of (Z/n)^*, each as an ascending residue list, ordered by
/// size and then lexicographically.
pub fn subgroups_of_units(n: u64) -> Vec<Vec<u64>> {
    let g = unit_group(n);
    let one = if n == 1 { 0 } else { 1 };
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue: Vec<BTreeSet<u64>> = vec![BTreeSet::from([one])];
    found.insert(vec![one]);
    while let Some(h) = queue.pop() {
        for &x in &g {
            if h.contains(&x) {
                continue;
            }
            let mut gens = h.clone();
            gens.insert(x);
            let s = closure(n, &gens);
            let v: Vec<u64> = s.iter().copied().collect();
            if found.insert(v) {
                queue.push(s);
            }
        }
    }
    let mut out: Vec<Vec<u64>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Minimal polynomial over Q of a generator of the fixed field of `s` ⊆ (Z/n)^*.
pub fn fixed_field_minpoly(n: u64, s: &[u64]) -> Poly {
    let g = unit_group(n);
    let index = g.len() / s.len();
    if index == 1 {
        return Poly::x();
    }
    let zf = FieldArith::new(cyclotomic_poly(n));
    // coset representatives of G / S
    let mut reps = Vec::new();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    for &b in &g {
        if seen.contains(&b) {
            continue;
        }
        for &a in s {
            seen.insert(mul_mod(a, b, n));
        }
        reps.push(b);
    }
    for k in 1..=n {
        // γ = Σ_{j=1..k} j ζ^j, β_b = Σ_{a∈S} σ_{ab}(γ)
        let conj: Vec<Poly> = reps
            .iter()
            .map(|&b| {
                let mut cs = vec![0i64; n as usize];
                for &a in s {
                    let ab = mul_mod(a, b, n);
                    for j in 1..=k {
                        cs[(mul_mod(ab, j, n)) as usize] += j as i64;
                    }
                }
                zf.reduce(&Poly::from_ints(&cs))
            })
            .collect();
        let distinct = conj.iter().enumerate().all(|(i, x)| conj[..i].iter().all(|y| y != x));
        if !distinct {
            continue;
        }
        let mut prod = NfPoly::from_rational(&Poly::one());
        for c in &conj {
            prod = zf.poly_mul(&prod, &NfPoly::new(vec![-c, Poly::one()]));
        }
        return prod.to_rational().expect("conjugate product is rational");
    }
    unreachable!("a generic period separates the cosets")
}

fn intersect_all(g: &[u64], fits: impl Iterator<Item = Vec<u64>>) -> Vec<u64> {
    let mut h: BTreeSet<u64> = g.iter().copied().collect();
    for s in fits {
        let ss: BTreeSet<u64> = s.into_iter().collect();
        h = h.intersection(&ss).copied().collect();
    }
    h.into_iter().collect()
}

pub(super) fn compute(k: &NumberField, n: u64) -> Result<CyclotomicIntersection> {
    if n == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    let size = euler_phi(n) * k.degree() as u64;
    if size > CYCLOTOMIC_SIZE_BOUND {
        return Err(Error::SizeBound { what: "phi(n)*[K:Q]", actual: size as usize, limit: CYCLOTOMIC_SIZE_BOUND as usize });
    }
    let g = unit_group(n);
    let deg = k.degree();
    let mut inside = Vec::new();
    for s in subgroups_of_units(n) {
        let index = g.len() / s.len();
        if index == 1 || !deg.is_multiple_of(index) {
            continue;
        }
        if k.has_root(&fixed_field_minpoly(n, &s))? {
            inside.push(s);
        }
    }
    let h = intersect_all(&g, inside.into_iter());
    let mut d = 1;
    for dv in divisors(n) {
        if k.contains_roots_of_unity(dv)? {
            d = dv;
        }
    }
    Ok(CyclotomicIntersection { n, h, d })
}

/// Gal(Q_p(μ_n)/(Q_p(μ_n) ∩ K_v)) viewed inside (Z/n)^*: the intersection of
/// all subgroups whose fixed field embeds in K_v. Its order is [K_v(μ_n):K_v].
pub fn local_intersection(v: &LocalPlace, n: u64) -> Result<Vec<u64>> {
    let g = unit_group(n);
    let mut inside = Vec::new();
    for s in subgroups_of_units(n) {
        let index = g.len() / s.len();
        if index == 1 || index as u32 > v.local_degree() * 8 {
            continue;
        }
        if v.has_root(&fixed_field_minpoly(n, &s))? {
            inside.push(s);
        }
    }
    Ok(intersect_all(&g, inside.into_iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(8), Poly::from_ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(subgroups_of_units(8).len(), 5);
        assert_eq!(subgroups_of_units(7).len(), 4);
        assert_eq!(subgroups_of_units(1), vec![vec![0]]);
    }

    #[test]
    fn periods() {
        // fixed field of {1,7} in Q(μ_8) is Q(√2)
        let m = fixed_field_minpoly(8, &[1, 7]);
        assert_eq!(m.deg(), 2);
        assert!(!m.coeff(0).is_zero());
        let k = NumberField::from_ints(&[-2, 0, 1]).unwrap();
        assert!(k.has_root(&m).unwrap());
    }

    #[test]
    fn intersections() {
        let k = NumberField::from_ints(&[-2, 0, 1]).unwrap();
        let c = k.cyclotomic_intersection(8).unwrap();
        assert_eq!((c.h.clone(), c.d), (vec![1, 7], 2));
        let q = NumberField::rationals();
        let c = q.cyclotomic_intersection(12).unwrap();
        assert_eq!((c.h.clone(), c.d), (vec![1, 5, 7, 11], 2));
        let gi = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let c = gi.cyclotomic_intersection(4).unwrap();
        assert_eq!((c.h.clone(), c.d), (vec![1], 4));
    }
}
