//! Factorization over Q by Hensel lifting and Zassenhaus recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hensel::{multifactor_lift, mul, ZmPoly};
use super::int::{big_pow, primes_from, symmetric_mod};
use super::modp::{factor_fp, FpPoly};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Number of candidate primes examined when choosing the lifting prime.
const PRIME_TRIALS: usize = 8;

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = content(v);
    let sign = if v.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    v.iter().map(|x| x / &c * &sign).collect()
}

/// Exact division of integer polynomials; `None` if `d` does not divide `a` over Z.
fn int_div(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if d.len() > a.len() {
        return None;
    }
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let lc = d.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + dd].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, x) in d.iter().enumerate() {
                r[i + j] -= &c * x;
            }
        }
        q[i] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

fn coeff_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let max = f.iter().map(|c| c.abs()).max().unwrap();
    let lc = f.last().unwrap().abs();
    // |lc| * 2^n * (n + 1) * max|a_i| dominates the Mignotte bound for lc * g
    lc * (BigInt::one() << n) * BigInt::from(n + 1) * max
}

/// Factors a primitive squarefree integer polynomial of positive degree into
/// primitive irreducible integer polynomials.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let disc_ok = |p: u64| -> Option<Vec<FpPoly>> {
        if (&lc % BigInt::from(p)).is_zero() {
            return None;
        }
        let fp = FpPoly::from_bigints(f, p);
        if fp.deg() != n || fp.gcd(&fp.derivative()).deg() > 0 {
            return None;
        }
        Some(factor_fp(&fp.monic()).into_iter().map(|(g, _)| g).collect())
    };
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in primes_from(3) {
        if let Some(fs) = disc_ok(p) {
            tried += 1;
            if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
                best = Some((p, fs));
            }
            if tried >= PRIME_TRIALS || best.as_ref().unwrap().1.len() == 1 {
                break;
            }
        }
    }
    let (p, fs) = best.unwrap();
    if fs.len() == 1 {
        return vec![f.to_vec()];
    }
    let bound = coeff_bound(f) * 2;
    let mut k = 1u32;
    while big_pow(p, k) <= bound {
        k += 1;
    }
    let m = big_pow(p, k);
    let mut lifts: Vec<ZmPoly> = multifactor_lift(f, &fs, p, k);
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    'outer: while 2 * size <= lifts.len() {
        let r = lifts.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let lcr = rest.last().unwrap().clone();
            let mut g = vec![lcr.clone()];
            for &i in &idx {
                g = mul(&g, &lifts[i], &m);
            }
            let g: Vec<BigInt> = g.iter().map(|c| symmetric_mod(c, &m)).collect();
            let g = primitive(&g);
            let const_ok = g[0].is_zero() || (&rest[0] % &g[0]).is_zero();
            if const_ok {
                if let Some(q) = int_div(&rest, &g) {
                    out.push(g);
                    rest = q;
                    lifts = lifts
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !idx.contains(i))
                        .map(|(_, l)| l)
                        .collect();
                    continue 'outer;
                }
            }
            // next combination of `size` indices out of r
            let mut j = size;
            loop {
                if j == 0 {
                    size += 1;
                    continue 'outer;
                }
                j -= 1;
                if idx[j] < r - size + j {
                    idx[j] += 1;
                    for l in j + 1..size {
                        idx[l] = idx[l - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    out.push(primitive(&rest));
    out
}

fn to_int_primitive(f: &Poly) -> Vec<BigInt> {
    primitive(&f.primitive_integer())
}

fn from_int(v: &[BigInt]) -> Poly {
    Poly::from_bigints(v).monic()
}

/// Squarefree decomposition over Q (Yun): monic `(g_i, i)` with f = c * prod g_i^i.
pub fn squarefree_decomposition_q(f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let d = f.derivative();
    let mut a = f.gcd(&d);
    let mut b = f.exact_div(&a).unwrap();
    let mut c = d.exact_div(&a).unwrap();
    let mut dd = &c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        a = b.gcd(&dd);
        b = b.exact_div(&a).unwrap();
        c = dd.exact_div(&a).unwrap();
        if a.deg() > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
        dd = &c - &b.derivative();
    }
    out
}

/// Factors a nonzero rational polynomial into monic irreducibles over Q with
/// multiplicities, ordered by degree then by coefficients (leading first).
pub fn factor_q(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition_q(f) {
        let mut gi = to_int_primitive(&g);
        // pull out powers of x first; zassenhaus wants g(0) != 0 for the constant filter
        while gi[0].is_zero() {
            gi.remove(0);
            out.push((Poly::x(), m));
        }
        if gi.len() > 1 {
            for h in zassenhaus(&gi) {
                out.push((from_int(&h), m));
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

pub fn canonical_cmp(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

pub fn is_irreducible_q(f: &Poly) -> bool {
    f.deg() > 0 && matches!(factor_q(f).as_deref(), Ok([(_, 1)]))
}

/// Rational roots of f, ascending.
pub fn rational_roots(f: &Poly) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = factor_q(f)
        .unwrap_or_default()
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| -g.coeff(0))
        .collect();
    r.sort();
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    #[test]
    fn factor_small() {
        let f = p(&[-1, 0, 0, 0, 1]); // x^4 - 1
        let fs = factor_q(&f).unwrap();
        assert_eq!(fs, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1), (p(&[1, 0, 1]), 1)]);
        assert!(is_irreducible_q(&p(&[8, 1, 0, 1])));
        assert!(is_irreducible_q(&p(&[1, 0, 1])));
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits mod every prime
        assert!(is_irreducible_q(&p(&[1, 0, -10, 0, 1])));
        // (x^2 - 2)(x^2 - 3)
        let fs = factor_q(&p(&[6, 0, -5, 0, 1])).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn multiplicities_and_non_monic() {
        // 4 (x - 1/2)^2 (x^2 + 1) x
        let f = &(&p(&[-1, 2]) * &p(&[-1, 2])) * &(&p(&[1, 0, 1]) * &p(&[0, 1]));
        let fs = factor_q(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&(Poly::x(), 1)));
        assert!(fs.contains(&(p(&[1, 0, 1]), 1)));
        assert!(fs.iter().any(|(g, m)| g.deg() == 1 && *m == 2));
    }

    #[test]
    fn cyclotomic_products() {
        // x^12 - 1 has 6 cyclotomic factors
        let mut cs = vec![0i64; 13];
        cs[0] = -1;
        cs[12] = 1;
        let fs = factor_q(&p(&cs)).unwrap();
        let degs: Vec<usize> = fs.iter().map(|(g, _)| g.deg()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
    }
}
