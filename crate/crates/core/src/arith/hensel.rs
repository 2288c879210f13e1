//! Polynomials over Z/m as coefficient vectors, and Hensel lifting of
//! coprime factorizations from F_p to Z/p^k.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int::big_pow;
use super::modp::FpPoly;

/// Dense polynomial over Z/m, lowest degree first, coefficients in [0, m).
pub type ZmPoly = Vec<BigInt>;

pub fn reduce(a: &[BigInt], m: &BigInt) -> ZmPoly {
    let mut v: ZmPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut v);
    v
}

pub fn trim(v: &mut ZmPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

pub fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

pub fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZmPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

pub fn scale(a: &[BigInt], c: &BigInt, m: &BigInt) -> ZmPoly {
    reduce(&a.iter().map(|x| x * c).collect::<Vec<_>>(), m)
}

/// Division with remainder by a polynomial whose leading coefficient is a unit mod m.
pub fn div_rem(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (ZmPoly, ZmPoly) {
    let d = reduce(d, m);
    let mut r = reduce(a, m);
    if r.len() < d.len() {
        return (vec![], r);
    }
    let inv = d.last().unwrap().modinv(m).expect("leading coefficient must be a unit");
    let dd = d.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = (&r[i + dd] * &inv).mod_floor(m);
        if !c.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * dc).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(dd);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn to_big(f: &FpPoly) -> ZmPoly {
    f.to_bigints()
}

/// One quadratic Hensel step: from f = g h, s g + t h = 1 mod m to mod m^2.
/// `h` must be monic.
fn hensel_step(
    f: &[BigInt],
    g: &ZmPoly,
    h: &ZmPoly,
    s: &ZmPoly,
    t: &ZmPoly,
    m2: &BigInt,
) -> (ZmPoly, ZmPoly, ZmPoly, ZmPoly) {
    let e = sub(f, &mul(g, h, m2), m2);
    let (q, r) = div_rem(&mul(s, &e, m2), h, m2);
    let g2 = add(g, &add(&mul(t, &e, m2), &mul(&q, g, m2), m2), m2);
    let h2 = add(h, &r, m2);
    let b = sub(&add(&mul(s, &g2, m2), &mul(t, &h2, m2), m2), &[BigInt::one()], m2);
    let (c, d) = div_rem(&mul(s, &b, m2), &h2, m2);
    let s2 = sub(s, &d, m2);
    let t2 = sub(t, &add(&mul(t, &b, m2), &mul(&c, &g2, m2), m2), m2);
    (g2, h2, s2, t2)
}

/// Lifts a factorization `f = lc(f) * prod(factors) mod p` with monic,
/// pairwise coprime factors to a factorization mod p^k. Returns monic lifts.
pub fn multifactor_lift(f: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<ZmPoly> {
    let target = big_pow(p, k);
    lift_rec(&reduce(f, &target), factors, p, k)
}

fn lift_rec(f: &ZmPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<ZmPoly> {
    let target = big_pow(p, k);
    if factors.len() == 1 {
        let inv = f.last().unwrap().modinv(&target).unwrap();
        return vec![scale(f, &inv, &target)];
    }
    let mid = factors.len() / 2;
    let mut gp = FpPoly::one(p);
    for a in &factors[..mid] {
        gp = gp.mul(a);
    }
    let mut hp = FpPoly::one(p);
    for a in &factors[mid..] {
        hp = hp.mul(a);
    }
    let lc = f.last().unwrap().clone();
    let lc_p = (&lc % BigInt::from(p)).try_into().unwrap_or(0u64);
    let gp = gp.scale(lc_p);
    let (_, sp, tp) = gp.ext_gcd(&hp);
    let (mut g, mut h, mut s, mut t) = (to_big(&gp), to_big(&hp), to_big(&sp), to_big(&tp));
    let mut e = 1u32;
    while e < k {
        e = (2 * e).min(k);
        let m2 = big_pow(p, e);
        let fr = reduce(f, &m2);
        (g, h, s, t) = hensel_step(&fr, &g, &h, &s, &t, &m2);
    }
    let mut out = lift_rec(&reduce(&g, &target), &factors[..mid], p, k);
    out.extend(lift_rec(&reduce(&h, &target), &factors[mid..], p, k));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modp::factor_fp;

    #[test]
    fn lift_x2_plus_1_mod_5() {
        let f: Vec<BigInt> = [1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let fs: Vec<FpPoly> = factor_fp(&FpPoly::from_bigints(&f, 5)).into_iter().map(|(g, _)| g).collect();
        let lifts = multifactor_lift(&f, &fs, 5, 6);
        let m = big_pow(5, 6);
        let prod = mul(&lifts[0], &lifts[1], &m);
        assert_eq!(prod, reduce(&f, &m));
    }

    #[test]
    fn lift_non_monic() {
        // 6x^3 + 5x^2 - 2x - 1 = (2x + 1)(3x^2 + x - 1) over Z; mod 7
        let f: Vec<BigInt> = [-1, -2, 5, 6].iter().map(|&c| BigInt::from(c)).collect();
        let fs: Vec<FpPoly> = factor_fp(&FpPoly::from_bigints(&f, 7).monic()).into_iter().map(|(g, _)| g).collect();
        let lifts = multifactor_lift(&f, &fs, 7, 5);
        let m = big_pow(7, 5);
        let mut prod = vec![BigInt::from(6)];
        for l in &lifts {
            prod = mul(&prod, l, &m);
        }
        assert_eq!(prod, reduce(&f, &m));
    }
}
