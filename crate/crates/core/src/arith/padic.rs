//! Newton polygons, p-adic factorization and the precision policy.
//!
//! Sign convention: `NewtonPolygon` stores the raw slopes of the lower convex
//! hull of the points (i, v_p(a_i)). A segment of slope `s` and length `l`
//! accounts for `l` roots of valuation `-s`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use super::hensel::{mul, reduce};
use super::int::{big_pow, require_prime, val_big};
use super::order::{Completion, PMaximalOrder, Precise};
use super::poly::{discriminant, Poly};
use crate::error::{Error, Result};

/// Default cap on the working precision (exponent of p).
pub const DEFAULT_PRECISION_CAP: u32 = 1 << 12;

/// The precision cap, overridable through `ABL_PRECISION_CAP`.
pub fn precision_cap() -> u32 {
    std::env::var("ABL_PRECISION_CAP")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_PRECISION_CAP)
}

/// Starting precision v_p(disc f) + 8 for a squarefree integer polynomial.
pub fn initial_precision(f: &Poly, p: u64) -> u32 {
    let d = discriminant(f);
    val_big(d.numer(), p).unwrap_or(0) + 8
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// (slope, length) with strictly increasing slopes
    #[serde(serialize_with = "ser_segments")]
    pub segments: Vec<(BigRational, usize)>,
}

fn ser_segments<S: serde::Serializer>(x: &[(BigRational, usize)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(x.len()))?;
    for (slope, len) in x {
        seq.serialize_element(&(slope.to_string(), len))?;
    }
    seq.end()
}

impl NewtonPolygon {
    /// Valuations of the roots with multiplicities, ascending.
    pub fn root_valuations(&self) -> Vec<(BigRational, usize)> {
        let mut v: Vec<(BigRational, usize)> = self.segments.iter().map(|(s, l)| (-s.clone(), *l)).collect();
        v.sort();
        v
    }
}

/// Lower convex hull of (i, v_p(a_i)) over the nonzero coefficients.
pub fn newton_polygon(f: &Poly, p: u64) -> Result<NewtonPolygon> {
    require_prime(p)?;
    let coeffs = f.integer_coeffs().ok_or_else(|| Error::invalid("Newton polygon needs integer coefficients"))?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<(i64, i64)> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| val_big(c, p).map(|v| (i as i64, v as i64)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above the segment a -> pt
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = (w[1].0 - w[0].0) as usize;
            (BigRational::new(BigInt::from(w[1].1 - w[0].1), BigInt::from(len as i64)), len)
        })
        .collect();
    Ok(NewtonPolygon { segments })
}

/// A p-adic number known modulo p^precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PadicElement {
    pub prime: u64,
    pub precision: u32,
    #[serde(serialize_with = "ser_big")]
    pub value: BigInt,
    /// `None` stands for "at least `precision`" (indistinguishable from 0)
    pub valuation: Option<u32>,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl PadicElement {
    pub fn new(prime: u64, precision: u32, value: &BigInt) -> Self {
        let m = big_pow(prime, precision);
        let value = value.mod_floor(&m);
        let valuation = val_big(&value, prime);
        PadicElement { prime, precision, value, valuation }
    }

    /// The unit part u with value = p^v u, reduced mod p^(precision - v).
    pub fn unit_part(&self) -> Option<BigInt> {
        let v = self.valuation?;
        Some(&self.value / big_pow(self.prime, v))
    }
}

/// One irreducible factor of f over Q_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PadicFactor {
    /// monic, coefficients in [0, p^precision), constant term first
    #[serde(serialize_with = "ser_bigs")]
    pub coeffs: Vec<BigInt>,
    pub e: u32,
    pub f: u32,
}

fn ser_bigs<S: serde::Serializer>(x: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(x.len()))?;
    for c in x {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

impl PadicFactor {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// For a linear factor x - r, the root r.
    pub fn root(&self, p: u64, precision: u32) -> Option<PadicElement> {
        (self.degree() == 1).then(|| PadicElement::new(p, precision, &-self.coeffs[0].clone()))
    }
}

fn monic_integer(f: &Poly) -> Result<Vec<BigInt>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_integral_monic() || f.deg() == 0 {
        return Err(Error::invalid("expected a monic integer polynomial of positive degree"));
    }
    if !f.is_squarefree() {
        return Err(Error::invalid("polynomial is not squarefree"));
    }
    Ok(f.integer_coeffs().unwrap())
}

/// Factors a monic squarefree integer polynomial over Q_p at precision `m`,
/// certifying that the product of the factors is f mod p^m. Factors are
/// ordered by (f, e) and then by coefficients.
pub fn padic_factor(f: &Poly, p: u64, m: u32) -> Result<Vec<PadicFactor>> {
    require_prime(p)?;
    let coeffs = monic_integer(f)?;
    let order = Arc::new(PMaximalOrder::new(&coeffs, p));
    let cap = precision_cap();
    let mut prec = m.max(1);
    loop {
        let mut factors: Vec<PadicFactor> = order
            .residue_places()
            .iter()
            .map(|pl| {
                let c = Completion::new(order.clone(), pl, prec);
                PadicFactor { coeffs: c.local_factor.clone(), e: c.e, f: c.f }
            })
            .collect();
        let modulus = big_pow(p, prec);
        let mut prod = vec![BigInt::from(1)];
        for g in &factors {
            prod = mul(&prod, &g.coeffs, &modulus);
        }
        if prod == reduce(&coeffs, &modulus) {
            factors.sort_by(|a, b| (a.f, a.e, a.coeffs.iter().rev().collect::<Vec<_>>()).cmp(&(b.f, b.e, b.coeffs.iter().rev().collect())));
            return Ok(factors);
        }
        if prec >= cap {
            return Err(Error::PrecisionExhausted { precision: prec, cap, context: format!("factoring {f} over Q_{p}") });
        }
        prec = (prec * 2).min(cap);
    }
}

/// Runs a precision-dependent query with doubling precision up to the cap.
pub fn with_escalation<T>(start: u32, context: impl Fn() -> String, mut query: impl FnMut(u32) -> Precise<T>) -> Result<T> {
    let cap = precision_cap();
    let mut prec = start.min(cap).max(1);
    loop {
        if let Precise::Known(v) = query(prec) {
            return Ok(v);
        }
        if prec >= cap {
            return Err(Error::PrecisionExhausted { precision: prec, cap, context: context() });
        }
        prec = (prec * 2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn newton_examples() {
        let np = newton_polygon(&Poly::from_ints(&[8, 1, 0, 1]), 2).unwrap();
        assert_eq!(np.segments, vec![(q(-3), 1), (q(0), 2)]);
        let np = newton_polygon(&Poly::from_ints(&[-7, 0, 1]), 7).unwrap();
        assert_eq!(np.segments, vec![(BigRational::new((-1).into(), 2.into()), 2)]);
        let np = newton_polygon(&Poly::from_ints(&[-1, 1]), 3).unwrap();
        assert_eq!(np.segments, vec![(q(0), 1)]);
    }

    #[test]
    fn padic_examples() {
        let fs = padic_factor(&Poly::from_ints(&[8, 1, 0, 1]), 2, 20).unwrap();
        let labels: Vec<(usize, u32, u32)> = fs.iter().map(|g| (g.degree(), g.e, g.f)).collect();
        assert_eq!(labels, vec![(1, 1, 1), (2, 2, 1)]);
        // the linear factor's root is -8 * unit
        let r = fs[0].root(2, 20).unwrap();
        assert_eq!(r.valuation, Some(3));
        let fs = padic_factor(&Poly::from_ints(&[1, 0, 1]), 5, 10).unwrap();
        assert_eq!(fs.iter().map(|g| (g.degree(), g.e, g.f)).collect::<Vec<_>>(), vec![(1, 1, 1), (1, 1, 1)]);
        let fs = padic_factor(&Poly::from_ints(&[1, 0, 1]), 2, 10).unwrap();
        assert_eq!(fs.iter().map(|g| (g.degree(), g.e, g.f)).collect::<Vec<_>>(), vec![(2, 2, 1)]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(padic_factor(&Poly::from_ints(&[1, 0, 1]), 4, 10).is_err());
        assert!(padic_factor(&Poly::from_ints(&[1, 2, 1]), 3, 10).is_err());
        assert_eq!(padic_factor(&Poly::zero(), 3, 10), Err(Error::ZeroPolynomial));
    }
}
