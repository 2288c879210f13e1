//! Wang's data for the Grunwald–Wang special case: the integer t with
//! η_t ∈ K and i, η_{t+1}, iη_{t+1} ∉ K, the oddly even places, and a small
//! catalog of local norm computations.
//!
//! Membership of η_t is tested through c_t = 2η_t = ζ + ζ⁻¹ (ζ a primitive
//! 2^t-th root of unity), an algebraic integer with the same field of
//! definition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{cyclotomic, EvenClass, LocalPlace, NumberField};
use crate::arith::int::val_big;
use crate::arith::poly::Poly;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WangData {
    pub totally_real_intersection: bool,
    pub t: Option<u32>,
    /// labels of the oddly even places, e.g. "2.1"
    pub oddly_even_places: Vec<String>,
}

impl WangData {
    pub fn is_oddly_even(&self, v: &LocalPlace) -> bool {
        v.p == 2 && self.oddly_even_places.iter().any(|l| *l == v.label())
    }
}

/// Minimal polynomial of 2η_t = 2cos(2π/2^t), t ≥ 2.
pub fn eta_minpoly(t: u32) -> Poly {
    assert!(t >= 2, "eta_minpoly needs t >= 2");
    let mut m = Poly::x();
    let sub = Poly::from_ints(&[-2, 0, 1]);
    for _ in 2..t {
        m = m.compose(&sub);
    }
    m
}

/// Minimal polynomial of 2iη_{t+1}, t ≥ 2.
pub fn i_eta_minpoly(t: u32) -> Poly {
    // y = i c_{t+1} gives y² = -(2 + c_t)
    let g = eta_minpoly(t).compose(&Poly::from_ints(&[-2, 0, -1]));
    g.monic()
}

fn i_minpoly() -> Poly {
    Poly::from_ints(&[1, 0, 1])
}

pub(super) fn compute_wang_data(k: &NumberField) -> Result<WangData> {
    let not_real = WangData { totally_real_intersection: false, t: None, oddly_even_places: Vec::new() };
    if k.has_root(&i_minpoly())? {
        return Ok(not_real);
    }
    let n = k.degree() as u64;
    let mut t = 2u32;
    loop {
        // deg c_{t+1} = 2^{t-1}
        let deg_next = 1u64 << (t - 1);
        if n.is_multiple_of(deg_next) && k.has_root(&eta_minpoly(t + 1))? {
            t += 1;
            continue;
        }
        if n.is_multiple_of(deg_next) && k.has_root(&i_eta_minpoly(t))? {
            return Ok(not_real);
        }
        break;
    }
    let mut oddly = Vec::new();
    for v in k.raw_places(2)? {
        if locally_oddly_even(&v, t)? {
            oddly.push(v.label());
        }
    }
    Ok(WangData { totally_real_intersection: true, t: Some(t), oddly_even_places: oddly })
}

/// i, η_{t+1}, iη_{t+1} ∉ K_v.
pub(super) fn locally_oddly_even(v: &LocalPlace, t: u32) -> Result<bool> {
    for m in [i_minpoly(), eta_minpoly(t + 1), i_eta_minpoly(t)] {
        if v.has_root(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The definition of oddly even checked directly on degrees:
/// [K_v(μ_{2^s}):K_v] = [K(μ_{2^s}):K] for 1 ≤ s ≤ `s_max`.
pub fn oddly_even_by_degrees(k: &NumberField, v: &LocalPlace, s_max: u32) -> Result<bool> {
    for s in 1..=s_max {
        let n = 1u64 << s;
        let global = k.cyclotomic_intersection(n)?.degree_over_k();
        let local = cyclotomic::local_intersection(v, n)?.len();
        if global != local {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn class_of(w: &WangData, v: &LocalPlace) -> EvenClass {
    if v.p != 2 || !w.totally_real_intersection {
        EvenClass::NotApplicable
    } else if w.is_oddly_even(v) {
        EvenClass::Oddly
    } else {
        EvenClass::Evenly
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ramification {
    Unramified,
    Ramified,
    Unspecified,
}

/// A cyclic extension of K_v, described by its degree and ramification type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCyclicExt {
    pub degree: u64,
    pub ramification: Ramification,
}

impl LocalCyclicExt {
    pub fn unramified(degree: u64) -> Self {
        LocalCyclicExt { degree, ramification: Ramification::Unramified }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormElement {
    /// η_{t+1}^{2^s}
    EtaPower { t: u32, s: u32 },
    Rational(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormAnswer {
    Norm,
    NotNorm,
    Undecided(String),
}

fn val2(x: &BigRational) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let a = val_big(x.numer(), 2)? as i64;
    let b = val_big(x.denom(), 2)? as i64;
    Some(a - b)
}

/// Is `element` a norm from the cyclic extension `ext` of K_v? Decided for
/// extensions of degree below 2^s (Wang: no obstruction below full rank),
/// for the trivial extension, and for unramified extensions of K_v ≅ Q_2;
/// anything else is undecided.
pub fn norm_obstruction(v: &LocalPlace, ext: &LocalCyclicExt, s: u32, element: &NormElement) -> NormAnswer {
    let full = 1u64 << s;
    if ext.degree == 1 {
        return NormAnswer::Norm;
    }
    if !ext.degree.is_power_of_two() || ext.degree > full {
        return NormAnswer::Undecided(format!("degree {} is not a divisor of 2^{s}", ext.degree));
    }
    let value = match element {
        NormElement::EtaPower { t, s: s_el } => {
            if *s_el != s {
                return NormAnswer::Undecided(format!("element exponent 2^{s_el} differs from 2^{s}"));
            }
            if ext.degree < full {
                return NormAnswer::Norm;
            }
            if *t != 2 {
                return NormAnswer::Undecided(format!("η_{}^(2^{s}) is not rational", t + 1));
            }
            // η_3² = 1/2
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            num_traits::pow(half, 1usize << (s - 1))
        }
        NormElement::Rational(x) => x.clone(),
    };
    if v.p != 2 || v.e != 1 || v.f != 1 {
        return NormAnswer::Undecided(format!("place {} is not of type Q_2", v.label()));
    }
    if ext.ramification != Ramification::Unramified {
        return NormAnswer::Undecided("only unramified extensions of Q_2 are cataloged".into());
    }
    match val2(&value) {
        None => NormAnswer::Undecided("zero is not in the multiplicative group".into()),
        Some(k) if k.rem_euclid(ext.degree as i64) == 0 => NormAnswer::Norm,
        Some(_) => NormAnswer::NotNorm,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CyclicCriterion {
    /// a global cyclic extension with the prescribed completions exists
    Exists,
    /// Wang's special case: no such extension
    SpecialCase,
    Undecided(String),
}

/// Existence of a cyclic extension of K of degree 2^s with prescribed local
/// extensions at the places of S.
pub fn wang_cyclic_criterion(k: &NumberField, s: u32, prescribed: &[(LocalPlace, LocalCyclicExt)]) -> Result<CyclicCriterion> {
    let w = k.wang_data()?;
    let Some(t) = w.t else {
        return Ok(CyclicCriterion::Exists);
    };
    // the obstruction only arises above t
    if s <= t {
        return Ok(CyclicCriterion::Exists);
    }
    let covers = w
        .oddly_even_places
        .iter()
        .all(|l| prescribed.iter().any(|(v, _)| v.label() == *l));
    if !covers {
        return Ok(CyclicCriterion::Exists);
    }
    let mut odd = false;
    for (v, ext) in prescribed {
        if !w.is_oddly_even(v) {
            continue;
        }
        match norm_obstruction(v, ext, s, &NormElement::EtaPower { t, s }) {
            NormAnswer::Norm => {}
            NormAnswer::NotNorm => odd = !odd,
            NormAnswer::Undecided(why) => return Ok(CyclicCriterion::Undecided(format!("at {}: {why}", v.label()))),
        }
    }
    Ok(if odd { CyclicCriterion::SpecialCase } else { CyclicCriterion::Exists })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_polys() {
        assert_eq!(eta_minpoly(2), Poly::x());
        assert_eq!(eta_minpoly(3), Poly::from_ints(&[-2, 0, 1]));
        assert_eq!(eta_minpoly(4), Poly::from_ints(&[2, 0, -4, 0, 1]));
        assert_eq!(i_eta_minpoly(2), Poly::from_ints(&[2, 0, 1]));
        assert_eq!(i_eta_minpoly(3), Poly::from_ints(&[2, 0, 4, 0, 1]));
    }

    #[test]
    fn wang_examples() {
        let q = NumberField::rationals();
        let w = q.wang_data().unwrap();
        assert_eq!((w.totally_real_intersection, w.t), (true, Some(2)));
        assert_eq!(w.oddly_even_places, vec!["2.1".to_string()]);

        let k = NumberField::from_ints(&[8, 1, 0, 1]).unwrap();
        let w = k.wang_data().unwrap();
        assert_eq!(w.t, Some(2));
        assert_eq!(w.oddly_even_places, vec!["2.1".to_string()]);
        let places = k.decompose_prime(2).unwrap();
        assert_eq!(places[0].even_class, EvenClass::Oddly);
        assert_eq!(places[1].even_class, EvenClass::Evenly);

        let gi = NumberField::from_ints(&[1, 0, 1]).unwrap();
        assert!(!gi.wang_data().unwrap().totally_real_intersection);
        let r2 = NumberField::from_ints(&[-2, 0, 1]).unwrap();
        assert_eq!(r2.wang_data().unwrap().t, Some(3));
        let m2 = NumberField::from_ints(&[2, 0, 1]).unwrap();
        assert!(!m2.wang_data().unwrap().totally_real_intersection);
    }

    #[test]
    fn degree_definition_agrees() {
        let k = NumberField::from_ints(&[8, 1, 0, 1]).unwrap();
        let places = k.decompose_prime(2).unwrap();
        assert!(oddly_even_by_degrees(&k, &places[0], 4).unwrap());
        assert!(!oddly_even_by_degrees(&k, &places[1], 4).unwrap());
    }

    #[test]
    fn norm_catalog() {
        let q = NumberField::rationals();
        let v = q.decompose_prime(2).unwrap()[0].clone();
        let sixteen = NormElement::Rational(BigRational::from_integer(BigInt::from(16)));
        assert_eq!(norm_obstruction(&v, &LocalCyclicExt::unramified(8), 3, &sixteen), NormAnswer::NotNorm);
        let eta = NormElement::EtaPower { t: 2, s: 3 };
        assert_eq!(norm_obstruction(&v, &LocalCyclicExt::unramified(8), 3, &eta), NormAnswer::NotNorm);
        assert_eq!(norm_obstruction(&v, &LocalCyclicExt::unramified(2), 3, &eta), NormAnswer::Norm);
        assert_eq!(norm_obstruction(&v, &LocalCyclicExt::unramified(1), 3, &sixteen), NormAnswer::Norm);
        let ram = LocalCyclicExt { degree: 8, ramification: Ramification::Ramified };
        assert!(matches!(norm_obstruction(&v, &ram, 3, &eta), NormAnswer::Undecided(_)));
    }

    #[test]
    fn full_inertial_degree_fails_over_q() {
        let q = NumberField::rationals();
        let v = q.decompose_prime(2).unwrap()[0].clone();
        let r = wang_cyclic_criterion(&q, 3, &[(v.clone(), LocalCyclicExt::unramified(8))]).unwrap();
        assert_eq!(r, CyclicCriterion::SpecialCase);
        // degree 4 unramified at 2 is realized inside Q(ζ_5)
        let r = wang_cyclic_criterion(&q, 2, &[(v, LocalCyclicExt::unramified(4))]).unwrap();
        assert_eq!(r, CyclicCriterion::Exists);
    }
}
