//! Brauer classes over a number field described by Hasse invariants, and the
//! adequacy checks (Schacher, tame, wild) on local degree profiles.
//!
//! Places are opaque labels. Labels `inf`, `inf.N` and `real.N` denote real
//! places (invariants in {0, 1/2}); `complex.N` denotes a complex place
//! (invariant forced to 0).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::int::{factorize, lcm, p_part};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    Finite,
    Real,
    Complex,
}

pub fn place_kind(label: &str) -> PlaceKind {
    let head = label.split('.').next().unwrap_or(label);
    match head {
        "inf" | "real" => PlaceKind::Real,
        "complex" => PlaceKind::Complex,
        _ => PlaceKind::Finite,
    }
}

fn frac_part(x: Rational64) -> Rational64 {
    let r = x - x.floor();
    if r < Rational64::zero() {
        r + Rational64::one()
    } else {
        r
    }
}

fn fmt_ratio(x: &Rational64) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// A Brauer class of K: invariants in [0, 1) at finitely many places, summing
/// to an integer. Zero invariants are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BrauerClass {
    inv: BTreeMap<String, Rational64>,
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (label, x)) in self.inv.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{label}: {}", fmt_ratio(x))?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassJson {
    inv: BTreeMap<String, String>,
}

/// Builds a class from (place, invariant) pairs. Invariants are reduced into
/// [0, 1), so −1/2 becomes 1/2; repeated places add up.
pub fn make_class<S: Into<String>>(assignments: impl IntoIterator<Item = (S, Rational64)>) -> Result<BrauerClass> {
    let mut inv: BTreeMap<String, Rational64> = BTreeMap::new();
    for (label, x) in assignments {
        let label = label.into();
        let e = inv.entry(label).or_insert_with(Rational64::zero);
        *e = frac_part(*e + x);
    }
    inv.retain(|_, x| !x.is_zero());
    for (label, x) in &inv {
        match place_kind(label) {
            PlaceKind::Real if *x != Rational64::new(1, 2) => {
                return Err(Error::invalid(format!("real place {label} needs invariant 0 or 1/2, got {}", fmt_ratio(x))));
            }
            PlaceKind::Complex => {
                return Err(Error::invalid(format!("complex place {label} must have invariant 0")));
            }
            _ => {}
        }
    }
    let sum = frac_part(inv.values().fold(Rational64::zero(), |a, b| a + b));
    if !sum.is_zero() {
        return Err(Error::NonZeroSum { residue: fmt_ratio(&sum) });
    }
    Ok(BrauerClass { inv })
}

impl BrauerClass {
    pub fn trivial() -> Self {
        BrauerClass::default()
    }

    /// Parses `{"inv": {"label": "a/b", ...}}`.
    pub fn parse(s: &str) -> Result<Self> {
        let raw: ClassJson = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("brauer class: {e}")))?;
        let mut pairs = Vec::new();
        for (label, x) in raw.inv {
            let r: Rational64 = x
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("brauer class: invariant {x:?} at {label} is not a rational a/b")))?;
            pairs.push((label, r));
        }
        make_class(pairs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let inv: BTreeMap<String, String> = self.inv.iter().map(|(k, v)| (k.clone(), fmt_ratio(v))).collect();
        serde_json::json!({ "inv": inv })
    }

    pub fn invariant(&self, label: &str) -> Rational64 {
        self.inv.get(label).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn invariants(&self) -> &BTreeMap<String, Rational64> {
        &self.inv
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.inv.keys().map(String::as_str)
    }

    pub fn is_trivial(&self) -> bool {
        self.inv.is_empty()
    }

    /// Order in Br(K): the lcm of the invariant denominators.
    pub fn exponent(&self) -> u64 {
        self.inv.values().fold(1, |a, x| lcm(a, *x.denom() as u64))
    }

    pub fn tensor(&self, other: &BrauerClass) -> BrauerClass {
        let mut inv = self.inv.clone();
        for (label, x) in &other.inv {
            let e = inv.entry(label.clone()).or_insert_with(Rational64::zero);
            *e = frac_part(*e + x);
        }
        inv.retain(|_, x| !x.is_zero());
        BrauerClass { inv }
    }

    pub fn inverse(&self) -> BrauerClass {
        BrauerClass { inv: self.inv.iter().map(|(k, x)| (k.clone(), frac_part(-x))).collect() }
    }

    /// The k-fold tensor power.
    pub fn power(&self, k: u64) -> BrauerClass {
        let mut inv: BTreeMap<String, Rational64> = self
            .inv
            .iter()
            .map(|(l, x)| (l.clone(), frac_part(*x * Rational64::from_integer(k as i64))))
            .collect();
        inv.retain(|_, x| !x.is_zero());
        BrauerClass { inv }
    }
}

/// One place of K in a degree profile of a Galois extension L/K.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceDegree {
    pub label: String,
    /// residue characteristic (0 for archimedean places)
    pub p: u64,
    /// [L_π : K_π]
    pub local_degree: u64,
    /// [L_π ∩ (K_π)_tr : K_π]; defaults to the local degree
    #[serde(default)]
    pub tame_degree: Option<u64>,
    /// wild index e_{L_π/K_π}(p); defaults to local degree / tame degree
    #[serde(default)]
    pub wild_e: Option<u64>,
}

impl PlaceDegree {
    pub fn new(label: impl Into<String>, p: u64, local_degree: u64) -> Self {
        PlaceDegree { label: label.into(), p, local_degree, tame_degree: None, wild_e: None }
    }

    pub fn with_tame(mut self, tame_degree: u64) -> Self {
        self.tame_degree = Some(tame_degree);
        self
    }

    pub fn tame(&self) -> u64 {
        self.tame_degree.unwrap_or(self.local_degree)
    }

    pub fn wild(&self) -> u64 {
        self.wild_e.unwrap_or(self.local_degree / self.tame().max(1))
    }
}

/// Local degrees of a Galois extension L/K of total degree [L:K] = |G|.
/// Places not listed have local degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalDegreeProfile {
    pub total_degree: u64,
    pub places: Vec<PlaceDegree>,
}

impl LocalDegreeProfile {
    pub fn new(total_degree: u64, places: Vec<PlaceDegree>) -> Result<Self> {
        let p = LocalDegreeProfile { total_degree, places };
        p.validate()?;
        Ok(p)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let p: LocalDegreeProfile = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("degree profile: {e}")))?;
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.total_degree == 0 {
            return Err(Error::invalid("total degree must be positive"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.places {
            if !seen.insert(v.label.as_str()) {
                return Err(Error::invalid(format!("place {} listed twice", v.label)));
            }
            if v.local_degree == 0 || !self.total_degree.is_multiple_of(v.local_degree) {
                return Err(Error::invalid(format!("local degree at {} must divide {}", v.label, self.total_degree)));
            }
            let t = v.tame();
            if t == 0 || v.local_degree % t != 0 {
                return Err(Error::invalid(format!("tame degree at {} must divide the local degree", v.label)));
            }
            if v.wild() == 0 || v.local_degree % v.wild() != 0 {
                return Err(Error::invalid(format!("wild index at {} must divide the local degree", v.label)));
            }
        }
        Ok(())
    }

    pub fn place(&self, label: &str) -> Option<&PlaceDegree> {
        self.places.iter().find(|v| v.label == label)
    }

    /// Places whose local degree is divisible by the full p-part of [L:K].
    fn full_p_places(&self, p: u64) -> impl Iterator<Item = &PlaceDegree> {
        let pr = p_part(self.total_degree, p);
        self.places.iter().filter(move |v| v.local_degree % pr == 0)
    }
}

/// Does L split the class: inv_π · [L_π:K_π] ≡ 0 at every place?
pub fn splits(profile: &LocalDegreeProfile, c: &BrauerClass) -> Result<bool> {
    let mut ok = true;
    for (label, x) in c.invariants() {
        let v = profile
            .place(label)
            .ok_or_else(|| Error::invalid(format!("place {label} in the class support is missing from the profile")))?;
        ok &= v.local_degree % (*x.denom() as u64) == 0;
    }
    Ok(ok)
}

/// Outcome of an adequacy check, with one witness pair per prime of [L:K].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Adequacy {
    pub adequate: bool,
    pub witnesses: BTreeMap<u64, (String, String)>,
    pub failing_prime: Option<u64>,
    pub cite: &'static str,
}

fn pair_search(profile: &LocalDegreeProfile, cite: &'static str, keep: impl Fn(u64, &PlaceDegree) -> bool) -> Adequacy {
    let mut witnesses = BTreeMap::new();
    for (p, _) in factorize(profile.total_degree) {
        let found: Vec<&PlaceDegree> = profile.full_p_places(p).filter(|v| keep(p, v)).take(2).collect();
        if found.len() < 2 {
            return Adequacy { adequate: false, witnesses, failing_prime: Some(p), cite };
        }
        witnesses.insert(p, (found[0].label.clone(), found[1].label.clone()));
    }
    Adequacy { adequate: true, witnesses, failing_prime: None, cite }
}

/// Schacher's criterion: for each p | [L:K], two places whose local degree is
/// divisible by the p-part of [L:K].
pub fn schacher_adequate(profile: &LocalDegreeProfile) -> Adequacy {
    pair_search(profile, "schacher-criterion", |_, _| true)
}

/// Tame adequacy: the Schacher witnesses for p can be taken away from p.
pub fn tamely_adequate(profile: &LocalDegreeProfile) -> Adequacy {
    pair_search(profile, "tame-adequacy:places-off-p", |p, v| v.p != p)
}

/// Wild adequacy: L/K is adequate and for some prime q every witness place
/// for q lies above q, so every supporting set has both q-places above q.
pub fn wildly_adequate(profile: &LocalDegreeProfile) -> Adequacy {
    let base = schacher_adequate(profile);
    if !base.adequate {
        return Adequacy { cite: "wild-adequacy:not-adequate", ..base };
    }
    for (q, _) in factorize(profile.total_degree) {
        if profile.full_p_places(q).all(|v| v.p == q) {
            return Adequacy { adequate: true, witnesses: base.witnesses, failing_prime: Some(q), cite: "wild-adequacy:all-witnesses-above-q" };
        }
    }
    Adequacy { adequate: false, witnesses: base.witnesses, failing_prime: None, cite: "wild-adequacy:tame-witness-each-prime" }
}

/// Br(L/K)/Br(L/K)_tr per residue characteristic: the zero-sum part of
/// ⊕_{π|p} (1/e_π(p))Z/Z, returned as its cyclic factor orders. The
/// indices at one p are p-powers, so the zero-sum part drops the largest.
pub fn wild_quotient(profile: &LocalDegreeProfile) -> BTreeMap<u64, Vec<u64>> {
    let mut by_p: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for v in &profile.places {
        if v.p == 0 {
            continue;
        }
        by_p.entry(v.p).or_default().push(p_part(v.wild(), v.p));
    }
    by_p.into_iter()
        .map(|(p, mut es)| {
            es.sort_unstable();
            es.pop();
            es.retain(|&e| e > 1);
            (p, es)
        })
        .collect()
}

/// The class ⊗_p D_p with inv = 1/|G|(p) and −1/|G|(p) at the pair chosen for p.
pub fn standard_division_algebra(group_order: u64, pairs: &BTreeMap<u64, (String, String)>) -> Result<BrauerClass> {
    if group_order == 0 {
        return Err(Error::invalid("group order must be positive"));
    }
    let mut assignments = Vec::new();
    for (p, _) in factorize(group_order) {
        let (a, b) = pairs.get(&p).ok_or_else(|| Error::invalid(format!("no place pair given for p = {p}")))?;
        if a == b {
            return Err(Error::invalid(format!("the pair for p = {p} uses {a} twice")));
        }
        let x = Rational64::new(1, p_part(group_order, p) as i64);
        assignments.push((a.clone(), x));
        assignments.push((b.clone(), -x));
    }
    make_class(assignments)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossedProductCheck {
    pub ok: bool,
    pub exponent: u64,
    /// support places with no realizable subgroup of order divisible by the
    /// local index
    pub missing: Vec<String>,
}

/// Is c a crossed-product candidate for G: exponent |G| and, at each support
/// place u, a realizable subgroup order divisible by the denominator of inv_u?
pub fn crossed_product_check(c: &BrauerClass, group_order: u64, realizable: &BTreeMap<String, Vec<u64>>) -> Result<CrossedProductCheck> {
    let mut missing = Vec::new();
    for (label, x) in c.invariants() {
        let orders = realizable
            .get(label)
            .ok_or_else(|| Error::invalid(format!("no realizable subgroup orders listed for {label}")))?;
        let n_u = *x.denom() as u64;
        if !orders.iter().any(|&o| o % n_u == 0) {
            missing.push(label.clone());
        }
    }
    let exponent = c.exponent();
    Ok(CrossedProductCheck { ok: exponent == group_order && missing.is_empty(), exponent, missing })
}
