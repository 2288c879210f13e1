//! Abelian groups: preadmissibility from local class field theory and
//! admissibility with Grunwald–Wang special-case detection.

use serde_json::json;

use super::{combine, lex_le, soft, Verdict};
use crate::error::Result;
use crate::groups::{AbelianInvariants, PrimaryPart};
use crate::numfield::{
    norm_obstruction, wang_cyclic_criterion, CyclicCriterion, LocalCyclicExt, LocalPlace, NormAnswer, NormElement, NumberField,
};

/// Sort key for the order ≤ on places above p: (n_v, q_v), ties by label.
pub fn place_order_key(v: &LocalPlace) -> (u32, u64, usize) {
    (v.n_v, v.q_v, v.index)
}

fn sorted_places(k: &NumberField, p: u64) -> Result<std::result::Result<Vec<LocalPlace>, String>> {
    Ok(soft(k.decompose_prime(p))?.map(|places| {
        let mut v: Vec<LocalPlace> = places.iter().cloned().collect();
        v.sort_by_key(place_order_key);
        v
    }))
}

fn place_json(v: &LocalPlace) -> serde_json::Value {
    json!({ "place": v.label(), "n_v": v.n_v, "q_v": v.q_v })
}

fn realizable(part: &PrimaryPart, v: &LocalPlace) -> bool {
    lex_le((part.rank, part.smallest), (v.n_v, v.q_v))
}

/// Two rational primes ℓ ≠ p splitting completely in K with ℓ ≡ 1 mod the
/// exponent: places where a metacyclic abelian p-group is tamely realizable.
fn tame_witnesses(k: &NumberField, part: &PrimaryPart) -> Vec<u64> {
    let n = part.largest();
    crate::arith::int::primes_from(3)
        .take_while(|&l| l < 100_000)
        .filter(|&l| l != part.p && l % n == 1 % n)
        .filter(|&l| k.is_rational() || splits_completely(k, l))
        .take(2)
        .collect()
}

pub(crate) fn splits_completely(k: &NumberField, l: u64) -> bool {
    match crate::arith::modp::factor_mod_p(k.poly(), l) {
        Ok(fs) => fs.iter().all(|(g, m)| g.deg() == 1 && *m == 1),
        Err(_) => false,
    }
}

fn component_preadmissible(k: &NumberField, part: &PrimaryPart) -> Result<Verdict> {
    if part.is_metacyclic() {
        let w = tame_witnesses(k, part);
        let cert = json!({ "p": part.p, "factors": part.factors, "rule": "metacyclic", "tame_primes": w });
        return Ok(Verdict::yes(cert, &["abelian-preadmissible:metacyclic"]));
    }
    let places = match sorted_places(k, part.p)? {
        Ok(v) => v,
        Err(why) => return Ok(Verdict::undecided(why, &["abelian-preadmissible:second-largest-place"])),
    };
    let listed: Vec<_> = places.iter().map(place_json).collect();
    if places.len() < 2 {
        let cert = json!({ "p": part.p, "rank": part.rank, "places": listed });
        return Ok(Verdict::no(cert, &["unique-place:non-metacyclic"]));
    }
    let v2 = &places[places.len() - 2];
    let cert = json!({
        "p": part.p,
        "n": part.rank,
        "q": part.smallest,
        "places": listed,
        "second_largest": v2.label(),
    });
    Ok(if realizable(part, v2) {
        Verdict::yes(cert, &["abelian-preadmissible:second-largest-place"])
    } else {
        Verdict::no(cert, &["abelian-preadmissible:second-largest-place"])
    })
}

/// A is K-preadmissible iff each primary component is: metacyclic components
/// always, others iff (n_p, q_p) ≤ (n_v, q_v) at the second-largest place
/// above p (at least two places needed).
pub fn abelian_preadmissible(a: &AbelianInvariants, k: &NumberField) -> Result<Verdict> {
    let mut parts = Vec::new();
    for part in &a.parts {
        parts.push((part.p, component_preadmissible(k, part)?));
    }
    Ok(combine(parts, &["abelian-preadmissible:components"]))
}

/// If every A-extension of K_v is the maximal abelian extension of exponent
/// 2^s (A ≅ A_v / 2^s A_v), return s: the unramified C_{2^s} then sits inside.
fn forced_exponent(part: &PrimaryPart, v: &LocalPlace) -> Option<u32> {
    let top = part.largest();
    let s = top.trailing_zeros();
    if v.q_v < 2 || part.rank != v.n_v {
        return None;
    }
    let mut expected = vec![v.q_v.min(top)];
    expected.extend(std::iter::repeat_n(top, v.n_v as usize - 1));
    expected.sort_unstable();
    (expected == part.factors).then_some(s)
}

fn component_admissible(k: &NumberField, part: &PrimaryPart) -> Result<Verdict> {
    let p = part.p;
    if part.is_metacyclic() {
        let cert = json!({ "p": p, "factors": part.factors });
        return Ok(Verdict::yes(cert, &["abelian-summary:clause-3"]));
    }
    let places = match sorted_places(k, p)? {
        Ok(v) => v,
        Err(why) => return Ok(Verdict::undecided(why, &[])),
    };
    let listed: Vec<_> = places.iter().map(place_json).collect();
    if places.len() == 1 {
        let cert = json!({ "p": p, "rank": part.rank, "places": listed });
        return Ok(Verdict::no(cert, &["abelian-summary:clause-2"]));
    }
    let v2 = &places[places.len() - 2];
    let base = json!({
        "p": p,
        "n": part.rank,
        "q": part.smallest,
        "places": listed,
        "second_largest": v2.label(),
    });
    let clause = if p == 2 { "abelian-summary:clause-5" } else { "abelian-summary:clause-4" };
    if !realizable(part, v2) {
        return Ok(Verdict::no(base, &[clause]));
    }
    if p != 2 {
        return Ok(Verdict::yes(base, &[clause]));
    }
    special_case(k, part, &places, base)
}

/// The four special-case conditions for a preadmissible non-metacyclic A_2.
fn special_case(k: &NumberField, part: &PrimaryPart, places: &[LocalPlace], mut cert: serde_json::Value) -> Result<Verdict> {
    let clause = "abelian-summary:clause-5";
    let wang = match soft(k.wang_data())? {
        Ok(w) => w.clone(),
        Err(why) => return Ok(Verdict::undecided(why, &[clause])),
    };
    cert["wang"] = json!({ "totally_real_intersection": wang.totally_real_intersection, "t": wang.t, "oddly_even": wang.oddly_even_places });
    // (1)
    let Some(t) = wang.t.filter(|_| wang.totally_real_intersection) else {
        cert["special_case"] = json!({ "fails": 1 });
        return Ok(Verdict::yes(cert, &[clause, "special-case:condition-1"]));
    };
    // (2)
    let real: Vec<&LocalPlace> = places.iter().filter(|v| realizable(part, v)).collect();
    if real.len() != 2 {
        cert["special_case"] = json!({ "fails": 2, "realizable_places": real.iter().map(|v| v.label()).collect::<Vec<_>>() });
        return Ok(Verdict::yes(cert, &[clause, "special-case:condition-2"]));
    }
    // (3)
    let pair: Vec<String> = real.iter().map(|v| v.label()).collect();
    let odd = &wang.oddly_even_places;
    if odd.is_empty() || !odd.iter().all(|l| pair.contains(l)) {
        cert["special_case"] = json!({ "fails": 3, "pair": pair, "oddly_even": odd });
        return Ok(Verdict::yes(cert, &[clause, "special-case:condition-3"]));
    }
    // (4): decided through the cyclic component forced by full rank
    if odd.len() != 1 {
        return Ok(Verdict::undecided(
            "condition (4) with two oddly even places needs a parity count outside the norm catalog",
            &[clause, "special-case:condition-4"],
        ));
    }
    let v = real.iter().find(|v| v.label() == odd[0]).copied().expect("oddly even place is realizable");
    let Some(s) = forced_exponent(part, v) else {
        return Ok(Verdict::undecided(
            format!("condition (4): A-extensions of K_{} are not forced to contain the unramified cyclic extension", v.label()),
            &[clause, "special-case:condition-4"],
        ));
    };
    let degree = 1u64 << s;
    let ext = LocalCyclicExt::unramified(degree);
    let prescribed = vec![(v.clone(), ext)];
    let criterion = match soft(wang_cyclic_criterion(k, s, &prescribed))? {
        Ok(c) => c,
        Err(why) => return Ok(Verdict::undecided(why, &[clause, "special-case:condition-4"])),
    };
    let norm = if s > t { norm_obstruction(v, &ext, s, &NormElement::EtaPower { t, s }) } else { NormAnswer::Norm };
    let cond4 = json!({
        "place": v.label(),
        "forced_extension": format!("unramified C_{degree}"),
        "element": format!("eta_{}^{}", t + 1, degree),
        "norm": norm,
        "wang_cyclic_criterion": criterion,
    });
    match criterion {
        CyclicCriterion::SpecialCase => {
            cert["special_case"] = json!({
                "1": { "totally_real_intersection": true, "t": t },
                "2": { "realizable_places": pair },
                "3": { "oddly_even": odd },
                "4": cond4,
            });
            Ok(Verdict::no(
                cert,
                &[
                    clause,
                    "special-case:conditions-1-4",
                    "special-case:condition-1",
                    "special-case:condition-2",
                    "special-case:condition-3",
                    "special-case:condition-4",
                    "wang-norm-obstruction",
                ],
            ))
        }
        CyclicCriterion::Exists if s <= t => {
            cert["special_case"] = json!({ "fails": 4, "detail": cond4, "note": "exponent at most 2^t" });
            Ok(Verdict::yes(cert, &[clause, "special-case:condition-4"]))
        }
        CyclicCriterion::Exists => Ok(Verdict::undecided(
            format!("condition (4): the forced component at {} is unobstructed, other decompositions are outside the catalog", v.label()),
            &[clause, "special-case:condition-4"],
        )),
        CyclicCriterion::Undecided(why) => Ok(Verdict::undecided(format!("condition (4): {why}"), &[clause, "special-case:condition-4"])),
    }
}

/// Abelian admissibility, decided one primary component at a time.
pub fn abelian_admissible(a: &AbelianInvariants, k: &NumberField) -> Result<Verdict> {
    let mut parts = Vec::new();
    for part in &a.parts {
        parts.push((part.p, component_admissible(k, part)?));
    }
    Ok(combine(parts, &["abelian-summary:clause-1"]))
}
