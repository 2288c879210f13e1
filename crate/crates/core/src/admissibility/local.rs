//! Preadmissibility through a catalog of local realizability criteria,
//! N_p(K), and the admissibility corollary for odd semicyclic groups.

use serde_json::json;

use super::{combine, lex_le, soft, Verdict};
use crate::arith::int::{factorize, is_prime, pow_mod, primes_from};
use crate::error::{Error, Result};
use crate::groups::{is_metacyclic, is_semicyclic, metacyclic_presentations, AbelianInvariants, FiniteGroup, SemicyclicClass};
use crate::numfield::{LocalPlace, NumberField};

/// Rational primes searched for tamely realizing places.
pub const TAME_PLACE_BOUND: u64 = 2000;

/// N_v: k − 1 when μ_p ⊄ K_v, k/2 otherwise, with k = [K_v : Q_p] + 2.
fn n_v(v: &LocalPlace) -> u64 {
    let k = v.local_degree() as u64 + 2;
    if v.q_v == 1 {
        k - 1
    } else {
        k / 2
    }
}

/// N_p(K) for odd p: 1 if p has a single place in K, otherwise the largest
/// min(N_{v_i}, N_{v_j}) over distinct places, i.e. the second-largest N_v.
pub fn n_p(k: &NumberField, p: u64) -> Result<u64> {
    if !is_prime(p) || p == 2 {
        return Err(Error::invalid(format!("N_p(K) needs an odd prime, got {p}")));
    }
    let places = k.decompose_prime(p)?;
    if places.len() == 1 {
        return Ok(1);
    }
    let mut ns: Vec<u64> = places.iter().map(n_v).collect();
    ns.sort_unstable();
    Ok(ns[ns.len() - 2])
}

/// Odd-order G in SC_o whose Sylow p-subgroups need at most N_p(K)
/// generators is K-admissible. The corollary is one-directional, so failing
/// hypotheses give undecided.
pub fn semicyclic_admissible(g: &FiniteGroup, k: &NumberField) -> Result<Verdict> {
    let cite = "semicyclic-corollary";
    if g.order().is_multiple_of(2) {
        return Err(Error::invalid("the semicyclic corollary needs a group of odd order"));
    }
    if !is_semicyclic(g, SemicyclicClass::ScO)? {
        return Ok(Verdict::undecided("G is not in SC_o; the corollary does not apply", &[cite]));
    }
    let mut ranks = serde_json::Map::new();
    for (p, _) in factorize(g.order() as u64) {
        let s = g.sylow(p)?;
        let d = g.induced(&s).p_group_rank(p)? as u64;
        let np = match soft(n_p(k, p))? {
            Ok(n) => n,
            Err(why) => return Ok(Verdict::undecided(why, &[cite])),
        };
        if d > np {
            return Ok(Verdict::undecided(format!("Sylow {p}-subgroup needs {d} generators but N_{p}(K) = {np}"), &[cite]));
        }
        ranks.insert(p.to_string(), json!({ "rank": d, "N_p": np }));
    }
    Ok(Verdict::yes(json!({ "class": "SC_o", "sylow": ranks }), &[cite]))
}

fn component(g: &FiniteGroup, k: &NumberField, p: u64) -> Result<Verdict> {
    let s = g.sylow(p)?;
    let sp = g.induced(&s);
    let metacyclic = is_metacyclic(&sp).is_some();
    let mut certified: Vec<serde_json::Value> = Vec::new();
    let mut notes = Vec::new();
    let mut cites: Vec<&str> = Vec::new();

    // places above p: abelian local CFT and free pro-p quotients
    let above = match soft(k.decompose_prime(p))? {
        Ok(v) => Some(v),
        Err(why) => {
            notes.push(why);
            None
        }
    };
    if let Some(places) = &above {
        let inv = AbelianInvariants::of_group(&sp);
        let rank = sp.p_group_rank(p)? as u64;
        for v in places.iter() {
            if let Some(part) = inv.as_ref().and_then(|a| a.part(p)) {
                if lex_le((part.rank, part.smallest), (v.n_v, v.q_v)) {
                    certified.push(json!({ "place": v.label(), "catalog": "abelian", "n_v": v.n_v, "q_v": v.q_v }));
                    cites.push("preadmissible:abelian-catalog");
                    continue;
                }
            }
            if p != 2 && rank <= n_v(v) {
                certified.push(json!({ "place": v.label(), "catalog": "pro-p", "rank": rank, "N_v": n_v(v) }));
                cites.push("preadmissible:pro-p-catalog");
            }
        }
    }

    // tame places: residue size ≡ t (mod n) for some presentation
    if certified.len() < 2 && metacyclic {
        let pres = metacyclic_presentations(&sp)?;
        'primes: for l in primes_from(2).take_while(|&l| l <= TAME_PLACE_BOUND) {
            if l == p {
                continue;
            }
            let places = match soft(k.decompose_prime(l))? {
                Ok(v) => v,
                Err(_) => continue,
            };
            for v in places.iter() {
                if let Some(m) = pres.iter().find(|m| pow_mod(l, v.f as u64, m.n) == m.t_mod_n() % m.n) {
                    certified.push(json!({ "place": v.label(), "catalog": "tame", "presentation": m.to_string(), "residue_size": format!("{l}^{}", v.f) }));
                    cites.push("preadmissible:tame-catalog");
                    if certified.len() >= 2 {
                        break 'primes;
                    }
                }
            }
        }
    }

    if certified.len() >= 2 {
        certified.truncate(2);
        let mut v = Verdict::yes(json!({ "p": p, "places": certified }), &[]);
        for c in cites {
            if !v.cites(c) && certified.iter().any(|x| c.ends_with(&format!("{}-catalog", x["catalog"].as_str().unwrap()))) {
                v.cites.push(c.to_string());
            }
        }
        return Ok(v);
    }
    if !metacyclic {
        if let Some(places) = &above {
            if places.len() == 1 {
                let cert = json!({ "p": p, "sylow": "not metacyclic", "places_above_p": [places[0].label()] });
                return Ok(Verdict::no(cert, &["unique-place:non-metacyclic"]));
            }
        }
    }
    notes.push(format!("only {} place(s) certified by the realizability catalog", certified.len()));
    Ok(Verdict::undecided(notes.join("; "), &["preadmissible:catalog-silent"]))
}

/// For each p | |G|, two places of K over which a subgroup containing a
/// Sylow p-subgroup is realizable, certified by the catalog (tame
/// metacyclic, abelian local CFT, free pro-p for odd p).
pub fn preadmissible(g: &FiniteGroup, k: &NumberField) -> Result<Verdict> {
    let mut parts = Vec::new();
    for (p, _) in factorize(g.order() as u64) {
        parts.push((p, component(g, k, p)?));
    }
    Ok(combine(parts, &["preadmissible:components"]))
}
