//! Liedahl's condition, tame admissibility of solvable groups and the tame
//! supporting-set sieve.

use serde::Serialize;
use serde_json::json;

use super::abelian::splits_completely;
use super::{soft, Value, Verdict};
use crate::arith::int::{factorize, primes_from};
use crate::error::{Error, Result};
use crate::groups::{metacyclic_presentations, FiniteGroup, MetacyclicPresentation};
use crate::numfield::NumberField;

/// Default search bound for supporting-set primes.
pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

/// σ_{t,n} ∈ Gal(Q(μ_n)/(Q(μ_n) ∩ K)), with the congruence t ≡ 1 (mod d)
/// checked first.
pub fn liedahl_check(pres: &MetacyclicPresentation, k: &NumberField) -> Result<Verdict> {
    let n = pres.n;
    let t = pres.t_mod_n();
    if n == 1 || t == 1 {
        let cert = json!({ "presentation": pres.to_string(), "n": n, "t_mod_n": t % n.max(1) });
        return Ok(Verdict::yes(cert, &["liedahl-condition"]));
    }
    let ci = match soft(k.cyclotomic_intersection(n))? {
        Ok(ci) => ci,
        Err(why) => return Ok(Verdict::undecided(why, &["liedahl-condition"])),
    };
    let mut cert = json!({ "presentation": pres.to_string(), "n": n, "t_mod_n": t, "d": ci.d, "H": ci.h });
    if t % ci.d != 1 % ci.d {
        cert["congruence"] = json!(format!("{t} is not 1 mod {}", ci.d));
        return Ok(Verdict::no(cert, &["liedahl-condition", "liedahl-condition:congruence-filter"]));
    }
    Ok(if ci.contains(t) {
        Verdict::yes(cert, &["liedahl-condition"])
    } else {
        Verdict::no(cert, &["liedahl-condition"])
    })
}

/// Presentations of the Sylow p-subgroup, or None when it is not metacyclic.
fn sylow_presentations(g: &FiniteGroup, p: u64) -> Result<Option<Vec<MetacyclicPresentation>>> {
    let s = g.sylow(p)?;
    match metacyclic_presentations(&g.induced(&s)) {
        Ok(ps) => Ok(Some(ps)),
        Err(Error::NotMetacyclic) => Ok(None),
        Err(e) => Err(e),
    }
}

/// G is tamely K-admissible iff every Sylow subgroup is metacyclic with a
/// presentation satisfying Liedahl's condition. Proven for solvable G; for
/// other G the verdict is the criterion's and is labeled criterion-only.
pub fn tame_admissible_solvable(g: &FiniteGroup, k: &NumberField) -> Result<Verdict> {
    let solvable = g.is_solvable();
    let mut passing = serde_json::Map::new();
    let mut undecided = Vec::new();
    let mut out = None;
    for (p, _) in factorize(g.order() as u64) {
        let Some(ps) = sylow_presentations(g, p)? else {
            out = Some(Verdict::no(json!({ "p": p, "sylow": "not metacyclic" }), &["tame-solvable-criterion", "sylow-not-metacyclic"]));
            break;
        };
        let mut found = None;
        let mut tried = Vec::new();
        let pending = undecided.len();
        for pres in &ps {
            let v = liedahl_check(pres, k)?;
            match v.value {
                Value::Yes => {
                    found = Some(v.certificate);
                    break;
                }
                Value::No => tried.push(pres.to_string()),
                Value::Undecided => undecided.push(format!("p = {p}, {pres}: {}", v.reason.unwrap_or_default())),
            }
        }
        match found {
            Some(c) => {
                passing.insert(p.to_string(), c);
            }
            None if undecided.len() == pending => {
                out = Some(Verdict::no(
                    json!({ "p": p, "failing_presentations": tried }),
                    &["tame-solvable-criterion", "liedahl-condition"],
                ));
                break;
            }
            None => {}
        }
    }
    let mut v = match out {
        Some(v) => v,
        None if !undecided.is_empty() => Verdict::undecided(undecided.join("; "), &["tame-solvable-criterion"]),
        None => Verdict::yes(json!({ "presentations": passing }), &["tame-solvable-criterion", "liedahl-condition"]),
    };
    if !solvable {
        v.cites.push("criterion-only".into());
        if let Some(obj) = v.certificate.as_object_mut() {
            obj.insert("solvable".into(), json!(false));
        }
    }
    Ok(v)
}

/// The presentation used for p: among those passing Liedahl's condition the
/// least by (n, m, i, t), so the congruence on supporting primes is as weak
/// as possible; if none passes, the least overall.
pub fn choose_presentation(ps: &[MetacyclicPresentation], k: &NumberField) -> Result<MetacyclicPresentation> {
    let key = |p: &MetacyclicPresentation| (p.n, p.m, p.i, p.t);
    let mut sorted = ps.to_vec();
    sorted.sort_by_key(key);
    for p in &sorted {
        if liedahl_check(p, k)?.is_yes() {
            return Ok(*p);
        }
    }
    sorted.first().copied().ok_or(Error::NotMetacyclic)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportEntry {
    pub p: u64,
    pub presentation: MetacyclicPresentation,
    pub primes: [u64; 2],
}

/// Primes v_1(p), v_2(p) for each p dividing |G|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportingSet {
    pub entries: Vec<SupportEntry>,
}

impl SupportingSet {
    pub fn primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.entries.iter().flat_map(|e| e.primes).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum SieveOutcome {
    Found(SupportingSet),
    /// fewer than two primes ≡ residue (mod modulus) below the bound
    Exhausted { p: u64, residue: u64, modulus: u64, bound: u64, found: Vec<u64> },
}

/// Sieves primes q ≤ bound with q ≡ t_p (mod n_p), q ∤ |G|, q > 2, q not
/// excluded, all distinct; over K ≠ Q the defining polynomial must also split
/// into distinct linear factors mod q.
pub fn tame_supporting_set(g: &FiniteGroup, k: &NumberField, exclusions: &[u64], bound: u64) -> Result<SieveOutcome> {
    let order = g.order() as u64;
    let mut entries = Vec::new();
    let mut used: Vec<u64> = Vec::new();
    for (p, _) in factorize(order) {
        let ps = sylow_presentations(g, p)?.ok_or(Error::NotMetacyclic)?;
        let pres = choose_presentation(&ps, k)?;
        let (n, t) = (pres.n, pres.t_mod_n());
        let mut found = Vec::new();
        for q in primes_from(3).take_while(|&q| q <= bound) {
            if q % n != t % n || order.is_multiple_of(q) || exclusions.contains(&q) || used.contains(&q) {
                continue;
            }
            if !k.is_rational() && !splits_completely(k, q) {
                continue;
            }
            found.push(q);
            if found.len() == 2 {
                break;
            }
        }
        if found.len() < 2 {
            return Ok(SieveOutcome::Exhausted { p, residue: t % n, modulus: n, bound, found });
        }
        used.extend(&found);
        entries.push(SupportEntry { p, presentation: pres, primes: [found[0], found[1]] });
    }
    Ok(SieveOutcome::Found(SupportingSet { entries }))
}
