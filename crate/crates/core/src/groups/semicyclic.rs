//! Membership in the semicyclic classes via the characterization
//! G ∈ class ⇔ G trivial, or G = CH with C ⊴ G cyclic (restricted per class)
//! and H < G proper in the class. For SD the product must be semidirect.

use serde::{Deserialize, Serialize};

use super::iso::GroupSignature;
use super::{are_isomorphic, FiniteGroup};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemicyclicClass {
    /// semicyclic groups
    Sc,
    /// semicyclic p-groups
    ScP(u64),
    /// semicyclic groups of odd order
    ScO,
    /// odd-order groups in the semidirect-only class SD
    SdOdd,
}

impl SemicyclicClass {
    pub fn name(&self) -> String {
        match self {
            SemicyclicClass::Sc => "SC".into(),
            SemicyclicClass::ScP(p) => format!("SC_{p}"),
            SemicyclicClass::ScO => "SC_o".into(),
            SemicyclicClass::SdOdd => "SD_odd".into(),
        }
    }
}

struct Memo {
    entries: Vec<(GroupSignature, FiniteGroup, bool)>,
}

impl Memo {
    fn lookup(&self, sig: &GroupSignature, g: &FiniteGroup) -> Option<bool> {
        self.entries.iter().find(|(s, h, _)| s == sig && are_isomorphic(g, h)).map(|e| e.2)
    }
}

fn decide(g: &FiniteGroup, semidirect: bool, memo: &mut Memo) -> bool {
    if g.order() == 1 || g.is_cyclic() || g.is_abelian() {
        return true;
    }
    let sig = GroupSignature::of(g);
    if let Some(b) = memo.lookup(&sig, g) {
        return b;
    }
    let subgroups = g.all_subgroups();
    let normal_cyclic: Vec<_> = g.cyclic_subgroups().into_iter().filter(|c| c.order() > 1 && g.is_normal(c)).collect();
    let mut result = false;
    'outer: for c in &normal_cyclic {
        for h in &subgroups {
            if h.order() == g.order() {
                continue;
            }
            let meet = c.intersection(h).order();
            if c.order() * h.order() / meet != g.order() || (semidirect && meet != 1) {
                continue;
            }
            if decide(&g.induced(h), semidirect, memo) {
                result = true;
                break 'outer;
            }
        }
    }
    memo.entries.push((sig, g.clone(), result));
    result
}

/// Decides G ∈ `class`, rejecting inputs outside the class's domain
/// (non-p-groups for SC_p, even order for SC_o and SD_odd).
pub fn is_semicyclic(g: &FiniteGroup, class: SemicyclicClass) -> Result<bool> {
    match class {
        SemicyclicClass::ScP(p) if !g.is_p_group(p) => {
            return Err(Error::invalid(format!("SC_{p} membership needs a {p}-group")));
        }
        SemicyclicClass::ScO | SemicyclicClass::SdOdd if g.order().is_multiple_of(2) => {
            return Err(Error::invalid(format!("{} membership needs odd order", class.name())));
        }
        _ => {}
    }
    // for p-groups and odd-order groups the order restrictions on C and H
    // hold automatically, so SC_p and SC_o reduce to the SC recursion
    let mut memo = Memo { entries: Vec::new() };
    Ok(decide(g, class == SemicyclicClass::SdOdd, &mut memo))
}
