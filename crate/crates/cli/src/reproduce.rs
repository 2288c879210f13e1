//! Golden suite of worked results, one line per item.

use abl_core::admissibility::{abelian_admissible, abelian_preadmissible};
use abl_core::groups::{abelian_invariants, catalog, is_metacyclic, is_semicyclic, meta_splits, metacyclic_presentations, splits, SemicyclicClass};
use abl_core::numfield::wang::{wang_cyclic_criterion, CyclicCriterion, LocalCyclicExt};
use abl_core::NumberField;
use serde_json::json;

use crate::{Fail, Report};

pub const ITEMS: [&str; 5] = ["counterexample", "presentations", "heisenberg", "meta-split", "wang-q"];

struct Item {
    name: &'static str,
    cite: &'static str,
    expected: String,
    got: String,
}

impl Item {
    fn pass(&self) -> bool {
        self.expected == self.got
    }
}

fn counterexample(fault: bool) -> Result<Item, Fail> {
    let k = NumberField::from_ints(&[8, 1, 0, 1])?;
    if fault {
        let mut places = k.decompose_prime(2)?.as_ref().clone();
        for v in places.iter_mut() {
            v.q_v = 1;
        }
        k.inject_places(2, places);
    }
    let a = abelian_invariants(&[2, 8, 8])?;
    let pre = abelian_preadmissible(&a, &k)?;
    let adm = abelian_admissible(&a, &k)?;
    let norm = &adm.certificate["components"]["2"]["certificate"]["special_case"]["4"]["norm"];
    Ok(Item {
        name: "counterexample",
        cite: "special-case:conditions-1-4, wang-norm-obstruction",
        expected: "preadmissible yes, admissible no, special case, not-norm".into(),
        got: format!(
            "preadmissible {}, admissible {}, {}, {}",
            pre.value,
            adm.value,
            if adm.cites("special-case:conditions-1-4") { "special case" } else { "no special case" },
            norm.as_str().unwrap_or("no norm certificate")
        ),
    })
}

fn presentations() -> Result<Item, Fail> {
    let rows = [
        ("C2xC2", catalog::abelian(&[2, 2])?, "(2,2,1)"),
        ("C4xC4", catalog::abelian(&[4, 4])?, "(4,4,1)"),
        ("C8xC8", catalog::abelian(&[8, 8])?, "(8,8,1)"),
        ("Q8", catalog::quaternion8(), "(2,4,3)"),
        ("D16*", catalog::semidihedral16(), "(2,8,3)"),
        ("Q16", catalog::quaternion16(), "(2,8,7)"),
    ];
    let mut expected = Vec::new();
    let mut got = Vec::new();
    for (name, g, want) in rows {
        let mut mnt: Vec<String> = metacyclic_presentations(&g)?.iter().map(|p| format!("({},{},{})", p.m, p.n, p.t_mod_n())).collect();
        mnt.sort();
        mnt.dedup();
        expected.push(format!("{name} {want}"));
        got.push(format!("{name} {}", mnt.join(" ")));
    }
    Ok(Item { name: "presentations", cite: "metacyclic-unique-presentation", expected: expected.join(", "), got: got.join(", ") })
}

fn heisenberg() -> Result<Item, Fail> {
    let h = catalog::heisenberg(3);
    let meta = is_metacyclic(&h).is_some();
    let sc = is_semicyclic(&h, SemicyclicClass::ScP(3))?;
    Ok(Item {
        name: "heisenberg",
        cite: "heisenberg-not-semicyclic",
        expected: "metacyclic false, SC_3 false".into(),
        got: format!("metacyclic {meta}, SC_3 {sc}"),
    })
}

fn meta_split() -> Item {
    let ext = catalog::meta_split_example(3);
    Item {
        name: "meta-split",
        cite: "meta-split-example:order-3^5",
        expected: "splits false, meta-splits true".into(),
        got: format!("splits {}, meta-splits {}", splits(&ext), meta_splits(&ext)),
    }
}

fn wang_q() -> Result<Item, Fail> {
    let q = NumberField::rationals();
    let two = q.decompose_prime(2)?;
    let out = wang_cyclic_criterion(&q, 3, &[(two[0].clone(), LocalCyclicExt::unramified(8))])?;
    Ok(Item {
        name: "wang-q",
        cite: "wang-norm-obstruction",
        expected: "special case".into(),
        got: if out == CyclicCriterion::SpecialCase { "special case".into() } else { format!("{out:?}") },
    })
}

pub fn run(only: Option<&str>, fault: bool) -> Result<Report, Fail> {
    let mut items = Vec::new();
    for name in ITEMS {
        if only.is_some_and(|o| o != name) {
            continue;
        }
        items.push(match name {
            "counterexample" => counterexample(fault)?,
            "presentations" => presentations()?,
            "heisenberg" => heisenberg()?,
            "meta-split" => meta_split(),
            _ => wang_q()?,
        });
    }
    let mut lines = Vec::new();
    for it in &items {
        lines.push(format!("{} {:<15} [{}]", if it.pass() { "PASS" } else { "FAIL" }, it.name, it.cite));
        if !it.pass() {
            lines.push(format!("  - expected: {}", it.expected));
            lines.push(format!("  + got:      {}", it.got));
        }
    }
    let all = items.iter().all(Item::pass);
    let json = json!({
        "pass": all,
        "items": items.iter().map(|it| json!({
            "item": it.name, "cite": it.cite, "pass": it.pass(), "expected": it.expected, "got": it.got,
        })).collect::<Vec<_>>(),
    });
    Ok(Report { json, text: lines.join("\n"), code: if all { 0 } else { 1 } })
}
