//! Group extensions 1 → H → G → Γ → 1 and complement search.

use super::{is_metacyclic, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GroupExtension {
    pub g: FiniteGroup,
    /// the kernel H, normal in G
    pub h: Subgroup,
    pub quotient_map: Vec<usize>,
    pub gamma: FiniteGroup,
}

impl GroupExtension {
    /// The extension G → G/N.
    pub fn from_quotient(g: FiniteGroup, normal: Subgroup) -> Result<Self> {
        if !g.is_normal(&normal) {
            return Err(Error::invalid("kernel is not normal"));
        }
        let (gamma, quotient_map) = g.quotient(&normal);
        Ok(GroupExtension { g, h: normal, quotient_map, gamma })
    }

    /// The extension defined by a surjective homomorphism G → Γ.
    pub fn from_map(g: FiniteGroup, gamma: FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != g.order() || map.iter().any(|&x| x >= gamma.order()) {
            return Err(Error::invalid("quotient map has the wrong shape"));
        }
        let gens = g.generating_set();
        for a in 0..g.order() {
            for &s in &gens {
                if map[g.mul(a, s)] != gamma.mul(map[a], map[s]) {
                    return Err(Error::invalid("quotient map is not a homomorphism"));
                }
            }
        }
        let mut hit = vec![false; gamma.order()];
        for &x in &map {
            hit[x] = true;
        }
        if hit.iter().any(|&b| !b) {
            return Err(Error::invalid("quotient map is not surjective"));
        }
        let mut mask = fixedbitset::FixedBitSet::with_capacity(g.order());
        for (a, &x) in map.iter().enumerate() {
            if x == 0 {
                mask.insert(a);
            }
        }
        Ok(GroupExtension { g, h: Subgroup::from_mask(mask), quotient_map: map, gamma })
    }

    /// π⁻¹(D) for D ≤ Γ.
    pub fn preimage(&self, d: &Subgroup) -> Subgroup {
        let mut mask = fixedbitset::FixedBitSet::with_capacity(self.g.order());
        for (a, &x) in self.quotient_map.iter().enumerate() {
            if d.contains(x) {
                mask.insert(a);
            }
        }
        Subgroup::from_mask(mask)
    }
}

/// A subgroup X ≤ π⁻¹(D) mapping bijectively onto D, found by searching lifts
/// of a generating set of D.
pub fn find_complement(ext: &GroupExtension, d: &Subgroup) -> Option<Subgroup> {
    let gamma = &ext.gamma;
    let dgens = gamma.small_generators(d);
    let fibers: Vec<Vec<usize>> = dgens
        .iter()
        .map(|&x| (0..ext.g.order()).filter(|&a| ext.quotient_map[a] == x).collect())
        .collect();
    let targets: Vec<usize> = (1..=dgens.len()).map(|k| gamma.generate(&dgens[..k]).order()).collect();
    fn search(ext: &GroupExtension, fibers: &[Vec<usize>], targets: &[usize], lifts: &mut Vec<usize>) -> Option<Subgroup> {
        let k = lifts.len();
        if k == fibers.len() {
            return Some(ext.g.generate(lifts));
        }
        for &a in &fibers[k] {
            lifts.push(a);
            if let Some(s) = ext.g.generate_bounded(lifts, targets[k]) {
                if s.order() == targets[k] {
                    if let Some(x) = search(ext, fibers, targets, lifts) {
                        return Some(x);
                    }
                }
            }
            lifts.pop();
        }
        None
    }
    search(ext, &fibers, &targets, &mut Vec::new())
}

/// Does the extension split (H has a complement in G)?
pub fn splits(ext: &GroupExtension) -> bool {
    find_complement(ext, &ext.gamma.whole()).is_some()
}

/// Does π⁻¹(D) → D split for every metacyclic D ≤ Γ? Complements restrict to
/// subgroups, so only maximal metacyclic subgroups are searched.
pub fn meta_splits(ext: &GroupExtension) -> bool {
    let mut metas: Vec<Subgroup> = ext
        .gamma
        .all_subgroups()
        .into_iter()
        .filter(|d| is_metacyclic(&ext.gamma.induced(d)).is_some())
        .collect();
    metas.sort_by(|a, b| b.order().cmp(&a.order()).then(a.elements().cmp(b.elements())));
    let mut done: Vec<Subgroup> = Vec::new();
    for d in metas {
        if done.iter().any(|s| d.is_subset(s)) {
            continue;
        }
        if find_complement(ext, &d).is_none() {
            return false;
        }
        done.push(d);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    #[test]
    fn c4_over_c2_does_not_split() {
        let g = catalog::cyclic(4);
        let h = g.generate(&[2]);
        let ext = GroupExtension::from_quotient(g, h).unwrap();
        assert!(!splits(&ext));
        assert!(!meta_splits(&ext));
    }

    #[test]
    fn split_extensions() {
        let s3 = catalog::symmetric(3);
        let a3 = s3.sylow(3).unwrap();
        let ext = GroupExtension::from_quotient(s3, a3).unwrap();
        assert!(splits(&ext) && meta_splits(&ext));
        let x = find_complement(&ext, &ext.gamma.whole()).unwrap();
        assert_eq!(x.order(), 2);
        let v = catalog::abelian(&[2, 2]).unwrap();
        let h = v.generate(&[1]);
        assert!(splits(&GroupExtension::from_quotient(v, h).unwrap()));
    }

    #[test]
    fn order_243_example() {
        let ext = catalog::meta_split_example(3);
        assert_eq!(ext.h.order(), 9);
        assert!(!splits(&ext));
        // Lifts of π(x) and π(y)π(w)⁻¹ never commute: [x, y w⁻¹ k] = u⁻¹ for
        // every k in the kernel, so this metacyclic D ≅ C_3² has no complement
        // and the extension does not meta-split either.
        let gamma = &ext.gamma;
        let d = gamma.generate(&[9, gamma.mul(3, gamma.inv(1))]);
        assert_eq!(d.order(), 9);
        assert!(find_complement(&ext, &d).is_none());
        assert!(!meta_splits(&ext));
        // the other maximal metacyclic subgroups all have complements
        let failing: Vec<_> = gamma
            .all_subgroups()
            .into_iter()
            .filter(|s| s.order() == 9 && find_complement(&ext, s).is_none())
            .collect();
        assert_eq!(failing, vec![d]);
    }

    fn comm(a: i64, b: i64) -> Vec<i64> {
        vec![-a, -b, a, b]
    }

    #[test]
    fn order_243_model_matches_presentation() {
        // x, y, z, w, u = 1..5
        let mut rels: Vec<Vec<i64>> = (1..=5).map(|g| vec![g, g, g]).collect();
        for (a, b) in [(1, 5), (2, 5), (3, 5), (4, 5), (1, 2), (3, 4), (1, 3)] {
            rels.push(comm(a, b));
        }
        for (a, b) in [(1, 4), (2, 3), (2, 4)] {
            rels.push([comm(a, b), vec![-5]].concat());
        }
        let (g, gens) = crate::groups::enumerate_with_generators(5, &rels, 100_000).unwrap();
        assert_eq!(g.order(), 243);
        let gamma = catalog::abelian(&[3, 3, 3]).unwrap();
        let images = [9usize, 3, 3, 1, 0];
        let mut map = vec![usize::MAX; g.order()];
        map[0] = 0;
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for (j, &s) in gens.iter().enumerate() {
                let b = g.mul(a, s);
                if map[b] == usize::MAX {
                    map[b] = gamma.mul(map[a], images[j]);
                    stack.push(b);
                }
            }
        }
        let model = catalog::meta_split_example_group(3);
        assert!(crate::groups::are_isomorphic(&g, &model));
        let ext = GroupExtension::from_map(g, gamma, map).unwrap();
        assert_eq!(ext.h.order(), 9);
        assert!(!splits(&ext));
        assert!(!meta_splits(&ext));
    }
}
