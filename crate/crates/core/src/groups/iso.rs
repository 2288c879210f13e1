//! Isomorphism testing by invariant prefiltering and generator-image search.

use fixedbitset::FixedBitSet;

use super::FiniteGroup;

/// Cheap isomorphism invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSignature {
    pub order: usize,
    /// (element order, count), ascending
    pub order_profile: Vec<(usize, usize)>,
    pub center: usize,
    pub derived_series: Vec<usize>,
}

impl GroupSignature {
    pub fn of(g: &FiniteGroup) -> Self {
        let mut counts = std::collections::BTreeMap::new();
        for o in g.element_orders() {
            *counts.entry(o).or_insert(0) += 1;
        }
        GroupSignature {
            order: g.order(),
            order_profile: counts.into_iter().collect(),
            center: g.center().order(),
            derived_series: g.derived_series_orders(),
        }
    }
}

/// Extends the partial map defined by gens[..k] ↦ imgs[..k] over the subgroup
/// they generate; `None` on inconsistency or non-injectivity.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = FixedBitSet::with_capacity(h.order());
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0usize];
    while let Some(a) = queue.pop() {
        for (k, &s) in gens.iter().enumerate() {
            let b = g.mul(a, s);
            let img = h.mul(map[a], imgs[k]);
            if map[b] == usize::MAX {
                if used.put(img) {
                    return None;
                }
                map[b] = img;
                queue.push(b);
            } else if map[b] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// An isomorphism G → H as an element map, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() || GroupSignature::of(g) != GroupSignature::of(h) {
        return None;
    }
    let gens = g.generating_set();
    let g_orders = g.element_orders();
    let h_orders = h.element_orders();
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&s| (0..h.order()).filter(|&x| h_orders[x] == g_orders[s]).collect()).collect();
    let mut imgs = Vec::with_capacity(gens.len());
    fn search(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        cands: &[Vec<usize>],
        imgs: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        let k = imgs.len();
        if k == gens.len() {
            let map = extend(g, h, gens, imgs)?;
            return map.iter().all(|&x| x != usize::MAX).then_some(map);
        }
        for &c in &cands[k] {
            imgs.push(c);
            if extend(g, h, &gens[..=k], imgs).is_some() {
                if let Some(m) = search(g, h, gens, cands, imgs) {
                    return Some(m);
                }
            }
            imgs.pop();
        }
        None
    }
    search(g, h, &gens, &candidates, &mut imgs)
}

pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_isomorphism(g, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog::*;

    #[test]
    fn iso_examples() {
        assert!(are_isomorphic(&cyclic(6), &abelian(&[2, 3]).unwrap()));
        assert!(!are_isomorphic(&cyclic(4), &abelian(&[2, 2]).unwrap()));
        assert!(!are_isomorphic(&dihedral(4), &quaternion8()));
        assert!(are_isomorphic(&dihedral(3), &symmetric(3)));
        assert!(!are_isomorphic(&semidihedral16(), &quaternion16()));
        let m = find_isomorphism(&dihedral(3), &symmetric(3)).unwrap();
        let (g, h) = (dihedral(3), symmetric(3));
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(m[g.mul(a, b)], h.mul(m[a], m[b]));
            }
        }
    }
}
