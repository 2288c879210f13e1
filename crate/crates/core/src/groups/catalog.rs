//! Named groups used by tests, the CLI and the golden reproductions.

use super::{FiniteGroup, GroupExtension, MetacyclicPresentation};
use crate::error::Result;

pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_fn(n, |a, b| (a + b) % n)
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(orders: &[usize]) -> Result<FiniteGroup> {
    let mut g = cyclic(1);
    for &m in orders {
        g = g.direct_product(&cyclic(m))?;
    }
    Ok(g)
}

/// Dihedral group of order 2n.
pub fn dihedral(n: usize) -> FiniteGroup {
    // elements r^a s^b numbered b*n + a; s r s = r^-1
    FiniteGroup::from_fn(2 * n, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let c = if b == 1 { (n - c) % n } else { c };
        ((b + d) % 2) * n + (a + c) % n
    })
}

pub fn symmetric(k: usize) -> FiniteGroup {
    let mut gens = Vec::new();
    if k >= 2 {
        let mut t: Vec<usize> = (0..k).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..k).map(|i| (i + 1) % k).collect());
    } else {
        gens.push((0..k).collect());
    }
    FiniteGroup::from_permutations(&gens).expect("symmetric group within the cap")
}

pub fn alternating(k: usize) -> FiniteGroup {
    let gens: Vec<Vec<usize>> = (2..k)
        .map(|j| {
            let mut p: Vec<usize> = (0..k).collect();
            // 3-cycle (0 1 j)
            p[0] = 1;
            p[1] = j;
            p[j] = 0;
            p
        })
        .collect();
    if gens.is_empty() {
        return cyclic(1);
    }
    FiniteGroup::from_permutations(&gens).expect("alternating group within the cap")
}

pub fn metacyclic(m: u64, n: u64, i: u64, t: u64) -> Result<FiniteGroup> {
    MetacyclicPresentation::new(m, n, i, t)?.to_group()
}

/// Q_8 = M(2,4,2,3).
pub fn quaternion8() -> FiniteGroup {
    metacyclic(2, 4, 2, 3).unwrap()
}

/// Generalized quaternion group of order 16, M(2,8,4,7).
pub fn quaternion16() -> FiniteGroup {
    metacyclic(2, 8, 4, 7).unwrap()
}

/// ⟨x, y | x² = y⁸ = 1, x⁻¹yx = y³⟩ of order 16, M(2,8,8,3).
pub fn semidihedral16() -> FiniteGroup {
    metacyclic(2, 8, 8, 3).unwrap()
}

/// C_7 ⋊ C_3, the nonabelian group of order 21.
pub fn frobenius21() -> FiniteGroup {
    metacyclic(3, 7, 7, 2).unwrap()
}

/// Heisenberg group of order p³ (upper unitriangular 3×3 matrices over F_p).
pub fn heisenberg(p: usize) -> FiniteGroup {
    // (a, b, c) numbered a p² + b p + c, product (a+a', b+b', c+c'+a b')
    FiniteGroup::from_fn(p * p * p, |x, y| {
        let (a, b, c) = (x / (p * p), (x / p) % p, x % p);
        let (a2, b2, c2) = (y / (p * p), (y / p) % p, y % p);
        ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
    })
}

/// The class-2 group of order p⁵ on x, y, z, w, u with [x,w] = [y,z] = [y,w] = u
/// central and all other generator commutators trivial (p odd).
pub fn meta_split_example_group(p: usize) -> FiniteGroup {
    let n = p.pow(5);
    // element (v_x, v_y, v_z, v_w, c), digits in base p, c least significant
    let dec = |x: usize| -> [usize; 5] {
        let mut d = [0; 5];
        let mut r = x;
        for k in (0..5).rev() {
            d[k] = r % p;
            r /= p;
        }
        d
    };
    let enc = |d: [usize; 5]| d.iter().fold(0, |acc, &k| acc * p + k);
    FiniteGroup::from_fn(n, |a, b| {
        let (u, v) = (dec(a), dec(b));
        // bilinear cocycle β(u, v) = u_x v_w + u_y v_z + u_y v_w
        let beta = u[0] * v[3] + u[1] * v[2] + u[1] * v[3];
        enc([(u[0] + v[0]) % p, (u[1] + v[1]) % p, (u[2] + v[2]) % p, (u[3] + v[3]) % p, (u[4] + v[4] + beta) % p])
    })
}

/// The extension 1 → ⟨y⁻¹z, u⟩ → G → C_p³ → 1 with π(x) = (1,0,0),
/// π(y) = π(z) = (0,1,0), π(w) = (0,0,1), π(u) = 0.
pub fn meta_split_example(p: usize) -> GroupExtension {
    let g = meta_split_example_group(p);
    let gamma = abelian(&[p, p, p]).unwrap();
    let map: Vec<usize> = (0..g.order())
        .map(|x| {
            let mut d = [0; 5];
            let mut r = x;
            for k in (0..5).rev() {
                d[k] = r % p;
                r /= p;
            }
            let (a, b, c) = (d[0], (d[1] + d[2]) % p, d[3]);
            (a * p + b) * p + c
        })
        .collect();
    GroupExtension::from_map(g, gamma, map).expect("π is a surjective homomorphism")
}

/// Catalog lookup by name, for the CLI.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let lower = name.to_ascii_lowercase();
    let num = |prefix: &str| lower.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    match lower.as_str() {
        "q8" => return Some(quaternion8()),
        "q16" => return Some(quaternion16()),
        "sd16" | "d16*" => return Some(semidihedral16()),
        "s3" => return Some(symmetric(3)),
        "s4" => return Some(symmetric(4)),
        "a4" => return Some(alternating(4)),
        "a5" => return Some(alternating(5)),
        "f21" => return Some(frobenius21()),
        "heis27" => return Some(heisenberg(3)),
        _ => {}
    }
    if let Some(n) = num("c").filter(|&n| (1..=super::ORDER_CAP).contains(&n)) {
        return Some(cyclic(n));
    }
    if let Some(n) = num("d").filter(|&n| (1..=super::ORDER_CAP / 2).contains(&n) && n % 2 == 0) {
        return Some(dihedral(n / 2));
    }
    None
}

/// The groups of odd order below 27, one per isomorphism class.
pub fn odd_order_below_27() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in (1..27).step_by(2) {
        out.push((format!("C{n}"), cyclic(n)));
    }
    out.push(("C3xC3".into(), abelian(&[3, 3]).unwrap()));
    out.push(("C5xC5".into(), abelian(&[5, 5]).unwrap()));
    out.push(("C7:C3".into(), frobenius21()));
    out
}
