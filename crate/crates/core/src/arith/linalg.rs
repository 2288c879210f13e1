//! Dense linear algebra over Z, Q, F_p and Z/p^M.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int::{inv_mod, mul_mod};

pub type Mat<T> = Vec<Vec<T>>;

/// Hermite normal form of the lattice spanned by the rows of `gens`
/// (upper triangular, positive pivots, entries above pivots reduced).
/// Returns only the nonzero rows.
pub fn hnf(gens: &Mat<BigInt>, ncols: usize) -> Mat<BigInt> {
    let mut rows: Mat<BigInt> = gens.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let mut out: Mat<BigInt> = Vec::new();
    for col in 0..ncols {
        // gcd-combine every row with a nonzero entry in `col` into one pivot
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::new();
        for r in rows.into_iter() {
            if r[col].is_zero() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(pv) => {
                    let (a, b) = (&pv[col], &r[col]);
                    let eg = a.extended_gcd(b);
                    let g = eg.gcd;
                    let (ua, ub) = (a / &g, b / &g);
                    let new_pivot: Vec<BigInt> =
                        (0..ncols).map(|k| &eg.x * &pv[k] + &eg.y * &r[k]).collect();
                    let other: Vec<BigInt> = (0..ncols).map(|k| &ub * &pv[k] - &ua * &r[k]).collect();
                    pivot = Some(new_pivot);
                    if other.iter().any(|c| !c.is_zero()) {
                        rest.push(other);
                    }
                }
            }
        }
        rows = rest;
        if let Some(mut pv) = pivot {
            if pv[col].is_negative() {
                for c in pv.iter_mut() {
                    *c = -c.clone();
                }
            }
            out.push(pv);
        }
    }
    // reduce entries above pivots
    for i in 0..out.len() {
        let pc = out[i].iter().position(|c| !c.is_zero()).unwrap();
        for j in 0..i {
            let q = out[j][pc].div_floor(&out[i][pc]);
            if !q.is_zero() {
                for k in 0..ncols {
                    let v = &out[i][k] * &q;
                    out[j][k] -= v;
                }
            }
        }
    }
    out
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn inverse_q(m: &Mat<BigRational>) -> Option<Mat<BigRational>> {
    let n = m.len();
    let mut a: Mat<BigRational> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for k in 0..2 * n {
            a[col][k] = &a[col][k] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let v = &f * &a[col][k];
                    a[r][k] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Reduced row echelon form over F_p in place; returns pivot columns.
pub fn rref_fp(a: &mut Mat<u64>, p: u64) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p).unwrap();
        for k in 0..cols {
            a[r][k] = mul_mod(a[r][k], inv, p);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..cols {
                    a[i][k] = (a[i][k] + p - mul_mod(f, a[r][k], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace {x : A x = 0} over F_p.
pub fn kernel_fp(a: &Mat<u64>, ncols: usize, p: u64) -> Mat<u64> {
    let mut m = a.clone();
    let pivots = rref_fp(&mut m, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][fc]) % p;
            }
            v
        })
        .collect()
}

/// Row space basis over F_p (rows of the echelon form).
pub fn row_basis_fp(a: &Mat<u64>, p: u64) -> Mat<u64> {
    let mut m = a.clone();
    let k = rref_fp(&mut m, p).len();
    m.truncate(k);
    m
}

pub fn rank_fp(a: &Mat<u64>, p: u64) -> usize {
    let mut m = a.clone();
    rref_fp(&mut m, p).len()
}

/// Solves x B = v over F_p for x, where rows of B are independent.
pub fn solve_rows_fp(b: &Mat<u64>, v: &[u64], p: u64) -> Option<Vec<u64>> {
    // columns of B^T are the rows of B
    let k = b.len();
    let n = v.len();
    let mut aug: Mat<u64> = (0..n)
        .map(|j| {
            let mut row: Vec<u64> = (0..k).map(|i| b[i][j]).collect();
            row.push(v[j]);
            row
        })
        .collect();
    let pivots = rref_fp(&mut aug, p);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![0u64; k];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][k];
    }
    Some(x)
}

/// p-adic valuation of det(A) for a square integer matrix read modulo p^m.
/// Returns `None` when the valuation is at least `m` (not determined).
pub fn det_valuation_mod(a: &Mat<BigInt>, p: u64, m: u32) -> Option<u32> {
    let n = a.len();
    let pb = BigInt::from(p);
    let modulus = num_traits::pow(pb.clone(), m as usize);
    let mut a: Mat<BigInt> = a.iter().map(|r| r.iter().map(|c| c.mod_floor(&modulus)).collect()).collect();
    let val = |x: &BigInt| -> u32 {
        if x.is_zero() {
            return m;
        }
        let mut k = 0;
        let mut y = x.clone();
        while k < m && (&y % &pb).is_zero() {
            y /= &pb;
            k += 1;
        }
        k
    };
    let mut total = 0u32;
    for col in 0..n {
        let mut best: Option<(usize, usize, u32)> = None;
        for r in col..n {
            for c in col..n {
                let v = val(&a[r][c]);
                if v < m && best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((r, c, v));
                }
            }
        }
        let (r, c, v) = best?;
        a.swap(col, r);
        for row in a.iter_mut() {
            row.swap(col, c);
        }
        total += v;
        if total >= m {
            return None;
        }
        let pv = num_traits::pow(pb.clone(), v as usize);
        let unit = (&a[col][col] / &pv).mod_floor(&modulus);
        let unit_inv = unit.modinv(&modulus).unwrap();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = (&a[r][col] / &pv * &unit_inv).mod_floor(&modulus);
            for k in col..n {
                let sub = &f * &a[col][k];
                a[r][k] = (&a[r][k] - sub).mod_floor(&modulus);
            }
        }
    }
    Some(total)
}

/// Characteristic polynomial det(X I - A) over Z/m by Berkowitz's
/// division-free algorithm. Coefficients lowest degree first.
pub fn charpoly_mod(a: &Mat<BigInt>, modulus: &BigInt) -> Vec<BigInt> {
    let n = a.len();
    let red = |x: BigInt| x.mod_floor(modulus);
    // vect holds the coefficients of the char poly of the leading r x r block,
    // highest degree first, with the Berkowitz sign convention.
    let mut vect: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // Toeplitz column for step r: [1, -a_rr, -R C, -R A C, ...]
        let rr = a[r][r].clone();
        let row: Vec<BigInt> = (0..r).map(|j| a[r][j].clone()).collect();
        let col: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        let mut t = vec![BigInt::one(), red(-rr)];
        let mut c = col.clone();
        for _ in 0..r {
            let s: BigInt = row.iter().zip(&c).map(|(x, y)| x * y).sum();
            t.push(red(-s));
            let next: Vec<BigInt> = (0..r)
                .map(|i| (0..r).map(|j| &a[i][j] * &c[j]).sum::<BigInt>())
                .map(red)
                .collect();
            c = next;
        }
        // new vect = T * vect, T lower-triangular Toeplitz of size (r+2)x(r+1)
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (j, v) in vect.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    acc += &t[i - j] * v;
                }
            }
            *slot = red(acc);
        }
        vect = nv;
    }
    vect.reverse();
    vect
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_small() {
        let h = hnf(&vec![bi(&[2, 0]), bi(&[0, 2]), bi(&[1, 1])], 2);
        assert_eq!(h, vec![bi(&[1, 1]), bi(&[0, 2])]);
    }

    #[test]
    fn kernel_over_f3() {
        let a = vec![vec![1, 1, 1], vec![0, 1, 2]];
        let k = kernel_fp(&a, 3, 3);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        for row in &a {
            let s: u64 = row.iter().zip(v).map(|(x, y)| x * y).sum();
            assert_eq!(s % 3, 0);
        }
    }

    #[test]
    fn berkowitz_matches_direct() {
        // [[1,2],[3,4]]: x^2 - 5x - 2
        let a = vec![bi(&[1, 2]), bi(&[3, 4])];
        let m = BigInt::from(1_000_003);
        let cp = charpoly_mod(&a, &m);
        assert_eq!(cp, bi(&[1_000_001, 1_000_003 - 5, 1]));
        let b = vec![bi(&[2, 0, 0]), bi(&[1, 3, 0]), bi(&[4, 5, 6])];
        let cp = charpoly_mod(&b, &BigInt::from(1_000_000_007));
        // (x-2)(x-3)(x-6) = x^3 - 11x^2 + 36x - 36
        let m = 1_000_000_007i64;
        assert_eq!(cp, bi(&[m - 36, 36, m - 11, 1]));
    }

    #[test]
    fn det_valuation() {
        let a = vec![bi(&[4, 2]), bi(&[2, 6])]; // det 20
        assert_eq!(det_valuation_mod(&a, 2, 10), Some(2));
        assert_eq!(det_valuation_mod(&a, 5, 10), Some(1));
        assert_eq!(det_valuation_mod(&a, 2, 2), None);
    }
}
