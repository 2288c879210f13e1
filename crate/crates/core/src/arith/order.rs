//! p-maximal orders and the completions of a number field at a prime.
//!
//! Starting from Z[θ] the Round 2 step (ring of multipliers of the
//! p-radical) is repeated until the order is maximal at p. The algebra
//! O/pO then splits as a product of local algebras, one per place above p;
//! its primitive idempotents are lifted to O/p^M and carve out the
//! completions K_v. Every completion knows its ramification index and
//! residue degree, a uniformizer, residue representatives and the local
//! factor of the defining polynomial.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::int::{big_pow, inv_mod, mul_mod};
use super::linalg::{charpoly_mod, det_valuation_mod, hnf, inverse_q, kernel_fp, rank_fp, row_basis_fp, solve_rows_fp, Mat};
use super::modp::FpPoly;

/// An order of K = Q[x]/(f) that is maximal at the prime p.
#[derive(Debug)]
pub struct PMaximalOrder {
    p: u64,
    n: usize,
    /// basis rows in power-basis coordinates, each divided by `denom`
    basis: Mat<BigInt>,
    denom: BigInt,
    /// table[i][j] = coordinates of b_i * b_j
    table: Vec<Vec<Vec<BigInt>>>,
    table_p: Vec<Vec<Vec<u64>>>,
    one: Vec<BigInt>,
    theta: Vec<BigInt>,
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn to_fp(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    v.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn lift(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn transpose<T: Clone>(a: &Mat<T>, ncols: usize) -> Mat<T> {
    (0..ncols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Left kernel {x : x A = 0} over F_p for an n-row matrix.
fn left_kernel_fp(a: &Mat<u64>, n: usize, p: u64) -> Mat<u64> {
    let ncols = if a.is_empty() { 0 } else { a[0].len() };
    if ncols == 0 {
        return (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    }
    kernel_fp(&transpose(a, ncols), n, p)
}

/// Multiplies two polynomials in power-basis coordinates modulo the monic `f`.
fn polymul_mod(a: &[BigRational], b: &[BigRational], f: &[BigInt]) -> Vec<BigRational> {
    let n = f.len() - 1;
    let mut out = vec![BigRational::zero(); 2 * n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for k in (n..2 * n).rev() {
        let c = std::mem::replace(&mut out[k], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for (j, fj) in f.iter().enumerate().take(n) {
            out[k - n + j] -= &c * rat(fj);
        }
    }
    out.truncate(n);
    out
}

impl PMaximalOrder {
    /// Runs Round 2 at `p` for the monic integer polynomial `f` (lowest degree first).
    pub fn new(f: &[BigInt], p: u64) -> Self {
        let n = f.len() - 1;
        let identity: Mat<BigInt> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut ord = Self::from_basis(f, p, identity, BigInt::one());
        loop {
            match ord.enlarge(f) {
                Some(next) => ord = next,
                None => return ord,
            }
        }
    }

    fn from_basis(f: &[BigInt], p: u64, basis: Mat<BigInt>, denom: BigInt) -> Self {
        let n = f.len() - 1;
        let bq: Mat<BigRational> = basis.iter().map(|r| r.iter().map(rat).collect()).collect();
        let binv = inverse_q(&bq).expect("order basis must be nonsingular");
        let d = rat(&denom);
        let to_coords = |c: &[BigRational]| -> Vec<BigInt> {
            (0..n)
                .map(|k| {
                    let s: BigRational = (0..n).map(|j| &c[j] * &binv[j][k]).sum::<BigRational>() * &d;
                    assert!(s.is_integer(), "order not closed under multiplication");
                    s.to_integer()
                })
                .collect()
        };
        let elems: Vec<Vec<BigRational>> = basis.iter().map(|r| r.iter().map(|c| rat(c) / &d).collect()).collect();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let c = to_coords(&polymul_mod(&elems[i], &elems[j], f));
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        let table_p = table.iter().map(|r| r.iter().map(|c| to_fp(c, p)).collect()).collect();
        let mut e0 = vec![BigRational::zero(); n];
        e0[0] = BigRational::one();
        let one = to_coords(&e0);
        let mut e1 = vec![BigRational::zero(); n];
        if n > 1 {
            e1[1] = BigRational::one();
        } else {
            e1[0] = -rat(&f[0]);
        }
        let theta = to_coords(&e1);
        PMaximalOrder { p, n, basis, denom, table, table_p, one, theta }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Basis of the order in power-basis coordinates together with the common denominator.
    pub fn basis(&self) -> (&Mat<BigInt>, &BigInt) {
        (&self.basis, &self.denom)
    }

    pub fn one(&self) -> &[BigInt] {
        &self.one
    }

    pub fn theta(&self) -> &[BigInt] {
        &self.theta
    }

    pub fn mul_mod(&self, a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &ab * t;
                    }
                }
            }
        }
        out.iter().map(|c| c.mod_floor(m)).collect()
    }

    fn mul_fp(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (n, p) = (self.n, self.p);
        let mut out = vec![0u64; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let ab = mul_mod(a[i], b[j], p);
                for (k, &t) in self.table_p[i][j].iter().enumerate() {
                    if t != 0 {
                        out[k] = (out[k] + mul_mod(ab, t, p)) % p;
                    }
                }
            }
        }
        out
    }

    fn pow_fp(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = to_fp(&self.one, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_fp(&acc, &base);
            }
            base = self.mul_fp(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn unit_vec(&self, i: usize) -> Vec<u64> {
        (0..self.n).map(|j| u64::from(i == j)).collect()
    }

    /// Smallest power p^j with p^j >= n, as an exponent for Frobenius.
    fn frob_exp(&self) -> u128 {
        let mut q = self.p as u128;
        while q < self.n as u128 {
            q *= self.p as u128;
        }
        q
    }

    /// Rows: b_i^(p^j) mod p. Its left kernel is the p-radical of O/pO and
    /// its row space is a copy of the semisimple quotient.
    fn frob_power_matrix(&self) -> Mat<u64> {
        let e = self.frob_exp();
        (0..self.n).map(|i| self.pow_fp(&self.unit_vec(i), e)).collect()
    }

    /// Z-basis (HNF, O-coordinates) of the p-radical I_p.
    fn radical_basis(&self) -> Mat<BigInt> {
        let n = self.n;
        let rad = left_kernel_fp(&self.frob_power_matrix(), n, self.p);
        let mut gens: Mat<BigInt> = rad.iter().map(|v| lift(v)).collect();
        for i in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::from(self.p);
            gens.push(r);
        }
        hnf(&gens, n)
    }

    /// One Round 2 step; `None` when the order is already p-maximal.
    fn enlarge(&self, f: &[BigInt]) -> Option<Self> {
        let (n, p) = (self.n, self.p);
        let ip = self.radical_basis();
        let ipq: Mat<BigRational> = ip.iter().map(|r| r.iter().map(rat).collect()).collect();
        let ipinv = inverse_q(&ipq).unwrap();
        let mut rows: Mat<u64> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n * n);
            let mut bi = vec![BigInt::zero(); n];
            bi[i] = BigInt::one();
            for g in &ip {
                let prod = self.mul_exact(&bi, g);
                for k in 0..n {
                    let s: BigRational = (0..n).map(|j| rat(&prod[j]) * &ipinv[j][k]).sum();
                    debug_assert!(s.is_integer());
                    row.push(s.to_integer().mod_floor(&BigInt::from(p)).to_u64().unwrap());
                }
            }
            rows.push(row);
        }
        let ker = left_kernel_fp(&rows, n, p);
        if ker.is_empty() {
            return None;
        }
        let mut gens: Mat<BigInt> = ker.iter().map(|v| lift(v)).collect();
        for i in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::from(p);
            gens.push(r);
        }
        let u = hnf(&gens, n);
        // new basis in power coordinates: (u * basis) / (denom * p)
        let mut nb: Mat<BigInt> = u
            .iter()
            .map(|r| (0..n).map(|k| (0..n).map(|j| &r[j] * &self.basis[j][k]).sum()).collect())
            .collect();
        let mut denom = &self.denom * BigInt::from(p);
        let g = nb.iter().flatten().fold(denom.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            nb = nb.iter().map(|r| r.iter().map(|c| c / &g).collect()).collect();
            denom /= &g;
        }
        let nb = hnf(&nb, n);
        Some(Self::from_basis(f, p, nb, denom))
    }

    fn mul_exact(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            for j in 0..n {
                if a[i].is_zero() || b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for k in 0..n {
                    out[k] += &ab * &self.table[i][j][k];
                }
            }
        }
        out
    }

    /// Matrix (rows = images of basis elements) of multiplication by `a` mod m.
    pub fn mult_matrix(&self, a: &[BigInt], m: &BigInt) -> Mat<BigInt> {
        (0..self.n)
            .map(|i| {
                let mut bi = vec![BigInt::zero(); self.n];
                bi[i] = BigInt::one();
                self.mul_mod(&bi, a, m)
            })
            .collect()
    }

    /// The places above p: primitive idempotents of O/pO with their invariants,
    /// in a deterministic order.
    pub fn residue_places(&self) -> Vec<ResiduePlace> {
        let (n, p) = (self.n, self.p);
        let fj = self.frob_power_matrix();
        let s_basis = row_basis_fp(&fj, p);
        // Berlekamp subalgebra of the semisimple part: s^p = s
        let diffs: Mat<u64> = s_basis
            .iter()
            .map(|s| {
                let sp = self.pow_fp(s, p as u128);
                (0..n).map(|k| (sp[k] + p - s[k]) % p).collect()
            })
            .collect();
        let coeffs = left_kernel_fp(&diffs, s_basis.len(), p);
        let berl: Mat<u64> = coeffs
            .iter()
            .map(|c| {
                (0..n)
                    .map(|k| c.iter().zip(&s_basis).fold(0u64, |acc, (ci, s)| (acc + mul_mod(*ci, s[k], p)) % p))
                    .collect()
            })
            .collect();
        let one = to_fp(&self.one, p);
        let mut queue = vec![one];
        let mut idems = Vec::new();
        while let Some(eps) = queue.pop() {
            let eb: Mat<u64> = berl.iter().map(|b| self.mul_fp(&eps, b)).collect();
            let eb = row_basis_fp(&eb, p);
            if eb.len() <= 1 {
                idems.push(eps);
                continue;
            }
            let b = eb
                .iter()
                .find(|b| rank_fp(&vec![eps.clone(), (*b).clone()], p) == 2)
                .unwrap()
                .clone();
            // minimal polynomial of b inside eps * A
            let mut powers = vec![eps.clone()];
            let minpoly = loop {
                let next = self.mul_fp(powers.last().unwrap(), &b);
                if let Some(c) = solve_rows_fp(&powers, &next, p) {
                    let mut mp: Vec<u64> = c.iter().map(|&x| (p - x) % p).collect();
                    mp.push(1);
                    break FpPoly::new(p, mp);
                }
                powers.push(next);
            };
            let roots = minpoly.roots();
            debug_assert_eq!(roots.len(), minpoly.deg());
            for &c in &roots {
                let mut e = eps.clone();
                for &c2 in &roots {
                    if c2 == c {
                        continue;
                    }
                    let lin: Vec<u64> = (0..n).map(|k| (b[k] + p - mul_mod(c2, eps[k], p)) % p).collect();
                    let inv = inv_mod((c + p - c2) % p, p).unwrap();
                    e = self.mul_fp(&e, &lin).iter().map(|&x| mul_mod(x, inv, p)).collect();
                }
                queue.push(e);
            }
        }
        let mut places: Vec<ResiduePlace> = idems
            .into_iter()
            .map(|eps| {
                let es: Mat<u64> = s_basis.iter().map(|s| self.mul_fp(&eps, s)).collect();
                let residue_basis = row_basis_fp(&es, p);
                let ea: Mat<u64> = (0..n).map(|i| self.mul_fp(&eps, &self.unit_vec(i))).collect();
                let d = rank_fp(&ea, p);
                let f = residue_basis.len();
                ResiduePlace { eps, e: (d / f) as u32, f: f as u32, residue_basis }
            })
            .collect();
        places.sort_by(|a, b| (a.f, a.e, &a.eps).cmp(&(b.f, b.e, &b.eps)));
        places
    }
}

/// A place above p seen modulo p: its idempotent in O/pO and invariants.
#[derive(Clone, Debug)]
pub struct ResiduePlace {
    pub eps: Vec<u64>,
    pub e: u32,
    pub f: u32,
    /// F_p-basis of the residue field inside eps * O/pO
    pub residue_basis: Mat<u64>,
}

/// The completion K_v realised inside O/p^M as eps * O/p^M.
#[derive(Clone, Debug)]
pub struct Completion {
    order: Arc<PMaximalOrder>,
    pub e: u32,
    pub f: u32,
    pub precision: u32,
    modulus: BigInt,
    eps: Vec<BigInt>,
    co_eps: Vec<BigInt>,
    pi: Vec<BigInt>,
    residues: Mat<BigInt>,
    /// the local factor of the defining polynomial mod p^precision, monic
    pub local_factor: Vec<BigInt>,
}

/// Outcome of a computation that may run out of p-adic precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precise<T> {
    Known(T),
    NeedsPrecision,
}

impl Completion {
    pub fn new(order: Arc<PMaximalOrder>, place: &ResiduePlace, precision: u32) -> Self {
        let p = order.p;
        let n = order.n;
        let modulus = big_pow(p, precision);
        // idempotent lifting e <- 3e^2 - 2e^3
        let mut eps = lift(&place.eps);
        loop {
            let e2 = order.mul_mod(&eps, &eps, &modulus);
            if e2 == eps {
                break;
            }
            let e3 = order.mul_mod(&e2, &eps, &modulus);
            eps = (0..n).map(|k| (BigInt::from(3) * &e2[k] - BigInt::from(2) * &e3[k]).mod_floor(&modulus)).collect();
        }
        let co_eps: Vec<BigInt> = (0..n).map(|k| (&order.one[k] - &eps[k]).mod_floor(&modulus)).collect();
        let d = (place.e * place.f) as usize;
        let te = order.mul_mod(&order.theta, &eps, &modulus);
        let cp = charpoly_mod(&order.mult_matrix(&te, &modulus), &modulus);
        debug_assert!(cp[..n - d].iter().all(|c| c.is_zero()));
        let local_factor = cp[n - d..].to_vec();
        let residues: Mat<BigInt> = place.residue_basis.iter().map(|r| order.mul_mod(&eps, &lift(r), &modulus)).collect();
        let mut c = Completion {
            order: order.clone(),
            e: place.e,
            f: place.f,
            precision,
            modulus,
            eps,
            co_eps,
            pi: Vec::new(),
            residues,
            local_factor,
        };
        c.pi = if place.e == 1 {
            c.scalar(&BigInt::from(p))
        } else {
            let rad = order.radical_basis();
            rad.iter()
                .map(|g| order.mul_mod(g, &c.eps, &c.modulus))
                .find(|x| c.valuation(x) == Precise::Known(1))
                .expect("some generator of the local maximal ideal has valuation 1")
        };
        c
    }

    pub fn prime(&self) -> u64 {
        self.order.p
    }

    pub fn local_degree(&self) -> u32 {
        self.e * self.f
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// The element c * 1_v.
    pub fn scalar(&self, c: &BigInt) -> Vec<BigInt> {
        self.eps.iter().map(|x| (x * c).mod_floor(&self.modulus)).collect()
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.order.mul_mod(a, b, &self.modulus)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.modulus)).collect()
    }

    /// Normalised valuation v_pi; `NeedsPrecision` when it cannot be resolved.
    pub fn valuation(&self, a: &[BigInt]) -> Precise<u32> {
        let shifted = self.add(a, &self.co_eps);
        let mm = self.order.mult_matrix(&shifted, &self.modulus);
        match det_valuation_mod(&mm, self.order.p, self.precision) {
            Some(v) => Precise::Known(v / self.f),
            None => Precise::NeedsPrecision,
        }
    }

    /// Evaluates an integer polynomial at a local element.
    pub fn eval(&self, h: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        let mut acc = self.scalar(&BigInt::zero());
        for c in h.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.scalar(c));
        }
        acc
    }

    /// Does the monic integer polynomial `h` (squarefree over Q) have a root in K_v?
    ///
    /// Depth-first search over pi-adic digit expansions, pruning branches with
    /// v(h(c)) < depth and accepting once Hensel's lemma applies.
    pub fn has_root(&self, h: &[BigInt]) -> Precise<bool> {
        let dh: Vec<BigInt> = h.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        let depth_cap = self.precision * self.e / self.local_degree().max(1);
        let digits = self.digit_set();
        let mut stack: Vec<(Vec<BigInt>, u32, Vec<BigInt>)> = vec![(self.scalar(&BigInt::zero()), 0, self.scalar(&BigInt::one()))];
        let mut undetermined = false;
        while let Some((c, k, pik)) = stack.pop() {
            let hv = self.valuation(&self.eval(h, &c));
            let dv = self.valuation(&self.eval(&dh, &c));
            match (hv, dv) {
                (Precise::Known(a), _) if a < k => continue,
                (Precise::Known(a), Precise::Known(b)) if a > 2 * b => return Precise::Known(true),
                (Precise::NeedsPrecision, Precise::Known(b)) if 2 * b + 1 < depth_cap => {
                    return Precise::Known(true)
                }
                _ => {}
            }
            if k + 1 >= depth_cap {
                undetermined = true;
                continue;
            }
            let next_pi = self.mul(&pik, &self.pi);
            for d in &digits {
                let child = self.add(&c, &self.mul(d, &pik));
                stack.push((child, k + 1, next_pi.clone()));
            }
        }
        if undetermined {
            Precise::NeedsPrecision
        } else {
            Precise::Known(false)
        }
    }

    /// Representatives of the residue field: all F_p-combinations of the residue basis.
    fn digit_set(&self) -> Vec<Vec<BigInt>> {
        let p = self.order.p;
        let mut out = vec![self.scalar(&BigInt::zero())];
        for r in &self.residues {
            let mut next = Vec::with_capacity(out.len() * p as usize);
            for base in &out {
                for c in 0..p {
                    let t: Vec<BigInt> = r.iter().map(|x| x * BigInt::from(c)).collect();
                    next.push(self.add(base, &t));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn ef(f: &[i64], p: u64) -> Vec<(u32, u32)> {
        let o = PMaximalOrder::new(&bi(f), p);
        let mut v: Vec<(u32, u32)> = o.residue_places().iter().map(|r| (r.e, r.f)).collect();
        v.sort();
        v
    }

    #[test]
    fn decompositions() {
        assert_eq!(ef(&[8, 1, 0, 1], 2), vec![(1, 1), (2, 1)]);
        assert_eq!(ef(&[1, 0, 1], 5), vec![(1, 1), (1, 1)]);
        assert_eq!(ef(&[1, 0, 1], 3), vec![(1, 2)]);
        assert_eq!(ef(&[1, 0, 1], 2), vec![(2, 1)]);
        // x^2 - 5: index 2 at p = 2, and 2 is inert in Q(sqrt 5)
        assert_eq!(ef(&[-5, 0, 1], 2), vec![(1, 2)]);
        // x^2 - 17: 2 splits
        assert_eq!(ef(&[-17, 0, 1], 2), vec![(1, 1), (1, 1)]);
        // Q(zeta_8): 2 totally ramified
        assert_eq!(ef(&[1, 0, 0, 0, 1], 2), vec![(4, 1)]);
    }

    #[test]
    fn local_factor_product() {
        let f = bi(&[8, 1, 0, 1]);
        let o = Arc::new(PMaximalOrder::new(&f, 2));
        let m = big_pow(2, 20);
        let mut prod = vec![BigInt::one()];
        for pl in o.residue_places() {
            let c = Completion::new(o.clone(), &pl, 20);
            prod = super::super::hensel::mul(&prod, &c.local_factor, &m);
        }
        assert_eq!(prod, super::super::hensel::reduce(&f, &m));
    }

    #[test]
    fn roots_in_completions() {
        // Q_2(i) contains i but Q_2 does not
        let o = Arc::new(PMaximalOrder::new(&bi(&[1, 0, 1]), 2));
        let pl = &o.residue_places()[0];
        let c = Completion::new(o.clone(), pl, 24);
        assert_eq!(c.has_root(&bi(&[1, 0, 1])), Precise::Known(true));
        assert_eq!(c.has_root(&bi(&[-2, 0, 1])), Precise::Known(false));
        // x^2 + 7 has a root in Q_2
        let q = Arc::new(PMaximalOrder::new(&bi(&[-1, 1]), 2));
        let c = Completion::new(q.clone(), &q.residue_places()[0], 24);
        assert_eq!(c.has_root(&bi(&[7, 0, 1])), Precise::Known(true));
        assert_eq!(c.has_root(&bi(&[1, 0, 1])), Precise::Known(false));
        assert_eq!(c.has_root(&bi(&[3, 0, 1])), Precise::Known(false));
    }
}
