//! Polynomials over a number field K = Q[t]/(f) and factorization over K
//! by Trager's norm method.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::factor_q::{factor_q, squarefree_decomposition_q};
use super::poly::{rat, resultant, Poly};
use crate::error::{Error, Result};

/// Largest deg(g) * [K:Q] accepted by [`factor_over_field`].
pub const DEFAULT_SIZE_BOUND: usize = 64;

/// Arithmetic in K = Q[t]/(f); elements are polynomials of degree < deg f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldArith {
    f: Poly,
}

impl FieldArith {
    pub fn new(f: Poly) -> Self {
        FieldArith { f }
    }

    pub fn degree(&self) -> usize {
        self.f.deg()
    }

    pub fn modulus(&self) -> &Poly {
        &self.f
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.f)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        (a * b).rem(&self.f)
    }

    /// The generator t of K.
    pub fn gen(&self) -> Poly {
        self.reduce(&Poly::x())
    }

    /// Inverse of a nonzero element by the extended Euclidean algorithm.
    pub fn inv(&self, a: &Poly) -> Poly {
        assert!(!a.is_zero(), "inverse of zero");
        let (mut r0, mut r1) = (self.f.clone(), self.reduce(a));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant since f is irreducible
        let c = r0.coeff(0).recip();
        self.reduce(&s0.scale(&c))
    }
}

/// Polynomial over K, coefficients lowest degree first, each reduced mod f.
#[derive(Clone, PartialEq, Eq)]
pub struct NfPoly {
    pub coeffs: Vec<Poly>,
}

impl NfPoly {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        NfPoly { coeffs }
    }

    /// Embeds a rational polynomial.
    pub fn from_rational(g: &Poly) -> Self {
        NfPoly::new(g.coeffs().iter().map(|c| Poly::constant(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &Poly {
        self.coeffs.last().unwrap()
    }

    /// The rational polynomial, if every coefficient lies in Q.
    pub fn to_rational(&self) -> Option<Poly> {
        self.coeffs
            .iter()
            .map(|c| (c.deg() == 0).then(|| c.coeff(0)))
            .collect::<Option<Vec<BigRational>>>()
            .map(Poly::new)
    }

    fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.deg().cmp(&o.deg()).then_with(|| {
            let key = |p: &NfPoly| -> Vec<Vec<BigRational>> { p.coeffs.iter().rev().map(|c| c.coeffs().to_vec()).collect() };
            key(self).cmp(&key(o))
        })
    }

    /// Coefficients as JSON-style nested string arrays.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.coeffs.iter().map(|c| c.to_strings()).collect()
    }
}

impl fmt::Debug for NfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = c.to_string().replace('x', "t");
                let c = if c.contains(' ') { format!("({c})") } else { c };
                match i {
                    0 => c,
                    1 if c == "1" => "x".into(),
                    1 => format!("{c}*x"),
                    _ if c == "1" => format!("x^{i}"),
                    _ => format!("{c}*x^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl FieldArith {
    pub fn poly_add(&self, a: &NfPoly, b: &NfPoly) -> NfPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = Poly::zero();
        NfPoly::new((0..n).map(|i| a.coeffs.get(i).unwrap_or(&z) + b.coeffs.get(i).unwrap_or(&z)).collect())
    }

    pub fn poly_sub(&self, a: &NfPoly, b: &NfPoly) -> NfPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = Poly::zero();
        NfPoly::new((0..n).map(|i| a.coeffs.get(i).unwrap_or(&z) - b.coeffs.get(i).unwrap_or(&z)).collect())
    }

    pub fn poly_mul(&self, a: &NfPoly, b: &NfPoly) -> NfPoly {
        if a.is_zero() || b.is_zero() {
            return NfPoly::new(vec![]);
        }
        let mut out = vec![Poly::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        NfPoly::new(out.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn poly_scale(&self, a: &NfPoly, c: &Poly) -> NfPoly {
        NfPoly::new(a.coeffs.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn poly_monic(&self, a: &NfPoly) -> NfPoly {
        if a.is_zero() {
            return a.clone();
        }
        self.poly_scale(a, &self.inv(a.lc()))
    }

    pub fn poly_div_rem(&self, a: &NfPoly, d: &NfPoly) -> (NfPoly, NfPoly) {
        assert!(!d.is_zero());
        let inv = self.inv(d.lc());
        let dd = d.deg();
        let mut r = a.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (NfPoly::new(vec![]), a.clone());
        }
        let mut q = vec![Poly::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = self.mul(&r[i + dd], &inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = self.reduce(&(&r[i + j] - &(&c * dc)));
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (NfPoly::new(q), NfPoly::new(r))
    }

    pub fn poly_gcd(&self, a: &NfPoly, b: &NfPoly) -> NfPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.poly_div_rem(&x, &y).1;
            x = y;
            y = self.poly_monic(&r);
        }
        self.poly_monic(&x)
    }

    /// g(x + c) for a rational polynomial g and c in K.
    pub fn shift_rational(&self, g: &Poly, c: &Poly) -> NfPoly {
        let lin = NfPoly::new(vec![self.reduce(c), Poly::one()]);
        let mut acc = NfPoly::new(vec![]);
        for a in g.coeffs().iter().rev() {
            acc = self.poly_mul(&acc, &lin);
            acc = self.poly_add(&acc, &NfPoly::new(vec![Poly::constant(a.clone())]));
        }
        acc
    }

    /// Evaluates a rational polynomial at an element of K.
    pub fn eval_rational(&self, g: &Poly, a: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in g.coeffs().iter().rev() {
            acc = &self.mul(&acc, a) + &Poly::constant(c.clone());
        }
        self.reduce(&acc)
    }
}

/// Newton interpolation through (x_i, y_i) over Q.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Poly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![-xs[i].clone(), BigRational::one()]);
        acc = &(&acc * &lin) + &Poly::constant(dd[i].clone());
    }
    acc
}

/// Norm N(y) = Res_x(f(x), g(y - k x)) for rational g, by evaluation/interpolation.
fn shifted_norm(f: &Poly, g: &Poly, k: i64) -> Poly {
    let d = f.deg() * g.deg();
    let xs: Vec<BigRational> = (0..=d as i64).map(rat).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|y0| {
            let lin = Poly::new(vec![y0.clone(), rat(-k)]);
            resultant(f, &g.compose(&lin))
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Factors a squarefree monic rational polynomial over K.
fn factor_squarefree(g: &Poly, k_field: &FieldArith) -> Vec<NfPoly> {
    let f = k_field.modulus();
    if g.deg() == 1 || f.deg() == 1 {
        return factor_q(g).unwrap().into_iter().map(|(h, _)| NfPoly::from_rational(&h)).collect();
    }
    let gk = NfPoly::from_rational(g);
    for k in [1i64, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8, -8].into_iter().chain(9..) {
        let norm = shifted_norm(f, g, k);
        if !norm.is_squarefree() {
            continue;
        }
        let theta = k_field.gen();
        let shift = theta.scale(&rat(k));
        let mut out = Vec::new();
        for (nj, _) in factor_q(&norm).unwrap() {
            let h = k_field.poly_gcd(&gk, &k_field.shift_rational(&nj, &shift));
            if h.deg() > 0 {
                out.push(h);
            }
        }
        return out;
    }
    unreachable!("some shift gives a squarefree norm")
}

/// Complete factorization of a nonzero rational polynomial over K into monic
/// irreducibles with multiplicities, in canonical order.
pub fn factor_over_field(g: &Poly, k_field: &FieldArith, size_bound: usize) -> Result<Vec<(NfPoly, u32)>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let size = g.deg() * k_field.degree();
    if size > size_bound {
        return Err(Error::SizeBound { what: "deg(f)*[K:Q]", actual: size, limit: size_bound });
    }
    let mut out = Vec::new();
    for (part, m) in squarefree_decomposition_q(g) {
        for h in factor_squarefree(&part, k_field) {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Roots in K of a rational polynomial.
pub fn roots_in_field(g: &Poly, k_field: &FieldArith, size_bound: usize) -> Result<Vec<Poly>> {
    Ok(factor_over_field(g, k_field, size_bound)?
        .into_iter()
        .filter(|(h, _)| h.deg() == 1)
        .map(|(h, _)| -&h.coeffs[0])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(cs: &[i64]) -> FieldArith {
        FieldArith::new(Poly::from_ints(cs))
    }

    fn degrees(g: &Poly, k: &FieldArith) -> Vec<usize> {
        factor_over_field(g, k, 64).unwrap().iter().map(|(h, _)| h.deg()).collect()
    }

    #[test]
    fn phi8_over_sqrt2() {
        let phi8 = Poly::from_ints(&[1, 0, 0, 0, 1]);
        assert_eq!(degrees(&phi8, &field(&[-2, 0, 1])), vec![2, 2]);
    }

    #[test]
    fn x2_plus_1() {
        let g = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(degrees(&g, &field(&[0, 1])), vec![2]);
        let k = field(&[1, 0, 1]);
        let fs = factor_over_field(&g, &k, 64).unwrap();
        assert_eq!(fs.len(), 2);
        let roots = roots_in_field(&g, &k, 64).unwrap();
        for r in roots {
            assert!(k.eval_rational(&g, &r).is_zero());
        }
    }

    #[test]
    fn product_reconstructs() {
        let k = field(&[8, 1, 0, 1]);
        // (x^3 + x + 8) splits off a linear factor over its own field
        let g = Poly::from_ints(&[8, 1, 0, 1]);
        let fs = factor_over_field(&g, &k, 64).unwrap();
        assert_eq!(fs.iter().map(|(h, _)| h.deg()).collect::<Vec<_>>(), vec![1, 2]);
        let mut prod = NfPoly::from_rational(&Poly::one());
        for (h, m) in &fs {
            for _ in 0..*m {
                prod = k.poly_mul(&prod, h);
            }
        }
        assert_eq!(prod, NfPoly::from_rational(&g));
    }

    #[test]
    fn size_bound_enforced() {
        let g = Poly::from_ints(&[1, 0, 1]);
        assert!(matches!(factor_over_field(&g, &field(&[8, 1, 0, 1]), 5), Err(Error::SizeBound { .. })));
    }
}
