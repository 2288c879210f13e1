//! Number fields K = Q(θ), their completions and the invariants used by
//! the admissibility criteria: (n_v, q_v), Wang's oddly/evenly even
//! classification and intersections with cyclotomic fields.

pub mod cyclotomic;
pub mod wang;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::factor_q::is_irreducible_q;
use crate::arith::int::{euler_phi, require_prime};
use crate::arith::nf_poly::{factor_over_field, roots_in_field, FieldArith, NfPoly, DEFAULT_SIZE_BOUND};
use crate::arith::order::{Completion, PMaximalOrder, ResiduePlace};
use crate::arith::padic::{initial_precision, with_escalation};
use crate::arith::poly::{discriminant, Poly};
use crate::error::{Error, Result};

pub use cyclotomic::{
    cyclotomic_poly, fixed_field_minpoly, local_intersection, subgroups_of_units, CyclotomicIntersection,
    CYCLOTOMIC_SIZE_BOUND,
};
pub use wang::{
    eta_minpoly, i_eta_minpoly, norm_obstruction, oddly_even_by_degrees, wang_cyclic_criterion, CyclicCriterion, LocalCyclicExt,
    NormAnswer, NormElement, Ramification, WangData,
};

/// A number field presented by a monic irreducible integer polynomial.
pub struct NumberField {
    poly: Poly,
    disc: BigInt,
    arith: FieldArith,
    orders: Mutex<HashMap<u64, Arc<PMaximalOrder>>>,
    places: Mutex<HashMap<u64, Arc<Vec<LocalPlace>>>>,
    cyclo: Mutex<HashMap<u64, Arc<CyclotomicIntersection>>>,
    wang: OnceLock<WangData>,
}

impl Clone for NumberField {
    fn clone(&self) -> Self {
        NumberField::from_poly(self.poly.clone()).expect("already validated")
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.poly)
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "Q")
        } else {
            write!(f, "Q[x]/({})", self.poly)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    poly: Poly,
}

impl Serialize for NumberField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldJson { poly: self.poly.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NumberField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FieldJson::deserialize(d)?;
        NumberField::from_poly(raw.poly).map_err(serde::de::Error::custom)
    }
}

impl NumberField {
    /// Validates that `poly` is monic, integral and irreducible over Q.
    pub fn from_poly(poly: Poly) -> Result<Self> {
        if poly.is_zero() || poly.deg() == 0 {
            return Err(Error::invalid("defining polynomial must have positive degree"));
        }
        if !poly.is_integral_monic() {
            return Err(Error::invalid(format!("defining polynomial {poly} is not monic with integer coefficients")));
        }
        if !is_irreducible_q(&poly) {
            return Err(Error::invalid(format!("defining polynomial {poly} is reducible over Q")));
        }
        let disc = discriminant(&poly).to_integer();
        Ok(NumberField {
            arith: FieldArith::new(poly.clone()),
            poly,
            disc,
            orders: Mutex::new(HashMap::new()),
            places: Mutex::new(HashMap::new()),
            cyclo: Mutex::new(HashMap::new()),
            wang: OnceLock::new(),
        })
    }

    pub fn from_ints(cs: &[i64]) -> Result<Self> {
        Self::from_poly(Poly::from_ints(cs))
    }

    /// The rational field, presented by x.
    pub fn rationals() -> Self {
        Self::from_ints(&[0, 1]).unwrap()
    }

    /// Parses `Q` or `{"poly": [...]}`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim() == "Q" {
            return Ok(Self::rationals());
        }
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("field: {e}")))
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn arith(&self) -> &FieldArith {
        &self.arith
    }

    fn integer_poly(&self) -> Vec<BigInt> {
        self.poly.integer_coeffs().unwrap()
    }

    pub(crate) fn order_at(&self, p: u64) -> Arc<PMaximalOrder> {
        let mut cache = self.orders.lock().unwrap();
        cache
            .entry(p)
            .or_insert_with(|| Arc::new(PMaximalOrder::new(&self.integer_poly(), p)))
            .clone()
    }

    /// Factorization of a rational polynomial over K (norm method).
    pub fn factor(&self, g: &Poly) -> Result<Vec<(NfPoly, u32)>> {
        factor_over_field(g, &self.arith, DEFAULT_SIZE_BOUND)
    }

    /// Does the rational polynomial `g` have a root in K?
    pub fn has_root(&self, g: &Poly) -> Result<bool> {
        if g.deg() == 0 {
            return Ok(false);
        }
        // a root generates a subfield, so some irreducible factor has degree dividing [K:Q]
        let n = self.degree();
        let fs = crate::arith::factor_q::factor_q(g)?;
        for (h, _) in fs {
            if !n.is_multiple_of(h.deg()) {
                continue;
            }
            if h.deg() == 1 || !roots_in_field(&h, &self.arith, DEFAULT_SIZE_BOUND.max(h.deg() * n))?.is_empty() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Places of K above p, one per irreducible factor of the defining
    /// polynomial over Q_p.
    pub fn decompose_prime(&self, p: u64) -> Result<Arc<Vec<LocalPlace>>> {
        require_prime(p)?;
        if let Some(v) = self.places.lock().unwrap().get(&p) {
            return Ok(v.clone());
        }
        let mut places = self.raw_places(p)?;
        debug_assert_eq!(places.iter().map(|v| v.local_degree() as usize).sum::<usize>(), self.degree());
        for place in places.iter_mut() {
            place.q_v = place.compute_q_v()?;
        }
        if p == 2 {
            let wang = self.wang_data()?;
            for pl in places.iter_mut() {
                pl.even_class = wang::class_of(wang, pl);
            }
        }
        let arc = Arc::new(places);
        self.places.lock().unwrap().insert(p, arc.clone());
        Ok(arc)
    }

    /// Overwrites the cached places above p. Used by fault-injection runs to
    /// check that corrupted local data is caught downstream.
    #[doc(hidden)]
    pub fn inject_places(&self, p: u64, places: Vec<LocalPlace>) {
        self.places.lock().unwrap().insert(p, Arc::new(places));
    }

    /// Places above p without the Wang classification (used while computing it).
    pub(crate) fn raw_places(&self, p: u64) -> Result<Vec<LocalPlace>> {
        let order = self.order_at(p);
        let prec = initial_precision(&self.poly, p);
        order
            .residue_places()
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                let comp = Completion::new(order.clone(), &r, prec);
                Ok(LocalPlace {
                    p,
                    index: i + 1,
                    e: r.e,
                    f: r.f,
                    precision: prec,
                    local_factor: comp.local_factor.clone(),
                    n_v: r.e * r.f + 2,
                    q_v: 1,
                    even_class: EvenClass::NotApplicable,
                    core: Arc::new(PlaceCore { order: order.clone(), residue: r, base_precision: prec }),
                })
            })
            .collect()
    }

    pub fn wang_data(&self) -> Result<&WangData> {
        if let Some(w) = self.wang.get() {
            return Ok(w);
        }
        let w = wang::compute_wang_data(self)?;
        Ok(self.wang.get_or_init(|| w))
    }

    pub fn cyclotomic_intersection(&self, n: u64) -> Result<Arc<CyclotomicIntersection>> {
        if let Some(c) = self.cyclo.lock().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let c = Arc::new(cyclotomic::compute(self, n)?);
        self.cyclo.lock().unwrap().insert(n, c.clone());
        Ok(c)
    }

    /// Does μ_d lie in K?
    pub fn contains_roots_of_unity(&self, d: u64) -> Result<bool> {
        if d <= 2 {
            return Ok(true);
        }
        if !(self.degree() as u64).is_multiple_of(euler_phi(d)) {
            return Ok(false);
        }
        self.has_root(&cyclotomic_poly(d))
    }
}

/// Wang's classification of a place above 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvenClass {
    Oddly,
    Evenly,
    NotApplicable,
}

#[derive(Debug)]
struct PlaceCore {
    order: Arc<PMaximalOrder>,
    residue: ResiduePlace,
    base_precision: u32,
}

/// A place v of K above the rational prime p.
#[derive(Clone, Debug, Serialize)]
pub struct LocalPlace {
    pub p: u64,
    /// 1-based position among the places above p
    pub index: usize,
    pub e: u32,
    pub f: u32,
    #[serde(skip)]
    pub precision: u32,
    #[serde(skip)]
    pub local_factor: Vec<BigInt>,
    pub n_v: u32,
    pub q_v: u64,
    pub even_class: EvenClass,
    #[serde(skip)]
    core: Arc<PlaceCore>,
}

impl PartialEq for LocalPlace {
    fn eq(&self, o: &Self) -> bool {
        (self.p, self.index, self.e, self.f, self.n_v, self.q_v, self.even_class)
            == (o.p, o.index, o.e, o.f, o.n_v, o.q_v, o.even_class)
    }
}

impl LocalPlace {
    pub fn local_degree(&self) -> u32 {
        self.e * self.f
    }

    /// Stable label, e.g. "2.1" for the first place above 2.
    pub fn label(&self) -> String {
        format!("{}.{}", self.p, self.index)
    }

    /// Size of the residue field.
    pub fn residue_size(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// The local factor as decimal strings at the working precision.
    pub fn local_factor_strings(&self) -> Vec<String> {
        self.local_factor.iter().map(|c| c.to_string()).collect()
    }

    /// Does the rational polynomial `h` have a root in K_v?
    pub fn has_root(&self, h: &Poly) -> Result<bool> {
        let mut total = false;
        for (g, _) in crate::arith::factor_q::factor_q(h)? {
            if g.deg() == 1 {
                total = true;
                break;
            }
            let Some(gi) = scaled_monic_integer(&g) else {
                return Err(Error::invalid("local root test needs a polynomial with integral roots"));
            };
            let start = self.core.base_precision + initial_precision(&g, self.p);
            let core = self.core.clone();
            let found = with_escalation(
                start,
                || format!("root of {g} in K_v at {}", self.label()),
                |prec| Completion::new(core.order.clone(), &core.residue, prec).has_root(&gi),
            )?;
            if found {
                total = true;
                break;
            }
        }
        Ok(total)
    }

    /// q_v: the largest power p^s with μ_{p^s} ⊆ K_v.
    fn compute_q_v(&self) -> Result<u64> {
        let d = self.local_degree() as u64;
        let mut q = 1u64;
        let mut s = 1;
        loop {
            let ps = self.p.pow(s);
            if !d.is_multiple_of(euler_phi(ps)) {
                break;
            }
            if !self.has_root(&cyclotomic_poly(ps))? {
                break;
            }
            q = ps;
            s += 1;
        }
        Ok(q)
    }

    /// (n_v, q_v) of the maximal abelian pro-p quotient Z/q_v × Z_p^{n_v - 1}.
    pub fn local_invariants(&self) -> (u32, u64) {
        (self.n_v, self.q_v)
    }

    /// Report in the documented JSON shape.
    pub fn report(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label(),
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "n_v": self.n_v,
            "q_v": self.q_v,
            "even_class": self.even_class,
        })
    }
}

/// Integer monic polynomial with the same roots up to no scaling: only monic
/// integer inputs are accepted, all our root tests use algebraic integers.
fn scaled_monic_integer(g: &Poly) -> Option<Vec<BigInt>> {
    g.is_integral_monic().then(|| g.integer_coeffs().unwrap())
}

/// Free-function form of [`LocalPlace::local_invariants`].
pub fn local_invariants(v: &LocalPlace) -> (u32, u64) {
    v.local_invariants()
}

/// Free-function form of [`NumberField::decompose_prime`].
pub fn decompose_prime(k: &NumberField, p: u64) -> Result<Arc<Vec<LocalPlace>>> {
    k.decompose_prime(p)
}
