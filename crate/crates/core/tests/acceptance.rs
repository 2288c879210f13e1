//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines print in order.
//!
//! A failing line panics the run unless it is listed in KNOWN_DIVERGENCES,
//! where the computed result disagrees with a published claim and the
//! library keeps the computed answer (see README, "Known divergences").

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use abl_core::admissibility::{
    abelian_admissible, abelian_preadmissible, liedahl_check, preadmissible, semicyclic_admissible, tame_admissible_solvable,
    tame_supporting_set, SieveOutcome, Value, Verdict,
};
use abl_core::arith::nf_poly::NfPoly;
use abl_core::brauer::{make_class, schacher_adequate, splits, tamely_adequate, BrauerClass, LocalDegreeProfile, PlaceDegree};
use abl_core::groups::{
    abelian_invariants, are_isomorphic, catalog, is_metacyclic, is_semicyclic, meta_splits, metacyclic_presentations, splits as ext_splits,
    AbelianInvariants, FiniteGroup, MetacyclicPresentation, SemicyclicClass,
};
use abl_core::numfield::cyclotomic::cyclotomic_poly;
use abl_core::numfield::wang::{wang_cyclic_criterion, CyclicCriterion, LocalCyclicExt};
use abl_core::numfield::{EvenClass, NumberField};
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// (criterion, sub-claim) pairs whose failure is expected.
const KNOWN_DIVERGENCES: &[(u32, &str)] = &[(6, "order-243 example meta-splits")];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field(cs: &[i64]) -> NumberField {
    NumberField::from_ints(cs).expect("corpus field")
}

fn wang_field() -> NumberField {
    field(&[8, 1, 0, 1])
}

fn c1_counterexample() -> Check {
    let start = Instant::now();
    let k = wang_field();
    let a = abelian_invariants(&[2, 8, 8]).map_err(|e| e.to_string())?;
    let pre = abelian_preadmissible(&a, &k).map_err(|e| e.to_string())?;
    let adm = abelian_admissible(&a, &k).map_err(|e| e.to_string())?;
    ensure!(pre.is_yes(), "abelian_preadmissible = {}", pre.value);
    ensure!(adm.is_no(), "abelian_admissible = {}", adm.value);
    for c in
        ["special-case:condition-1", "special-case:condition-2", "special-case:condition-3", "special-case:condition-4", "wang-norm-obstruction"]
    {
        ensure!(adm.cites(c), "certificate does not cite {c}");
    }
    let sc = &adm.certificate["components"]["2"]["certificate"]["special_case"];
    for cond in ["1", "2", "3", "4"] {
        ensure!(!sc[cond].is_null(), "special-case condition {cond} missing from the certificate");
    }
    ensure!(sc["4"]["place"] == "2.1", "obstruction at {} instead of the oddly-even place 2.1", sc["4"]["place"]);
    ensure!(sc["4"]["norm"] == "not-norm", "norm answer {}", sc["4"]["norm"]);
    let el = start.elapsed();
    ensure!(el < Duration::from_secs(5), "took {el:?}");
    Ok(format!("pre = yes, adm = no, not-norm at 2.1 ({el:.2?})"))
}

fn c2_decomposition() -> Check {
    let k = wang_field();
    let places = k.decompose_prime(2).map_err(|e| e.to_string())?;
    let ef: BTreeSet<(u32, u32)> = places.iter().map(|v| (v.e, v.f)).collect();
    ensure!(places.len() == 2 && ef == BTreeSet::from([(1, 1), (2, 1)]), "places (e,f) = {ef:?}");
    // oracle: x³+x+8 ≡ x(x+1)² mod 2, and the (x+1)² factor is Eisenstein after x ↦ x−1 up to the index
    let f2 = abl_core::factor_mod_p(k.poly(), 2).map_err(|e| e.to_string())?;
    let degs: BTreeSet<(usize, u32)> = f2.iter().map(|(g, m)| (g.deg(), *m)).collect();
    ensure!(degs == BTreeSet::from([(1, 1), (1, 2)]), "x^3+x+8 mod 2 factors as {degs:?}");
    let w = k.wang_data().map_err(|e| e.to_string())?;
    ensure!(w.t == Some(2), "t = {:?}", w.t);
    for v in places.iter() {
        let want = if v.e == 1 { EvenClass::Oddly } else { EvenClass::Evenly };
        ensure!(v.even_class == want, "place {} (e={}) is {:?}", v.label(), v.e, v.even_class);
    }
    ensure!(w.oddly_even_places.len() == 1, "oddly-even places {:?}", w.oddly_even_places);
    Ok("2 = (1,1)·(2,1); t = 2; (1,1) oddly even, (2,1) evenly even".into())
}

fn c3_local_invariants() -> Check {
    let q2 = NumberField::rationals().decompose_prime(2).map_err(|e| e.to_string())?;
    ensure!(q2.len() == 1 && (q2[0].n_v, q2[0].q_v) == (3, 2), "Q_2 gives {:?}", q2.iter().map(|v| (v.n_v, v.q_v)).collect::<Vec<_>>());
    let qi = field(&[1, 0, 1]).decompose_prime(2).map_err(|e| e.to_string())?;
    ensure!(qi.len() == 1 && (qi[0].n_v, qi[0].q_v) == (4, 4), "Q_2(i) gives {:?}", qi.iter().map(|v| (v.n_v, v.q_v)).collect::<Vec<_>>());
    Ok("Q_2 -> (3,2), Q_2(i) -> (4,4)".into())
}

fn c4_presentation_table() -> Check {
    let mut rows: Vec<(String, FiniteGroup, (u64, u64, u64))> = Vec::new();
    for u in 1..=3u32 {
        let n = 2usize.pow(u);
        rows.push((format!("C{n}xC{n}"), catalog::abelian(&[n, n]).unwrap(), (n as u64, n as u64, 1)));
    }
    rows.push(("Q8".into(), catalog::quaternion8(), (2, 4, 3)));
    rows.push(("D16*".into(), catalog::semidihedral16(), (2, 8, 3)));
    rows.push(("Q16".into(), catalog::quaternion16(), (2, 8, 7)));
    let mut seen = Vec::new();
    for (name, g, want) in rows {
        let ps = metacyclic_presentations(&g).map_err(|e| format!("{name}: {e}"))?;
        let triples: BTreeSet<(u64, u64, u64)> = ps.iter().map(|p| (p.m, p.n, p.t_mod_n())).collect();
        ensure!(triples == BTreeSet::from([want]), "{name}: (m,n,t) = {triples:?}, expected only {want:?}");
        for p in &ps {
            let h = p.to_group().map_err(|e| e.to_string())?;
            ensure!(are_isomorphic(&h, &g), "{name}: {p} does not rebuild the group");
        }
        seen.push(format!("{name} {want:?}"));
    }
    Ok(seen.join(", "))
}

/// H = {a : g(x) | g(x^a)} for an irreducible factor g of Φ_n over K.
fn oracle_h(k: &NumberField, n: u64) -> Result<BTreeSet<u64>, String> {
    let factors = k.factor(&cyclotomic_poly(n)).map_err(|e| e.to_string())?;
    let g = &factors[0].0;
    let ar = k.arith();
    let mut h = BTreeSet::new();
    for a in 1..n {
        if num_integer::gcd(a, n) != 1 {
            continue;
        }
        let mut cs = vec![abl_core::Poly::zero(); g.deg() * a as usize + 1];
        for (j, c) in g.coeffs.iter().enumerate() {
            cs[j * a as usize] = c.clone();
        }
        let (_, r) = ar.poly_div_rem(&NfPoly::new(cs), g);
        if r.is_zero() {
            h.insert(a);
        }
    }
    if n <= 2 {
        h.insert(1 % n);
    }
    Ok(h)
}

fn c5_liedahl() -> Check {
    let q8 = MetacyclicPresentation::new(2, 4, 2, 3).unwrap();
    let q = NumberField::rationals();
    let gi = field(&[1, 0, 1]);
    let v = liedahl_check(&q8, &q).map_err(|e| e.to_string())?;
    ensure!(v.is_yes(), "Q8 over Q: {}", v.value);
    let v = liedahl_check(&q8, &gi).map_err(|e| e.to_string())?;
    ensure!(v.is_no(), "Q8 over Q(i): {}", v.value);
    // sweep against the σ_a-stability oracle
    let fields = [vec![0, 1], vec![1, 0, 1], vec![-2, 0, 1], vec![2, 0, 1], vec![1, 1, 1], vec![-1, -1, 1], vec![-7, 0, 1]];
    let pres = [(2, 4, 2, 3), (2, 8, 4, 3), (2, 8, 4, 7), (2, 8, 8, 5), (2, 3, 3, 2), (2, 5, 5, 4), (3, 7, 7, 2), (2, 9, 9, 8), (4, 5, 5, 2), (2, 12, 12, 11), (2, 12, 12, 5)];
    let mut compared = 0;
    for cs in &fields {
        let k = field(cs);
        for &(m, n, i, t) in &pres {
            let p = MetacyclicPresentation::new(m, n, i, t).map_err(|e| e.to_string())?;
            let v = liedahl_check(&p, &k).map_err(|e| e.to_string())?;
            let h = oracle_h(&k, n)?;
            let want = if h.contains(&(t % n)) { Value::Yes } else { Value::No };
            ensure!(v.value == want, "{p} over {cs:?}: liedahl {} but oracle H = {h:?}", v.value);
            compared += 1;
        }
    }
    Ok(format!("Q8/Q yes, Q8/Q(i) no; {compared} verdicts match the stability oracle"))
}

/// Normal cyclic C with cyclic G/C, by brute force.
fn oracle_metacyclic(g: &FiniteGroup) -> bool {
    (0..g.order()).any(|c| {
        let cs = g.cyclic_subgroup(c);
        g.is_normal(&cs) && g.quotient(&cs).0.is_cyclic()
    })
}

/// G trivial, or G = CH with C normal cyclic and H a proper semicyclic subgroup.
fn oracle_semicyclic(g: &FiniteGroup) -> bool {
    if g.order() == 1 {
        return true;
    }
    let subgroups = g.all_subgroups();
    for c in 0..g.order() {
        let cs = g.cyclic_subgroup(c);
        if cs.order() == 1 || !g.is_normal(&cs) {
            continue;
        }
        for h in &subgroups {
            if h.order() == g.order() {
                continue;
            }
            if cs.order() * h.order() / cs.intersection(h).order() == g.order() && oracle_semicyclic(&g.induced(h)) {
                return true;
            }
        }
    }
    false
}

fn c6_group_classifiers(divergences: &mut Vec<String>) -> Check {
    let heis = catalog::heisenberg(3);
    ensure!(is_metacyclic(&heis).is_none() && !oracle_metacyclic(&heis), "Heisenberg(27) reported metacyclic");
    let sc3 = is_semicyclic(&heis, SemicyclicClass::ScP(3)).map_err(|e| e.to_string())?;
    ensure!(!sc3 && !oracle_semicyclic(&heis), "Heisenberg(27) reported in SC_3");
    let small = catalog::odd_order_below_27();
    for (name, g) in &small {
        ensure!(oracle_semicyclic(g), "oracle: {name} not semicyclic");
        for cls in [SemicyclicClass::Sc, SemicyclicClass::ScO] {
            ensure!(is_semicyclic(g, cls).map_err(|e| e.to_string())?, "{name} not in {}", cls.name());
        }
    }
    let start = Instant::now();
    let ext = catalog::meta_split_example(3);
    let split = ext_splits(&ext);
    let meta = meta_splits(&ext);
    let el = start.elapsed();
    ensure!(!split, "order-243 example splits");
    ensure!(el < Duration::from_secs(60), "complement search took {el:?}");
    if !meta {
        divergences.push(
            "order-243 example meta-splits: computed false (D = <x, y w^-1> ≅ C3xC3 has no complement; lifts always commute to u^-1)".into(),
        );
    }
    Ok(format!("Heis27 not metacyclic, not in SC_3; {} odd-order groups semicyclic; 3^5 does not split ({el:.2?})", small.len()))
}

fn r(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

fn random_class(rng: &mut ChaCha8Rng) -> BrauerClass {
    let pool = ["2.1", "3.1", "5.1", "5.2", "7.1", "11.1", "13.1"];
    let dens = [1, 2, 3, 4, 6, 8, 12];
    let k = rng.gen_range(1..pool.len());
    let places: Vec<&str> = pool.choose_multiple(rng, k).copied().collect();
    let mut sum = r(0, 1);
    let mut inv = Vec::new();
    for l in &places[..places.len() - 1] {
        let d = *dens.choose(rng).unwrap();
        let x = r(rng.gen_range(0..d), d);
        sum += x;
        inv.push((l.to_string(), x));
    }
    inv.push((places[places.len() - 1].to_string(), -sum));
    if rng.gen_bool(0.2) {
        inv.push(("inf.1".into(), r(1, 2)));
        inv.push(("2.9".into(), r(1, 2)));
    }
    make_class(inv).expect("zero-sum by construction")
}

fn random_profile(rng: &mut ChaCha8Rng) -> LocalDegreeProfile {
    let total: u64 = [2u64, 3, 4, 6, 8, 9, 12, 18, 24, 36].choose(rng).copied().unwrap();
    let divs: Vec<u64> = (1..=total).filter(|d| total.is_multiple_of(*d)).collect();
    let mut places = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17].iter() {
        for idx in 1..=rng.gen_range(0..3) {
            let d = *divs.choose(rng).unwrap();
            let tdivs: Vec<u64> = (1..=d).filter(|x| d.is_multiple_of(*x)).collect();
            let t = if total.is_multiple_of(*p) { *tdivs.choose(rng).unwrap() } else { d };
            places.push(PlaceDegree::new(format!("{p}.{idx}"), *p, d).with_tame(t));
        }
    }
    LocalDegreeProfile::new(total, places).expect("valid by construction")
}

fn c7_brauer() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut violations = Vec::new();
    for _ in 0..1000 {
        let a = random_class(&mut rng);
        let b = random_class(&mut rng);
        let c = random_class(&mut rng);
        let sum: Rational64 = a.invariants().values().sum();
        let ok = sum.is_integer()
            && a.tensor(&b) == b.tensor(&a)
            && a.tensor(&b).tensor(&c) == a.tensor(&b.tensor(&c))
            && a.tensor(&BrauerClass::trivial()) == a
            && a.tensor(&a.inverse()).is_trivial()
            && a.power(a.exponent()).is_trivial()
            && (1..a.exponent()).all(|k| !a.power(k).is_trivial())
            && a.power(3) == a.tensor(&a).tensor(&a)
            && BrauerClass::parse(&a.to_json().to_string()).ok().as_ref() == Some(&a);
        if !ok {
            violations.push(format!("{:?}", a.to_json()));
        }
    }
    ensure!(violations.is_empty(), "{} group-law violations, first {}", violations.len(), violations[0]);
    let mut adequate = 0;
    for _ in 0..1000 {
        let p = random_profile(&mut rng);
        let t = tamely_adequate(&p);
        if t.adequate {
            adequate += 1;
            ensure!(schacher_adequate(&p).adequate, "tame but not Schacher-adequate: {p:?}");
        }
    }
    ensure!(adequate > 0, "no tamely adequate profile generated");
    // L = Q(√3): 2 and 3 ramify (2 wildly), 5 and 7 are inert
    let ex = LocalDegreeProfile::new(
        2,
        vec![
            PlaceDegree::new("2", 2, 2).with_tame(1),
            PlaceDegree::new("3", 3, 2),
            PlaceDegree::new("5", 5, 2),
            PlaceDegree::new("7", 7, 2),
            PlaceDegree::new("inf", 0, 1),
        ],
    )
    .unwrap();
    let t = tamely_adequate(&ex);
    ensure!(t.adequate, "Q(√3) example not tamely adequate");
    let d = make_class([("5", r(1, 2)), ("7", r(-1, 2))]).map_err(|e| e.to_string())?;
    ensure!(splits(&ex, &d).map_err(|e| e.to_string())?, "Q(√3) does not split the class at 5 and 7");
    Ok(format!("1000 classes, 1000 profiles ({adequate} tamely adequate), Q(√3) example tamely adequate; 0 violations"))
}

fn c8_wang_special_case() -> Check {
    let q = NumberField::rationals();
    let two = q.decompose_prime(2).map_err(|e| e.to_string())?;
    let out = wang_cyclic_criterion(&q, 3, &[(two[0].clone(), LocalCyclicExt::unramified(8))]).map_err(|e| e.to_string())?;
    ensure!(out == CyclicCriterion::SpecialCase, "criterion returned {out:?}");
    Ok("K = Q, S = {2}, unramified C_8 at 2 -> special case".into())
}

fn trial_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn random_metacyclic(rng: &mut ChaCha8Rng) -> (MetacyclicPresentation, FiniteGroup) {
    loop {
        let n = rng.gen_range(2..=16u64);
        let m = rng.gen_range(1..=8u64);
        if m * n > 64 {
            continue;
        }
        let ts: Vec<u64> = (1..=n)
            .filter(|&t| num_integer::gcd(t, n) == 1 && (0..m).fold(1u64, |acc, _| acc * t % n) == 1 % n)
            .collect();
        let t = *ts.choose(rng).unwrap();
        let is: Vec<u64> = (1..=n).filter(|&i| n % i == 0 && (i * (t + n - 1)).is_multiple_of(n)).collect();
        let i = *is.choose(rng).unwrap();
        let Ok(p) = MetacyclicPresentation::new(m, n, i, t) else { continue };
        let Ok(g) = p.to_group() else { continue };
        return (p, g);
    }
}

fn check_supporting_set(g: &FiniteGroup, k: &NumberField, excl: &[u64], out: &abl_core::admissibility::SupportingSet) -> Result<(), String> {
    let order = g.order() as u64;
    let primes: Vec<u64> = (2..=order).filter(|&p| order.is_multiple_of(p) && trial_prime(p)).collect();
    let got: Vec<u64> = out.entries.iter().map(|e| e.p).collect();
    ensure!(got == primes, "entries for {got:?}, |G| = {order}");
    let mut used = BTreeSet::new();
    for e in &out.entries {
        let sylow = g.induced(&g.sylow(e.p).map_err(|x| x.to_string())?);
        let h = e.presentation.to_group().map_err(|x| x.to_string())?;
        ensure!(are_isomorphic(&h, &sylow), "presentation {} is not the Sylow {}-subgroup", e.presentation, e.p);
        let (n, t) = (e.presentation.n, e.presentation.t % e.presentation.n);
        for &q in &e.primes {
            ensure!(trial_prime(q) && q > 2, "{q} is not an odd prime");
            ensure!(q % n == t, "{q} is not {t} mod {n}");
            ensure!(!order.is_multiple_of(q), "{q} divides |G|");
            ensure!(!excl.contains(&q), "{q} was excluded");
            ensure!(used.insert(q), "{q} used twice");
            if !k.is_rational() {
                let places = k.decompose_prime(q).map_err(|x| x.to_string())?;
                ensure!(places.len() == k.degree() && places.iter().all(|v| v.e == 1 && v.f == 1), "{q} does not split completely");
            }
        }
    }
    Ok(())
}

fn c9_sieve() -> Check {
    let q = NumberField::rationals();
    let SieveOutcome::Found(s) = tame_supporting_set(&catalog::semidihedral16(), &q, &[], 1_000_000).map_err(|e| e.to_string())? else {
        return Err("D16* over Q: sieve exhausted".into());
    };
    ensure!(s.primes() == vec![3, 11], "D16* over Q gives {:?}", s.primes());
    let fields = [field(&[0, 1]), field(&[1, 0, 1]), field(&[-2, 0, 1]), field(&[1, 1, 1]), field(&[-1, -1, 1])];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut found, mut exhausted) = (0, 0);
    for _ in 0..100 {
        let (_, mut g) = random_metacyclic(&mut rng);
        if rng.gen_bool(0.3) {
            let c = [3usize, 5, 7].into_iter().find(|c| g.order() % c != 0).unwrap();
            g = g.direct_product(&catalog::cyclic(c)).map_err(|e| e.to_string())?;
        }
        let k = if rng.gen_bool(0.5) { &fields[0] } else { fields.choose(&mut rng).unwrap() };
        let excl: Vec<u64> = [3u64, 5, 7, 11, 13].into_iter().filter(|_| rng.gen_bool(0.3)).collect();
        match tame_supporting_set(&g, k, &excl, 20_000).map_err(|e| e.to_string())? {
            SieveOutcome::Found(s) => {
                check_supporting_set(&g, k, &excl, &s).map_err(|e| format!("|G| = {} over {}: {e}", g.order(), k.poly()))?;
                found += 1;
            }
            SieveOutcome::Exhausted { .. } => exhausted += 1,
        }
    }
    ensure!(found >= 50, "only {found} supporting sets returned");
    Ok(format!("D16*/Q -> {{3, 11}}; {found} sets verified, {exhausted} exhausted"))
}

fn corpus_fields() -> Vec<NumberField> {
    [
        vec![0, 1],
        vec![1, 0, 1],
        vec![-2, 0, 1],
        vec![2, 0, 1],
        vec![-3, 0, 1],
        vec![1, 1, 1],
        vec![-1, -1, 1],
        vec![-7, 0, 1],
        vec![2, -1, 1],
        vec![-6, 0, 1],
        vec![5, 0, 1],
        vec![-3, -1, 1],
        vec![4, -1, 1],
        vec![-4, -1, 1],
        vec![8, 1, 0, 1],
        vec![-2, 0, 0, 1],
        vec![-1, -1, 0, 1],
        vec![-1, -2, 1, 1],
        vec![1, -3, 0, 1],
        vec![1, 0, 0, 0, 1],
    ]
    .iter()
    .map(|cs| field(cs))
    .collect()
}

fn corpus_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in [1, 2, 3, 4, 5, 7, 8, 9, 12, 16] {
        out.push((format!("C{n}"), catalog::cyclic(n)));
    }
    for fs in [
        vec![2, 2],
        vec![2, 2, 2],
        vec![3, 3],
        vec![3, 3, 3],
        vec![2, 4],
        vec![4, 4],
        vec![2, 2, 4],
        vec![2, 4, 4],
        vec![2, 8, 8],
        vec![5, 5],
        vec![3, 9],
        vec![2, 6],
        vec![2, 2, 2, 2],
        vec![6, 6],
    ] {
        let name = fs.iter().map(|f| format!("C{f}")).collect::<Vec<_>>().join("x");
        out.push((name, catalog::abelian(&fs).unwrap()));
    }
    for name in ["Q8", "Q16", "D16*", "S3", "S4", "A4", "A5", "F21", "heis27", "d8", "d10", "d12", "d16", "d18"] {
        out.push((name.into(), catalog::by_name(name).unwrap()));
    }
    for (m, n, i, t) in [(2, 6, 3, 5), (4, 3, 3, 2), (2, 8, 8, 5), (3, 9, 9, 4), (2, 5, 1, 1), (4, 5, 5, 2), (3, 7, 7, 2), (2, 10, 5, 9), (4, 4, 4, 3)] {
        let p = MetacyclicPresentation::new(m, n, i, t).unwrap();
        out.push((format!("M{p}"), p.to_group().unwrap()));
    }
    out.push(("C2xQ8".into(), catalog::cyclic(2).direct_product(&catalog::quaternion8()).unwrap()));
    out.push(("C2xD8".into(), catalog::cyclic(2).direct_product(&catalog::dihedral(4)).unwrap()));
    out.push(("C3xS3".into(), catalog::cyclic(3).direct_product(&catalog::symmetric(3)).unwrap()));
    assert_eq!(out.len(), 50, "group corpus size");
    out
}

fn c10_soundness() -> Check {
    let fields = corpus_fields();
    let groups = corpus_groups();
    ensure!(fields.len() == 20 && groups.len() == 50, "corpus is {} x {}", fields.len(), groups.len());
    let mut violations = Vec::new();
    let mut decided = 0;
    for k in &fields {
        for (name, g) in &groups {
            let run = |v: abl_core::Result<Verdict>| v.map_err(|e| format!("{name} over {}: {e}", k.poly()));
            let pre = run(preadmissible(g, k))?;
            let tame = run(tame_admissible_solvable(g, k))?;
            // (verdict, means-admissible, means-preadmissible)
            let mut adm: Vec<(&str, Value)> = Vec::new();
            let mut preads: Vec<(&str, Value)> = vec![("preadmissible", pre.value)];
            if g.is_solvable() {
                adm.push(("tame_admissible_solvable", if tame.is_yes() { Value::Yes } else { Value::Undecided }));
            }
            if g.is_abelian() {
                let a = AbelianInvariants::of_group(g).expect("abelian");
                preads.push(("abelian_preadmissible", run(abelian_preadmissible(&a, k))?.value));
                adm.push(("abelian_admissible", run(abelian_admissible(&a, k))?.value));
            }
            if g.order() % 2 == 1 {
                adm.push(("semicyclic_admissible", run(semicyclic_admissible(g, k))?.value));
            }
            let mut clash = |what: String| violations.push(format!("{name} over {}: {what}", k.poly()));
            for (x, xv) in &adm {
                for (y, yv) in &adm {
                    if *xv == Value::Yes && *yv == Value::No {
                        clash(format!("{x} yes but {y} no"));
                    }
                }
                for (y, yv) in &preads {
                    if *xv == Value::Yes && *yv == Value::No {
                        clash(format!("{x} yes but {y} no"));
                    }
                }
            }
            for (x, xv) in &preads {
                for (y, yv) in &preads {
                    if *xv == Value::Yes && *yv == Value::No {
                        clash(format!("{x} yes but {y} no"));
                    }
                }
            }
            if k.is_rational() && pre.is_yes() && !g.is_sylow_metacyclic() {
                clash("preadmissible over Q but not Sylow metacyclic".into());
            }
            decided += adm.iter().chain(&preads).filter(|(_, v)| *v != Value::Undecided).count();
        }
    }
    ensure!(violations.is_empty(), "{} contradictions, first: {}", violations.len(), violations[0]);
    Ok(format!("20 fields x 50 groups, {decided} decided verdicts, 0 contradictions"))
}

fn main() {
    let mut divergences = Vec::new();
    let criteria: Vec<(u32, &str, Box<dyn FnOnce(&mut Vec<String>) -> Check>)> = vec![
        (1, "counterexample reproduction", Box::new(|_| c1_counterexample())),
        (2, "decomposition of 2 and Wang data", Box::new(|_| c2_decomposition())),
        (3, "local CFT invariants", Box::new(|_| c3_local_invariants())),
        (4, "metacyclic presentation table", Box::new(|_| c4_presentation_table())),
        (5, "Liedahl verdicts", Box::new(|_| c5_liedahl())),
        (6, "group classifiers", Box::new(c6_group_classifiers)),
        (7, "Brauer property suite", Box::new(|_| c7_brauer())),
        (8, "Grunwald-Wang special case over Q", Box::new(|_| c8_wang_special_case())),
        (9, "supporting-set sieve soundness", Box::new(|_| c9_sieve())),
        (10, "three-valued soundness sweep", Box::new(|_| c10_soundness())),
    ];
    let mut unexpected = Vec::new();
    let mut known = BTreeMap::new();
    for (id, title, run) in criteria {
        let before = divergences.len();
        let res = run(&mut divergences);
        let fresh: Vec<String> = divergences[before..].to_vec();
        match (&res, fresh.is_empty()) {
            (Ok(detail), true) => println!("criterion {id:>2} PASS  {title}: {detail}"),
            (Ok(detail), false) => {
                println!("criterion {id:>2} FAIL  {title}: {detail}; {}", fresh.join("; "));
                for f in fresh {
                    let listed = KNOWN_DIVERGENCES.iter().any(|(c, claim)| *c == id && f.starts_with(claim));
                    if listed {
                        known.insert(id, f);
                    } else {
                        unexpected.push(format!("criterion {id}: {f}"));
                    }
                }
            }
            (Err(e), _) => {
                println!("criterion {id:>2} FAIL  {title}: {e}");
                unexpected.push(format!("criterion {id}: {e}"));
            }
        }
    }
    for (id, what) in &known {
        println!("known divergence (criterion {id}): {what}");
    }
    if !unexpected.is_empty() {
        panic!("unexpected acceptance failures:\n{}", unexpected.join("\n"));
    }
}
