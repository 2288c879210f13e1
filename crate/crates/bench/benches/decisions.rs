use abl_core::admissibility::{abelian_admissible, liedahl_check, tame_supporting_set, DEFAULT_SIEVE_BOUND};
use abl_core::groups::{abelian_invariants, catalog, is_semicyclic, meta_splits, metacyclic_presentations, SemicyclicClass};
use abl_core::{MetacyclicPresentation, NumberField};
use criterion::{criterion_group, criterion_main, Criterion};

fn admissibility(c: &mut Criterion) {
    let a = abelian_invariants(&[2, 8, 8]).unwrap();
    c.bench_function("abelian_admissible counterexample (cold field)", |b| {
        b.iter(|| abelian_admissible(&a, &NumberField::from_ints(&[8, 1, 0, 1]).unwrap()).unwrap().value)
    });
    let q8 = MetacyclicPresentation::new(2, 4, 2, 3).unwrap();
    c.bench_function("liedahl Q8 over Q(i) (cold field)", |b| {
        b.iter(|| liedahl_check(&q8, &NumberField::from_ints(&[1, 0, 1]).unwrap()).unwrap().value)
    });
    let sd = catalog::semidihedral16();
    let q = NumberField::rationals();
    c.bench_function("supporting set D16* over Q", |b| b.iter(|| tame_supporting_set(&sd, &q, &[], DEFAULT_SIEVE_BOUND).unwrap()));
}

fn groups(c: &mut Criterion) {
    let q16 = catalog::quaternion16();
    c.bench_function("metacyclic presentations Q16", |b| b.iter(|| metacyclic_presentations(&q16).unwrap().len()));
    let h = catalog::heisenberg(3);
    c.bench_function("semicyclic SC_3 heisenberg 27", |b| b.iter(|| is_semicyclic(&h, SemicyclicClass::ScP(3)).unwrap()));
    let ext = catalog::meta_split_example(3);
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("meta_splits order 243", |b| b.iter(|| meta_splits(&ext)));
    g.finish();
}

criterion_group!(benches, admissibility, groups);
criterion_main!(benches);
