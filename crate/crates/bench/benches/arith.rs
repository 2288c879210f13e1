use std::hint::black_box;

use abl_core::arith::factor_q::factor_q;
use abl_core::{factor_mod_p, NumberField, Poly};
use criterion::{criterion_group, criterion_main, Criterion};

fn factoring(c: &mut Criterion) {
    // x^12 - 1 and a product of two quartics
    let f = Poly::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    let g = &Poly::from_ints(&[2, 0, -4, 0, 1]) * &Poly::from_ints(&[1, 1, 1, 1, 1]);
    c.bench_function("factor_mod_p x^12-1 mod 101", |b| b.iter(|| factor_mod_p(black_box(&f), 101).unwrap()));
    c.bench_function("factor_q degree 8", |b| b.iter(|| factor_q(black_box(&g)).unwrap()));
}

fn decomposition(c: &mut Criterion) {
    c.bench_function("decompose 2 in x^3+x+8", |b| {
        b.iter(|| NumberField::from_ints(&[8, 1, 0, 1]).unwrap().decompose_prime(2).unwrap().len())
    });
    c.bench_function("decompose 2 in x^4+1", |b| b.iter(|| NumberField::from_ints(&[1, 0, 0, 0, 1]).unwrap().decompose_prime(2).unwrap().len()));
    c.bench_function("cyclotomic intersection n=8 over Q(i)", |b| {
        b.iter(|| NumberField::from_ints(&[1, 0, 1]).unwrap().cyclotomic_intersection(8).unwrap().h.len())
    });
}

criterion_group!(benches, factoring, decomposition);
criterion_main!(benches);
