use criterion::{criterion_group, criterion_main, Criterion};
use divforge::galois::FieldCtx;
use divforge::reference::bundled_curve;
use divforge::rrspaces::rr_dim;
use divforge::semigroups::gap_set_single;
use divforge::zeta::LPolynomial;
use std::hint::black_box;

fn field_ops(c: &mut Criterion) {
    let f = FieldCtx::new(2, 8).unwrap();
    let xs: Vec<_> = (1..f.order()).map(|i| f.from_index(i)).collect();
    c.bench_function("gf256 mul+inv sweep", |b| {
        b.iter(|| {
            let mut acc = f.one();
            for &x in &xs {
                acc = f.mul(acc, f.inv(x).unwrap());
            }
            black_box(acc)
        })
    });
}

fn point_counts(c: &mut Criterion) {
    let curve = bundled_curve("hermitian_q3").unwrap();
    c.bench_function("hermitian_q3 count_points r=1..3", |b| {
        b.iter(|| (1..=3).map(|r| curve.count_points(black_box(r)).unwrap()).sum::<u64>())
    });
}

fn riemann_roch(c: &mut Criterion) {
    let curve = bundled_curve("hermitian_q3").unwrap();
    let inf = curve.infinity().unwrap();
    let places = curve.rational_places().unwrap();
    let d = curve.divisor().plus(&inf, 4).plus(&places[1], 1).plus(&places[2], -1);
    c.bench_function("hermitian_q3 rr_dim", |b| b.iter(|| rr_dim(&curve, black_box(&d)).unwrap()));
}

fn effective(c: &mut Criterion) {
    let curve = bundled_curve("hermitian_q3").unwrap();
    let l = LPolynomial::from_counts(curve.q(), curve.genus(), &curve.counts(curve.genus()).unwrap()).unwrap();
    c.bench_function("hermitian_q3 effective_counts n=8", |b| b.iter(|| l.effective_counts(black_box(8)).unwrap()));
}

fn semigroup(c: &mut Criterion) {
    c.bench_function("gap set (97,89)", |b| b.iter(|| gap_set_single(black_box(97), black_box(89)).unwrap()));
}

criterion_group!(benches, field_ops, point_counts, riemann_roch, effective, semigroup);
criterion_main!(benches);
