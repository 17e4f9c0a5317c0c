//! Hot-path benchmarks: field arithmetic, RREF, binary expansion, the CSS
//! pipeline, exact distance enumeration, and tower chain enumeration.

use agqc_core::{
    binary_expand, css_exact_distance, theorem31_pipeline, tower_points, CurveModel, FieldBasis,
    FieldSpec, LinearCodeQ,
};
use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_ops(c: &mut Criterion) {
    let spec = FieldSpec::new(4).unwrap();
    let elems: Vec<_> = spec.elements().collect();
    c.bench_function("gf16_mul_table", |b| {
        b.iter(|| {
            let mut acc = spec.zero();
            for &x in &elems {
                for &y in &elems {
                    acc = acc + black_box(x) * black_box(y);
                }
            }
            acc
        })
    });
    c.bench_function("gf16_inv_all", |b| {
        b.iter(|| {
            let mut acc = spec.zero();
            for &x in &elems[1..] {
                acc = acc + black_box(x).inv().unwrap();
            }
            acc
        })
    });
}

fn linalg_ops(c: &mut Criterion) {
    let spec = FieldSpec::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let code = LinearCodeQ::random(spec, 40, 20, &mut rng);
    c.bench_function("dual_40_20_gf16", |b| b.iter(|| black_box(&code).dual()));

    let basis = FieldBasis::canonical_self_dual(spec);
    let small = LinearCodeQ::random(spec, 30, 15, &mut rng);
    c.bench_function("binary_expand_30_15_gf16", |b| {
        b.iter(|| binary_expand(black_box(&small), &basis).unwrap())
    });
}

fn construction(c: &mut Criterion) {
    let herm = CurveModel::hermitian(1).unwrap();
    c.bench_function("pipeline_hermitian_14_2", |b| {
        b.iter(|| theorem31_pipeline(black_box(&herm), 4, 1, None).unwrap())
    });

    let code = theorem31_pipeline(&herm, 4, 1, None).unwrap();
    let (c1, c2) = (code.c1().clone(), code.c2().clone());
    c.bench_function("exact_distance_14_2", |b| {
        b.iter(|| css_exact_distance(black_box(&c1), &c2, 1 << 28).unwrap())
    });
}

fn tower(c: &mut Criterion) {
    c.bench_function("tower_chains_q8_level3", |b| {
        b.iter(|| tower_points(black_box(8), 3).unwrap())
    });
}

criterion_group!(benches, field_ops, linalg_ops, construction, tower);
criterion_main!(benches);
