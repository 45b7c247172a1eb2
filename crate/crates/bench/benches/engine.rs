use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use olc_core::combi::{count, BoxedGroundSet, EnumerationCaps, Filter, ObjectKind};
use olc_core::linearize::{combinatorial_value, linearization, MultiIndex};
use olc_core::moments::motzkin_moments;
use olc_core::scalar::gr;
use olc_core::series::{gf_check, GfIdentity};
use olc_core::FamilySpec;

fn linearize(c: &mut Criterion) {
    let f = FamilySpec::meixner(gr(3, 2), gr(1, 3)).unwrap();
    let mut group = c.benchmark_group("linearization");
    for idx in [[2, 2, 2], [3, 3, 3], [4, 4, 4]] {
        let label = format!("{idx:?}");
        group.bench_with_input(BenchmarkId::new("functional", &label), &idx, |b, idx| {
            b.iter(|| linearization(&f, &MultiIndex::new(black_box(idx))).unwrap())
        });
    }
    let caps = EnumerationCaps::default();
    group.bench_function("enumeration [3, 3, 2]", |b| {
        b.iter(|| combinatorial_value(&f, &MultiIndex::new(&[3, 3, 2]), &caps).unwrap())
    });
    group.finish();
}

fn enumerate(c: &mut Criterion) {
    let caps = EnumerationCaps::default();
    let g = BoxedGroundSet::new(&[3, 3, 2]);
    let mut group = c.benchmark_group("enumeration");
    for kind in [ObjectKind::Matching, ObjectKind::Partition, ObjectKind::Permutation] {
        group.bench_function(format!("{kind:?} (3, 3, 2)"), |b| {
            b.iter(|| count(black_box(&g), kind, Filter::Inhomogeneous, &caps).unwrap())
        });
    }
    group.finish();
}

fn moments(c: &mut Criterion) {
    let b: Vec<_> = (0..24).map(|n| gr(2 * n + 1, 1)).collect();
    let lambda: Vec<_> = (0..24).map(|n| gr(n * n, 1)).collect();
    c.bench_function("motzkin moments n = 24", |bench| {
        bench.iter(|| motzkin_moments(black_box(&b), black_box(&lambda), 24))
    });
}

fn series(c: &mut Criterion) {
    let id = GfIdentity::LaguerreStar { alpha: gr(1, 2), m: 2 };
    c.bench_function("laguerre-star generating function, cap 4", |b| {
        b.iter(|| gf_check(black_box(&id), 4).unwrap())
    });
}

criterion_group!(benches, linearize, enumerate, moments, series);
criterion_main!(benches);
