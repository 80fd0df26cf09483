use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use ascentlab::constructions::build_boolean_pw4;
use ascentlab::{
    build_2by3, build_3by5, build_family, f_max, Assignment, Engine, Family, NO_LIMIT,
};

fn ordered_2by3(c: &mut Criterion) {
    let mut g = c.benchmark_group("ordered_2by3");
    for n in [10, 16, 20] {
        let inst = build_2by3(n).unwrap();
        let engine = Engine::Ordered((0..n).collect());
        let start = Assignment::uniform(n, 0);
        g.throughput(Throughput::Elements(f_max(n).unwrap() as u64));
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| {
                engine
                    .run(&inst, black_box(&start), NO_LIMIT, &mut ())
                    .unwrap()
                    .steps
            })
        });
    }
    g.finish();
}

fn steepest(c: &mut Criterion) {
    let mut g = c.benchmark_group("steepest");
    for family in [Family::ThreeByFive, Family::BoolPw4] {
        for n in [8, 12] {
            let built = build_family(family, n, Default::default()).unwrap();
            g.throughput(Throughput::Elements(2 * f_max(n).unwrap() as u64));
            g.bench_with_input(BenchmarkId::new(family.name(), n), &n, |b, _| {
                b.iter(|| {
                    Engine::Steepest
                        .run(&built.instance, black_box(&built.start), NO_LIMIT, &mut ())
                        .unwrap()
                        .steps
                })
            });
        }
    }
    g.finish();
}

fn first_improvement(c: &mut Criterion) {
    let inst = build_3by5(10).unwrap();
    let start = Assignment::uniform(10, 0);
    c.bench_function("first_improvement_3by5_10", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            Engine::FirstImprovement { seed }
                .run(&inst, &start, NO_LIMIT, &mut ())
                .unwrap()
                .steps
        })
    });
}

fn builders(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.bench_function("3by5_40", |b| b.iter(|| build_3by5(black_box(40)).unwrap()));
    // n > 4 skips the exhaustive self-check.
    g.bench_function("bool_pw4_40", |b| {
        b.iter(|| build_boolean_pw4(black_box(40)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, ordered_2by3, steepest, first_improvement, builders);
criterion_main!(benches);
