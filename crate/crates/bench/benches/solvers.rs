use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use stochprobe::adaptive::{adap_value, alg_value, opt_adaptive};
use stochprobe::functions::FmaxTable;
use stochprobe::nonadaptive::{lambda_practical, opt_nonadaptive, xos_algorithm1};
use stochprobe_bench::fixtures;

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("opt_adaptive");
    group.sample_size(10);
    for (name, inst) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &inst, |b, inst| {
            b.iter(|| opt_adaptive(black_box(inst)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("opt_nonadaptive");
    group.sample_size(10);
    for (name, inst) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &inst, |b, inst| {
            b.iter(|| opt_nonadaptive(black_box(inst)).unwrap())
        });
    }
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let (name, inst) = fixtures().swap_remove(1);
    let (_, tree) = opt_adaptive(&inst).unwrap();
    c.bench_function(&format!("adap_value/{name}"), |b| {
        b.iter(|| adap_value(black_box(&tree), inst.objective(), inst.ground()).unwrap())
    });
    c.bench_function(&format!("alg_value/{name}"), |b| {
        b.iter(|| alg_value(black_box(&tree), inst.objective(), inst.ground()).unwrap())
    });
    c.bench_function(&format!("fmax_table/{name}"), |b| {
        b.iter(|| FmaxTable::new(black_box(inst.objective())).unwrap())
    });
}

fn xos(c: &mut Criterion) {
    let (name, inst) = fixtures().swap_remove(3);
    c.bench_function(&format!("xos_algorithm1/{name}"), |b| {
        b.iter(|| xos_algorithm1(black_box(&inst), lambda_practical(4)).unwrap())
    });
}

criterion_group!(benches, solvers, evaluation, xos);
criterion_main!(benches);
