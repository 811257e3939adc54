use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coset_radon::circle::{standard_grid, verify_example};
use coset_radon::verify::run_suite_with;
use coset_radon::{Execution, FiniteGroup, NestedRadon, SuiteConfig, Subgroup};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn suite(c: &mut Criterion) {
    let config = SuiteConfig::from_json(r#"{"groups": ["S3", "D4"], "families": ["radon-nested", "transport"], "samples": 20}"#)
        .unwrap();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("S3+D4", name), |b| b.iter(|| run_suite_with(&config, exec).unwrap()));
    }
    group.finish();
}

fn matrices(c: &mut Criterion) {
    let g = FiniteGroup::symmetric(4).unwrap();
    let l = Subgroup::trivial(&g);
    let h = g.subgroups().into_iter().find(|s| s.len() == 4).unwrap();
    let radon = NestedRadon::new(&g, &l, &h).unwrap();
    let mut group = c.benchmark_group("matrix");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("S4 nested", name), |b| b.iter(|| radon.matrix(exec).unwrap()));
    }
    group.finish();
}

fn example(c: &mut Criterion) {
    let grid = standard_grid(100, 8);
    let mut group = c.benchmark_group("example");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("grid 800", name), |b| b.iter(|| verify_example(&grid, 1e-12, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, suite, matrices, example);
criterion_main!(benches);
