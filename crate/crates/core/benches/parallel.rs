//! Sequential vs rayon-parallel execution of the data-parallel kernels.
//! Without the `parallel` feature both variants run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use theta_asym::asymptotics::{AsymptoticQuery, Comparator};
use theta_asym::laurent::full_expansion_oracle;
use theta_asym::series::colored_partition_series;
use theta_asym::{CoefficientTable, Exec};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn dense_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("dense_mul");
    group.sample_size(10);
    for nmax in [500usize, 2000] {
        let f = colored_partition_series(3, nmax).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, nmax), &f, |b, f| {
                b.iter(|| black_box(f.mul_with(f, exec)))
            });
        }
    }
    group.finish();
}

fn a_row(c: &mut Criterion) {
    let mut group = c.benchmark_group("a_row_all_m");
    group.sample_size(10);
    let n = 3000;
    let table = CoefficientTable::new(24, n).unwrap();
    let ms: Vec<i64> = (0..=n as i64).collect();
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, n), |b| {
            b.iter(|| black_box(table.a_values(&ms, n, exec).unwrap()))
        });
    }
    group.finish();
}

fn compare_ladder(c: &mut Criterion) {
    let mut group = c.benchmark_group("compare_ladder");
    group.sample_size(10);
    let comparator = Comparator::new(3, 2000).unwrap();
    let queries: Vec<AsymptoticQuery> = (1..=40)
        .flat_map(|i| (0..4).map(move |m| AsymptoticQuery::new(m, 3, 50 * i, 4).unwrap()))
        .collect();
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(comparator.compare_all(&queries, false, exec).unwrap()))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_expansion_oracle");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, 120), |b| {
            b.iter(|| black_box(full_expansion_oracle(5, 120, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, dense_mul, a_row, compare_ladder, oracle);
criterion_main!(benches);
