use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use relcoh_core::exactlin::{kernel_of_images, rank_of};
use relcoh_core::{Matrix, Scalar};

fn dense(rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows(
        (0..rows)
            .map(|i| (0..cols).map(|j| Scalar::from(((i * i * 31 + j * 17 + i * j) % 9) as i64 - 4)).collect())
            .collect(),
    )
}

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("elimination");
    for n in [16, 32, 64] {
        let m = dense(n, n + n / 2);
        let rows: Vec<_> = (0..m.rows()).map(|i| m.row_sparse(i)).collect();
        group.bench_with_input(BenchmarkId::new("rref", n), &m, |b, m| b.iter(|| m.rref()));
        group.bench_with_input(BenchmarkId::new("rank_of", n), &rows, |b, rows| b.iter(|| rank_of(m.cols(), rows)));
        group.bench_with_input(BenchmarkId::new("kernel_of_images", n), &rows, |b, rows| {
            b.iter(|| kernel_of_images(m.cols(), rows))
        });
    }
    group.finish();
}

criterion_group!(benches, elimination);
criterion_main!(benches);
