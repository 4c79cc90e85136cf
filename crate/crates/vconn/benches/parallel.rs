//! One worker vs. all workers on the same flow-heavy inputs.
//!
//! Without the `parallel` feature both groups run the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use vconn::maxflow::connectivity_by_pairs;
use vconn::oracle::random::{connected_gnp, strongly_connected};
use vconn::unweighted::vertex_connectivity_unweighted;
use vconn::weighted::vertex_connectivity_weighted;
use vconn::Ctx;

fn pools(c: &mut Criterion) {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get()).max(2);
    let g = connected_gnp(40, 0.3, 1);
    let d = strongly_connected(16, 0.4, 8, 2);
    let mut group = c.benchmark_group("threads");
    group.sample_size(10);
    for threads in [1, all] {
        let pool = ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        group.bench_with_input(BenchmarkId::new("all_pairs_n40", threads), &threads, |b, _| {
            b.iter(|| pool.install(|| connectivity_by_pairs(&Ctx::default(), &g).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("unweighted_n40", threads), &threads, |b, _| {
            b.iter(|| pool.install(|| vertex_connectivity_unweighted(&Ctx::default(), &g).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("weighted_n16", threads), &threads, |b, _| {
            b.iter(|| pool.install(|| vertex_connectivity_weighted(&Ctx::default(), &d).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, pools);
criterion_main!(benches);
