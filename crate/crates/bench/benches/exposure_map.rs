use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use emfdose::fixtures::scenarios;
use emfdose::report::map_csv;
use emfdose::{exposure_map, Registry};

fn map(c: &mut Criterion) {
    let scn = Registry::builtin()
        .load_scenario(scenarios::MAP_5_SOURCES, "map-5-sources.toml")
        .unwrap();
    let mut group = c.benchmark_group("exposure_map 200x200, 5 sources");
    group.sample_size(10);
    group.bench_function("all threads", |b| b.iter(|| exposure_map(black_box(&scn)).unwrap()));
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    group.bench_function("one thread", |b| {
        b.iter(|| single.install(|| exposure_map(black_box(&scn)).unwrap()))
    });
    let evaluated = exposure_map(&scn).unwrap();
    group.bench_function("csv render", |b| b.iter(|| map_csv(black_box(&evaluated)).render()));
    group.finish();
}

criterion_group!(benches, map);
criterion_main!(benches);
