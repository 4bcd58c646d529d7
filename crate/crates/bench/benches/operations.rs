use adams_core::adams::adams_split;
use adams_core::cubes::{differential, normalized_project, CubeChain};
use adams_core::exactalg::Q;
use adams_core::splitcubes::random_split_cube;
use adams_core::transgression::{canonical_kernel_cube, full_adams, transgression_morphism};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn split_cubes(c: &mut Criterion) {
    let mut group = c.benchmark_group("adams_split");
    for (n, k) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let s = random_split_cube::<Q>(&mut ChaCha8Rng::seed_from_u64(1), n, 2, "E");
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}k{k}")), &s, |b, s| {
            b.iter(|| adams_split(s, k).unwrap())
        });
    }
    group.finish();
}

fn cube_complex(c: &mut Criterion) {
    let s = random_split_cube::<Q>(&mut ChaCha8Rng::seed_from_u64(2), 3, 2, "E");
    let x = CubeChain::single(1, s.cube);
    c.bench_function("normalized_project n3", |b| b.iter(|| normalized_project(&x)));
    c.bench_function("differential n3", |b| b.iter(|| differential(&x)));
}

fn transgression(c: &mut Criterion) {
    let mut group = c.benchmark_group("transgression");
    for n in 1..=2 {
        let s = canonical_kernel_cube(&mut ChaCha8Rng::seed_from_u64(3), n, 2, "E");
        let x = CubeChain::single(1, s.cube);
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| b.iter(|| transgression_morphism(x).unwrap()));
    }
    group.finish();
    let s = random_split_cube::<Q>(&mut ChaCha8Rng::seed_from_u64(4), 1, 2, "E");
    let x = normalized_project(&CubeChain::single(1, s.cube));
    c.bench_function("full_adams n1 k2", |b| b.iter(|| full_adams(&x, 2).unwrap()));
}

criterion_group!(benches, split_cubes, cube_complex, transgression);
criterion_main!(benches);
