use criterion::{black_box, criterion_group, criterion_main, Criterion};
use listlab_bench::{bench_caps, large_code, mid_code};
use listlab_core::channel::{run_experiment, ChannelModel};
use listlab_core::collision::{collision_count_direct, collision_count_fourier};
use listlab_core::decode::ml_list_decode;
use listlab_core::fourier::character_row;
use listlab_core::gf2::BitVector;
use listlab_core::weights::weight_distribution;

fn bench_weight_distribution(c: &mut Criterion) {
    let caps = bench_caps();
    let mid = mid_code();
    let large = large_code();
    c.bench_function("weight_distribution/rm_4_2", |b| {
        b.iter(|| weight_distribution(black_box(&mid), &caps).unwrap())
    });
    c.bench_function("weight_distribution/rm_5_2", |b| {
        b.iter(|| weight_distribution(black_box(&large), &caps).unwrap())
    });
}

fn bench_level_coefficients(c: &mut Criterion) {
    let caps = bench_caps();
    c.bench_function("character_row/n64_w17", |b| {
        b.iter(|| character_row(black_box(64), black_box(17), &caps).unwrap())
    });
    c.bench_function("character_row/n256_w81", |b| {
        b.iter(|| character_row(black_box(256), black_box(81), &caps).unwrap())
    });
}

fn bench_collision_counts(c: &mut Criterion) {
    let caps = bench_caps();
    let code = mid_code();
    c.bench_function("collision_direct/rm_4_2_s3", |b| {
        b.iter(|| collision_count_direct(black_box(&code), &[3], &caps).unwrap())
    });
    c.bench_function("collision_fourier/rm_4_2_s3", |b| {
        b.iter(|| collision_count_fourier(black_box(&code), &[3], &caps).unwrap())
    });
}

fn bench_decode(c: &mut Criterion) {
    let caps = bench_caps();
    let code = mid_code();
    let rho = BitVector::from_support(16, &[1, 6, 11]);
    let syn = code.parity_check().syndrome(&rho).unwrap();
    c.bench_function("ml_list_decode/rm_4_2_k8", |b| {
        b.iter(|| ml_list_decode(black_box(&code), black_box(&syn), 8, 16, &caps).unwrap())
    });
}

fn bench_experiment(c: &mut Criterion) {
    let caps = bench_caps();
    let code = mid_code();
    let model = ChannelModel::bsc(16, 0.05, 1).unwrap();
    c.bench_function("run_experiment/rm_4_2_2k_trials", |b| {
        b.iter(|| run_experiment(black_box(&code), &model, 4, None, 2000, &caps).unwrap())
    });
}

criterion_group!(
    benches,
    bench_weight_distribution,
    bench_level_coefficients,
    bench_collision_counts,
    bench_decode,
    bench_experiment
);
criterion_main!(benches);
