//! Closed-form constructors against the brute-force oracle. The closed
//! forms should stay flat in the chain length while the oracle pays the
//! exponential state-construction cost (~9x per added site for pair
//! reductions).

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use vbslab_core::linalg::{von_neumann_entropy, SubsystemSpec};
use vbslab_core::reduced::{brute_force_reduce, rho_block_closed, rho_end_pair};
use vbslab_core::state::{ground_state_pauli, ground_state_projection};

fn end_pair_entropy(c: &mut Criterion) {
    let mut group = c.benchmark_group("end_pair_entropy");
    for n in [2usize, 3, 4, 5, 6] {
        group.bench_with_input(BenchmarkId::new("closed_form", n), &n, |b, &n| {
            b.iter(|| {
                let rho = rho_end_pair(black_box(n)).unwrap();
                von_neumann_entropy(&rho.spectrum().unwrap()).unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("brute_force", n), &n, |b, &n| {
            b.iter(|| {
                let g = ground_state_projection(black_box(n)).unwrap();
                let rho = brute_force_reduce(&g, &SubsystemSpec::new([0, n + 1])).unwrap();
                von_neumann_entropy(&rho.spectrum().unwrap()).unwrap()
            })
        });
    }
    group.finish();
}

fn block_reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("block_reduction");
    for l in [1usize, 2, 3, 4] {
        group.bench_with_input(BenchmarkId::new("closed_form", l), &l, |b, &l| {
            b.iter(|| rho_block_closed(black_box(l)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle_at_n6", l), &l, |b, &l| {
            let g = ground_state_projection(6).unwrap();
            b.iter(|| brute_force_reduce(&g, &SubsystemSpec::new(2..2 + l)).unwrap())
        });
    }
    group.finish();
}

fn ground_state_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("ground_state");
    for n in [3usize, 5, 7] {
        group.bench_with_input(BenchmarkId::new("projection", n), &n, |b, &n| {
            b.iter(|| ground_state_projection(black_box(n)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("pauli_strings", n), &n, |b, &n| {
            b.iter(|| ground_state_pauli(black_box(n)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, end_pair_entropy, block_reduction, ground_state_routes);
criterion_main!(benches);
