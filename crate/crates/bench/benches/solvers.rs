use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use starchrom::dp::{run_dp, DpConfig};
use starchrom::generate::Family;
use starchrom::oracle::{decide_bruteforce, DEFAULT_NODE_BUDGET};
use starchrom_bench::Case;

fn dp_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("dp");
    group.sample_size(20);
    for family in [Family::Path, Family::Cycle] {
        for n in [50, 100, 200, 400] {
            let case = Case::new(family, n, 1);
            group.bench_with_input(BenchmarkId::new(family.to_string(), n), &case, |b, case| {
                b.iter(|| {
                    run_dp(
                        black_box(&case.graph),
                        &case.sd,
                        case.c,
                        &DpConfig::default(),
                    )
                    .unwrap()
                })
            });
        }
    }
    group.finish();
}

// Star and k-tree degrees grow with n, and the state count with the degree.
fn dp_symmetry(c: &mut Criterion) {
    let mut group = c.benchmark_group("dp-degree");
    group.sample_size(10);
    let cases = [
        (Family::Star, 4),
        (Family::Star, 6),
        (Family::Star, 8),
        (Family::Ktree, 6),
        (Family::Ktree, 8),
        (Family::Ktree, 10),
    ];
    for (family, n) in cases {
        let case = Case::new(family, n, 0);
        for symmetry in [false, true] {
            let config = DpConfig {
                symmetry,
                ..DpConfig::default()
            };
            let id = BenchmarkId::new(if symmetry { "orbits" } else { "plain" }, case.label());
            group.bench_with_input(id, &case, |b, case| {
                b.iter(|| run_dp(black_box(&case.graph), &case.sd, case.c, &config).unwrap())
            });
        }
    }
    group.finish();
}

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute");
    group.sample_size(10);
    for (family, n) in [
        (Family::Path, 200),
        (Family::Cycle, 9),
        (Family::Star, 8),
        (Family::Ktree, 8),
    ] {
        let case = Case::new(family, n, 0);
        group.bench_with_input(BenchmarkId::new(family.to_string(), n), &case, |b, case| {
            b.iter(|| decide_bruteforce(black_box(&case.graph), case.c, DEFAULT_NODE_BUDGET))
        });
    }
    group.finish();
}

criterion_group!(benches, dp_scaling, dp_symmetry, brute_force);
criterion_main!(benches);
