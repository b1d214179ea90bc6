use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use symgame::exec::Exec;
use symgame::experiments::{run_experiment, ExperimentConfig};
use symgame::game::{Strategy, Variant};
use symgame::graph::{Family, Graph};
use symgame::solver::{Reduction, SolverConfig, SymSolver};
use symgame::strategies::{against_every_b, BreakerComplete};
use symgame::Result;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_sym");
    group.sample_size(10);
    for name in ["C9", "K3,3", "K6"] {
        let g = Graph::from_short_name(name).unwrap();
        for (mode, exec) in MODES {
            let config = SolverConfig { exec, ..SolverConfig::default() };
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| SymSolver::new(g, Variant::Sym, Reduction::Automorphism, &config).unwrap().value())
            });
        }
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("breaker_kn_every_b");
    group.sample_size(10);
    let g = Graph::complete(6).unwrap();
    let make = || -> Result<Box<dyn Strategy>> { Ok(Box::new(BreakerComplete::program(&g)?)) };
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, "K6"), |b| {
            b.iter(|| black_box(against_every_b(&g, Variant::Sym, exec, &make).unwrap().leaves))
        });
    }
    group.finish();
}

fn experiment(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounds_rows");
    group.sample_size(10);
    for (mode, exec) in MODES {
        let config = ExperimentConfig {
            family: Family::Path,
            n_min: 9,
            n_max: 129,
            zero_elapsed: true,
            exec,
            ..ExperimentConfig::default()
        };
        group.bench_function(BenchmarkId::new(mode, "P9..P129"), |b| b.iter(|| run_experiment(&config).unwrap().len()));
    }
    group.finish();
}

criterion_group!(benches, solver, exhaustive, experiment);
criterion_main!(benches);
