use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eberhard_core::pipeline::{expand_polyhedral, realize_family, Family, FamilySpec, RealizeOptions};
use eberhard_core::{catalog, verify, Exec, OrientedMap};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn realized(seed: &str, passes: u32) -> OrientedMap {
    let spec = FamilySpec::new(Family::ThreeFive, 0, passes);
    realize_family(&catalog::get_seed(seed).unwrap(), spec, &RealizeOptions::default()).unwrap().map
}

fn polyhedral_verdict(c: &mut Criterion) {
    let mut g = c.benchmark_group("polyhedral_verdict");
    for (name, m) in [("octahedron_1pass", realized("octahedron", 1)), ("octahedron_2pass", realized("octahedron", 2))] {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &m, |b, m| {
                b.iter(|| verify::polyhedral_verdict(black_box(m), exec))
            });
        }
    }
    g.finish();
}

fn three_connectivity(c: &mut Criterion) {
    let mut g = c.benchmark_group("three_connected");
    g.sample_size(10);
    let m = realized("octahedron", 1);
    for (mode, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(mode, "octahedron_1pass"), &m, |b, m| {
            b.iter(|| verify::is_three_connected(black_box(m), exec))
        });
    }
    g.finish();
}

fn expansion(c: &mut Criterion) {
    let mut g = c.benchmark_group("expand_polyhedral");
    let seed = catalog::torus_grid(6, 6).unwrap();
    let pn = catalog::get_expansion_patch("PN35").unwrap();
    let pf = catalog::get_plain_patch("PF35").unwrap();
    for (mode, exec) in MODES {
        g.bench_function(BenchmarkId::new(mode, "torus_6x6_pn35"), |b| {
            b.iter(|| expand_polyhedral(black_box(&seed), &pn, Some(&pf), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, polyhedral_verdict, three_connectivity, expansion);
criterion_main!(benches);
