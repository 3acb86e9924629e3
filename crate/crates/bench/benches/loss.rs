use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use defect_loss::screening::{read_records, screen, Overrides, TABLE1_FIXTURE};
use defect_loss::spectral::{pv_integral, sweep, sweep_grid};
use defect_loss::units::ghz_to_angular;
use defect_loss::{evaluate, HostDerived, PhysicsOptions, ScreenConfig, SpectralDensity};

fn replicated_fixture(copies: usize) -> String {
    let mut out = String::new();
    for i in 0..copies {
        for line in TABLE1_FIXTURE.lines().filter(|l| !l.is_empty()) {
            out.push_str(&line.replacen(
                "\"material_id\":\"",
                &format!("\"material_id\":\"r{i}-"),
                1,
            ));
            out.push('\n');
        }
    }
    out
}

fn host_chain(c: &mut Criterion) {
    let cfg = ScreenConfig::default();
    let records = read_records(TABLE1_FIXTURE.as_bytes()).unwrap();
    let hosts: Vec<_> = records
        .iter()
        .map(|r| {
            defect_loss::screening::host_from_record(r.record.as_ref().unwrap(), cfg.dielectric)
                .unwrap()
        })
        .collect();
    let defects = cfg.default_defects();
    let omega = ghz_to_angular(cfg.frequency_ghz);
    c.bench_function("host_chain/table1", |b| {
        b.iter(|| {
            for h in &hosts {
                let d = HostDerived::compute(black_box(h), &PhysicsOptions::default()).unwrap();
                black_box(evaluate(&d, &defects, omega).unwrap());
            }
        })
    });
}

fn pv(c: &mut Criterion) {
    let debye = SpectralDensity::debye(1.0).unwrap();
    c.bench_function("pv_integral/debye", |b| {
        b.iter(|| pv_integral(&debye, black_box(0.25)).unwrap())
    });
    let zs = sweep_grid(&debye, 1e-3, 0.99, 100);
    c.bench_function("chi_sweep/debye_100", |b| {
        b.iter(|| sweep(&debye, 0.5, black_box(&zs)).unwrap())
    });
}

fn pipeline(c: &mut Criterion) {
    let db = replicated_fixture(500);
    let inputs = read_records(db.as_bytes()).unwrap();
    let cfg = ScreenConfig::default();
    let overrides = Overrides::default();
    let mut group = c.benchmark_group("pipeline");
    group.throughput(Throughput::Elements(inputs.len() as u64));
    group.bench_function("screen_9000", |b| {
        b.iter(|| screen(black_box(&inputs), &cfg, &overrides).unwrap())
    });
    group.finish();
}

criterion_group!(benches, host_chain, pv, pipeline);
criterion_main!(benches);
