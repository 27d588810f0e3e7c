use std::hint::black_box;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qh_core::descriptor::ThreefoldDescriptor;
use qh_core::exec::Execution;
use qh_core::groebner::Budget;
use qh_core::pipeline::run;
use qh_core::quantum::QuantumContext;
use qh_core::semisimple::generic_semisimplicity;

const THREEFOLDS: [&str; 13] = [
    "M2_21", "M2_22", "M2_26", "M2_27", "M2_29", "M2_30", "M2_33", "M3_10", "M3_12", "M3_15",
    "M3_18", "M3_20", "M3_25",
];

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn descriptor(name: &str) -> ThreefoldDescriptor {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../data/{name}.fano"));
    ThreefoldDescriptor::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn associativity(c: &mut Criterion) {
    let ctx = QuantumContext::new(&descriptor("M3_12")).unwrap();
    let mut g = c.benchmark_group("associativity_system/M3_12");
    for (label, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| ctx.associativity_system(black_box(exec)).unwrap())
        });
    }
    g.finish();
}

fn fan_out(c: &mut Criterion) {
    let descs: Vec<ThreefoldDescriptor> = THREEFOLDS.iter().map(|n| descriptor(n)).collect();
    let mut g = c.benchmark_group("pipeline/all_threefolds");
    g.sample_size(10);
    for (label, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| {
                exec.map(&descs, |d| {
                    run(d, Budget::default(), Execution::Sequential).unwrap()
                })
            })
        });
    }
    g.finish();
}

fn trials(c: &mut Criterion) {
    // every trial is evaluated; the verdict only keeps the prefix up to the first success
    let p = run(
        &descriptor("M3_10"),
        Budget::default(),
        Execution::default(),
    )
    .unwrap()
    .presentation;
    let mut g = c.benchmark_group("semisimplicity/M3_10_8_trials");
    g.sample_size(10);
    for (label, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| generic_semisimplicity(&p, 8, black_box(1), exec, Budget::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, associativity, fan_out, trials);
criterion_main!(benches);
