#![allow(dead_code)]

use std::path::PathBuf;

use qh_core::descriptor::ThreefoldDescriptor;
use qh_core::exec::Execution;
use qh_core::groebner::Budget;
use qh_core::pipeline::{run, ExpectedResults, ThreefoldRun};

pub const THREEFOLDS: [&str; 13] = [
    "M2_21", "M2_22", "M2_26", "M2_27", "M2_29", "M2_30", "M2_33", "M3_10", "M3_12", "M3_15",
    "M3_18", "M3_20", "M3_25",
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn read(file: &str) -> String {
    std::fs::read_to_string(data_dir().join(file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

pub fn descriptor(name: &str) -> ThreefoldDescriptor {
    ThreefoldDescriptor::parse(&read(&format!("{name}.fano"))).unwrap()
}

pub fn expected(name: &str) -> ExpectedResults {
    ExpectedResults::parse(&read(&format!("{name}.expected"))).unwrap()
}

pub fn full_run(name: &str) -> ThreefoldRun {
    run(&descriptor(name), Budget::default(), Execution::default()).unwrap()
}

/// Descriptor text with its `geom:` lines replaced.
pub fn with_geom(name: &str, geom: &[&str]) -> ThreefoldDescriptor {
    let mut text: String = read(&format!("{name}.fano"))
        .lines()
        .filter(|l| !l.starts_with("geom:"))
        .map(|l| format!("{l}\n"))
        .collect();
    for g in geom {
        text.push_str(&format!("geom: {g}\n"));
    }
    ThreefoldDescriptor::parse(&text).unwrap()
}
